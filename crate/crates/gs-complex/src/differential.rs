use coeff_chain::sigma_rs;
use graded_hopf::{
    comult_chain_left, comult_chain_right, delta_tensor, mu_tensor, mult_chain_left, mult_chain_right, pad,
    GradedBialgebra, Op,
};

use crate::{tridegree_of, GsError, GsOp, LazyCochain, Tridegree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn nonzero_arity(k: usize) -> Result<(), GsError> {
    if k == 0 {
        Err(GsError::ZeroArity(k))
    } else {
        Ok(())
    }
}

/// The (co)module coaction `H^{⊗i} → H ⊗ H^{⊗i}`:
/// `λ_i = [μ(μ⊗1)⋯ ⊗ 1^{⊗i}] σ_{2,i} Δ^{⊗i}` and its mirror `ρ_i`.
pub fn coaction(i: usize, side: Side) -> Result<Op, GsError> {
    nonzero_arity(i)?;
    let outer = match side {
        Side::Left => Op::tensor(vec![mult_chain_left(i), Op::Id(i)]),
        Side::Right => Op::tensor(vec![Op::Id(i), mult_chain_right(i)]),
    };
    Ok(Op::compose(vec![outer, Op::Perm(sigma_rs(2, i)), delta_tensor(i)])?)
}

/// The action `H ⊗ H^{⊗j} → H^{⊗j}`:
/// `λ^j = μ^{⊗j} σ_{j,2} [(Δ⊗1^{⊗j-2})⋯Δ ⊗ 1^{⊗j}]` and its mirror `ρ^j`.
pub fn action(j: usize, side: Side) -> Result<Op, GsError> {
    nonzero_arity(j)?;
    let inner = match side {
        Side::Left => Op::tensor(vec![comult_chain_left(j), Op::Id(j)]),
        Side::Right => Op::tensor(vec![Op::Id(j), comult_chain_right(j)]),
    };
    Ok(Op::compose(vec![mu_tensor(j), Op::Perm(sigma_rs(j, 2)), inner])?)
}

/// `Σ_a 1^{⊗a}⊗d⊗1^{⊗k-a-1}`; the zero map when `h` has no differential.
pub fn d_k(h: &GradedBialgebra, k: usize) -> Result<Op, GsError> {
    nonzero_arity(k)?;
    if !h.has_differential() {
        return Ok(Op::Zero { i: k, j: k, deg: 1 });
    }
    Ok(Op::lin_int((0..k).map(|a| (1, pad(a, Op::D, k - a - 1))).collect())?)
}

/// `Σ_a (-1)^a 1^{⊗a}⊗μ⊗1^{⊗k-a-1}: H^{⊗k+1} → H^{⊗k}`.
pub fn partial_k(k: usize) -> Result<Op, GsError> {
    nonzero_arity(k)?;
    Ok(Op::lin_int((0..k).map(|a| (sign(a), pad(a, Op::Mu, k - a - 1))).collect())?)
}

/// `Σ_a (-1)^a 1^{⊗a}⊗Δ⊗1^{⊗k-a-1}: H^{⊗k} → H^{⊗k+1}`.
pub fn delta_k(k: usize) -> Result<Op, GsError> {
    nonzero_arity(k)?;
    Ok(Op::lin_int((0..k).map(|a| (sign(a), pad(a, Op::Delta, k - a - 1))).collect())?)
}

/// `d(f) = d_(j) f - (-1)^p f d_(i)`, landing at `(p+1, i, j)`.
pub fn gs_d(h: &GradedBialgebra, f: &Op) -> Result<Op, GsError> {
    let t = tridegree_of(f);
    if !h.has_differential() {
        return Ok(Op::Zero {
            i: t.i,
            j: t.j,
            deg: t.p + 1,
        });
    }
    let p_sign = if t.p.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(Op::lin_int(vec![
        (1, Op::compose(vec![d_k(h, t.j)?, f.clone()])?),
        (-p_sign, Op::compose(vec![f.clone(), d_k(h, t.i)?])?),
    ])?)
}

/// `∂(f) = λ^j(1⊗f) - f ∂_(i) - (-1)^i ρ^j(f⊗1)`, landing at `(p, i+1, j)`.
pub fn gs_partial(f: &Op) -> Result<Op, GsError> {
    let t = tridegree_of(f);
    let left = Op::compose(vec![action(t.j, Side::Left)?, Op::tensor(vec![Op::Id(1), f.clone()])])?;
    let middle = Op::compose(vec![f.clone(), partial_k(t.i)?])?;
    let right = Op::compose(vec![action(t.j, Side::Right)?, Op::tensor(vec![f.clone(), Op::Id(1)])])?;
    Ok(Op::lin_int(vec![(1, left), (-1, middle), (-sign(t.i), right)])?)
}

/// `δ(f) = (1⊗f)λ_i - δ_(j) f - (-1)^j (f⊗1)ρ_i`, landing at `(p, i, j+1)`.
pub fn gs_delta(f: &Op) -> Result<Op, GsError> {
    let t = tridegree_of(f);
    let left = Op::compose(vec![Op::tensor(vec![Op::Id(1), f.clone()]), coaction(t.i, Side::Left)?])?;
    let middle = Op::compose(vec![delta_k(t.j)?, f.clone()])?;
    let right = Op::compose(vec![Op::tensor(vec![f.clone(), Op::Id(1)]), coaction(t.i, Side::Right)?])?;
    Ok(Op::lin_int(vec![(1, left), (-1, middle), (-sign(t.j), right)])?)
}

/// The three pieces of `D(f) = [(-1)^{i+j} d + ∂ + (-1)^i δ](f)` with their
/// sign coefficients. Pieces that vanish identically are left out.
pub fn total_d_terms(h: &GradedBialgebra, f: &Op) -> Result<Vec<(i64, Op)>, GsError> {
    let t = tridegree_of(f);
    let terms = vec![
        (sign(t.i + t.j), gs_d(h, f)?),
        (1, gs_partial(f)?),
        (sign(t.i), gs_delta(f)?),
    ];
    Ok(terms.into_iter().filter(|(_, op)| !op.is_structurally_zero()).collect())
}

/// `D` applied to every component, summed by target tridegree.
pub fn total_d(h: &GradedBialgebra, c: &LazyCochain) -> Result<LazyCochain, GsError> {
    let mut grouped = std::collections::BTreeMap::new();
    for f in c.iter().map(|(_, op)| op) {
        for (s, g) in total_d_terms(h, f)? {
            grouped.entry(tridegree_of(&g)).or_insert_with(Vec::new).push((s, g));
        }
    }
    let mut out = LazyCochain::default();
    for (_, terms) in grouped {
        out.insert(Op::lin_int(terms)?);
    }
    Ok(out)
}

/// One summand `coeff · post ∘ (1^{⊗left} ⊗ f ⊗ 1^{⊗right}) ∘ pre` of `D(f)`.
#[derive(Clone, Debug)]
pub struct GsTerm {
    pub piece: GsOp,
    pub coeff: i64,
    pub post: Op,
    pub left: usize,
    pub right: usize,
    pub pre: Op,
}

impl GsTerm {
    pub fn apply_to(&self, f: &Op) -> Result<Op, GsError> {
        Ok(Op::compose(vec![self.post.clone(), pad(self.left, f.clone(), self.right), self.pre.clone()])?)
    }

    pub fn target(&self, t: Tridegree) -> Tridegree {
        self.piece.target(t)
    }
}

/// `D` at a generic map of tridegree `t`, split into terms linear in the map.
/// Terms through a vanishing differential are omitted.
pub fn gs_terms(h: &GradedBialgebra, t: Tridegree) -> Result<Vec<GsTerm>, GsError> {
    nonzero_arity(t.i)?;
    nonzero_arity(t.j)?;
    let term = |piece: GsOp, coeff: i64, post: Op, left, right, pre: Op| GsTerm {
        piece,
        coeff: coeff * piece.sign_at(t) as i64,
        post,
        left,
        right,
        pre,
    };
    let mut out = Vec::new();
    if h.has_differential() {
        let p_sign = if t.p.rem_euclid(2) == 0 { 1 } else { -1 };
        out.push(term(GsOp::D, 1, d_k(h, t.j)?, 0, 0, Op::Id(t.i)));
        out.push(term(GsOp::D, -p_sign, Op::Id(t.j), 0, 0, d_k(h, t.i)?));
    }
    out.push(term(GsOp::Partial, 1, action(t.j, Side::Left)?, 1, 0, Op::Id(t.i + 1)));
    out.push(term(GsOp::Partial, -1, Op::Id(t.j), 0, 0, partial_k(t.i)?));
    out.push(term(GsOp::Partial, -sign(t.i), action(t.j, Side::Right)?, 0, 1, Op::Id(t.i + 1)));
    out.push(term(GsOp::Delta, 1, Op::Id(t.j + 1), 1, 0, coaction(t.i, Side::Left)?));
    out.push(term(GsOp::Delta, -1, delta_k(t.j)?, 0, 0, Op::Id(t.i)));
    out.push(term(GsOp::Delta, -sign(t.j), Op::Id(t.j + 1), 0, 1, coaction(t.i, Side::Right)?));
    Ok(out)
}

/// Check `D(D(c)) = 0` componentwise on `window`. `D(c)` is tabulated on its
/// largest safe window first; that window must cover every word the second
/// application of `D` feeds into it.
pub fn check_d_squared(
    h: &GradedBialgebra,
    c: &crate::GsCochain,
    window: i64,
) -> Result<Vec<(Tridegree, graded_hopf::WindowCheck)>, GsError> {
    let first = total_d(h, &c.to_lazy())?;
    let lift = first.iter().map(|(_, op)| op.max_lift()).max().unwrap_or(0);
    let tab_window = h.d_max() - lift;
    let needed = window + i64::from(h.has_differential());
    if tab_window < needed {
        return Err(GsError::WindowTooSmall {
            window,
            reason: format!("D(c) is only safe up to degree {tab_window}, {needed} needed"),
        });
    }
    let table = first.tabulate(h, tab_window)?;
    total_d(h, &table.to_lazy())?.check_vanishes_within(h, window)
}
