use std::fmt;
use std::sync::Arc;

use coeff_chain::{sigma_rs, Chain, Coeff, Ring, Sign, SignedPermutation};

use crate::{GradedBialgebra, HomComponent, HopfError, Word, WordChain};

/// A homogeneous multilinear map `H^{⊗i} → H^{⊗j}` given as an expression in
/// the structure maps. Evaluation follows the Koszul rule
/// `(f⊗g)(a⊗b) = (-1)^{|g||a|} f(a)⊗g(b)`.
#[derive(Clone, Debug)]
pub enum Op {
    Id(usize),
    Mu,
    Delta,
    D,
    Zero { i: usize, j: usize, deg: i64 },
    Table(Arc<HomComponent>),
    Perm(SignedPermutation),
    Tensor(Vec<Op>),
    /// `[f, g, h]` is `f∘g∘h`; `h` is applied first.
    Compose(Vec<Op>),
    Lin(Vec<(Coeff, Op)>),
}

impl Op {
    pub fn sigma(r: usize, s: usize) -> Op {
        Op::Perm(sigma_rs(r, s))
    }

    pub fn tensor(ops: Vec<Op>) -> Op {
        Op::Tensor(ops)
    }

    pub fn table(t: HomComponent) -> Op {
        Op::Table(Arc::new(t))
    }

    pub fn compose(ops: Vec<Op>) -> Result<Op, HopfError> {
        if ops.is_empty() {
            return Err(HopfError::Shape("empty composite".into()));
        }
        for w in ops.windows(2) {
            if w[1].arity_out() != w[0].arity_in() {
                return Err(HopfError::ArityMismatch {
                    expected: w[0].arity_in(),
                    found: w[1].arity_out(),
                });
            }
        }
        Ok(if ops.len() == 1 {
            ops.into_iter().next().expect("one op")
        } else {
            Op::Compose(ops)
        })
    }

    pub fn lin(terms: Vec<(Coeff, Op)>) -> Result<Op, HopfError> {
        let Some((_, first)) = terms.first() else {
            return Err(HopfError::Shape("empty linear combination".into()));
        };
        let shape = (first.arity_in(), first.arity_out(), first.degree());
        for (_, op) in &terms {
            if (op.arity_in(), op.arity_out(), op.degree()) != shape {
                return Err(HopfError::Shape(format!(
                    "cannot add {op} of shape {:?} to shape {shape:?}",
                    (op.arity_in(), op.arity_out(), op.degree())
                )));
            }
        }
        Ok(Op::Lin(terms))
    }

    pub fn lin_int(terms: Vec<(i64, Op)>) -> Result<Op, HopfError> {
        Op::lin(terms.into_iter().map(|(c, op)| (Ring::Z.from_int(c), op)).collect())
    }

    pub fn arity_in(&self) -> usize {
        match self {
            Op::Id(k) => *k,
            Op::Mu => 2,
            Op::Delta | Op::D => 1,
            Op::Zero { i, .. } => *i,
            Op::Table(t) => t.arity_in(),
            Op::Perm(p) => p.len(),
            Op::Tensor(fs) => fs.iter().map(Op::arity_in).sum(),
            Op::Compose(fs) => fs[fs.len() - 1].arity_in(),
            Op::Lin(ts) => ts[0].1.arity_in(),
        }
    }

    pub fn arity_out(&self) -> usize {
        match self {
            Op::Id(k) => *k,
            Op::Mu | Op::D => 1,
            Op::Delta => 2,
            Op::Zero { j, .. } => *j,
            Op::Table(t) => t.arity_out(),
            Op::Perm(p) => p.len(),
            Op::Tensor(fs) => fs.iter().map(Op::arity_out).sum(),
            Op::Compose(fs) => fs[0].arity_out(),
            Op::Lin(ts) => ts[0].1.arity_out(),
        }
    }

    /// Internal degree.
    pub fn degree(&self) -> i64 {
        match self {
            Op::Id(_) | Op::Mu | Op::Delta | Op::Perm(_) => 0,
            Op::D => 1,
            Op::Zero { deg, .. } => *deg,
            Op::Table(t) => t.degree(),
            Op::Tensor(fs) | Op::Compose(fs) => fs.iter().map(Op::degree).sum(),
            Op::Lin(ts) => ts[0].1.degree(),
        }
    }

    /// True when the map is zero by construction: a zero factor in a tensor
    /// or composite, or an empty combination.
    pub fn is_structurally_zero(&self) -> bool {
        match self {
            Op::Zero { .. } => true,
            Op::Tensor(fs) | Op::Compose(fs) => fs.iter().any(Op::is_structurally_zero),
            Op::Lin(ts) => ts.iter().all(|(_, f)| f.is_structurally_zero()),
            _ => false,
        }
    }

    /// Upper bound on how far any intermediate result can rise above the
    /// input degree during evaluation.
    pub fn max_lift(&self) -> i64 {
        match self {
            Op::Id(_) | Op::Mu | Op::Delta | Op::Perm(_) | Op::Zero { .. } => 0,
            Op::D => 1,
            Op::Table(t) => t.degree().max(0),
            Op::Tensor(fs) if fs.iter().any(Op::is_structurally_zero) => 0,
            Op::Tensor(fs) => fs.iter().map(Op::max_lift).sum(),
            Op::Compose(fs) => {
                let (mut lift, mut running) = (0i64, 0i64);
                for f in fs.iter().rev() {
                    if f.is_structurally_zero() {
                        break;
                    }
                    lift = lift.max(running + f.max_lift());
                    running += f.degree();
                }
                lift
            }
            Op::Lin(ts) => ts.iter().map(|(_, f)| f.max_lift()).max().unwrap_or(0),
        }
    }

    pub fn eval_word(&self, h: &GradedBialgebra, w: &Word) -> Result<WordChain, HopfError> {
        if w.arity() != self.arity_in() {
            return Err(HopfError::ArityMismatch {
                expected: self.arity_in(),
                found: w.arity(),
            });
        }
        let ring = h.ring();
        match self {
            Op::Id(_) => Ok(Chain::basis(ring.clone(), w.clone())),
            Op::Mu => h.mul(&w.0[0], &w.0[1]),
            Op::Delta => Ok(h.comul(&w.0[0])),
            Op::D => h.diff(&w.0[0]),
            Op::Zero { .. } => Ok(Chain::zero(ring.clone())),
            Op::Table(t) => t.apply(h, w),
            Op::Perm(p) => {
                let s = p.sign(&w.degrees())?;
                let out = Chain::from_int_terms(ring.clone(), [(Word(p.apply(&w.0)), s.to_i64())]);
                Ok(out)
            }
            Op::Tensor(fs) => {
                let mut acc = Chain::basis(ring.clone(), Word(Vec::new()));
                let mut pos = 0;
                let mut before = 0i64;
                let mut sign = Sign::Plus;
                for f in fs {
                    let chunk = Word(w.0[pos..pos + f.arity_in()].to_vec());
                    pos += f.arity_in();
                    sign = sign * Sign::from_parity(f.degree() * before);
                    before += chunk.deg();
                    let r = f.eval_word(h, &chunk)?;
                    if r.is_zero() {
                        return Ok(Chain::zero(ring.clone()));
                    }
                    acc = acc.bilinear(&r, |a, b| (a.concat(b), false));
                }
                Ok(if sign.is_minus() { acc.neg() } else { acc })
            }
            Op::Compose(fs) => {
                let mut cur = Chain::basis(ring.clone(), w.clone());
                for f in fs.iter().rev() {
                    cur = f.eval(h, &cur)?;
                    if cur.is_zero() {
                        break;
                    }
                }
                Ok(cur)
            }
            Op::Lin(ts) => {
                let mut out = Chain::zero(ring.clone());
                for (c, f) in ts {
                    let c = ring.normalize(c.clone());
                    if c.is_zero() {
                        continue;
                    }
                    out.add_scaled(&f.eval_word(h, w)?, &c)?;
                }
                Ok(out)
            }
        }
    }

    pub fn eval(&self, h: &GradedBialgebra, c: &WordChain) -> Result<WordChain, HopfError> {
        c.try_map_linear(|w| self.eval_word(h, w))
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Id(1) => write!(f, "1"),
            Op::Id(k) => write!(f, "1^{k}"),
            Op::Mu => write!(f, "μ"),
            Op::Delta => write!(f, "Δ"),
            Op::D => write!(f, "d"),
            Op::Zero { .. } => write!(f, "0"),
            Op::Table(t) => write!(f, "{}", t.name),
            Op::Perm(p) => write!(f, "σ{:?}", p.one_based()),
            Op::Tensor(fs) => {
                write!(f, "(")?;
                for (k, g) in fs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "⊗")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
            Op::Compose(fs) => {
                for (k, g) in fs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "∘")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            Op::Lin(ts) => {
                write!(f, "[")?;
                for (k, (c, g)) in ts.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    match c.to_i64() {
                        Some(1) => write!(f, "{g}")?,
                        Some(-1) => write!(f, "-{g}")?,
                        _ => write!(f, "({c}){g}")?,
                    }
                }
                write!(f, "]")
            }
        }
    }
}

/// `(f_1⊗…⊗f_a) ∘ perm ∘ (g_1⊗…⊗g_b)`.
pub fn compose_tensor(fs: Vec<Op>, gs: Vec<Op>, perm: Option<SignedPermutation>) -> Result<Op, HopfError> {
    let mut parts = vec![Op::Tensor(fs)];
    if let Some(p) = perm {
        parts.push(Op::Perm(p));
    }
    parts.push(Op::Tensor(gs));
    Op::compose(parts)
}

/// `μ(μ⊗1)⋯(μ⊗1^{i-2}): H^{⊗i} → H`.
pub fn mult_chain_left(i: usize) -> Op {
    if i <= 1 {
        return Op::Id(1);
    }
    let mut ops = vec![Op::Mu];
    ops.extend((1..i - 1).map(|k| Op::Tensor(vec![Op::Mu, Op::Id(k)])));
    Op::Compose(ops).flatten_single()
}

/// `μ(1⊗μ)⋯(1^{i-2}⊗μ)`.
pub fn mult_chain_right(i: usize) -> Op {
    if i <= 1 {
        return Op::Id(1);
    }
    let mut ops = vec![Op::Mu];
    ops.extend((1..i - 1).map(|k| Op::Tensor(vec![Op::Id(k), Op::Mu])));
    Op::Compose(ops).flatten_single()
}

/// `(Δ⊗1^{j-2})⋯(Δ⊗1)Δ: H → H^{⊗j}`.
pub fn comult_chain_left(j: usize) -> Op {
    if j <= 1 {
        return Op::Id(1);
    }
    let mut ops: Vec<Op> = (1..j - 1).rev().map(|k| Op::Tensor(vec![Op::Delta, Op::Id(k)])).collect();
    ops.push(Op::Delta);
    Op::Compose(ops).flatten_single()
}

/// `(1^{j-2}⊗Δ)⋯(1⊗Δ)Δ`.
pub fn comult_chain_right(j: usize) -> Op {
    if j <= 1 {
        return Op::Id(1);
    }
    let mut ops: Vec<Op> = (1..j - 1).rev().map(|k| Op::Tensor(vec![Op::Id(k), Op::Delta])).collect();
    ops.push(Op::Delta);
    Op::Compose(ops).flatten_single()
}

pub fn mu_tensor(j: usize) -> Op {
    Op::Tensor(vec![Op::Mu; j])
}

pub fn delta_tensor(i: usize) -> Op {
    Op::Tensor(vec![Op::Delta; i])
}

/// `1^{⊗a} ⊗ f ⊗ 1^{⊗b}`, omitting empty identities.
pub fn pad(a: usize, f: Op, b: usize) -> Op {
    let mut v = Vec::with_capacity(3);
    if a > 0 {
        v.push(Op::Id(a));
    }
    v.push(f);
    if b > 0 {
        v.push(Op::Id(b));
    }
    if v.len() == 1 {
        v.pop().expect("one op")
    } else {
        Op::Tensor(v)
    }
}

impl Op {
    fn flatten_single(self) -> Op {
        match self {
            Op::Compose(mut v) if v.len() == 1 => v.pop().expect("one op"),
            other => other,
        }
    }
}

/// Result of checking that a map vanishes on every input word within a
/// degree window.
#[derive(Clone, Debug)]
pub struct WindowCheck {
    pub window: i64,
    pub words_checked: usize,
    /// Lowest-degree failing input and the nonzero value there.
    pub counterexample: Option<(Word, WordChain)>,
}

impl WindowCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Check `op = 0` on all input words of degree at most
/// `d_max - max_lift(op)`, the largest window on which no intermediate result
/// leaves the truncation.
pub fn check_vanishes(op: &Op, h: &GradedBialgebra) -> Result<WindowCheck, HopfError> {
    check_vanishes_within(op, h, h.d_max() - op.max_lift())
}

/// As [`check_vanishes`] on a smaller window.
pub fn check_vanishes_within(op: &Op, h: &GradedBialgebra, window: i64) -> Result<WindowCheck, HopfError> {
    let safe = h.d_max() - op.max_lift();
    if window > safe {
        return Err(HopfError::OutOfWindow {
            degree: window + op.max_lift(),
            window: h.d_max(),
        });
    }
    let mut words = h.words(op.arity_in(), window);
    words.sort_by_key(|w| (w.deg(), w.clone()));
    let mut out = WindowCheck {
        window,
        words_checked: 0,
        counterexample: None,
    };
    for w in words {
        out.words_checked += 1;
        let v = op.eval_word(h, &w)?;
        if !v.is_zero() {
            out.counterexample = Some((w, v));
            break;
        }
    }
    Ok(out)
}
