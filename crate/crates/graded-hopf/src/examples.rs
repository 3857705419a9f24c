use coeff_chain::Chain;

use crate::{GradedBialgebra, HomComponent, HopfError, Mono, Word};

/// Which exponents the `μ^n` formula on `Λ(x,y)` accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExponentRule {
    /// Every input is `x y^p` with `p ≥ 1`.
    Positive,
    /// Every input is `x y^p` with `p ≥ 0`.
    NonNegative,
}

impl ExponentRule {
    fn min_p(self) -> u32 {
        match self {
            ExponentRule::Positive => 1,
            ExponentRule::NonNegative => 0,
        }
    }
}

/// `μ^n(x y^{p_1}|…|x y^{p_n}) = y^{p_1+…+p_n+1}`, zero on every other
/// word; internal degree `2 - n`. Tabulated on inputs of degree `≤ d_max`.
pub fn mu_n_ex1(h: &GradedBialgebra, n: usize, rule: ExponentRule) -> Result<HomComponent, HopfError> {
    if n < 3 {
        return Err(HopfError::Precondition(format!("μ^n needs n >= 3, got {n}")));
    }
    let mut out = HomComponent::new(format!("μ^{n}"), n, 1, 2 - n as i64, h.ring().clone());
    let mut ps = Vec::with_capacity(n);
    fn rec(
        h: &GradedBialgebra,
        n: usize,
        min_p: u32,
        budget: i64,
        ps: &mut Vec<u32>,
        out: &mut HomComponent,
    ) -> Result<(), HopfError> {
        if ps.len() == n {
            let w = Word(ps.iter().map(|&p| Mono::xy_pow(p)).collect());
            let total: u32 = ps.iter().sum();
            let v = Chain::basis(h.ring().clone(), Word::single(Mono::y_pow(total + 1)));
            return out.insert(w, v);
        }
        let mut p = min_p;
        while 1 + 2 * p as i64 <= budget {
            ps.push(p);
            rec(h, n, min_p, budget - 1 - 2 * p as i64, ps, out)?;
            ps.pop();
            p += 1;
        }
        Ok(())
    }
    rec(h, n, rule.min_p(), h.d_max(), &mut ps, &mut out)?;
    Ok(out)
}

/// The degree `-1` map `ω: H^{⊗2} → H^{⊗2}` with `ω(y|y) = x|y + y|x`,
/// `ω(x|y) = ω(y|x) = x|x` and zero elsewhere.
pub fn omega22_ex2(h: &GradedBialgebra) -> Result<HomComponent, HopfError> {
    if h.d_max() < 4 {
        return Err(HopfError::BadCutoff(h.d_max()));
    }
    let (x, y) = (Mono::X, Mono::Y);
    let ring = h.ring().clone();
    let mut out = HomComponent::new("ω", 2, 2, -1, ring.clone());
    out.insert(
        Word(vec![y, y]),
        Chain::from_int_terms(ring.clone(), [(Word(vec![x, y]), 1), (Word(vec![y, x]), 1)]),
    )?;
    out.insert(Word(vec![x, y]), Chain::from_int_terms(ring.clone(), [(Word(vec![x, x]), 1)]))?;
    out.insert(Word(vec![y, x]), Chain::from_int_terms(ring, [(Word(vec![x, x]), 1)]))?;
    Ok(out)
}
