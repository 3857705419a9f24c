use coeff_chain::{BigInt, Chain, Ring};

use crate::{HopfError, Mono, Word, WordChain};

/// `Λ(x,y)` truncated at total degree `d_max`: basis `x^i y^p`, `i + 2p ≤ d_max`,
/// `x² = 0`, `x` and `y` primitive. The DG variant has `dx = y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBialgebra {
    d_max: i64,
    dx: bool,
    ring: Ring,
}

/// `Λ(x,y)` over Z with cutoff `d_max ≥ 4` and zero differential.
pub fn make_lambda_xy(d_max: i64) -> Result<GradedBialgebra, HopfError> {
    if d_max < 4 {
        return Err(HopfError::BadCutoff(d_max));
    }
    Ok(GradedBialgebra {
        d_max,
        dx: false,
        ring: Ring::Z,
    })
}

/// `Λ(x,y)` with `dx = y`, extended as a derivation.
pub fn make_lambda_xy_dg(d_max: i64) -> Result<GradedBialgebra, HopfError> {
    Ok(GradedBialgebra {
        dx: true,
        ..make_lambda_xy(d_max)?
    })
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut c = BigInt::from(1);
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

impl GradedBialgebra {
    pub fn with_ring(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn d_max(&self) -> i64 {
        self.d_max
    }

    pub fn has_differential(&self) -> bool {
        self.dx
    }

    pub fn basis(&self) -> Vec<Mono> {
        let mut out: Vec<Mono> = (0..=1u8)
            .flat_map(|x| (0..=(self.d_max / 2) as u32).map(move |p| Mono { x, p }))
            .filter(|m| m.deg() <= self.d_max)
            .collect();
        out.sort_by_key(|m| (m.deg(), *m));
        out
    }

    /// Basis words of arity `k` and total degree at most `max_deg`.
    pub fn words(&self, k: usize, max_deg: i64) -> Vec<Word> {
        let basis = self.basis();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(basis: &[Mono], k: usize, budget: i64, cur: &mut Vec<Mono>, out: &mut Vec<Word>) {
            if cur.len() == k {
                out.push(Word(cur.clone()));
                return;
            }
            for m in basis.iter().take_while(|m| m.deg() <= budget) {
                cur.push(*m);
                rec(basis, k, budget - m.deg(), cur, out);
                cur.pop();
            }
        }
        if max_deg >= 0 {
            rec(&basis, k, max_deg, &mut cur, &mut out);
        }
        out
    }

    pub fn check_window(&self, m: &Mono) -> Result<(), HopfError> {
        if m.deg() > self.d_max {
            return Err(HopfError::OutOfWindow {
                degree: m.deg(),
                window: self.d_max,
            });
        }
        Ok(())
    }

    pub fn mul(&self, a: &Mono, b: &Mono) -> Result<WordChain, HopfError> {
        if a.x + b.x > 1 {
            return Ok(Chain::zero(self.ring.clone()));
        }
        let r = Mono {
            x: a.x + b.x,
            p: a.p + b.p,
        };
        self.check_window(&r)?;
        Ok(Chain::basis(self.ring.clone(), Word::single(r)))
    }

    /// `Δ(x^i y^p) = Σ_k C(p,k) [x^i y^k ⊗ y^{p-k}  (+ y^k ⊗ x y^{p-k} if i = 1)]`.
    pub fn comul(&self, a: &Mono) -> WordChain {
        let mut out = Chain::zero(self.ring.clone());
        for k in 0..=a.p {
            let c = self.ring.from_bigint(binomial(a.p, k));
            out.add_term(Word(vec![Mono { x: a.x, p: k }, Mono::y_pow(a.p - k)]), &c);
            if a.x == 1 {
                out.add_term(Word(vec![Mono::y_pow(k), Mono::xy_pow(a.p - k)]), &c);
            }
        }
        out
    }

    pub fn diff(&self, a: &Mono) -> Result<WordChain, HopfError> {
        if !self.dx || a.x == 0 {
            return Ok(Chain::zero(self.ring.clone()));
        }
        let r = Mono::y_pow(a.p + 1);
        self.check_window(&r)?;
        Ok(Chain::basis(self.ring.clone(), Word::single(r)))
    }
}
