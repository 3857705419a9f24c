//! Verifiers for the A(n)-algebra and A(n)-coalgebra relations, simple A(3)
//! structures, Hopf A(n) compatibility and the `μ^n` self-interaction
//! relation, evaluated on degree windows of a truncated bialgebra.

mod report;

use std::collections::BTreeMap;

use coeff_chain::BigInt;
use graded_hopf::{
    check_vanishes, delta_tensor, mult_chain_left, mult_chain_right, pad, GradedBialgebra, HopfError, Op,
};
use thiserror::Error;

pub use report::{RelationReport, Status, SuiteReport, Witness};

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("operation of arity {k} must have degree {expected}, found {found}")]
    WrongDegree { k: usize, expected: i64, found: i64 },
    #[error("k = {k} exceeds the bound n = {n}")]
    AboveBound { k: usize, n: usize },
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

/// A graded module (here a truncated bialgebra) with operations `μ^k`
/// (`H^{⊗k} → H`) and/or `Δ^k` (`H → H^{⊗k}`) of degree `2 - k`, `k ≤ n`.
/// `μ^1 = Δ^1 = d`, `μ^2 = μ`, `Δ^2 = Δ`; absent operations are zero.
#[derive(Clone, Debug)]
pub struct AnStructure {
    pub h: GradedBialgebra,
    pub n: usize,
    mu: BTreeMap<usize, Op>,
    delta: BTreeMap<usize, Op>,
}

impl AnStructure {
    /// `(H, d, μ)` and `(H, d, Δ)` with no higher operations.
    pub fn strict(h: GradedBialgebra, n: usize) -> Self {
        let d = if h.has_differential() {
            Op::D
        } else {
            Op::Zero { i: 1, j: 1, deg: 1 }
        };
        let mu = BTreeMap::from([(1, d.clone()), (2, Op::Mu)]);
        let delta = BTreeMap::from([(1, d), (2, Op::Delta)]);
        AnStructure { h, n, mu, delta }
    }

    /// No operations at all; every one must be supplied.
    pub fn empty(h: GradedBialgebra, n: usize) -> Self {
        AnStructure {
            h,
            n,
            mu: BTreeMap::new(),
            delta: BTreeMap::new(),
        }
    }

    fn check_shape(&self, k: usize, op: &Op) -> Result<(), CheckError> {
        if k > self.n {
            return Err(CheckError::AboveBound { k, n: self.n });
        }
        let expected = 2 - k as i64;
        if op.degree() != expected {
            return Err(CheckError::WrongDegree {
                k,
                expected,
                found: op.degree(),
            });
        }
        Ok(())
    }

    pub fn with_mu(mut self, k: usize, op: Op) -> Result<Self, CheckError> {
        self.check_shape(k, &op)?;
        if op.arity_in() != k || op.arity_out() != 1 {
            return Err(HopfError::ArityMismatch {
                expected: k,
                found: op.arity_in(),
            }
            .into());
        }
        self.mu.insert(k, op);
        Ok(self)
    }

    pub fn with_delta(mut self, k: usize, op: Op) -> Result<Self, CheckError> {
        self.check_shape(k, &op)?;
        if op.arity_in() != 1 || op.arity_out() != k {
            return Err(HopfError::ArityMismatch {
                expected: k,
                found: op.arity_out(),
            }
            .into());
        }
        self.delta.insert(k, op);
        Ok(self)
    }

    pub fn without_mu(mut self, k: usize) -> Self {
        self.mu.remove(&k);
        self
    }

    fn mu_or_zero(&self, k: usize, missing: &mut Vec<String>) -> Op {
        self.mu.get(&k).cloned().unwrap_or_else(|| {
            let name = format!("μ^{k}");
            if !missing.contains(&name) {
                missing.push(name);
            }
            Op::Zero {
                i: k,
                j: 1,
                deg: 2 - k as i64,
            }
        })
    }

    fn delta_or_zero(&self, k: usize, missing: &mut Vec<String>) -> Op {
        self.delta.get(&k).cloned().unwrap_or_else(|| {
            let name = format!("Δ^{k}");
            if !missing.contains(&name) {
                missing.push(name);
            }
            Op::Zero {
                i: 1,
                j: k,
                deg: 2 - k as i64,
            }
        })
    }
}

fn run(relation: &str, k: Option<usize>, op: &Op, h: &GradedBialgebra, missing: Vec<String>) -> Result<RelationReport, CheckError> {
    let r = check_vanishes(op, h)?;
    Ok(RelationReport::from_check(relation, k, &r, missing))
}

/// `Σ_{j<k} Σ_{i<k-j} (-1)^{j(i+1)} μ^{k-j}(1^{⊗i}⊗μ^{j+1}⊗1^{⊗k-j-1-i})`.
pub fn an_algebra_relation(s: &AnStructure, k: usize, missing: &mut Vec<String>) -> Result<Op, CheckError> {
    let mut terms = Vec::new();
    for j in 0..k {
        for i in 0..k - j {
            let inner = pad(i, s.mu_or_zero(j + 1, missing), k - j - 1 - i);
            let sign = if (j * (i + 1)) % 2 == 0 { 1 } else { -1 };
            terms.push((sign, Op::compose(vec![s.mu_or_zero(k - j, missing), inner])?));
        }
    }
    Ok(Op::lin_int(terms)?)
}

/// `Σ_{j<k} Σ_{i<k-j} (-1)^{j(k+i+1)} (1^{⊗i}⊗Δ^{j+1}⊗1^{⊗k-j-1-i})Δ^{k-j}`.
pub fn an_coalgebra_relation(s: &AnStructure, k: usize, missing: &mut Vec<String>) -> Result<Op, CheckError> {
    let mut terms = Vec::new();
    for j in 0..k {
        for i in 0..k - j {
            let outer = pad(i, s.delta_or_zero(j + 1, missing), k - j - 1 - i);
            let sign = if (j * (k + i + 1)) % 2 == 0 { 1 } else { -1 };
            terms.push((sign, Op::compose(vec![outer, s.delta_or_zero(k - j, missing)])?));
        }
    }
    Ok(Op::lin_int(terms)?)
}

/// The A(n)-algebra relations for `k = 1..=k_max`.
pub fn check_an_algebra(s: &AnStructure, k_max: usize) -> Result<Vec<RelationReport>, CheckError> {
    if k_max > s.n {
        return Err(CheckError::AboveBound { k: k_max, n: s.n });
    }
    (1..=k_max)
        .map(|k| {
            let mut missing = Vec::new();
            let op = an_algebra_relation(s, k, &mut missing)?;
            run("A(n)-algebra", Some(k), &op, &s.h, missing)
        })
        .collect()
}

/// The A(n)-coalgebra relations for `k = 1..=k_max`.
pub fn check_an_coalgebra(s: &AnStructure, k_max: usize) -> Result<Vec<RelationReport>, CheckError> {
    if k_max > s.n {
        return Err(CheckError::AboveBound { k: k_max, n: s.n });
    }
    (1..=k_max)
        .map(|k| {
            let mut missing = Vec::new();
            let op = an_coalgebra_relation(s, k, &mut missing)?;
            run("A(n)-coalgebra", Some(k), &op, &s.h, missing)
        })
        .collect()
}

/// Conditions (i)–(iii) of a simple A(3)-algebra `(d, μ, μ^3)`.
pub fn check_simple_a3(s: &AnStructure) -> Result<SuiteReport, CheckError> {
    let mut missing = Vec::new();
    let d = s.mu_or_zero(1, &mut missing);
    let mu = s.mu_or_zero(2, &mut missing);
    let mu3 = s.mu_or_zero(3, &mut missing);
    let h = &s.h;
    let mut items = Vec::new();

    let dd = Op::compose(vec![d.clone(), d.clone()])?;
    items.push(run("(i) d∘d", None, &dd, h, missing.clone())?);
    let d_on_2 = Op::lin_int(vec![(1, pad(0, d.clone(), 1)), (1, pad(1, d.clone(), 0))])?;
    let leibniz = Op::lin_int(vec![
        (1, Op::compose(vec![d.clone(), mu.clone()])?),
        (-1, Op::compose(vec![mu.clone(), d_on_2])?),
    ])?;
    items.push(run("(i) Leibniz", None, &leibniz, h, missing.clone())?);

    let d_on_3 = Op::lin_int(vec![
        (1, pad(0, d.clone(), 2)),
        (1, pad(1, d.clone(), 1)),
        (1, pad(2, d.clone(), 0)),
    ])?;
    let ii = Op::lin_int(vec![
        (1, Op::compose(vec![d, mu3.clone()])?),
        (1, Op::compose(vec![mu3.clone(), d_on_3])?),
        (-1, Op::compose(vec![mu.clone(), pad(0, mu.clone(), 1)])?),
        (1, Op::compose(vec![mu.clone(), pad(1, mu.clone(), 0)])?),
    ])?;
    items.push(run("(ii) associating homotopy", None, &ii, h, missing.clone())?);

    let inner = Op::lin_int(vec![
        (1, pad(0, mu.clone(), 2)),
        (-1, pad(1, mu.clone(), 1)),
        (1, pad(2, mu.clone(), 0)),
    ])?;
    let outer = Op::lin_int(vec![(1, pad(1, mu3.clone(), 0)), (1, pad(0, mu3.clone(), 1))])?;
    let iii = Op::lin_int(vec![
        (1, Op::compose(vec![mu3, inner])?),
        (-1, Op::compose(vec![mu, outer])?),
    ])?;
    items.push(run("(iii) strict pentagon", None, &iii, h, missing)?);
    Ok(SuiteReport::new("simple A(3)", items))
}

fn check_mu_n_shape(mu_n: &Op, n: usize) -> Result<(), CheckError> {
    if mu_n.degree() != 2 - n as i64 {
        return Err(CheckError::WrongDegree {
            k: n,
            expected: 2 - n as i64,
            found: mu_n.degree(),
        });
    }
    if mu_n.arity_in() != n || mu_n.arity_out() != 1 {
        return Err(HopfError::ArityMismatch {
            expected: n,
            found: mu_n.arity_in(),
        }
        .into());
    }
    Ok(())
}

/// `Δμ^n - [f_n⊗μ^n + μ^n⊗g_n]σ_{2,n}Δ^{⊗n}` with
/// `f_n = μ(μ⊗1)⋯(μ⊗1^{⊗n-2})` and `g_n = μ(1⊗μ)⋯(1^{⊗n-2}⊗μ)`.
pub fn hopf_compatibility(mu_n: &Op, n: usize) -> Result<Op, CheckError> {
    check_mu_n_shape(mu_n, n)?;
    let bracket = Op::lin_int(vec![
        (1, Op::tensor(vec![mult_chain_left(n), mu_n.clone()])),
        (1, Op::tensor(vec![mu_n.clone(), mult_chain_right(n)])),
    ])?;
    let rhs = Op::compose(vec![bracket, Op::sigma(2, n), delta_tensor(n)])?;
    Ok(Op::lin_int(vec![(1, Op::compose(vec![Op::Delta, mu_n.clone()])?), (-1, rhs)])?)
}

/// The same relation written with `f_n` in both slots.
pub fn relation_seven(mu_n: &Op, n: usize) -> Result<Op, CheckError> {
    check_mu_n_shape(mu_n, n)?;
    let bracket = Op::lin_int(vec![
        (1, Op::tensor(vec![mult_chain_left(n), mu_n.clone()])),
        (1, Op::tensor(vec![mu_n.clone(), mult_chain_left(n)])),
    ])?;
    let rhs = Op::compose(vec![bracket, Op::sigma(2, n), delta_tensor(n)])?;
    Ok(Op::lin_int(vec![(1, Op::compose(vec![Op::Delta, mu_n.clone()])?), (-1, rhs)])?)
}

pub fn check_relation_seven(h: &GradedBialgebra, mu_n: &Op, n: usize) -> Result<RelationReport, CheckError> {
    run("relation (seven)", Some(n), &relation_seven(mu_n, n)?, h, Vec::new())
}

/// Hopf A(n)-algebra: (1) `(H, d, Δ)` is a coassociative DG coalgebra,
/// (2) `(H, d, μ, μ^n)` is an A(n)-algebra with `μ^k = 0` for `2 < k < n`,
/// (3) the compatibility of `Δ` with `μ^n`.
pub fn check_hopf_an(h: &GradedBialgebra, mu_n: &Op, n: usize) -> Result<SuiteReport, CheckError> {
    check_mu_n_shape(mu_n, n)?;
    let mut items = Vec::new();
    let coalg = AnStructure::strict(h.clone(), 3);
    for mut r in check_an_coalgebra(&coalg, 3)? {
        r.relation = "(1) DG coalgebra".into();
        r.missing.clear();
        items.push(r);
    }
    let alg = AnStructure::strict(h.clone(), n).with_mu(n, mu_n.clone())?;
    for mut r in check_an_algebra(&alg, n)? {
        r.relation = "(2) A(n)-algebra".into();
        r.missing.clear();
        items.push(r);
    }
    items.push(run("(3) compatibility", Some(n), &hopf_compatibility(mu_n, n)?, h, Vec::new())?);
    Ok(SuiteReport::new(format!("Hopf A({n})"), items))
}

/// `Σ_{i<n} (-1)^{i(n+1)} μ^n(1^{⊗i}⊗μ^n⊗1^{⊗n-i-1})`.
pub fn self_interaction(mu_n: &Op, n: usize) -> Result<Op, CheckError> {
    check_mu_n_shape(mu_n, n)?;
    let terms = (0..n)
        .map(|i| {
            let sign = if (i * (n + 1)) % 2 == 0 { 1 } else { -1 };
            Ok((sign, Op::compose(vec![mu_n.clone(), pad(i, mu_n.clone(), n - i - 1)])?))
        })
        .collect::<Result<Vec<_>, HopfError>>()?;
    Ok(Op::lin_int(terms)?)
}

pub fn check_mu_self_interaction(h: &GradedBialgebra, mu_n: &Op, n: usize) -> Result<RelationReport, CheckError> {
    run("self-interaction", Some(n), &self_interaction(mu_n, n)?, h, Vec::new())
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut c = BigInt::from(1);
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Both sides of
/// `C(p_1+…+p_n+1, i) = Σ_{s_1+…+s_n=i-1} Π C(p_k,s_k) + Σ_{s_1+…+s_n=i} Π C(p_k,s_k)`,
/// the right side by enumerating the tuples `s`.
pub fn binomial_identity(p: &[u64], i: u64) -> (BigInt, BigInt) {
    let total: u64 = p.iter().sum();
    let lhs = binom(total + 1, i);
    fn tuples(p: &[u64], target: u64) -> BigInt {
        match p.split_first() {
            None => BigInt::from(u8::from(target == 0)),
            Some((&first, rest)) => (0..=first.min(target))
                .map(|s| binom(first, s) * tuples(rest, target - s))
                .sum(),
        }
    }
    let mut rhs = tuples(p, i);
    if i >= 1 {
        rhs += tuples(p, i - 1);
    }
    (lhs, rhs)
}
