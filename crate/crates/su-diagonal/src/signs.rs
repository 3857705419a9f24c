use std::collections::{BTreeMap, HashMap};

use coeff_chain::linalg::{solve_gf2, Gf2Equation};
use coeff_chain::{Ring, Sign};
use permutahedron::{boundary, boundary_chain, enumerate_faces, BoundarySigns, OrderedPartition};

use crate::diagonal::{chain_map_defect, top_terms};
use crate::DiagError;

/// Integer signs for every boundary incidence and every top-cell CP term of
/// `P_1..P_{n_max}` under which `∂² = 0` and `Δ_P` is a chain map over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    n_max: usize,
    boundary: BTreeMap<(OrderedPartition, OrderedPartition), Sign>,
    cp: BTreeMap<(OrderedPartition, OrderedPartition), Sign>,
    pub rank: usize,
    pub free_bits: usize,
}

impl SignAssignment {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Sign of the CP term `a ⊗ b` of the top cell of `P_{|a|}`.
    pub fn cp_sign(&self, a: &OrderedPartition, b: &OrderedPartition) -> Option<Sign> {
        self.cp.get(&(a.clone(), b.clone())).copied()
    }

    pub fn num_boundary_signs(&self) -> usize {
        self.boundary.len()
    }

    pub fn num_cp_signs(&self) -> usize {
        self.cp.len()
    }
}

impl BoundarySigns for SignAssignment {
    fn boundary_sign(&self, face: &OrderedPartition, facet: &OrderedPartition) -> Option<Sign> {
        self.boundary.get(&(face.clone(), facet.clone())).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Var {
    Bd(OrderedPartition, OrderedPartition),
    Cp(OrderedPartition, OrderedPartition),
}

/// A term whose sign is `(-1)^{Σ bits + parity}`.
#[derive(Clone)]
struct SymTerm {
    bits: Vec<usize>,
    parity: bool,
}

fn xor_bits(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(*x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

struct Builder {
    vars: HashMap<Var, usize>,
    names: Vec<Var>,
    eqs: Vec<Gf2Equation>,
}

impl Builder {
    fn var(&mut self, v: Var) -> usize {
        if let Some(&k) = self.vars.get(&v) {
            return k;
        }
        self.names.push(v.clone());
        self.vars.insert(v, self.names.len() - 1);
        self.names.len() - 1
    }

    fn sym_boundary(&mut self, face: &OrderedPartition) -> Vec<(OrderedPartition, SymTerm)> {
        face.facets()
            .into_iter()
            .map(|g| {
                let b = self.var(Var::Bd(face.clone(), g.clone()));
                (g, SymTerm { bits: vec![b], parity: false })
            })
            .collect()
    }

    fn sym_diag(&mut self, face: &OrderedPartition) -> Result<Vec<(OrderedPartition, OrderedPartition, SymTerm)>, DiagError> {
        let mut acc = vec![(Vec::<Vec<u8>>::new(), Vec::<Vec<u8>>::new(), SymTerm { bits: vec![], parity: false }, 0usize)];
        for factor in permutahedron::factorize(face) {
            let terms = top_terms(factor.size())?;
            let mut next = Vec::new();
            for (u, v, t, dv) in &acc {
                for (a, b) in terms.iter() {
                    let bit = self.var(Var::Cp(a.clone(), b.clone()));
                    let mut u2 = u.clone();
                    u2.extend(factor.relabel_back(a));
                    let mut v2 = v.clone();
                    v2.extend(factor.relabel_back(b));
                    let term = SymTerm {
                        bits: xor_bits(&t.bits, &[bit]),
                        parity: t.parity ^ (dv * a.dim() % 2 == 1),
                    };
                    next.push((u2, v2, term, dv + b.dim()));
                }
            }
            acc = next;
        }
        Ok(acc
            .into_iter()
            .map(|(u, v, t, _)| (permutahedron::concat_blocks(u), permutahedron::concat_blocks(v), t))
            .collect())
    }

    /// Every key must occur exactly twice with opposite signs.
    fn pair_up<K: Ord>(&mut self, terms: Vec<(K, SymTerm)>, what: &str) -> Result<(), DiagError> {
        let mut by: BTreeMap<K, Vec<SymTerm>> = BTreeMap::new();
        for (k, t) in terms {
            by.entry(k).or_default().push(t);
        }
        for (_, ts) in by {
            match ts.as_slice() {
                [a, b] => self.eqs.push(Gf2Equation {
                    vars: xor_bits(&a.bits, &b.bits),
                    rhs: !(a.parity ^ b.parity),
                }),
                ts if ts.len() % 2 == 1 => return Err(DiagError::Unsatisfiable(format!("{what}: odd multiplicity"))),
                ts => return Err(DiagError::NonBinaryTerm { what: what.to_string(), multiplicity: ts.len() }),
            }
        }
        Ok(())
    }
}

/// Find ±1 signs for all boundary incidences and CP terms of `P_1..P_{n_max}`
/// so that `∂² = 0` and `(∂⊗1 + 1⊗∂)Δ_P = Δ_P∂` hold over Z, by solving the
/// induced linear system over GF(2). Free bits are set to `+1`.
pub fn solve_integer_signs(n_max: usize) -> Result<SignAssignment, DiagError> {
    if n_max == 0 || n_max > 5 {
        return Err(DiagError::OutOfRange(format!("n_max = {n_max} (supported 1..=5)")));
    }
    let mut bld = Builder {
        vars: HashMap::new(),
        names: Vec::new(),
        eqs: Vec::new(),
    };
    for n in 1..=n_max {
        for (a, b) in top_terms(n)?.iter() {
            bld.var(Var::Cp(a.clone(), b.clone()));
        }
        for face in enumerate_faces(n, None).map_err(|e| DiagError::Malformed(e.to_string()))? {
            let mut sq = Vec::new();
            for (g, t1) in bld.sym_boundary(&face) {
                for (h, t2) in bld.sym_boundary(&g) {
                    sq.push((h, SymTerm { bits: xor_bits(&t1.bits, &t2.bits), parity: false }));
                }
            }
            bld.pair_up(sq, &format!("∂² on {face}"))?;

            let mut cm = Vec::new();
            for (u, v, t) in bld.sym_diag(&face)? {
                for (u2, tb) in bld.sym_boundary(&u) {
                    cm.push(((u2, v.clone()), SymTerm { bits: xor_bits(&t.bits, &tb.bits), parity: t.parity }));
                }
                let du = u.dim() % 2 == 1;
                for (v2, tb) in bld.sym_boundary(&v) {
                    cm.push(((u.clone(), v2), SymTerm { bits: xor_bits(&t.bits, &tb.bits), parity: t.parity ^ du }));
                }
            }
            for (g, tb) in bld.sym_boundary(&face) {
                for (u, v, t) in bld.sym_diag(&g)? {
                    cm.push(((u, v), SymTerm { bits: xor_bits(&t.bits, &tb.bits), parity: !t.parity }));
                }
            }
            bld.pair_up(cm, &format!("chain map on {face}"))?;
        }
    }
    let sol = solve_gf2(bld.names.len(), &bld.eqs)
        .ok_or_else(|| DiagError::Unsatisfiable(format!("inconsistent GF(2) system for n_max = {n_max}")))?;
    let mut out = SignAssignment {
        n_max,
        boundary: BTreeMap::new(),
        cp: BTreeMap::new(),
        rank: sol.rank,
        free_bits: sol.free,
    };
    for (k, v) in bld.names.into_iter().enumerate() {
        let s = if sol.values[k] { Sign::Minus } else { Sign::Plus };
        match v {
            Var::Bd(f, g) => out.boundary.insert((f, g), s),
            Var::Cp(a, b) => out.cp.insert((a, b), s),
        };
    }
    Ok(out)
}

/// Independent check of an assignment by direct evaluation over Z.
pub fn verify_signs(signs: &SignAssignment) -> Result<(), DiagError> {
    let ring = Ring::Z;
    for n in 1..=signs.n_max {
        for face in enumerate_faces(n, None).map_err(|e| DiagError::Malformed(e.to_string()))? {
            let b = boundary(&face, &ring, Some(signs))?;
            if !boundary_chain(&b, Some(signs))?.is_zero() {
                return Err(DiagError::Verification(format!("∂² ≠ 0 on {face}")));
            }
            if !chain_map_defect(&face, &ring, Some(signs))?.is_zero() {
                return Err(DiagError::Verification(format!("chain map fails on {face}")));
            }
        }
    }
    Ok(())
}
