use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use coeff_chain::{Chain, Coeff, Ring, Sign, Tensor};
use permutahedron::{boundary, concat_blocks, factorize, BoundarySigns, OrderedPartition};

use crate::matrix::{derived_matrices, step_matrices, CellMatrix};
use crate::{DiagError, SignAssignment};

pub type Cp = (OrderedPartition, OrderedPartition);
pub type TensorChain = Chain<Tensor<OrderedPartition>>;

/// Read a complementary pair off a derived matrix: `a` = columns left to
/// right, `b` = rows bottom to top.
pub fn cp_of_matrix(m: &CellMatrix) -> Result<Cp, DiagError> {
    let a = (0..m.cols()).map(|j| m.col_entries(j)).collect();
    let b = (0..m.rows()).rev().map(|i| m.row_entries(i)).collect();
    let to_face = |blocks| OrderedPartition::new(blocks).map_err(|e| DiagError::Malformed(e.to_string()));
    Ok((to_face(a)?, to_face(b)?))
}

/// `(p,q)`-complementary pairs: one per derived matrix of a `q×p` step
/// matrix, deduplicated and sorted.
pub fn complementary_pairs(n: usize, p: usize, q: usize) -> Result<Vec<Cp>, DiagError> {
    if p == 0 || q == 0 || p + q != n + 1 {
        return Err(DiagError::Arity { n, p, q });
    }
    let mut out = BTreeSet::new();
    for e in step_matrices(q, p) {
        for m in derived_matrices(&e)? {
            out.insert(cp_of_matrix(&m)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Unsigned terms of the diagonal of the top cell of `P_n`, sorted.
pub fn top_terms(n: usize) -> Result<Arc<Vec<Cp>>, DiagError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Cp>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache lock").get(&n) {
        return Ok(v.clone());
    }
    let mut all = BTreeSet::new();
    for p in 1..=n {
        all.extend(complementary_pairs(n, p, n + 1 - p)?);
    }
    let v = Arc::new(all.into_iter().collect::<Vec<_>>());
    cache.lock().expect("cache lock").insert(n, v.clone());
    Ok(v)
}

fn cp_coeff(ring: &Ring, signs: Option<&SignAssignment>, cp: &Cp) -> Result<Coeff, DiagError> {
    if ring.characteristic() == 2 {
        return Ok(ring.one());
    }
    let s = signs
        .ok_or_else(|| DiagError::MissingSigns(ring.to_string()))?
        .cp_sign(&cp.0, &cp.1)
        .ok_or_else(|| DiagError::SignsUnavailable(format!("{} ⊗ {}", cp.0, cp.1)))?;
    Ok(ring.from_int(s.to_i64()))
}

/// `Δ_P` on the top cell of `P_n`.
pub fn diagonal_top(n: usize, ring: &Ring, signs: Option<&SignAssignment>) -> Result<TensorChain, DiagError> {
    let mut out = Chain::zero(ring.clone());
    for cp in top_terms(n)?.iter() {
        let c = cp_coeff(ring, signs, cp)?;
        out.add_term(Tensor::pair(cp.0.clone(), cp.1.clone()), &c);
    }
    Ok(out)
}

/// `Δ_P` on any face, extended multiplicatively over its factors:
/// `(u1⊗v1)·(u2⊗v2) = (-1)^{|v1||u2|} u1u2 ⊗ v1v2`.
pub fn diagonal_face(
    face: &OrderedPartition,
    ring: &Ring,
    signs: Option<&SignAssignment>,
) -> Result<TensorChain, DiagError> {
    struct Partial {
        u: Vec<Vec<u8>>,
        v: Vec<Vec<u8>>,
        coeff: Coeff,
        du: usize,
        dv: usize,
    }
    let mut acc = vec![Partial {
        u: Vec::new(),
        v: Vec::new(),
        coeff: ring.one(),
        du: 0,
        dv: 0,
    }];
    for factor in factorize(face) {
        let terms = top_terms(factor.size())?;
        let mut next = Vec::with_capacity(acc.len() * terms.len());
        for part in &acc {
            for cp in terms.iter() {
                let mut c = ring.mul(&part.coeff, &cp_coeff(ring, signs, cp)?);
                if part.dv * cp.0.dim() % 2 == 1 {
                    c = ring.neg(&c);
                }
                let mut u = part.u.clone();
                u.extend(factor.relabel_back(&cp.0));
                let mut v = part.v.clone();
                v.extend(factor.relabel_back(&cp.1));
                next.push(Partial {
                    u,
                    v,
                    coeff: c,
                    du: part.du + cp.0.dim(),
                    dv: part.dv + cp.1.dim(),
                });
            }
        }
        acc = next;
    }
    let mut out = Chain::zero(ring.clone());
    for p in acc {
        let key = Tensor::pair(concat_blocks(p.u), concat_blocks(p.v));
        out.add_term(key, &p.coeff);
    }
    Ok(out)
}

/// `Δ_P^{(k)} = (Δ_P ⊗ 1^{⊗k-1}) Δ_P^{(k-1)}`, `Δ_P^{(0)} = 1`.
pub fn iterated_diagonal(
    k: usize,
    face: &OrderedPartition,
    ring: &Ring,
    signs: Option<&SignAssignment>,
) -> Result<TensorChain, DiagError> {
    let mut cur = Chain::basis(ring.clone(), Tensor(vec![face.clone()]));
    for _ in 0..k {
        cur = cur.try_map_linear(|w| {
            let d = diagonal_face(&w.0[0], ring, signs)?;
            Ok::<_, DiagError>(d.map_keys(|pair| {
                let mut v = pair.0.clone();
                v.extend_from_slice(&w.0[1..]);
                Tensor(v)
            }))
        })?;
    }
    Ok(cur)
}

/// `∂` on tensor words: `∂(w_1⊗…⊗w_r) = Σ_k (-1)^{|w_1|+…+|w_{k-1}|} w_1⊗…⊗∂w_k⊗…`.
pub fn tensor_boundary(
    c: &TensorChain,
    signs: Option<&dyn BoundarySigns>,
) -> Result<TensorChain, DiagError> {
    let ring = c.ring().clone();
    c.try_map_linear(|w| {
        let mut out = Chain::zero(ring.clone());
        let mut before = 0usize;
        for (k, f) in w.0.iter().enumerate() {
            let b = boundary(f, &ring, signs)?;
            for (g, coeff) in b.iter() {
                let mut word = w.0.clone();
                word[k] = g.clone();
                let s = Sign::from_parity(before as i64);
                out.add_term(Tensor(word), &ring.mul(coeff, &ring.from_int(s.to_i64())));
            }
            before += f.dim();
        }
        Ok::<_, DiagError>(out)
    })
}

/// `(∂⊗1 + 1⊗∂)Δ_P(face) - Δ_P(∂ face)`; zero iff the chain-map identity
/// holds on `face`.
pub fn chain_map_defect(
    face: &OrderedPartition,
    ring: &Ring,
    signs: Option<&SignAssignment>,
) -> Result<TensorChain, DiagError> {
    let bs = signs.map(|s| s as &dyn BoundarySigns);
    let lhs = tensor_boundary(&diagonal_face(face, ring, signs)?, bs)?;
    let rhs = boundary(face, ring, bs)?.try_map_linear(|f| diagonal_face(f, ring, signs))?;
    Ok(lhs.sub(&rhs)?)
}

/// Faces of `P_n` on which the chain-map identity fails, checked in parallel.
pub fn check_chain_map(
    n: usize,
    ring: &Ring,
    signs: Option<&SignAssignment>,
) -> Result<Vec<OrderedPartition>, DiagError> {
    let faces = permutahedron::enumerate_faces(n, None)?;
    let results: Vec<Result<Option<OrderedPartition>, DiagError>> = faces
        .into_par_iter()
        .map(|f| Ok((!chain_map_defect(&f, ring, signs)?.is_zero()).then_some(f)))
        .collect();
    results.into_iter().filter_map(Result::transpose).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }

    fn pairs(c: &TensorChain) -> Vec<String> {
        c.canonical_terms().into_iter().map(|(s, _, _)| s).collect()
    }

    #[test]
    fn low_dimensions() {
        assert_eq!(pairs(&diagonal_top(1, &Ring::F2, None).unwrap()), ["1 ⊗ 1"]);
        assert_eq!(pairs(&diagonal_top(2, &Ring::F2, None).unwrap()), ["12 ⊗ 2|1", "1|2 ⊗ 12"]);
    }

    #[test]
    fn two_by_one_readings() {
        assert_eq!(complementary_pairs(2, 2, 1).unwrap(), vec![(p("1|2"), p("12"))]);
        assert_eq!(complementary_pairs(2, 1, 2).unwrap(), vec![(p("12"), p("2|1"))]);
        assert!(complementary_pairs(3, 1, 1).is_err());
    }

    #[test]
    fn multiplicative_extension() {
        let d = diagonal_face(&p("12|3"), &Ring::F2, None).unwrap();
        assert_eq!(pairs(&d), ["12|3 ⊗ 2|1|3", "1|2|3 ⊗ 12|3"]);
        let v = p("2|3|1");
        let d = diagonal_face(&v, &Ring::F2, None).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.contains(&Tensor::pair(v.clone(), v)));
    }

    #[test]
    fn iterates() {
        let f = p("123");
        let k0 = iterated_diagonal(0, &f, &Ring::F2, None).unwrap();
        assert_eq!(pairs(&k0), ["123"]);
        let k1 = iterated_diagonal(1, &f, &Ring::F2, None).unwrap();
        assert_eq!(k1, diagonal_face(&f, &Ring::F2, None).unwrap());
    }
}
