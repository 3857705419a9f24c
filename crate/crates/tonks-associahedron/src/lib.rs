//! Planar trees as faces of the associahedra, the level-forgetting projection
//! `θ: P_n → K_{n+1}` and the diagonal `Δ_K` it induces.

mod tree;

use std::collections::BTreeMap;

use coeff_chain::{Chain, ChainError, Ring, Tensor};
use permutahedron::{boundary, enumerate_faces, OrderedPartition, PermError};
use su_diagonal::{diagonal_face, DiagError};
use thiserror::Error;

pub use tree::{enumerate_tree_faces, tree_facets, PlanarTree};

pub type TreeChain = Chain<PlanarTree>;
pub type TreeTensorChain = Chain<Tensor<PlanarTree>>;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("invalid tree: {0}")]
    Invalid(String),
    #[error("cannot parse tree: {0}")]
    Parse(String),
    #[error("K_n needs n >= 2 leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("tree {0} has dimension 0")]
    DimensionZero(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Diag(#[from] DiagError),
}

/// Read `face` as a leveled tree with leaves `0..=n` and forget the levels.
/// Gap `g` sits between leaves `g-1` and `g`; each block merges its gaps, and
/// every maximal run of clusters joined by one block becomes one vertex. The
/// face is degenerate when some block produces two or more vertices.
pub fn merge_simulation(face: &OrderedPartition) -> (PlanarTree, bool) {
    let n = face.n();
    // (first leaf, last leaf, tree)
    let mut clusters: Vec<(u8, u8, PlanarTree)> = (0..=n as u8).map(|l| (l, l, PlanarTree::Leaf(l))).collect();
    let mut degenerate = false;
    for block in face.blocks() {
        let mut links: Vec<usize> = block
            .iter()
            .map(|&g| {
                clusters
                    .iter()
                    .position(|c| c.0 <= g - 1 && g - 1 <= c.1)
                    .expect("gap inside leaf range")
            })
            .collect();
        links.sort_unstable();
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for k in links {
            match runs.last_mut() {
                Some(r) if r.1 == k => r.1 = k + 1,
                _ => runs.push((k, k + 1)),
            }
        }
        degenerate |= runs.len() > 1;
        let mut next = Vec::with_capacity(clusters.len());
        let mut k = 0;
        let mut r = runs.iter().peekable();
        while k < clusters.len() {
            match r.peek() {
                Some(&&(s, e)) if s == k => {
                    let sub = &clusters[s..=e];
                    next.push((sub[0].0, sub[sub.len() - 1].1, PlanarTree::Node(sub.iter().map(|c| c.2.clone()).collect())));
                    k = e + 1;
                    r.next();
                }
                _ => {
                    next.push(clusters[k].clone());
                    k += 1;
                }
            }
        }
        clusters = next;
    }
    debug_assert_eq!(clusters.len(), 1);
    (clusters.swap_remove(0).2, degenerate)
}

/// `θ(face)`, or `None` for a degenerate face.
pub fn theta(face: &OrderedPartition) -> Option<PlanarTree> {
    let (t, deg) = merge_simulation(face);
    (!deg).then_some(t)
}

/// `θ` on chains: degenerate faces go to zero, coefficients are kept.
pub fn theta_chain(c: &Chain<OrderedPartition>) -> TreeChain {
    let mut out = Chain::zero(c.ring().clone());
    for (f, v) in c.iter() {
        if let Some(t) = theta(f) {
            out.add_term(t, v);
        }
    }
    out
}

/// `θ^{⊗r}` on tensor chains.
pub fn theta_tensor(c: &Chain<Tensor<OrderedPartition>>) -> TreeTensorChain {
    let mut out = Chain::zero(c.ring().clone());
    for (w, v) in c.iter() {
        let ts: Option<Vec<PlanarTree>> = w.0.iter().map(theta).collect();
        if let Some(ts) = ts {
            out.add_term(Tensor(ts), v);
        }
    }
    out
}

/// Canonical non-degenerate `θ`-preimage: internal vertices in post-order,
/// each contributing the block of gaps between its consecutive children.
pub fn section(t: &PlanarTree) -> Result<OrderedPartition, TreeError> {
    t.validate()?;
    let mut blocks = Vec::new();
    t.post_order(&mut |v| {
        let mut b: Vec<u8> = v.children()[1..].iter().map(PlanarTree::first_leaf).collect();
        b.sort_unstable();
        blocks.push(b);
    });
    if blocks.is_empty() {
        return Err(TreeError::TooFewLeaves(1));
    }
    Ok(OrderedPartition::new(blocks)?)
}

/// `∂_K` over F2: the sum of the facets.
pub fn tree_boundary(t: &PlanarTree) -> Result<TreeChain, TreeError> {
    if t.dim() == 0 {
        return Err(TreeError::DimensionZero(t.to_string()));
    }
    Ok(Chain::from_int_terms(Ring::F2, tree_facets(t).into_iter().map(|f| (f, 1))))
}

/// `∂_K` extended linearly; dimension-0 trees go to zero.
pub fn tree_boundary_chain(c: &TreeChain) -> TreeChain {
    c.map_linear(|t| {
        let mut out = Chain::zero(c.ring().clone());
        for f in tree_facets(t) {
            out.add_int(f, 1);
        }
        out
    })
}

/// `∂` on tensors of trees over F2.
pub fn tree_tensor_boundary(c: &TreeTensorChain) -> TreeTensorChain {
    c.map_linear(|w| {
        let mut out = Chain::zero(c.ring().clone());
        for k in 0..w.0.len() {
            for f in tree_facets(&w.0[k]) {
                let mut v = w.0.clone();
                v[k] = f;
                out.add_int(Tensor(v), 1);
            }
        }
        out
    })
}

/// `Δ_K(t) = (θ⊗θ)Δ_P(section(t))` over F2.
pub fn diagonal_k(t: &PlanarTree) -> Result<TreeTensorChain, TreeError> {
    if t.leaves() == 1 {
        return Ok(Chain::basis(Ring::F2, Tensor::pair(t.clone(), t.clone())));
    }
    let face = section(t)?;
    Ok(theta_tensor(&diagonal_face(&face, &Ring::F2, None)?))
}

/// `Δ_K^{(k)} = (Δ_K ⊗ 1^{⊗k-1}) Δ_K^{(k-1)}`, `Δ_K^{(0)} = 1`.
pub fn iterated_diagonal_k(k: usize, t: &PlanarTree) -> Result<TreeTensorChain, TreeError> {
    let mut cur = Chain::basis(Ring::F2, Tensor(vec![t.clone()]));
    for _ in 0..k {
        cur = cur.try_map_linear(|w| {
            Ok::<_, TreeError>(diagonal_k(&w.0[0])?.map_keys(|pair| {
                let mut v = pair.0.clone();
                v.extend_from_slice(&w.0[1..]);
                Tensor(v)
            }))
        })?;
    }
    Ok(cur)
}

/// Faces of `P_n` on which `θ∂_P ≠ ∂_Kθ` over F2.
pub fn check_theta_commutes(n: usize) -> Result<Vec<OrderedPartition>, TreeError> {
    let mut bad = Vec::new();
    for f in enumerate_faces(n, None)? {
        let lhs = theta_chain(&boundary(&f, &Ring::F2, None)?);
        let rhs = match theta(&f) {
            Some(t) => tree_boundary_chain(&Chain::basis(Ring::F2, t)),
            None => Chain::zero(Ring::F2),
        };
        if lhs != rhs {
            bad.push(f);
        }
    }
    Ok(bad)
}

/// Trees of `K_{n+1}` with two non-degenerate preimages in `P_n` whose
/// projected diagonals differ.
pub fn check_well_defined(n: usize) -> Result<Vec<PlanarTree>, TreeError> {
    let mut seen: BTreeMap<PlanarTree, TreeTensorChain> = BTreeMap::new();
    let mut bad = Vec::new();
    for f in enumerate_faces(n, None)? {
        let Some(t) = theta(&f) else { continue };
        let d = theta_tensor(&diagonal_face(&f, &Ring::F2, None)?);
        match seen.get(&t) {
            Some(prev) if *prev != d => {
                if bad.last() != Some(&t) {
                    bad.push(t);
                }
            }
            Some(_) => {}
            None => {
                seen.insert(t, d);
            }
        }
    }
    Ok(bad)
}

/// Trees of `K_n` on which `(∂⊗1 + 1⊗∂)Δ_K ≠ Δ_K∂` over F2.
pub fn check_diagonal_k_chain_map(n: usize) -> Result<Vec<PlanarTree>, TreeError> {
    let mut bad = Vec::new();
    for t in enumerate_tree_faces(n, None)? {
        let lhs = tree_tensor_boundary(&diagonal_k(&t)?);
        let rhs = tree_boundary_chain(&Chain::basis(Ring::F2, t.clone())).try_map_linear(diagonal_k)?;
        if lhs != rhs {
            bad.push(t);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn simulation_examples() {
        let (t, deg) = merge_simulation(&p("12|3"));
        assert_eq!(t.to_string(), "((0 1 2) 3)");
        assert!(!deg);
        assert!(merge_simulation(&p("13|2")).1);
        assert_eq!(merge_simulation(&p("123")).0, PlanarTree::corolla(4));
    }

    #[test]
    fn section_is_a_preimage() {
        for t in enumerate_tree_faces(5, None).unwrap() {
            assert_eq!(theta(&section(&t).unwrap()), Some(t));
        }
    }

    #[test]
    fn k3_edge_diagonal() {
        let d = diagonal_k(&PlanarTree::corolla(3)).unwrap();
        let l: PlanarTree = "((0 1) 2)".parse().unwrap();
        let r: PlanarTree = "(0 (1 2))".parse().unwrap();
        let c = PlanarTree::corolla(3);
        let expect = Chain::from_int_terms(Ring::F2, [(Tensor::pair(l, c.clone()), 1), (Tensor::pair(c, r), 1)]);
        assert_eq!(d, expect);
    }
}
