use std::collections::BTreeMap;

use coeff_chain::{Chain, Ring};
use permutahedron::enumerate_faces;
use proptest::prelude::*;
use tonks_associahedron::*;

/// Binary bracketings of a word of length n, counted by splitting at the
/// outermost product.
fn bracketings(n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    (1..n).map(|k| bracketings(k) * bracketings(n - k)).sum()
}

/// Faces of K_n: a planar tree is a leaf or a root over an ordered forest of
/// at least two smaller trees.
fn all_trees(n: usize) -> usize {
    // ordered sequences of at least `min_parts` trees with `m` leaves in total,
    // each tree having at most `max_leaves` leaves
    fn forests(m: usize, max_leaves: usize, min_parts: usize) -> usize {
        if m == 0 {
            return usize::from(min_parts == 0);
        }
        (1..=m.min(max_leaves))
            .map(|k| all_trees(k) * forests(m - k, max_leaves, min_parts.saturating_sub(1)))
            .sum()
    }
    if n == 1 {
        1
    } else {
        forests(n, n - 1, 2)
    }
}

#[test]
fn vertex_counts_are_catalan() {
    for n in 2..=7 {
        assert_eq!(enumerate_tree_faces(n, Some(0)).unwrap().len(), bracketings(n), "n={n}");
    }
    assert_eq!(bracketings(7), 132);
}

#[test]
fn total_face_counts() {
    for n in 2..=7 {
        let all = enumerate_tree_faces(n, None).unwrap();
        assert_eq!(all.len(), all_trees(n), "n={n}");
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|t| t.validate().is_ok()));
    }
    assert_eq!(enumerate_tree_faces(4, None).unwrap().len(), 11);
    assert_eq!(enumerate_tree_faces(3, None).unwrap().len(), 3);
    assert!(enumerate_tree_faces(1, None).is_err());
}

#[test]
fn boundary_of_corollas() {
    let d4 = tree_boundary(&PlanarTree::corolla(4)).unwrap();
    assert_eq!(d4.len(), 5);
    let d5 = tree_boundary(&PlanarTree::corolla(5)).unwrap();
    assert!(tree_boundary_chain(&d5).is_zero());
    let v: PlanarTree = "((0 1) 2)".parse().unwrap();
    assert!(tree_boundary(&v).is_err());
}

#[test]
fn boundary_squares_to_zero() {
    for n in 2..=6 {
        for t in enumerate_tree_faces(n, None).unwrap() {
            let c = Chain::basis(Ring::F2, t.clone());
            assert!(tree_boundary_chain(&tree_boundary_chain(&c)).is_zero(), "{t}");
        }
    }
}

#[test]
fn p3_vertices_hit_binary_trees() {
    let mut hits: BTreeMap<PlanarTree, usize> = BTreeMap::new();
    for v in enumerate_faces(3, Some(0)).unwrap() {
        let (t, deg) = merge_simulation(&v);
        assert!(!deg);
        assert!(t.is_binary());
        *hits.entry(t).or_default() += 1;
    }
    assert_eq!(hits.len(), 5);
    assert_eq!(hits.values().filter(|&&c| c == 2).count(), 1);
}

#[test]
fn theta_is_a_chain_map() {
    for n in 1..=5 {
        assert!(check_theta_commutes(n).unwrap().is_empty(), "n={n}");
    }
}

#[test]
fn projected_diagonal_is_well_defined() {
    for n in 1..=5 {
        assert!(check_well_defined(n).unwrap().is_empty(), "n={n}");
    }
}

#[test]
fn diagonal_k_is_a_chain_map() {
    for n in 2..=6 {
        assert!(check_diagonal_k_chain_map(n).unwrap().is_empty(), "n={n}");
    }
}

#[test]
fn vertices_are_primitive() {
    for t in enumerate_tree_faces(5, Some(0)).unwrap() {
        let d = diagonal_k(&t).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.contains(&coeff_chain::Tensor::pair(t.clone(), t)));
    }
}

#[test]
fn json_is_nested_arrays() {
    let t: PlanarTree = "((0 1 2) 3)".parse().unwrap();
    assert_eq!(serde_json::to_string(&t).unwrap(), "[[0,1,2],3]");
    let back: PlanarTree = serde_json::from_str("[[0,1,2],3]").unwrap();
    assert_eq!(back, t);
}

proptest! {
    #[test]
    fn display_roundtrip(n in 2usize..7, pick in any::<prop::sample::Index>()) {
        let all = enumerate_tree_faces(n, None).unwrap();
        let t = &all[pick.index(all.len())];
        prop_assert_eq!(&t.to_string().parse::<PlanarTree>().unwrap(), t);
        prop_assert_eq!(t.leaves(), n);
    }

    #[test]
    fn theta_preserves_dimension(n in 1usize..6, pick in any::<prop::sample::Index>()) {
        let faces = enumerate_faces(n, None).unwrap();
        let f = &faces[pick.index(faces.len())];
        let (t, deg) = merge_simulation(f);
        prop_assert_eq!(t.leaves(), n + 1);
        if deg {
            prop_assert!(t.dim() < f.dim());
        } else {
            prop_assert_eq!(t.dim(), f.dim());
        }
    }
}
