use coeff_chain::Ring;
use permutahedron::{boundary, boundary_chain, enumerate_faces, OrderedPartition};
use proptest::prelude::*;

/// Ordered Bell (Fubini) numbers by the recurrence a(n) = Σ_k C(n,k) a(n-k).
fn fubini(n: usize) -> usize {
    let mut a = vec![1usize];
    for m in 1..=n {
        let mut s = 0;
        let mut c = 1usize;
        for k in 1..=m {
            c = c * (m - k + 1) / k;
            s += c * a[m - k];
        }
        a.push(s);
    }
    a[n]
}

/// Independent oracle: assign each element a block label and keep the
/// surjective labelings.
fn brute_force_count(n: usize, blocks: usize) -> usize {
    let mut count = 0;
    let total = blocks.pow(n as u32);
    for mut code in 0..total {
        let mut used = vec![false; blocks];
        for _ in 0..n {
            used[code % blocks] = true;
            code /= blocks;
        }
        if used.iter().all(|&u| u) {
            count += 1;
        }
    }
    count
}

#[test]
fn face_counts_match_oracles() {
    let expect = [1, 3, 13, 75, 541];
    for n in 1..=5 {
        let all = enumerate_faces(n, None).unwrap();
        assert_eq!(all.len(), expect[n - 1]);
        assert_eq!(all.len(), fubini(n));
        for d in 0..n {
            let faces = enumerate_faces(n, Some(d)).unwrap();
            assert_eq!(faces.len(), brute_force_count(n, n - d), "n={n} dim={d}");
            assert!(faces.iter().all(|f| f.dim() == d));
        }
    }
}

#[test]
fn vertices_and_facets() {
    let mut fact = 1;
    for n in 1..=6 {
        fact *= n;
        assert_eq!(enumerate_faces(n, Some(0)).unwrap().len(), fact);
        if n >= 2 {
            assert_eq!(enumerate_faces(n, Some(n - 2)).unwrap().len(), (1 << n) - 2);
        }
    }
}

#[test]
fn boundary_squares_to_zero_over_f2() {
    for n in 1..=5 {
        for f in enumerate_faces(n, None).unwrap() {
            let b = boundary(&f, &Ring::F2, None).unwrap();
            assert!(b.keys().all(|g| g.dim() + 1 == f.dim()));
            assert!(boundary_chain(&b, None).unwrap().is_zero(), "{f}");
        }
    }
}

#[test]
fn enumeration_is_sorted_and_distinct() {
    let faces = enumerate_faces(4, None).unwrap();
    assert!(faces.windows(2).all(|w| w[0] < w[1]));
}

proptest! {
    #[test]
    fn json_roundtrip(n in 1usize..6, pick in any::<prop::sample::Index>()) {
        let faces = enumerate_faces(n, None).unwrap();
        let f = &faces[pick.index(faces.len())];
        let s = serde_json::to_string(f).unwrap();
        let back: OrderedPartition = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, f);
        prop_assert_eq!(f.to_string().parse::<OrderedPartition>().unwrap(), back);
    }
}
