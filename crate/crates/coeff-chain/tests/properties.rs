use coeff_chain::{koszul_sign, sigma_rs, Chain, Coeff, Ring, Sign, SignedPermutation};
use proptest::prelude::*;

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::F2),
        Just(Ring::Fp(5)),
        Just(Ring::Z),
        Just(Ring::Q),
        Just(Ring::poly_t(Ring::Z)),
    ]
}

fn chain_strategy(ring: Ring) -> impl Strategy<Value = Chain<String>> {
    prop::collection::vec(("[a-e]{1,3}", -5i64..5, 0usize..2), 0..8).prop_map(move |terms| {
        let mut c = Chain::zero(ring.clone());
        for (k, v, tpow) in terms {
            let mut coeff = ring.from_int(v);
            if tpow == 1 {
                if let Some(t) = ring.t() {
                    coeff = ring.mul(&coeff, &t);
                }
            }
            c.add_term(k, &coeff);
        }
        c
    })
}

fn perm_strategy(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

/// Brute-force oracle: sort by adjacent transpositions, multiplying the sign
/// of each odd-odd swap.
fn bubble_sign(perm: &[usize], degrees: &[i64]) -> Sign {
    let mut cur: Vec<usize> = (0..perm.len()).collect();
    let target = perm.to_vec();
    let mut sign = Sign::Plus;
    for pos in 0..target.len() {
        let mut at = cur.iter().position(|&x| x == target[pos]).unwrap();
        while at > pos {
            if degrees[cur[at]] % 2 != 0 && degrees[cur[at - 1]] % 2 != 0 {
                sign = sign * Sign::Minus;
            }
            cur.swap(at, at - 1);
            at -= 1;
        }
    }
    sign
}

proptest! {
    #[test]
    fn f2_doubling_vanishes(c in chain_strategy(Ring::F2)) {
        prop_assert!(c.add(&c).unwrap().is_zero());
    }

    #[test]
    fn minus_self_vanishes((r, c) in ring_strategy().prop_flat_map(|r| (Just(r.clone()), chain_strategy(r)))) {
        prop_assert!(c.combine(&c, &r.from_int(-1)).unwrap().is_zero());
    }

    #[test]
    fn serialization_roundtrip((_r, c) in ring_strategy().prop_flat_map(|r| (Just(r.clone()), chain_strategy(r)))) {
        let s = serde_json::to_string(&c).unwrap();
        let back: Chain<String> = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn koszul_matches_bubble_sort(p in perm_strategy(7), seed in prop::collection::vec(-3i64..4, 7)) {
        let degrees = &seed[..p.len()];
        prop_assert_eq!(koszul_sign(&p, degrees).unwrap(), bubble_sign(&p, degrees));
    }

    #[test]
    fn koszul_is_multiplicative(
        (p, q) in (1usize..7).prop_flat_map(|n| {
            let base: Vec<usize> = (0..n).collect();
            (Just(base.clone()).prop_shuffle(), Just(base).prop_shuffle())
        }),
        seed in prop::collection::vec(-3i64..4, 7),
    ) {
        let degrees = &seed[..p.len()];
        let p = SignedPermutation::new(p).unwrap();
        let q = SignedPermutation::new(q).unwrap();
        let pq = p.compose(&q).unwrap();
        let moved = q.apply(degrees);
        prop_assert_eq!(
            pq.sign(degrees).unwrap(),
            p.sign(&moved).unwrap() * q.sign(degrees).unwrap()
        );
    }
}

#[test]
fn sigma_inverse_pairs() {
    for r in 1..=6 {
        for s in 1..=6 {
            let id = sigma_rs(s, r).compose(&sigma_rs(r, s)).unwrap();
            assert!(id.is_identity(), "r={r} s={s}");
        }
    }
}

#[test]
fn sigma_matches_grid_transpose_oracle() {
    // s rows of r symbols, row-major; output reads the columns.
    for r in 1..=4 {
        for s in 1..=4 {
            let grid: Vec<Vec<usize>> = (0..s).map(|b| (0..r).map(|a| b * r + a).collect()).collect();
            let mut expected = Vec::new();
            for a in 0..r {
                for row in &grid {
                    expected.push(row[a]);
                }
            }
            assert_eq!(sigma_rs(r, s).images(), expected.as_slice());
        }
    }
}

#[test]
fn coefficient_strings_are_exact() {
    let c: Coeff = "-3/4".parse().unwrap();
    assert_eq!(c.to_string(), "-3/4");
    assert!(Ring::Z.from_ratio(c.constant()).is_err());
}
