use ainfty_check::*;
use coeff_chain::{BigInt, Chain, Ring};
use graded_hopf::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ex1_structure(d_max: i64, rule: ExponentRule) -> AnStructure {
    let h = make_lambda_xy(d_max).unwrap();
    let mut s = AnStructure::strict(h.clone(), 5);
    for n in 3..=5 {
        s = s.with_mu(n, mu_n_ex1(&h, n, rule).unwrap().to_op()).unwrap();
    }
    s
}

#[test]
fn strict_lambda_is_a_dga_and_dgc() {
    for h in [make_lambda_xy(10).unwrap(), make_lambda_xy_dg(10).unwrap()] {
        let s = AnStructure::strict(h, 4);
        for r in check_an_algebra(&s, 4).unwrap() {
            assert!(r.passed(), "{r}");
        }
        for r in check_an_coalgebra(&s, 4).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn missing_operations_are_reported() {
    let s = AnStructure::strict(make_lambda_xy(8).unwrap(), 4);
    let r = check_an_algebra(&s, 3).unwrap();
    assert_eq!(r[2].missing, vec!["μ^3".to_string()]);
    assert!(check_an_algebra(&s, 5).is_err());
}

#[test]
fn ex1_is_a_infinity_up_to_five() {
    let s = ex1_structure(12, ExponentRule::NonNegative);
    for r in check_an_algebra(&s, 5).unwrap() {
        assert!(r.passed(), "{r}");
        assert_eq!(r.window, 12);
    }
}

#[test]
fn ex1_literal_rule_fails_at_four() {
    let s = ex1_structure(12, ExponentRule::Positive);
    let r = check_an_algebra(&s, 4).unwrap();
    assert!(r[..3].iter().all(RelationReport::passed));
    assert!(!r[3].passed());
    assert_eq!(r[3].witness.as_ref().unwrap().input.to_string(), "y|x|x*y|x*y");
}

#[test]
fn zeroing_mu3_alone_is_consistent() {
    let s = ex1_structure(12, ExponentRule::NonNegative).without_mu(3);
    for r in check_an_algebra(&s, 5).unwrap() {
        assert!(r.passed(), "{r}");
        assert_eq!(r.missing.is_empty(), r.k.unwrap() < 3);
    }
}

#[test]
fn perturbed_mu3_breaks_the_relations() {
    let h = make_lambda_xy(12).unwrap();
    let mut t = mu_n_ex1(&h, 3, ExponentRule::NonNegative).unwrap();
    t.insert("x|x|x".parse().unwrap(), Chain::basis(Ring::Z, Word::single(Mono::Y)))
        .unwrap();
    let s = ex1_structure(12, ExponentRule::NonNegative).with_mu(3, t.to_op()).unwrap();
    let reports = check_an_algebra(&s, 5).unwrap();
    assert!(reports[..3].iter().all(RelationReport::passed));
    // on y|x|x|x only -μ^3(xy|x|x) = -y^2 and μ(y ⊗ μ^3(x|x|x)) = 2y^2 survive
    let w = reports[3].witness.as_ref().unwrap();
    assert_eq!(w.input.to_string(), "y|x|x|x");
    assert_eq!(w.value, Chain::basis(Ring::Z, Word::single(Mono::y_pow(2))));
    let mut missing = Vec::new();
    let op = an_algebra_relation(&s, 4, &mut missing).unwrap();
    assert_eq!(op.eval_word(&s.h, &w.input).unwrap(), w.value);
}

#[test]
fn hopf_an_for_ex1() {
    let h = make_lambda_xy(12).unwrap();
    for n in [3, 4] {
        let m = mu_n_ex1(&h, n, ExponentRule::NonNegative).unwrap().to_op();
        let r = check_hopf_an(&h, &m, n).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(check_relation_seven(&h, &m, n).unwrap().passed());
    }
    let m3 = mu_n_ex1(&h, 3, ExponentRule::Positive).unwrap().to_op();
    let seven = check_relation_seven(&h, &m3, 3).unwrap();
    assert!(!seven.passed());
    assert_eq!(seven.witness.unwrap().input.to_string(), "x*y|x*y|x*y");
}

#[test]
fn zero_mu_n_is_hopf() {
    let h = make_lambda_xy(10).unwrap();
    let z = Op::Zero { i: 3, j: 1, deg: -1 };
    assert!(check_hopf_an(&h, &z, 3).unwrap().passed());
    assert!(check_mu_self_interaction(&h, &z, 3).unwrap().passed());
}

#[test]
fn self_interaction_of_ex1() {
    let h = make_lambda_xy(12).unwrap();
    for n in [3, 4] {
        for rule in [ExponentRule::Positive, ExponentRule::NonNegative] {
            let m = mu_n_ex1(&h, n, rule).unwrap().to_op();
            assert!(check_mu_self_interaction(&h, &m, n).unwrap().passed());
        }
    }
}

#[test]
fn simple_a3_conditions() {
    let h = make_lambda_xy(10).unwrap();
    let plain = AnStructure::strict(h.clone(), 3);
    let r = check_simple_a3(&plain).unwrap();
    assert!(r.passed(), "{r:?}");
    let m3 = mu_n_ex1(&h, 3, ExponentRule::NonNegative).unwrap().to_op();
    let s = plain.clone().with_mu(3, m3).unwrap();
    let r = check_simple_a3(&s).unwrap();
    assert!(r.items[0].passed() && r.items[1].passed() && r.items[2].passed());
    assert!(r.items[3].passed(), "{}", r.items[3]);
    // x|x|x|x: μ(1⊗μ^3) picks up the Koszul sign and cancels μ(μ^3⊗1)
    let m3 = mu_n_ex1(&h, 3, ExponentRule::Positive).unwrap().to_op();
    let r = check_simple_a3(&plain.with_mu(3, m3).unwrap()).unwrap();
    let iii = &r.items[3];
    assert!(!iii.passed());
    assert_eq!(iii.witness.as_ref().unwrap().input.to_string(), "y|x|x*y|x*y");
}

#[test]
fn reports_are_deterministic_and_serialize_numbers_as_strings() {
    let s = ex1_structure(12, ExponentRule::Positive);
    let a = check_an_algebra(&s, 4).unwrap();
    let b = check_an_algebra(&s, 4).unwrap();
    assert_eq!(a, b);
    let j = serde_json::to_value(&a[3]).unwrap();
    assert_eq!(j["status"], "FAIL");
    assert_eq!(j["window"], "12");
    assert_eq!(j["k"], "4");
    assert!(j["witness"]["input"].is_string());
}

fn random_mu3(h: &GradedBialgebra, rng: &mut ChaCha8Rng) -> HomComponent {
    let mut t = HomComponent::new("μ^3", 3, 1, -1, h.ring().clone());
    for w in h.words(3, h.d_max()) {
        if rng.gen_bool(0.85) {
            continue;
        }
        let target: Vec<Mono> = h.basis().into_iter().filter(|m| m.deg() == w.deg() - 1).collect();
        if target.is_empty() {
            continue;
        }
        let m = target[rng.gen_range(0..target.len())];
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        t.insert(w, Chain::from_int_terms(h.ring().clone(), [(Word::single(m), c)])).unwrap();
    }
    t
}

/// For d = 0 and associative μ the Hopf A(3) verdict must agree with the
/// conjunction coassociativity ∧ A(3) relations ∧ relation (seven).
#[test]
fn hopf_a3_agrees_with_its_parts() {
    let h = make_lambda_xy(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tables = vec![HomComponent::new("μ^3", 3, 1, -1, Ring::Z)];
    tables.extend((0..99).map(|_| random_mu3(&h, &mut rng)));
    for t in tables {
        let m = t.to_op();
        let whole = check_hopf_an(&h, &m, 3).unwrap().passed();
        let s = AnStructure::strict(h.clone(), 3).with_mu(3, m.clone()).unwrap();
        let parts = check_an_coalgebra(&s, 2).unwrap().iter().all(RelationReport::passed)
            && check_an_algebra(&s, 3).unwrap().iter().all(RelationReport::passed)
            && check_relation_seven(&h, &m, 3).unwrap().passed();
        assert_eq!(whole, parts);
    }
}

#[test]
fn binomial_examples() {
    assert_eq!(binomial_identity(&[1, 1], 1), (BigInt::from(3), BigInt::from(3)));
    assert_eq!(binomial_identity(&[4, 0, 2], 0), (BigInt::from(1), BigInt::from(1)));
}

#[test]
fn binomial_identity_exhaustive() {
    for n in 1..=4usize {
        let mut p = vec![0u64; n];
        loop {
            let total: u64 = p.iter().sum();
            for i in 0..=total + 1 {
                let (l, r) = binomial_identity(&p, i);
                assert_eq!(l, r, "p={p:?} i={i}");
            }
            let mut k = 0;
            while k < n && p[k] == 5 {
                p[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            p[k] += 1;
        }
    }
}

proptest! {
    #[test]
    fn binomial_identity_random(p in prop::collection::vec(0u64..7, 1..6), frac in 0.0f64..1.0) {
        let total: u64 = p.iter().sum();
        let i = (frac * (total + 2) as f64) as u64;
        let (l, r) = binomial_identity(&p, i);
        prop_assert_eq!(l, r);
    }
}
