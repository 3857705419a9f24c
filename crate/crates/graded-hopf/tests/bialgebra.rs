use coeff_chain::{Chain, Ring};
use graded_hopf::*;
use proptest::prelude::*;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn chain(h: &GradedBialgebra, terms: &[(&str, i64)]) -> WordChain {
    Chain::from_int_terms(h.ring().clone(), terms.iter().map(|(s, c)| (w(s), *c)))
}

fn hopf_defect() -> Op {
    let rhs = compose_tensor(vec![Op::Mu, Op::Mu], vec![Op::Delta, Op::Delta], Some(coeff_chain::sigma_rs(2, 2))).unwrap();
    let lhs = Op::compose(vec![Op::Delta, Op::Mu]).unwrap();
    Op::lin_int(vec![(1, lhs), (-1, rhs)]).unwrap()
}

#[test]
fn hopf_relation_holds() {
    for h in [make_lambda_xy(10).unwrap(), make_lambda_xy(9).unwrap().with_ring(Ring::F2)] {
        let r = check_vanishes(&hopf_defect(), &h).unwrap();
        assert!(r.passed(), "{:?}", r.counterexample);
        assert_eq!(r.window, h.d_max());
    }
}

#[test]
fn associative_and_coassociative() {
    let h = make_lambda_xy(10).unwrap();
    let assoc = Op::lin_int(vec![
        (1, Op::compose(vec![Op::Mu, pad(0, Op::Mu, 1)]).unwrap()),
        (-1, Op::compose(vec![Op::Mu, pad(1, Op::Mu, 0)]).unwrap()),
    ])
    .unwrap();
    assert!(check_vanishes(&assoc, &h).unwrap().passed());
    let coassoc = Op::lin_int(vec![(1, comult_chain_left(3)), (-1, comult_chain_right(3))]).unwrap();
    assert!(check_vanishes(&coassoc, &h).unwrap().passed());
}

#[test]
fn dg_variant_is_a_dg_bialgebra() {
    let h = make_lambda_xy_dg(10).unwrap();
    let dd = Op::compose(vec![Op::D, Op::D]).unwrap();
    assert!(check_vanishes(&dd, &h).unwrap().passed());
    let d2 = Op::lin_int(vec![(1, pad(0, Op::D, 1)), (1, pad(1, Op::D, 0))]).unwrap();
    let leibniz = Op::lin_int(vec![
        (1, Op::compose(vec![Op::D, Op::Mu]).unwrap()),
        (-1, Op::compose(vec![Op::Mu, d2.clone()]).unwrap()),
    ])
    .unwrap();
    assert!(check_vanishes(&leibniz, &h).unwrap().passed());
    let coleibniz = Op::lin_int(vec![
        (1, Op::compose(vec![Op::Delta, Op::D]).unwrap()),
        (-1, Op::compose(vec![d2, Op::Delta]).unwrap()),
    ])
    .unwrap();
    assert!(check_vanishes(&coleibniz, &h).unwrap().passed());
    assert_eq!(Op::D.eval_word(&h, &w("x*y")).unwrap(), chain(&h, &[("y^2", 1)]));
}

#[test]
fn structure_map_values() {
    let h = make_lambda_xy(8).unwrap();
    assert_eq!(Op::Delta.eval_word(&h, &w("y")).unwrap(), chain(&h, &[("y|1", 1), ("1|y", 1)]));
    assert!(Op::Mu.eval_word(&h, &w("x|x")).unwrap().is_zero());
    assert_eq!(
        Op::Delta.eval_word(&h, &w("x*y")).unwrap(),
        chain(&h, &[("x|y", 1), ("x*y|1", 1), ("1|x*y", 1), ("y|x", 1)])
    );
    assert_eq!(Op::Delta.eval_word(&h, &w("y^2")).unwrap(), chain(&h, &[("1|y^2", 1), ("y|y", 2), ("y^2|1", 1)]));
    assert!(matches!(Op::Mu.eval_word(&h, &w("y^4|y")), Err(HopfError::OutOfWindow { .. })));
    assert!(matches!(Op::Mu.eval_word(&h, &w("y")), Err(HopfError::ArityMismatch { .. })));
    let id = Op::compose(vec![Op::Id(2), Op::Id(2)]).unwrap();
    assert_eq!(id.eval_word(&h, &w("x|y")).unwrap(), chain(&h, &[("x|y", 1)]));
}

#[test]
fn hopf_example_on_y_y() {
    let h = make_lambda_xy(8).unwrap();
    let rhs = compose_tensor(vec![Op::Mu, Op::Mu], vec![Op::Delta, Op::Delta], Some(coeff_chain::sigma_rs(2, 2))).unwrap();
    let lhs = Op::compose(vec![Op::Delta, Op::Mu]).unwrap();
    let v = lhs.eval_word(&h, &w("y|y")).unwrap();
    assert_eq!(v, chain(&h, &[("1|y^2", 1), ("y|y", 2), ("y^2|1", 1)]));
    assert_eq!(rhs.eval_word(&h, &w("y|y")).unwrap(), v);
}

#[test]
fn koszul_evaluation_sign() {
    let h = make_lambda_xy(8).unwrap();
    let om = omega22_ex2(&h).unwrap().to_op();
    let f = Op::tensor(vec![Op::Id(1), om.clone()]);
    let v = f.eval_word(&h, &w("x|y|y")).unwrap();
    assert_eq!(v, chain(&h, &[("x|x|y", -1), ("x|y|x", -1)]));
    let g = Op::tensor(vec![om, Op::Id(1)]);
    assert_eq!(g.eval_word(&h, &w("y|y|x")).unwrap(), chain(&h, &[("x|y|x", 1), ("y|x|x", 1)]));
}

#[test]
fn sigma_two_two_sign() {
    let h = make_lambda_xy(8).unwrap();
    let v = Op::sigma(2, 2).eval_word(&h, &w("y|x|x|y")).unwrap();
    assert_eq!(v, chain(&h, &[("y|x|x|y", -1)]));
}

#[test]
fn mu_n_values() {
    let h = make_lambda_xy(12).unwrap();
    for rule in [ExponentRule::Positive, ExponentRule::NonNegative] {
        let m3 = mu_n_ex1(&h, 3, rule).unwrap();
        assert_eq!(m3.degree(), -1);
        assert_eq!(m3.apply(&h, &w("x*y|x*y|x*y")).unwrap(), chain(&h, &[("y^4", 1)]));
        assert!(m3.apply(&h, &w("y|x*y|x*y")).unwrap().is_zero());
        let m4 = mu_n_ex1(&h, 4, rule).unwrap();
        assert_eq!(m4.apply(&h, &w("x*y|x*y|x*y|x*y")).unwrap(), chain(&h, &[("y^5", 1)]));
    }
    let pos = mu_n_ex1(&h, 3, ExponentRule::Positive).unwrap();
    assert!(pos.apply(&h, &w("x|x*y|x*y")).unwrap().is_zero());
    let nonneg = mu_n_ex1(&h, 3, ExponentRule::NonNegative).unwrap();
    assert_eq!(nonneg.apply(&h, &w("x|x*y|x*y")).unwrap(), chain(&h, &[("y^3", 1)]));
    assert!(mu_n_ex1(&h, 2, ExponentRule::Positive).is_err());
}

/// The table must agree with a direct reading of the formula on every word.
#[test]
fn mu_n_table_matches_formula() {
    let h = make_lambda_xy(12).unwrap();
    for n in 3..=5 {
        let m = mu_n_ex1(&h, n, ExponentRule::NonNegative).unwrap();
        for word in h.words(n, 12) {
            let expect = if word.0.iter().all(|m| m.x == 1) {
                let p: u32 = word.0.iter().map(|m| m.p).sum();
                Chain::basis(h.ring().clone(), Word::single(Mono::y_pow(p + 1)))
            } else {
                Chain::zero(h.ring().clone())
            };
            assert_eq!(m.apply(&h, &word).unwrap(), expect, "{word}");
        }
    }
}

#[test]
fn omega_table() {
    let h = make_lambda_xy(8).unwrap();
    let om = omega22_ex2(&h).unwrap();
    assert_eq!(om.apply(&h, &w("y|y")).unwrap(), chain(&h, &[("x|y", 1), ("y|x", 1)]));
    assert_eq!(om.apply(&h, &w("x|y")).unwrap(), chain(&h, &[("x|x", 1)]));
    assert_eq!(om.apply(&h, &w("y|x")).unwrap(), chain(&h, &[("x|x", 1)]));
    assert!(om.apply(&h, &w("x|x")).unwrap().is_zero());
    assert_eq!(om.len(), 3);
}

#[test]
fn hom_json_roundtrip() {
    let h = make_lambda_xy(8).unwrap();
    let om = omega22_ex2(&h).unwrap();
    let s = serde_json::to_string(&om).unwrap();
    assert!(s.contains("\"y|y\""));
    assert!(s.contains("\"degree\":\"-1\""));
    let back: HomComponent = serde_json::from_str(&s).unwrap();
    assert_eq!(back, om);
}

#[test]
fn table_rejects_inhomogeneous_values() {
    let h = make_lambda_xy(8).unwrap();
    let mut t = HomComponent::new("f", 1, 1, 0, Ring::Z);
    assert!(t.insert(w("x"), chain(&h, &[("y", 1)])).is_err());
    assert!(t.insert(w("x|x"), chain(&h, &[("y", 1)])).is_err());
    assert!(t.insert(w("y"), chain(&h, &[("y", 1)])).is_ok());
}

#[test]
fn max_lift_of_composites() {
    let h = make_lambda_xy_dg(10).unwrap();
    let f = Op::compose(vec![Op::D, Op::D]).unwrap();
    assert_eq!(f.max_lift(), 2);
    let g = Op::tensor(vec![Op::D, Op::D]);
    assert_eq!(g.max_lift(), 2);
    let r = check_vanishes(&f, &h).unwrap();
    assert_eq!(r.window, 8);
    assert!(check_vanishes_within(&f, &h, 9).is_err());
}

fn arb_word(k: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0u8..2, 0u32..3), k).prop_map(|v| Word(v.into_iter().map(|(x, p)| Mono { x, p }).collect()))
}

proptest! {
    #[test]
    fn composites_are_homogeneous(word in arb_word(2)) {
        let h = make_lambda_xy(12).unwrap();
        let om = omega22_ex2(&h).unwrap().to_op();
        let ops = vec![
            hopf_defect(),
            compose_tensor(vec![Op::Mu, om.clone()], vec![Op::Delta, Op::Delta], Some(coeff_chain::sigma_rs(2, 2))).unwrap(),
            Op::compose(vec![om.clone(), om]).unwrap(),
        ];
        for op in ops {
            let v = op.eval_word(&h, &word).unwrap();
            for (u, _) in v.iter() {
                prop_assert_eq!(u.deg(), word.deg() + op.degree());
                prop_assert_eq!(u.arity(), op.arity_out());
            }
        }
    }

    #[test]
    fn evaluation_is_linear(a in arb_word(2), b in arb_word(2), ca in -3i64..4, cb in -3i64..4) {
        let h = make_lambda_xy(12).unwrap();
        let op = compose_tensor(vec![Op::Mu, Op::Mu], vec![Op::Delta, Op::Delta], Some(coeff_chain::sigma_rs(2, 2))).unwrap();
        let mut input = Chain::zero(Ring::Z);
        input.add_int(a.clone(), ca);
        input.add_int(b.clone(), cb);
        let lhs = op.eval(&h, &input).unwrap();
        let mut rhs = op.eval_word(&h, &a).unwrap().scale(&Ring::Z.from_int(ca));
        rhs = rhs.add(&op.eval_word(&h, &b).unwrap().scale(&Ring::Z.from_int(cb))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn word_strings_roundtrip(word in arb_word(3)) {
        prop_assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
    }
}

#[test]
fn zero_factors_do_not_lift() {
    let h = make_lambda_xy(10).unwrap();
    let z = Op::Zero { i: 1, j: 1, deg: 1 };
    let f = Op::compose(vec![Op::Mu, Op::tensor(vec![z.clone(), Op::Id(1)])]).unwrap();
    assert!(f.is_structurally_zero());
    assert_eq!(f.max_lift(), 0);
    let g = Op::compose(vec![Op::D, Op::Mu]).unwrap();
    assert_eq!(g.max_lift(), 1);
    assert!(!g.is_structurally_zero());
    assert_eq!(check_vanishes(&f, &h).unwrap().window, 10);
}
