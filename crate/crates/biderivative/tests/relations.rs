use std::collections::BTreeMap;

use ainfty_check::check_relation_seven;
use biderivative::*;
use coeff_chain::{Chain, Ring};
use graded_hopf::*;
use gs_complex::{gs_d, random_component, Tridegree};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn chain(terms: &[(&str, i64)]) -> WordChain {
    Chain::from_int_terms(Ring::Z, terms.iter().map(|(s, c)| (w(s), *c)))
}

fn ex2(h: &GradedBialgebra) -> Op {
    omega22_ex2(h).unwrap().to_op()
}

fn zero_omega() -> Op {
    Op::Zero { i: 2, j: 2, deg: -1 }
}

fn same_map(h: &GradedBialgebra, a: &Op, b: &Op, window: i64) {
    for word in h.words(a.arity_in(), window) {
        assert_eq!(a.eval_word(h, &word).unwrap(), b.eval_word(h, &word).unwrap(), "{word}");
    }
}

#[test]
fn circ_examples() {
    let h = make_lambda_xy(8).unwrap();
    let inv = component_inventory(&h, &ex2(&h)).unwrap();
    let (mu, delta) = (inv.get("μ").unwrap(), inv.get("Δ").unwrap());
    let dm = circ(delta, mu).unwrap();
    same_map(&h, &dm, &Op::compose(vec![Op::Delta, Op::Mu]).unwrap(), 8);
    assert!(circ(mu, mu).is_none());
    assert!(circ(delta, delta).is_none());
    let hopf = circ(inv.get("μ⊗μ").unwrap(), inv.get("Δ⊗Δ").unwrap()).unwrap();
    let direct = compose_tensor(vec![Op::Mu, Op::Mu], vec![Op::Delta, Op::Delta], Some(coeff_chain::sigma_rs(2, 2))).unwrap();
    same_map(&h, &hopf, &direct, 8);
    same_map(&h, &dm, &hopf, 8);
}

#[test]
fn circ_respects_shapes_for_every_pair() {
    let h = make_lambda_xy_dg(6).unwrap();
    let inv = component_inventory(&h, &ex2(&h)).unwrap();
    assert_eq!(inv.len(), 14);
    for a in inv.iter() {
        assert_eq!(a.op.arity_in(), a.source.arity());
        assert_eq!(a.op.arity_out(), a.target.arity());
        for b in inv.iter() {
            match circ(a, b) {
                Some(op) => {
                    assert_eq!(b.target.transpose(), a.source);
                    assert_eq!((op.arity_in(), op.arity_out()), (b.source.arity(), a.target.arity()));
                    assert_eq!(op.degree(), a.degree() + b.degree());
                }
                None => assert_ne!(b.target.transpose(), a.source, "{} ⊛ {}", a.name, b.name),
            }
        }
    }
}

#[test]
fn provenance_tags() {
    let h = make_lambda_xy(6).unwrap();
    let inv = component_inventory(&h, &ex2(&h)).unwrap();
    let tag = |n: &str| inv.get(n).unwrap().provenance;
    assert_eq!(tag("μ⊗1-1⊗μ"), Provenance::CoderivationOfMu);
    assert_eq!(tag("Δ⊗1-1⊗Δ"), Provenance::DerivationOfDelta);
    assert_eq!(tag("Δ⊗Δ"), Provenance::AlgebraMapOfDeltaOmega);
    assert_eq!(tag("Δ⊗ω-ω⊗Δ"), Provenance::AlgebraMapOfDeltaOmega);
    assert_eq!(tag("μ⊗μ"), Provenance::CoalgebraMapOfMuOmega);
    assert_eq!(tag("μ⊗ω-ω⊗μ"), Provenance::CoalgebraMapOfMuOmega);
    assert_eq!(tag("d⊗1+1⊗d (der)"), Provenance::LinearD);
    assert_eq!(Provenance::AlgebraMapOfDeltaOmega.to_string(), "algebra-map-of-Δ+ω");
    assert!(matches!(inv.get("ω⊗μ"), Err(BiderivError::UnknownComponent(_))));
    assert!(matches!(
        component_inventory(&h, &Op::Mu),
        Err(BiderivError::OmegaShape(0, 2, 1))
    ));
}

/// The defined products of the right degree, sorted by arity, are exactly
/// the terms of relations (1)-(16).
#[test]
fn transgressive_products_are_the_relations() {
    let h = make_lambda_xy_dg(6).unwrap();
    let inv = component_inventory(&h, &ex2(&h)).unwrap();
    let found = transgressive_products(&inv);
    let mut expected: BTreeMap<(usize, usize), Vec<(String, String)>> = BTreeMap::new();
    for n in RELATION_NUMBERS {
        for t in relation_terms(n) {
            let (a, b) = (inv.get(t.outer).unwrap(), inv.get(t.inner).unwrap());
            expected
                .entry((b.source.arity(), a.target.arity()))
                .or_default()
                .push((t.outer.to_string(), t.inner.to_string()));
        }
    }
    for v in expected.values_mut() {
        v.sort();
    }
    assert_eq!(found, expected);
    let arities: Vec<_> = found.keys().copied().collect();
    assert_eq!(
        arities,
        vec![(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (4, 4)]
    );
    assert!(relation_terms(6).is_empty() && relation_terms(7).is_empty());
}

#[test]
fn relation_nine_on_y_y() {
    let h = make_lambda_xy(8).unwrap();
    let inv = component_inventory(&h, &ex2(&h)).unwrap();
    let expected = chain(&[("1|x|y", 1), ("1|y|x", 1), ("x|y|1", -1), ("y|x|1", -1)]);
    let down = circ(inv.get("Δ⊗1-1⊗Δ").unwrap(), inv.get("ω").unwrap()).unwrap();
    assert_eq!(down.eval_word(&h, &w("y|y")).unwrap(), expected);
    let up = circ(inv.get("μ⊗ω-ω⊗μ").unwrap(), inv.get("Δ⊗Δ").unwrap()).unwrap();
    assert_eq!(up.eval_word(&h, &w("y|y")).unwrap(), expected);
    let nine = relation_op(&inv, 9).unwrap().unwrap();
    for gen in ["y|y", "x|y", "y|x"] {
        assert!(nine.eval_word(&h, &w(gen)).unwrap().is_zero(), "{gen}");
    }
}

#[test]
fn sigma_two_two_on_y_x_x_y() {
    let h = make_lambda_xy(6).unwrap();
    let v = Op::sigma(2, 2).eval_word(&h, &w("y|x|x|y")).unwrap();
    assert_eq!(v, chain(&[("y|x|x|y", -1)]));
}

#[test]
fn zero_omega_reduces_to_a_dg_hopf_algebra() {
    for h in [make_lambda_xy(10).unwrap(), make_lambda_xy_dg(10).unwrap()] {
        let r = check_relations_1_16(&h, &zero_omega(), None).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.items.len(), 16);
        assert!(r.items[5].relation.contains("vacuous"));
    }
}

#[test]
fn example_omega_on_small_and_large_windows() {
    let h = make_lambda_xy(10).unwrap();
    let om = ex2(&h);
    let small = check_relations_1_16(&h, &om, Some(4)).unwrap();
    assert!(small.passed(), "{small:?}");
    let full = check_relations_1_16(&h, &om, Some(10)).unwrap();
    let failing: Vec<usize> = full
        .items
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.passed())
        .map(|(k, _)| k + 1)
        .collect();
    assert_eq!(failing, vec![9, 10, 11, 13, 15]);
    let nine = full.items[8].witness.as_ref().unwrap();
    assert_eq!(nine.input, w("y|x*y"));
    assert_eq!(nine.value, chain(&[("x|x|y", -2), ("x|y|x", -2)]));
    // hand check: (Δ⊗1-1⊗Δ)ω(y|xy) = 0 since ω(y|xy) = 0, so only the
    // σ_{2,2}(Δ⊗Δ) side survives
    let inv = component_inventory(&h, &om).unwrap();
    let down = circ(inv.get("Δ⊗1-1⊗Δ").unwrap(), inv.get("ω").unwrap()).unwrap();
    assert!(down.eval_word(&h, &w("y|x*y")).unwrap().is_zero());
}

#[test]
fn reports_serialize_numbers_as_strings() {
    let h = make_lambda_xy(8).unwrap();
    let r = check_relations_1_16(&h, &ex2(&h), Some(6)).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["items"][0]["window"], "6");
    assert!(j["items"][8]["words_checked"].is_string());
}

#[test]
fn single_operation_preconditions() {
    let h = make_lambda_xy(8).unwrap();
    assert!(matches!(
        single_higher_op_relations(&h, &Op::Mu, None),
        Err(BiderivError::TooSmall { i: 2, j: 1 })
    ));
    let bad = Op::Zero { i: 3, j: 1, deg: 0 };
    assert!(matches!(single_higher_op_relations(&h, &bad, None), Err(BiderivError::HigherDegree { .. })));
    let r = single_higher_op_relations(&h, &Op::Zero { i: 3, j: 2, deg: -2 }, None).unwrap();
    assert!(r.passed());
    assert_eq!(r.items.len(), 2);
    let hd = make_lambda_xy_dg(8).unwrap();
    assert_eq!(single_higher_op_relations(&hd, &Op::Zero { i: 3, j: 2, deg: -2 }, None).unwrap().items.len(), 3);
}

/// For `ω^{1,3} = μ^3` the coboundary condition `δ(μ^3) = 0` is relation
/// (seven) for n = 3 moved to one side.
#[test]
fn delta_condition_is_relation_seven() {
    let h = make_lambda_xy(12).unwrap();
    let mut verdicts = Vec::new();
    for rule in [ExponentRule::Positive, ExponentRule::NonNegative] {
        let m = mu_n_ex1(&h, 3, rule).unwrap().to_op();
        let single = single_higher_op_relations(&h, &m, None).unwrap();
        let delta = single.items.iter().find(|r| r.relation == "δ(ω) = 0").unwrap();
        let seven = check_relation_seven(&h, &m, 3).unwrap();
        assert_eq!(delta.passed(), seven.passed(), "{rule:?}");
        assert_eq!(delta.window, seven.window);
        verdicts.push(delta.passed());
    }
    assert_eq!(verdicts, vec![false, true]);
}

#[test]
fn random_omega_two_three_is_reported() {
    let h = make_lambda_xy(9).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let om = random_component(&h, Tridegree::new(-2, 3, 2), 0.2, &mut rng).unwrap().to_op();
    let a = single_higher_op_relations(&h, &om, None).unwrap();
    let b = single_higher_op_relations(&h, &om, None).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.name, "single higher operation ω^{2,3}");
}

/// With μ and Δ undeformed, relation (8) says `d(ω) = 0` in the GS complex.
/// Half of the instances are `d`-exact and so pass by construction.
#[test]
fn relation_eight_agrees_with_the_gs_differential() {
    let h = make_lambda_xy_dg(10).unwrap();
    let window = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut passes = 0;
    for k in 0..20 {
        let om = if k % 2 == 0 {
            random_component(&h, Tridegree::new(-1, 2, 2), 0.1, &mut rng).unwrap()
        } else {
            let g = random_component(&h, Tridegree::new(-2, 2, 2), 0.1, &mut rng).unwrap();
            HomComponent::from_op("ω", &gs_d(&h, &g.to_op()).unwrap(), &h, 9).unwrap()
        };
        let om = om.to_op();
        let rel = check_relations_1_16(&h, &om, Some(window)).unwrap();
        let gs = check_vanishes_within(&gs_d(&h, &om).unwrap(), &h, window).unwrap();
        assert_eq!(rel.items[7].passed(), gs.passed(), "instance {k}");
        assert!(rel.items.iter().enumerate().all(|(n, r)| n == 7 || n >= 8 || r.passed()));
        passes += usize::from(gs.passed());
    }
    assert!((10..20).contains(&passes), "{passes}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `circ` is linear in each argument.
    #[test]
    fn circ_is_bilinear(a in -3i64..4, b in -3i64..4, seed in 0u64..1000) {
        let h = make_lambda_xy(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = Tridegree::new(-1, 2, 2);
        let (f, g) = (random_component(&h, t, 0.3, &mut rng).unwrap(), random_component(&h, t, 0.3, &mut rng).unwrap());
        let combo = Op::lin_int(vec![(a, f.to_op()), (b, g.to_op())]).unwrap();
        let pick = |om: &Op| {
            let inv = component_inventory(&h, om).unwrap();
            circ(inv.get("Δ⊗1-1⊗Δ").unwrap(), inv.get("ω").unwrap()).unwrap()
        };
        let (pc, pf, pg) = (pick(&combo), pick(&f.to_op()), pick(&g.to_op()));
        let lin = Op::lin_int(vec![(a, pf), (b, pg)]).unwrap();
        for word in h.words(2, 7) {
            prop_assert_eq!(pc.eval_word(&h, &word).unwrap(), lin.eval_word(&h, &word).unwrap());
        }
    }
}
