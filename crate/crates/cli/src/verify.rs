use std::collections::BTreeMap;

use ainfty_check::{
    check_an_algebra, check_an_coalgebra, check_hopf_an, check_mu_self_interaction, check_relation_seven, AnStructure,
    RelationReport, SuiteReport,
};
use biderivative::check_relations_1_16;
use coeff_chain::Ring;
use graded_hopf::{make_lambda_xy, make_lambda_xy_dg, mu_n_ex1, omega22_ex2, ExponentRule, GradedBialgebra, HomComponent, Op};
use gs_complex::{build_deformation, check_d_squared, find_cocycles, random_cochain};
use permutahedron::OrderedPartition;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use su_diagonal::{check_chain_map, solve_integer_signs};

use crate::{usage, CliError, Report, RingArg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Ainfty,
    Hopf,
    Gs,
    Bider,
    Chainmap,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Ainfty => "ainfty",
            Suite::Hopf => "hopf",
            Suite::Gs => "gs",
            Suite::Bider => "bider",
            Suite::Chainmap => "chainmap",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    pub instance: Option<String>,
    pub window: Option<i64>,
    pub k_max: Option<usize>,
    pub n: Option<usize>,
    pub ring: RingArg,
    pub trials: Option<usize>,
    pub seed: u64,
    pub cutoff: Option<i64>,
    /// JSON text of user-supplied operation tables.
    pub table: Option<String>,
}

struct Run {
    params: BTreeMap<String, String>,
    ring: String,
    window: Option<i64>,
    body: Value,
    passed: bool,
}

impl Run {
    fn new(a: &VerifyArgs) -> Self {
        let mut params = BTreeMap::from([("suite".to_string(), a.suite.name().to_string())]);
        params.insert("seed".into(), a.seed.to_string());
        Run {
            params,
            ring: "Z".into(),
            window: None,
            body: Value::Null,
            passed: false,
        }
    }

    fn set(&mut self, k: &str, v: impl ToString) {
        self.params.insert(k.into(), v.to_string());
    }

    fn suite(&mut self, s: &SuiteReport) {
        self.passed = s.passed();
        self.body = serde_json::to_value(s).expect("reports serialize");
    }
}

fn algebra(instance: &str, d_max: i64) -> Result<GradedBialgebra, CliError> {
    if instance.contains("-dg") {
        make_lambda_xy_dg(d_max).map_err(usage)
    } else {
        make_lambda_xy(d_max).map_err(usage)
    }
}

fn parse_table(text: &str) -> Result<Vec<HomComponent>, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("table: {e}")))?;
    let list = match v {
        Value::Array(xs) => xs,
        single => vec![single],
    };
    list.into_iter()
        .map(|x| serde_json::from_value::<HomComponent>(x).map_err(|e| usage(format!("table: {e}"))))
        .collect()
}

fn one_table(a: &VerifyArgs) -> Result<Option<HomComponent>, CliError> {
    match &a.table {
        None => Ok(None),
        Some(t) => {
            let mut v = parse_table(t)?;
            if v.len() != 1 {
                return Err(usage("expected exactly one operation table"));
            }
            Ok(v.pop())
        }
    }
}

fn rule(instance: &str) -> ExponentRule {
    if instance.ends_with("-literal") {
        ExponentRule::Positive
    } else {
        ExponentRule::NonNegative
    }
}

fn check_instance(instance: &str, known: &[&str]) -> Result<(), CliError> {
    if known.contains(&instance) {
        Ok(())
    } else {
        Err(usage(format!("unknown instance {instance:?}; expected one of {}", known.join(", "))))
    }
}

fn ainfty(a: &VerifyArgs, run: &mut Run) -> Result<(), CliError> {
    let instance = a.instance.as_deref().unwrap_or("lambda-xy");
    check_instance(instance, &["lambda-xy", "lambda-xy-literal", "lambda-xy-strict", "lambda-xy-dg-strict"])?;
    let window = a.window.unwrap_or(12);
    let k_max = a.k_max.unwrap_or(5);
    if !(2..=6).contains(&k_max) {
        return Err(usage("--k-max must lie in 2..=6"));
    }
    let mut h = algebra(instance, window)?;
    let tables = match &a.table {
        Some(t) => parse_table(t)?,
        None => Vec::new(),
    };
    if let Some(t) = tables.first() {
        h = h.with_ring(t.ring().clone());
    }
    let mut s = AnStructure::strict(h.clone(), k_max);
    if !instance.ends_with("-strict") {
        for n in 3..=k_max {
            let m = mu_n_ex1(&h, n, rule(instance)).map_err(usage)?;
            s = s.with_mu(n, m.to_op()).map_err(usage)?;
        }
    }
    for t in &tables {
        let (i, j) = (t.arity_in(), t.arity_out());
        s = match (i, j) {
            (i, 1) if i >= 3 => s.with_mu(i, t.to_op()),
            (1, j) if j >= 3 => s.with_delta(j, t.to_op()),
            _ => return Err(usage(format!("table {} has arity ({i}, {j}); expected μ^k or Δ^k with k >= 3", t.name))),
        }
        .map_err(usage)?;
    }
    let mut items = check_an_algebra(&s, k_max).map_err(usage)?;
    items.extend(check_an_coalgebra(&s, k_max).map_err(usage)?);
    run.set("instance", instance);
    run.set("k_max", k_max);
    run.ring = h.ring().to_string();
    run.window = Some(window);
    run.suite(&SuiteReport::new(format!("A({k_max}) relations"), items));
    Ok(())
}

fn hopf(a: &VerifyArgs, run: &mut Run) -> Result<(), CliError> {
    let instance = a.instance.as_deref().unwrap_or("lambda-xy");
    check_instance(instance, &["lambda-xy", "lambda-xy-literal"])?;
    let window = a.window.unwrap_or(12);
    let mut h = algebra(instance, window)?;
    let (n, mu) = match one_table(a)? {
        Some(t) => {
            h = h.with_ring(t.ring().clone());
            (t.arity_in(), t.to_op())
        }
        None => {
            let n = a.n.unwrap_or(3);
            if !(3..=5).contains(&n) {
                return Err(usage("--n must lie in 3..=5"));
            }
            (n, mu_n_ex1(&h, n, rule(instance)).map_err(usage)?.to_op())
        }
    };
    let mut suite = check_hopf_an(&h, &mu, n).map_err(usage)?;
    suite.items.push(check_relation_seven(&h, &mu, n).map_err(usage)?);
    suite.items.push(check_mu_self_interaction(&h, &mu, n).map_err(usage)?);
    run.set("instance", instance);
    run.set("n", n);
    run.ring = h.ring().to_string();
    run.window = Some(window);
    run.suite(&SuiteReport::new(suite.name, suite.items));
    Ok(())
}

/// `D² = 0` on seeded random cochains, or with `--n` every basis cocycle of
/// `find_cocycles` deformed and checked.
fn gs(a: &VerifyArgs, run: &mut Run) -> Result<(), CliError> {
    let instance = a.instance.as_deref().unwrap_or("lambda-xy");
    check_instance(instance, &["lambda-xy", "lambda-xy-dg"])?;
    let window = a.window.unwrap_or(10);
    run.set("instance", instance);
    run.window = Some(window);
    let mut items = Vec::new();
    let name = if let Some(n) = a.n {
        let h = algebra(instance, window)?;
        let space = find_cocycles(&h, n, window).map_err(usage)?;
        run.set("n", n);
        run.ring = "Q".into();
        for (k, f) in space.basis.iter().enumerate() {
            let d = build_deformation(&h, f, n, true).map_err(usage)?;
            for mut r in d.report.map(|r| r.items).unwrap_or_default() {
                r.relation = format!("cocycle {k}: {}", r.relation);
                items.push(r);
            }
        }
        format!("deformations of {} cocycles at (2-{n}, {n}, 1)", space.basis.len())
    } else {
        let cutoff = a.cutoff.unwrap_or(window + 4);
        let trials = a.trials.unwrap_or(50);
        let h = algebra(instance, cutoff)?;
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let cochains = (0..trials)
            .map(|k| random_cochain(&h, 1 + (k % 2) as i64, 4, 0.3, &mut rng).map_err(usage))
            .collect::<Result<Vec<_>, _>>()?;
        let checks = cochains
            .par_iter()
            .map(|c| check_d_squared(&h, c, window).map_err(usage))
            .collect::<Result<Vec<_>, _>>()?;
        for (k, found) in checks.into_iter().enumerate() {
            for (t, chk) in found {
                items.push(RelationReport::from_check(&format!("D² = 0, trial {k}, component {t}"), None, &chk, Vec::new()));
            }
        }
        run.set("trials", trials);
        run.set("cutoff", cutoff);
        format!("D² = 0 on {trials} random cochains")
    };
    run.suite(&SuiteReport::new(name, items));
    Ok(())
}

fn bider(a: &VerifyArgs, run: &mut Run) -> Result<(), CliError> {
    let instance = a.instance.as_deref().unwrap_or("lambda-xy-omega");
    check_instance(instance, &["lambda-xy-omega", "lambda-xy-zero", "lambda-xy-dg-zero"])?;
    let window = a.window.unwrap_or(10);
    // composites with d are evaluated above the window
    let cutoff = a.cutoff.unwrap_or(window + 2);
    let mut h = algebra(instance, cutoff)?;
    let omega = match one_table(a)? {
        Some(t) => {
            h = h.with_ring(t.ring().clone());
            t.to_op()
        }
        None if instance.ends_with("-omega") => omega22_ex2(&h).map_err(usage)?.to_op(),
        None => Op::Zero { i: 2, j: 2, deg: -1 },
    };
    let suite = check_relations_1_16(&h, &omega, Some(window)).map_err(usage)?;
    run.set("instance", instance);
    run.set("cutoff", cutoff);
    run.ring = h.ring().to_string();
    run.window = Some(window);
    run.suite(&suite);
    Ok(())
}

fn chainmap(a: &VerifyArgs, run: &mut Run) -> Result<(), CliError> {
    let n = a.n.unwrap_or(5);
    if !(1..=6).contains(&n) {
        return Err(usage("--n must lie in 1..=6"));
    }
    let failing: Vec<OrderedPartition> = match a.ring {
        RingArg::F2 => check_chain_map(n, &Ring::F2, None),
        RingArg::Z => {
            let signs = solve_integer_signs(n).map_err(|e| CliError::Capability(e.to_string()))?;
            check_chain_map(n, &Ring::Z, Some(&signs))
        }
    }
    .map_err(usage)?;
    run.set("n", n);
    run.ring = a.ring.name().into();
    run.passed = failing.is_empty();
    run.body = json!({
        "name": format!("(∂⊗1 + 1⊗∂)Δ = Δ∂ on P_{n}"),
        "status": if run.passed { "PASS" } else { "FAIL" },
        "failing_faces": failing.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(())
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Report, CliError> {
    let mut run = Run::new(a);
    match a.suite {
        Suite::Ainfty => ainfty(a, &mut run)?,
        Suite::Hopf => hopf(a, &mut run)?,
        Suite::Gs => gs(a, &mut run)?,
        Suite::Bider => bider(a, &mut run)?,
        Suite::Chainmap => chainmap(a, &mut run)?,
    }
    if let Some(w) = run.window {
        run.set("window", w);
    }
    let inputs = a.table.as_deref().unwrap_or("").as_bytes();
    Ok(Report::new("verify", run.params, &run.ring, run.window, inputs, run.body, run.passed))
}
