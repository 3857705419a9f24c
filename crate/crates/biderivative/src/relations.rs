use ainfty_check::{RelationReport, Status, SuiteReport};
use graded_hopf::{check_vanishes, check_vanishes_within, GradedBialgebra, Op, WindowCheck};
use gs_complex::{gs_d, gs_delta, gs_partial};

use crate::arrow::{circ, component_inventory, Inventory};
use crate::BiderivError;

pub const RELATION_NUMBERS: std::ops::RangeInclusive<usize> = 1..=16;

/// `sign · outer ⊛ inner`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub sign: i64,
    pub outer: &'static str,
    pub inner: &'static str,
}

const fn term(sign: i64, outer: &'static str, inner: &'static str) -> RelationTerm {
    RelationTerm { sign, outer, inner }
}

/// Relation `n` written as `Σ ± A ⊛ B = 0` with `μ^3 = Δ^3 = 0`. Relations
/// (6) and (7) only involve `μ^3` and `Δ^3` and are empty.
pub fn relation_terms(n: usize) -> Vec<RelationTerm> {
    const DC: &str = "d⊗1+1⊗d (coder)";
    const DD: &str = "d⊗1+1⊗d (der)";
    match n {
        1 => vec![term(1, "d", "d")],
        2 => vec![term(1, "d", "μ"), term(-1, "μ", DC)],
        3 => vec![term(1, "Δ", "d"), term(-1, DD, "Δ")],
        4 => vec![term(-1, "μ", "μ⊗1-1⊗μ")],
        5 => vec![term(1, "Δ⊗1-1⊗Δ", "Δ")],
        8 => vec![
            term(1, DD, "ω"),
            term(1, "ω", DC),
            term(-1, "Δ", "μ"),
            term(1, "μ⊗μ", "Δ⊗Δ"),
        ],
        9 => vec![term(1, "μ⊗ω-ω⊗μ", "Δ⊗Δ"), term(-1, "Δ⊗1-1⊗Δ", "ω")],
        10 => vec![term(1, "μ⊗μ", "Δ⊗ω-ω⊗Δ"), term(-1, "ω", "μ⊗1-1⊗μ")],
        11 => vec![term(1, "μ⊗ω-ω⊗μ", "Δ⊗ω-ω⊗Δ")],
        12 => vec![term(1, "μ⊗μ", "ω⊗ω (Δ+ω)")],
        13 => vec![term(1, "ω⊗ω (μ+ω)", "Δ⊗Δ")],
        14 => vec![term(1, "μ⊗ω-ω⊗μ", "ω⊗ω (Δ+ω)")],
        15 => vec![term(1, "ω⊗ω (μ+ω)", "Δ⊗ω-ω⊗Δ")],
        16 => vec![term(1, "ω⊗ω (μ+ω)", "ω⊗ω (Δ+ω)")],
        _ => Vec::new(),
    }
}

fn describe(n: usize, terms: &[RelationTerm]) -> String {
    if terms.is_empty() {
        return format!("({n}) vacuous for μ^3 = Δ^3 = 0");
    }
    let mut s = format!("({n})");
    for (k, t) in terms.iter().enumerate() {
        let sign = match (k, t.sign < 0) {
            (0, false) => " ",
            (0, true) => " -",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let coeff = if t.sign.abs() == 1 { String::new() } else { t.sign.abs().to_string() };
        s.push_str(&format!("{sign}{coeff}({})⊛({})", t.outer, t.inner));
    }
    s.push_str(" = 0");
    s
}

/// The operator of relation `n`, or `None` when the relation is empty.
pub fn relation_op(inv: &Inventory, n: usize) -> Result<Option<Op>, BiderivError> {
    let terms = relation_terms(n);
    if terms.is_empty() {
        return Ok(None);
    }
    let ops = terms
        .iter()
        .map(|t| {
            let (a, b) = (inv.get(t.outer)?, inv.get(t.inner)?);
            let op = circ(a, b).ok_or_else(|| BiderivError::Undefined(a.name.clone(), b.name.clone()))?;
            Ok((t.sign, op))
        })
        .collect::<Result<Vec<_>, BiderivError>>()?;
    Ok(Some(Op::lin_int(ops)?))
}

fn vanishes(op: &Op, h: &GradedBialgebra, window: Option<i64>) -> Result<WindowCheck, BiderivError> {
    Ok(match window {
        Some(w) => check_vanishes_within(op, h, w)?,
        None => check_vanishes(op, h)?,
    })
}

/// Checks relations (1)-(16) for `(h, d, μ, Δ, ω)` on every input of
/// degree at most `window` (default: the largest safe window). The suite
/// passes iff `(h, d, μ, Δ, ω)` is an A∞-bialgebra on that window.
pub fn check_relations_1_16(h: &GradedBialgebra, omega: &Op, window: Option<i64>) -> Result<SuiteReport, BiderivError> {
    let inv = component_inventory(h, omega)?;
    let mut items = Vec::new();
    for n in RELATION_NUMBERS {
        let name = describe(n, &relation_terms(n));
        let item = match relation_op(&inv, n)? {
            Some(op) => RelationReport::from_check(&name, None, &vanishes(&op, h, window)?, Vec::new()),
            None => RelationReport {
                relation: name,
                k: None,
                window: window.unwrap_or(h.d_max()),
                words_checked: 0,
                status: Status::Pass,
                witness: None,
                missing: vec!["μ^3".into(), "Δ^3".into()],
            },
        };
        items.push(item);
    }
    Ok(SuiteReport::new("A∞-bialgebra relations (1)-(16)", items))
}

/// For a bialgebra with a single higher operation `ω^{j,i}` the structure
/// relations reduce to `∂(ω) = 0` and `δ(ω) = 0` (and `d(ω) = 0` when `h`
/// has a differential).
pub fn single_higher_op_relations(h: &GradedBialgebra, omega: &Op, window: Option<i64>) -> Result<SuiteReport, BiderivError> {
    let (i, j) = (omega.arity_in(), omega.arity_out());
    if i + j < 4 {
        return Err(BiderivError::TooSmall { i, j });
    }
    if omega.degree() != 3 - (i + j) as i64 {
        return Err(BiderivError::HigherDegree {
            i,
            j,
            found: omega.degree(),
        });
    }
    let mut items = Vec::new();
    if h.has_differential() {
        items.push(RelationReport::from_check("d(ω) = 0", None, &vanishes(&gs_d(h, omega)?, h, window)?, Vec::new()));
    }
    items.push(RelationReport::from_check("∂(ω) = 0", None, &vanishes(&gs_partial(omega)?, h, window)?, Vec::new()));
    items.push(RelationReport::from_check("δ(ω) = 0", None, &vanishes(&gs_delta(omega)?, h, window)?, Vec::new()));
    Ok(SuiteReport::new(format!("single higher operation ω^{{{j},{i}}}"), items))
}
