use std::collections::BTreeMap;
use std::fmt;

use graded_hopf::{GradedBialgebra, Op};
use gs_complex::d_k;
use serde::Serialize;

use crate::BiderivError;

/// A lattice point `(p, q)` standing for `(H^{⊗p})^{⊗q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Shape {
    pub p: usize,
    pub q: usize,
}

impl Shape {
    pub const fn new(p: usize, q: usize) -> Self {
        Shape { p, q }
    }

    pub fn arity(self) -> usize {
        self.p * self.q
    }

    pub fn transpose(self) -> Shape {
        Shape::new(self.q, self.p)
    }

    pub fn on_x_axis(self) -> bool {
        self.q == 1
    }

    pub fn on_y_axis(self) -> bool {
        self.p == 1
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Provenance {
    #[serde(rename = "linear-d")]
    LinearD,
    #[serde(rename = "derivation-of-Δ")]
    DerivationOfDelta,
    #[serde(rename = "coderivation-of-μ")]
    CoderivationOfMu,
    /// Components of the algebra map `T^aH → T^a(H^{⊗2})` extending `Δ + ω`.
    #[serde(rename = "algebra-map-of-Δ+ω")]
    AlgebraMapOfDeltaOmega,
    /// Components of the coalgebra map `T^c(H^{⊗2}) → T^cH` extending `μ + ω`.
    #[serde(rename = "coalgebra-map-of-μ+ω")]
    CoalgebraMapOfMuOmega,
    /// `ω^{2,2}` itself.
    #[serde(rename = "higher-operation")]
    HigherOperation,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::LinearD => "linear-d",
            Provenance::DerivationOfDelta => "derivation-of-Δ",
            Provenance::CoderivationOfMu => "coderivation-of-μ",
            Provenance::AlgebraMapOfDeltaOmega => "algebra-map-of-Δ+ω",
            Provenance::CoalgebraMapOfMuOmega => "coalgebra-map-of-μ+ω",
            Provenance::HigherOperation => "higher-operation",
        })
    }
}

/// One homogeneous component of the biderivative, drawn as an arrow between
/// lattice points.
#[derive(Clone, Debug)]
pub struct ComponentArrow {
    pub name: String,
    pub source: Shape,
    pub target: Shape,
    pub op: Op,
    pub provenance: Provenance,
}

impl ComponentArrow {
    pub fn new(
        name: impl Into<String>,
        source: Shape,
        target: Shape,
        op: Op,
        provenance: Provenance,
    ) -> Result<Self, BiderivError> {
        let name = name.into();
        for (shape, found) in [(source, op.arity_in()), (target, op.arity_out())] {
            if shape.arity() != found {
                return Err(BiderivError::ShapeArity {
                    name,
                    shape,
                    expected: shape.arity(),
                    found,
                });
            }
        }
        Ok(ComponentArrow {
            name,
            source,
            target,
            op,
            provenance,
        })
    }

    pub fn degree(&self) -> i64 {
        self.op.degree()
    }
}

/// `A ⊛ B = A∘σ_{r,s}∘B` when `B` lands in `(H^{⊗r})^{⊗s}` and `A` starts at
/// `(H^{⊗s})^{⊗r}`; `None` otherwise.
pub fn circ(a: &ComponentArrow, b: &ComponentArrow) -> Option<Op> {
    let Shape { p: r, q: s } = b.target;
    if a.source != b.target.transpose() {
        return None;
    }
    let sigma = Op::sigma(r, s);
    Some(Op::compose(vec![a.op.clone(), sigma, b.op.clone()]).expect("shapes agree"))
}

/// The components of `d + μ + Δ + ω` and of their extensions that occur in
/// transgressive quadratic compositions, keyed by name.
#[derive(Clone, Debug)]
pub struct Inventory {
    arrows: Vec<ComponentArrow>,
}

impl Inventory {
    pub fn get(&self, name: &str) -> Result<&ComponentArrow, BiderivError> {
        self.arrows
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| BiderivError::UnknownComponent(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &ComponentArrow> {
        self.arrows.iter()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

fn diff(a: Op, b: Op) -> Op {
    Op::lin_int(vec![(1, a), (-1, b)]).expect("homogeneous difference")
}

/// Builds the inventory for `(h, d, μ, Δ, ω)`. `d` is the differential of
/// `h` (the zero map when there is none), `ω` has tridegree `(-1, 2, 2)`.
pub fn component_inventory(h: &GradedBialgebra, omega: &Op) -> Result<Inventory, BiderivError> {
    if (omega.degree(), omega.arity_in(), omega.arity_out()) != (-1, 2, 2) {
        return Err(BiderivError::OmegaShape(omega.degree(), omega.arity_in(), omega.arity_out()));
    }
    let w = omega.clone();
    let id = Op::Id(1);
    let t = |ops: Vec<Op>| Op::tensor(ops);
    let sh = Shape::new;
    use Provenance::*;
    let specs: Vec<(&str, Shape, Shape, Op, Provenance)> = vec![
        ("d", sh(1, 1), sh(1, 1), d_k(h, 1)?, LinearD),
        ("d⊗1+1⊗d (coder)", sh(1, 2), sh(1, 2), d_k(h, 2)?, LinearD),
        ("d⊗1+1⊗d (der)", sh(2, 1), sh(2, 1), d_k(h, 2)?, LinearD),
        ("μ", sh(2, 1), sh(1, 1), Op::Mu, CoderivationOfMu),
        ("μ⊗1-1⊗μ", sh(1, 3), sh(1, 2), diff(t(vec![Op::Mu, id.clone()]), t(vec![id.clone(), Op::Mu])), CoderivationOfMu),
        ("Δ", sh(1, 1), sh(1, 2), Op::Delta, DerivationOfDelta),
        ("Δ⊗1-1⊗Δ", sh(2, 1), sh(1, 3), diff(t(vec![Op::Delta, id.clone()]), t(vec![id, Op::Delta])), DerivationOfDelta),
        ("ω", sh(2, 1), sh(1, 2), w.clone(), HigherOperation),
        ("Δ⊗Δ", sh(2, 1), sh(2, 2), t(vec![Op::Delta, Op::Delta]), AlgebraMapOfDeltaOmega),
        ("Δ⊗ω-ω⊗Δ", sh(3, 1), sh(2, 2), diff(t(vec![Op::Delta, w.clone()]), t(vec![w.clone(), Op::Delta])), AlgebraMapOfDeltaOmega),
        ("ω⊗ω (Δ+ω)", sh(4, 1), sh(2, 2), t(vec![w.clone(), w.clone()]), AlgebraMapOfDeltaOmega),
        ("μ⊗μ", sh(2, 2), sh(1, 2), t(vec![Op::Mu, Op::Mu]), CoalgebraMapOfMuOmega),
        ("μ⊗ω-ω⊗μ", sh(2, 2), sh(1, 3), diff(t(vec![Op::Mu, w.clone()]), t(vec![w.clone(), Op::Mu])), CoalgebraMapOfMuOmega),
        ("ω⊗ω (μ+ω)", sh(2, 2), sh(1, 4), t(vec![w.clone(), w]), CoalgebraMapOfMuOmega),
    ];
    let arrows = specs
        .into_iter()
        .map(|(name, s, tg, op, prov)| ComponentArrow::new(name, s, tg, op, prov))
        .collect::<Result<_, _>>()?;
    Ok(Inventory { arrows })
}

/// Every defined product `A ⊛ B` of inventory arrows that starts and ends on
/// an axis and has internal degree `4 - i - j`, grouped by
/// `(i, j) = (source arity, target arity)`.
pub fn transgressive_products(inv: &Inventory) -> BTreeMap<(usize, usize), Vec<(String, String)>> {
    let mut out: BTreeMap<(usize, usize), Vec<(String, String)>> = BTreeMap::new();
    for a in inv.iter() {
        for b in inv.iter() {
            let on_axis = |s: Shape| s.on_x_axis() || s.on_y_axis();
            if circ(a, b).is_none() || !on_axis(b.source) || !on_axis(a.target) {
                continue;
            }
            let (i, j) = (b.source.arity(), a.target.arity());
            if a.degree() + b.degree() == 4 - (i + j) as i64 {
                out.entry((i, j)).or_default().push((a.name.clone(), b.name.clone()));
            }
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}
