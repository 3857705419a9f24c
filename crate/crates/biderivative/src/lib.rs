//! Components of the biderivative of `ω = d + μ + Δ + ω^{2,2}`, their
//! `⊛`-composition, and the sixteen structure relations that make
//! `(H, d, μ, Δ, ω^{2,2})` an A∞-bialgebra.

mod arrow;
mod relations;

use ainfty_check::CheckError;
use graded_hopf::HopfError;
use gs_complex::GsError;
use thiserror::Error;

pub use arrow::{circ, component_inventory, transgressive_products, ComponentArrow, Inventory, Provenance, Shape};
pub use relations::{
    check_relations_1_16, relation_op, relation_terms, single_higher_op_relations, RelationTerm, RELATION_NUMBERS,
};

#[derive(Debug, Error)]
pub enum BiderivError {
    #[error("{name}: shape {shape} holds {expected} tensor factors but the map has {found}")]
    ShapeArity {
        name: String,
        shape: Shape,
        expected: usize,
        found: usize,
    },
    #[error("ω must have tridegree (-1, 2, 2), found ({0}, {1}, {2})")]
    OmegaShape(i64, usize, usize),
    #[error("a single higher operation needs i + j >= 4, found i = {i}, j = {j}")]
    TooSmall { i: usize, j: usize },
    #[error("ω^{{{j},{i}}} must have degree {}, found {found}", 3 - (*i as i64) - (*j as i64))]
    HigherDegree { i: usize, j: usize, found: i64 },
    #[error("no component named `{0}`")]
    UnknownComponent(String),
    #[error("{0} ⊛ {1} is not defined")]
    Undefined(String, String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Gs(#[from] GsError),
}
