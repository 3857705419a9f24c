//! Double-corolla generators `θ_m^n`, elementary fractions built from them,
//! the diagonal selection rule, and the cell complexes `KK_{n,m}` with
//! `m + n <= 5`.

mod dot;
mod enumerate;
mod graph;
mod kk;

use thiserror::Error;
use tonks_associahedron::TreeError;

pub use dot::{face_poset_dot, fraction_dot};
pub use enumerate::{admissible, enumerate_fractions, row_admissible, Fraction, Representation, Row};
pub use graph::{FractionGraph, Generator, Src, Dst};
pub use kk::{build_kk, Cell, CellComplex, KkAtlas, Rejected, MAX_ARITY_SUM};

#[derive(Debug, Error)]
pub enum MatradError {
    #[error("KK_{{{n},{m}}} is out of range: only m + n <= 5 is supported")]
    OutOfRange { n: usize, m: usize },
    #[error("KK_{{{n},{m}}} has no top cell of non-negative dimension")]
    TooSmall { n: usize, m: usize },
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("selection rule unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse fraction graph {0:?}")]
    Parse(String),
    #[error("boundary of {cell} leaves the complex: {missing}")]
    NotClosed { cell: String, missing: String },
    #[error("∂² ≠ 0 on {0}")]
    BoundarySquare(String),
    #[error("KK_{{{n},{m}}} has Euler characteristic {chi}, expected 1")]
    Euler { n: usize, m: usize, chi: i64 },
    #[error(transparent)]
    Tree(#[from] TreeError),
}
