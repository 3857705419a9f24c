//! The bialgebra `Λ(x,y)` truncated at a degree cutoff, sparse homogeneous
//! maps between its tensor powers, and an expression language for composing
//! them with Koszul signs.

mod algebra;
mod examples;
mod hom;
mod mono;
mod op;

use coeff_chain::{Chain, ChainError};
use thiserror::Error;

pub use algebra::{make_lambda_xy, make_lambda_xy_dg, GradedBialgebra};
pub use examples::{mu_n_ex1, omega22_ex2, ExponentRule};
pub use hom::HomComponent;
pub use mono::{Mono, Word};
pub use op::{
    check_vanishes, check_vanishes_within, comult_chain_left, comult_chain_right, compose_tensor, delta_tensor,
    mu_tensor, mult_chain_left, mult_chain_right, pad, Op, WindowCheck,
};

pub type WordChain = Chain<Word>;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("OUT_OF_WINDOW: degree {degree} exceeds the cutoff {window}")]
    OutOfWindow { degree: i64, window: i64 },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("degree cutoff {0} is below 4")]
    BadCutoff(i64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
}
