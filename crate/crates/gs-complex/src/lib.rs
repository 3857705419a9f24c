//! The graded Gerstenhaber–Schack complex of a truncated bialgebra.
//!
//! Operators are built lazily as [`Op`] expressions, so the differentials can
//! be iterated and evaluated word by word on a degree window.

mod cochain;
mod cocycle;
mod differential;
mod symbolic;

use ainfty_check::CheckError;
use coeff_chain::ChainError;
use graded_hopf::{HopfError, Op};
use thiserror::Error;

pub use cochain::{random_cochain, random_component, GsCochain, LazyCochain, Tridegree};
pub use cocycle::{build_deformation, find_cocycles, is_2cocycle, CocycleSpace, Deformation};
pub use differential::{
    action, check_d_squared, coaction, d_k, delta_k, gs_d, gs_delta, gs_partial, gs_terms, partial_k, total_d, total_d_terms, GsTerm,
    Side,
};
pub use symbolic::{symbolic_total_d, GsOp, SymTerm};

#[derive(Debug, Error)]
pub enum GsError {
    #[error("arity must be at least 1, got {0}")]
    ZeroArity(usize),
    #[error("component {name} at {tridegree} has total degree {found}, expected {expected}")]
    TotalDegree {
        name: String,
        tridegree: Tridegree,
        found: i64,
        expected: i64,
    },
    #[error("component {name} at {tridegree} lies outside the region p >= {bound}")]
    OutsideRegion { name: String, tridegree: Tridegree, bound: i64 },
    #[error("expected a component at {expected}, found {found}")]
    WrongTridegree { expected: Tridegree, found: Tridegree },
    #[error("n must be at least 3, got {0}")]
    SmallN(usize),
    #[error("window {window} is too small to constrain: {reason}")]
    WindowTooSmall { window: i64, reason: String },
    #[error("not a 2-cocycle: {0}")]
    NotCocycle(String),
    #[error("deformation check failed: {0}")]
    DeformationFailed(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

pub(crate) fn tridegree_of(op: &Op) -> Tridegree {
    Tridegree::new(op.degree(), op.arity_in(), op.arity_out())
}
