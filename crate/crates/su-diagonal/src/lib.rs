//! Cellular diagonal of the permutahedra built from step matrices and their
//! derived matrices, with an integer sign solver.

mod diagonal;
mod matrix;
mod signs;

use coeff_chain::ChainError;
use permutahedron::PermError;
use thiserror::Error;

pub use diagonal::{
    chain_map_defect, check_chain_map, complementary_pairs, cp_of_matrix, diagonal_face, diagonal_top, iterated_diagonal,
    tensor_boundary, top_terms, Cp, TensorChain,
};
pub use matrix::{derived_matrices, down_shift, is_step_matrix, right_shift, step_matrices, CellMatrix};
pub use signs::{solve_integer_signs, verify_signs, SignAssignment};

#[derive(Debug, Error)]
pub enum DiagError {
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("value {value} does not lie in line {line}")]
    NotInLine { value: u8, line: usize },
    #[error("not a step matrix: {0}")]
    NotStep(String),
    #[error("no ({p},{q})-complementary pairs in P_{n}: need p + q = n + 1")]
    Arity { n: usize, p: usize, q: usize },
    #[error("a sign assignment is required over {0}")]
    MissingSigns(String),
    #[error("sign assignment does not cover {0}")]
    SignsUnavailable(String),
    #[error("unsatisfiable sign system: {0}")]
    Unsatisfiable(String),
    #[error("{what}: a term occurs {multiplicity} times")]
    NonBinaryTerm { what: String, multiplicity: usize },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Perm(#[from] PermError),
}
