//! Exact coefficient rings, sparse formal chains over arbitrary ordered basis
//! keys, Koszul signs, and the block-transpose permutations `σ_{r,s}`.
//!
//! Everything here is immutable after construction and free of floating
//! point; values are `Send + Sync`.

mod chain;
pub mod linalg;
mod ring;
mod sign;

pub use chain::{Chain, Tensor};
pub use ring::{Coeff, Ring};
pub use sign::{koszul_sign, sigma_rs, Sign, SignedPermutation};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("cannot parse coefficient `{0}`")]
    BadCoefficient(String),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: String },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a permutation")]
    NotABijection(Vec<usize>),
    #[error("{0} is not a field")]
    NotAField(String),
}
