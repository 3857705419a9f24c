use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::ChainError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`.
    pub fn from_parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Koszul sign of rearranging graded symbols. `perm[k]` is the input
/// position that lands in output position `k`; `degrees` are indexed by input
/// position. Every inverted pair of odd-degree symbols contributes `-1`.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Result<Sign, ChainError> {
    if perm.len() != degrees.len() {
        return Err(ChainError::LengthMismatch {
            expected: perm.len(),
            found: degrees.len(),
        });
    }
    check_bijection(perm)?;
    let mut odd_inversions = 0i64;
    for x in 0..perm.len() {
        if degrees[perm[x]].rem_euclid(2) == 0 {
            continue;
        }
        for y in x + 1..perm.len() {
            if perm[x] > perm[y] && degrees[perm[y]].rem_euclid(2) == 1 {
                odd_inversions += 1;
            }
        }
    }
    Ok(Sign::from_parity(odd_inversions))
}

fn check_bijection(perm: &[usize]) -> Result<(), ChainError> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(ChainError::NotABijection(perm.to_vec()));
        }
    }
    Ok(())
}

/// A permutation of tensor positions whose sign is computed from the degrees
/// of the symbols it moves (Koszul rule).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    images: Vec<usize>,
}

impl SignedPermutation {
    /// `images[k]` = input position placed at output position `k` (0-based).
    pub fn new(images: Vec<usize>) -> Result<Self, ChainError> {
        check_bijection(&images)?;
        Ok(SignedPermutation { images })
    }

    pub fn identity(k: usize) -> Self {
        SignedPermutation {
            images: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// 1-based position map, as in `(1,3,2,4)`.
    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k == i)
    }

    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i].clone()).collect()
    }

    pub fn sign(&self, degrees: &[i64]) -> Result<Sign, ChainError> {
        koszul_sign(&self.images, degrees)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> Result<Self, ChainError> {
        if self.len() != other.len() {
            return Err(ChainError::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(SignedPermutation {
            images: self.images.iter().map(|&k| other.images[k]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i] = k;
        }
        SignedPermutation { images: inv }
    }
}

/// `σ_{r,s}: (H^{⊗r})^{⊗s} → (H^{⊗s})^{⊗r}`: the input is `s` blocks of `r`
/// symbols read as an `s×r` grid, the output is its transpose.
pub fn sigma_rs(r: usize, s: usize) -> SignedPermutation {
    SignedPermutation {
        images: (0..r)
            .flat_map(|a| (0..s).map(move |b| b * r + a))
            .collect(),
    }
}
