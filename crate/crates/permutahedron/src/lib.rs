//! Faces of the permutahedron `P_n` as ordered set partitions of `{1..n}`.
//!
//! A face `A_1|...|A_k` has dimension `n - k`; the top cell is the single
//! block, vertices are the `n!` total orders. The boundary splits one block
//! into an ordered pair of nonempty subsets.

use std::fmt;
use std::str::FromStr;

use coeff_chain::{Chain, Ring, Sign};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("invalid partition: {0}")]
    Invalid(String),
    #[error("dimension {dim} out of range for P_{n}")]
    DimOutOfRange { n: usize, dim: usize },
    #[error("a sign assignment is required over {0}")]
    MissingSigns(String),
    #[error("no sign recorded for {face} -> {facet}")]
    MissingSign { face: String, facet: String },
}

/// A face of `P_n`. Elements inside a block are sorted; block order is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct OrderedPartition {
    blocks: Vec<Vec<u8>>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<Vec<u8>>) -> Result<Self, PermError> {
        let mut blocks = blocks;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(PermError::Invalid("empty block".into()));
            }
            b.sort_unstable();
        }
        let mut all: Vec<u8> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.is_empty() || all.iter().enumerate().any(|(i, &x)| x as usize != i + 1) {
            return Err(PermError::Invalid(format!("{blocks:?} is not a partition of 1..n")));
        }
        Ok(OrderedPartition { blocks })
    }

    /// Blocks that are already known to be sorted and to cover `1..n`.
    fn raw(blocks: Vec<Vec<u8>>) -> Self {
        OrderedPartition { blocks }
    }

    pub fn top(n: usize) -> Self {
        OrderedPartition::raw(vec![(1..=n as u8).collect()])
    }

    /// The vertex `σ(1)|σ(2)|...`.
    pub fn vertex(order: &[u8]) -> Result<Self, PermError> {
        OrderedPartition::new(order.iter().map(|&x| vec![x]).collect())
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn dim(&self) -> usize {
        self.n() - self.blocks.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.dim() == 0
    }

    /// Codimension-one faces, in canonical order (each exactly once).
    pub fn facets(&self) -> Vec<OrderedPartition> {
        let mut out = Vec::new();
        for (i, blk) in self.blocks.iter().enumerate() {
            let s = blk.len();
            if s < 2 {
                continue;
            }
            for mask in 1..(1u32 << s) - 1 {
                let (b, c): (Vec<u8>, Vec<u8>) = {
                    let mut b = Vec::new();
                    let mut c = Vec::new();
                    for (k, &x) in blk.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            b.push(x);
                        } else {
                            c.push(x);
                        }
                    }
                    (b, c)
                };
                let mut blocks = self.blocks[..i].to_vec();
                blocks.push(b);
                blocks.push(c);
                blocks.extend_from_slice(&self.blocks[i + 1..]);
                out.push(OrderedPartition::raw(blocks));
            }
        }
        out.sort();
        out
    }

    /// Sum of the dimensions of the first `k` blocks, i.e. the degree of the
    /// product of the first `k` factors.
    pub fn prefix_dim(&self, k: usize) -> usize {
        self.blocks[..k].iter().map(|b| b.len() - 1).sum()
    }
}

impl From<OrderedPartition> for Vec<Vec<u8>> {
    fn from(p: OrderedPartition) -> Self {
        p.blocks
    }
}

impl TryFrom<Vec<Vec<u8>>> for OrderedPartition {
    type Error = PermError;

    fn try_from(v: Vec<Vec<u8>>) -> Result<Self, Self::Error> {
        OrderedPartition::new(v)
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.n() > 9;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (k, x) in b.iter().enumerate() {
                if wide && k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for OrderedPartition {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PermError::Invalid(s.to_string());
        let blocks = s
            .split('|')
            .map(|b| {
                if b.contains(',') {
                    b.split(',').map(|x| x.trim().parse::<u8>().map_err(|_| bad())).collect()
                } else {
                    b.trim()
                        .chars()
                        .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                        .collect()
                }
            })
            .collect::<Result<Vec<Vec<u8>>, _>>()?;
        OrderedPartition::new(blocks)
    }
}

/// All ordered set partitions of `{1..n}`, optionally of one dimension,
/// sorted canonically.
pub fn enumerate_faces(n: usize, dim: Option<usize>) -> Result<Vec<OrderedPartition>, PermError> {
    if n == 0 {
        return Err(PermError::Invalid("n must be positive".into()));
    }
    if let Some(d) = dim {
        if d >= n {
            return Err(PermError::DimOutOfRange { n, dim: d });
        }
    }
    let elems: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    let want_blocks = dim.map(|d| n - d);
    fill(&elems, &mut prefix, want_blocks, &mut out);
    out.sort();
    Ok(out)
}

fn fill(rest: &[u8], prefix: &mut Vec<Vec<u8>>, want: Option<usize>, out: &mut Vec<OrderedPartition>) {
    if rest.is_empty() {
        if want.is_none_or(|w| w == prefix.len()) {
            out.push(OrderedPartition::raw(prefix.clone()));
        }
        return;
    }
    if want.is_some_and(|w| prefix.len() >= w) {
        return;
    }
    let s = rest.len();
    for mask in 1u32..(1 << s) {
        let (b, c): (Vec<u8>, Vec<u8>) = rest
            .iter()
            .enumerate()
            .fold((Vec::new(), Vec::new()), |(mut b, mut c), (k, &x)| {
                if mask >> k & 1 == 1 {
                    b.push(x)
                } else {
                    c.push(x)
                }
                (b, c)
            });
        prefix.push(b);
        fill(&c, prefix, want, out);
        prefix.pop();
    }
}

/// Signs for boundary incidences over a signed ring.
pub trait BoundarySigns {
    fn boundary_sign(&self, face: &OrderedPartition, facet: &OrderedPartition) -> Option<Sign>;
}

/// Cellular boundary of a face; over F2 every coefficient is 1, otherwise
/// the sign of each incidence comes from `signs`.
pub fn boundary(
    face: &OrderedPartition,
    ring: &Ring,
    signs: Option<&dyn BoundarySigns>,
) -> Result<Chain<OrderedPartition>, PermError> {
    let mut out = Chain::zero(ring.clone());
    let facets = face.facets();
    if ring.characteristic() == 2 {
        for f in facets {
            out.add_int(f, 1);
        }
        return Ok(out);
    }
    let signs = signs.ok_or_else(|| PermError::MissingSigns(ring.to_string()))?;
    for f in facets {
        let s = signs
            .boundary_sign(face, &f)
            .ok_or_else(|| PermError::MissingSign {
                face: face.to_string(),
                facet: f.to_string(),
            })?;
        out.add_int(f, s.to_i64());
    }
    Ok(out)
}

/// Linear extension of [`boundary`] to chains.
pub fn boundary_chain(
    c: &Chain<OrderedPartition>,
    signs: Option<&dyn BoundarySigns>,
) -> Result<Chain<OrderedPartition>, PermError> {
    c.try_map_linear(|f| boundary(f, c.ring(), signs))
}

/// One factor of a face: a block together with its order-preserving
/// relabeling onto `{1..|block|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub block: Vec<u8>,
}

impl Factor {
    pub fn size(&self) -> usize {
        self.block.len()
    }

    /// Image of `x ∈ block` in `{1..size}`.
    pub fn to_standard(&self, x: u8) -> Option<u8> {
        self.block.iter().position(|&y| y == x).map(|i| i as u8 + 1)
    }

    /// Inverse relabeling `{1..size} → block`.
    pub fn from_standard(&self, k: u8) -> u8 {
        self.block[k as usize - 1]
    }

    /// Transport the blocks of a face of `P_size` back onto this block.
    pub fn relabel_back(&self, p: &OrderedPartition) -> Vec<Vec<u8>> {
        p.blocks
            .iter()
            .map(|b| b.iter().map(|&k| self.from_standard(k)).collect())
            .collect()
    }
}

/// A face is the product of one permutahedron per block.
pub fn factorize(face: &OrderedPartition) -> Vec<Factor> {
    face.blocks
        .iter()
        .map(|b| Factor { block: b.clone() })
        .collect()
}

/// Reassemble a face from relabeled sub-faces, one per factor, by
/// concatenating their blocks in factor order.
pub fn reassemble(factors: &[Factor], parts: &[&OrderedPartition]) -> OrderedPartition {
    let blocks = factors
        .iter()
        .zip(parts)
        .flat_map(|(f, p)| f.relabel_back(p))
        .collect();
    OrderedPartition::raw(blocks)
}

/// Concatenate already relabeled blocks into a face; the caller guarantees
/// the union is `1..n`.
pub fn concat_blocks(blocks: Vec<Vec<u8>>) -> OrderedPartition {
    OrderedPartition::raw(blocks)
}
