use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::DiagError;

/// A `q×p` matrix over `{0} ∪ {1..n}`, `0` meaning empty, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct CellMatrix {
    q: usize,
    p: usize,
    cells: Vec<u8>,
}

impl CellMatrix {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self, DiagError> {
        let q = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        if q == 0 || p == 0 || rows.iter().any(|r| r.len() != p) {
            return Err(DiagError::Malformed("ragged or empty matrix".into()));
        }
        let cells: Vec<u8> = rows.into_iter().flatten().collect();
        let mut seen = BTreeSet::new();
        if cells.iter().filter(|&&v| v != 0).any(|v| !seen.insert(*v)) {
            return Err(DiagError::Malformed("repeated entry".into()));
        }
        Ok(CellMatrix { q, p, cells })
    }

    pub fn rows(&self) -> usize {
        self.q
    }

    pub fn cols(&self) -> usize {
        self.p
    }

    /// `n = p + q - 1`.
    pub fn n(&self) -> usize {
        self.p + self.q - 1
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.cells[i * self.p + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u8) {
        self.cells[i * self.p + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.cells[i * self.p..(i + 1) * self.p]
    }

    pub fn col(&self, j: usize) -> Vec<u8> {
        (0..self.q).map(|i| self.get(i, j)).collect()
    }

    pub fn row_entries(&self, i: usize) -> Vec<u8> {
        self.row(i).iter().copied().filter(|&v| v != 0).collect()
    }

    pub fn col_entries(&self, j: usize) -> Vec<u8> {
        self.col(j).into_iter().filter(|&v| v != 0).collect()
    }

    pub fn transpose(&self) -> CellMatrix {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.p {
            for i in 0..self.q {
                cells.push(self.get(i, j));
            }
        }
        CellMatrix {
            q: self.p,
            p: self.q,
            cells,
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.q).map(|i| self.row(i).to_vec()).collect()
    }
}

impl From<CellMatrix> for Vec<Vec<u8>> {
    fn from(m: CellMatrix) -> Self {
        m.to_rows()
    }
}

impl TryFrom<Vec<Vec<u8>>> for CellMatrix {
    type Error = DiagError;

    fn try_from(v: Vec<Vec<u8>>) -> Result<Self, Self::Error> {
        CellMatrix::from_rows(v)
    }
}

impl fmt::Display for CellMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.q {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Nonzero cells adjacent (no gaps), values strictly increasing, nonempty.
fn line_ok(line: &[u8]) -> bool {
    let idx: Vec<usize> = (0..line.len()).filter(|&k| line[k] != 0).collect();
    let (Some(&first), Some(&last)) = (idx.first(), idx.last()) else {
        return false;
    };
    last - first + 1 == idx.len() && line[first..=last].windows(2).all(|w| w[0] < w[1])
}

/// Step-matrix test: each of `1..n` exactly once; the nonzero entries of every
/// row (left to right) and column (top to bottom) increase and occupy
/// adjacent cells; every diagonal `j - i = c` holds exactly one entry.
pub fn is_step_matrix(m: &CellMatrix) -> bool {
    let n = m.n();
    let mut vals: Vec<u8> = m.cells.iter().copied().filter(|&v| v != 0).collect();
    vals.sort_unstable();
    if vals.len() != n || vals.iter().enumerate().any(|(k, &v)| v as usize != k + 1) {
        return false;
    }
    if !(0..m.q).all(|i| line_ok(m.row(i))) || !(0..m.p).all(|j| line_ok(&m.col(j))) {
        return false;
    }
    let (q, p) = (m.q as isize, m.p as isize);
    (-(q - 1)..p).all(|c| {
        (0..q)
            .filter(|&i| {
                let j = i + c;
                (0..p).contains(&j) && m.get(i as usize, j as usize) != 0
            })
            .count()
            == 1
    })
}

/// All `q×p` step matrices, sorted.
pub fn step_matrices(q: usize, p: usize) -> Vec<CellMatrix> {
    let n = p + q - 1;
    let diagonals: Vec<Vec<(usize, usize)>> = (-(q as isize - 1)..p as isize)
        .map(|c| {
            (0..q)
                .filter_map(|i| {
                    let j = i as isize + c;
                    (0..p as isize).contains(&j).then_some((i, j as usize))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    choose_cells(&diagonals, &mut chosen, q, p, &mut out);
    out.sort();
    out.dedup();
    out
}

fn choose_cells(
    diagonals: &[Vec<(usize, usize)>],
    chosen: &mut Vec<(usize, usize)>,
    q: usize,
    p: usize,
    out: &mut Vec<CellMatrix>,
) {
    if chosen.len() == diagonals.len() {
        let mut occupied = vec![false; q * p];
        for &(i, j) in chosen.iter() {
            occupied[i * p + j] = true;
        }
        let shape_ok = |line: Vec<bool>| {
            let idx: Vec<usize> = (0..line.len()).filter(|&k| line[k]).collect();
            !idx.is_empty() && idx[idx.len() - 1] - idx[0] + 1 == idx.len()
        };
        if !(0..q).all(|i| shape_ok((0..p).map(|j| occupied[i * p + j]).collect()))
            || !(0..p).all(|j| shape_ok((0..q).map(|i| occupied[i * p + j]).collect()))
        {
            return;
        }
        let mut m = CellMatrix {
            q,
            p,
            cells: vec![0; q * p],
        };
        linear_extensions(&mut m, &occupied, 1, out);
        return;
    }
    for &cell in &diagonals[chosen.len()] {
        chosen.push(cell);
        choose_cells(diagonals, chosen, q, p, out);
        chosen.pop();
    }
}

/// Fill occupied cells with `next..=n` so rows and columns increase: a cell
/// may receive the next value once its left and upper occupied neighbours are
/// filled.
fn linear_extensions(m: &mut CellMatrix, occupied: &[bool], next: u8, out: &mut Vec<CellMatrix>) {
    let n = m.n() as u8;
    if next > n {
        out.push(m.clone());
        return;
    }
    for i in 0..m.q {
        for j in 0..m.p {
            if !occupied[i * m.p + j] || m.get(i, j) != 0 {
                continue;
            }
            let left_ok = j == 0 || !occupied[i * m.p + j - 1] || m.get(i, j - 1) != 0;
            let up_ok = i == 0 || !occupied[(i - 1) * m.p + j] || m.get(i - 1, j) != 0;
            if left_ok && up_ok {
                m.set(i, j, next);
                linear_extensions(m, occupied, next + 1, out);
                m.set(i, j, 0);
            }
        }
    }
}

/// `D_S` on row `i`: if `S ≠ ∅`, `max row(i+1) < min S = m_ij` and
/// `m_{i+1,k} = 0` for all `k ≥ j`, swap every selected entry with the cell
/// below it; otherwise return `M`.
pub fn down_shift(m: &CellMatrix, i: usize, s: &[u8]) -> Result<CellMatrix, DiagError> {
    if i >= m.q {
        return Err(DiagError::Malformed(format!("row {i} out of range")));
    }
    let row = m.row(i);
    if let Some(bad) = s.iter().find(|&&v| v == 0 || !row.contains(&v)) {
        return Err(DiagError::NotInLine { value: *bad, line: i });
    }
    if s.is_empty() || i + 1 >= m.q {
        return Ok(m.clone());
    }
    let min_s = *s.iter().min().expect("nonempty");
    let j = (0..m.p).find(|&k| s.contains(&row[k])).expect("nonempty");
    debug_assert_eq!(row[j], min_s);
    let below = m.row(i + 1);
    if below.iter().any(|&v| v != 0 && v >= min_s) || below[j..].iter().any(|&v| v != 0) {
        return Ok(m.clone());
    }
    let mut out = m.clone();
    for k in 0..m.p {
        if s.contains(&m.get(i, k)) {
            let (a, b) = (m.get(i, k), m.get(i + 1, k));
            out.set(i, k, b);
            out.set(i + 1, k, a);
        }
    }
    Ok(out)
}

/// `R_T` on column `j`, the transpose of [`down_shift`].
pub fn right_shift(m: &CellMatrix, j: usize, t: &[u8]) -> Result<CellMatrix, DiagError> {
    down_shift(&m.transpose(), j, t).map(|x| x.transpose())
}

fn proper_subsets(xs: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    let k = xs.len();
    let full = if k == 0 { 0u32 } else { (1u32 << k) - 1 };
    (1..full).map(move |mask| {
        (0..k)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| xs[b])
            .collect()
    })
}

/// All matrices `R_{T_p}⋯R_{T_1} D_{S_q}⋯D_{S_1} E`, each `S_i`, `T_j` ranging
/// over the proper subsets of the current row/column (∅ = trivial shift).
pub fn derived_matrices(e: &CellMatrix) -> Result<BTreeSet<CellMatrix>, DiagError> {
    if !is_step_matrix(e) {
        return Err(DiagError::NotStep(e.to_string()));
    }
    let mut cur = BTreeSet::from([e.clone()]);
    for i in 0..e.q {
        let mut next = BTreeSet::new();
        for m in &cur {
            next.insert(m.clone());
            for s in proper_subsets(&m.row_entries(i)) {
                next.insert(down_shift(m, i, &s)?);
            }
        }
        cur = next;
    }
    for j in 0..e.p {
        let mut next = BTreeSet::new();
        for m in &cur {
            next.insert(m.clone());
            for t in proper_subsets(&m.col_entries(j)) {
                next.insert(right_shift(m, j, &t)?);
            }
        }
        cur = next;
    }
    Ok(cur)
}
