use std::collections::{BTreeMap, BTreeSet};

use tonks_associahedron::{iterated_diagonal_k, PlanarTree};

use crate::graph::FractionGraph;
use crate::MatradError;

/// One way of writing a graph as an elementary fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub denominators: Vec<FractionGraph>,
    pub numerators: Vec<FractionGraph>,
}

/// A deduplicated elementary fraction with every representation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub graph: FractionGraph,
    pub representations: Vec<Representation>,
}

impl Fraction {
    pub fn dim(&self) -> i64 {
        self.graph.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row {
    Numerator,
    Denominator,
}

fn tuples<'a>(cands: &[&'a FractionGraph], len: usize, total: usize, arity: fn(&FractionGraph) -> usize) -> Vec<Vec<&'a FractionGraph>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go<'a>(
        cands: &[&'a FractionGraph],
        len: usize,
        left: usize,
        arity: fn(&FractionGraph) -> usize,
        cur: &mut Vec<&'a FractionGraph>,
        out: &mut Vec<Vec<&'a FractionGraph>>,
    ) {
        if cur.len() == len {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for &c in cands {
            let a = arity(c);
            // every remaining slot needs at least one wire
            if a + (len - cur.len() - 1) <= left {
                cur.push(c);
                go(cands, len, left - a, arity, cur, out);
                cur.pop();
            }
        }
    }
    go(cands, len, total, arity, &mut cur, &mut out);
    out
}

/// All elementary fractions with `m` inputs and `n` outputs whose entries
/// are taken from `blocks` (the identity wire is always available),
/// deduplicated as graphs and sorted by dimension. `dim` keeps only one
/// dimension.
pub fn enumerate_fractions(
    n: usize,
    m: usize,
    blocks: &[FractionGraph],
    dim: Option<i64>,
) -> Result<Vec<Fraction>, MatradError> {
    let mut pool: BTreeSet<FractionGraph> = blocks.iter().cloned().collect();
    pool.insert(FractionGraph::identity());
    let pool: Vec<FractionGraph> = pool.into_iter().collect();
    let mut found: BTreeMap<FractionGraph, Vec<Representation>> = BTreeMap::new();
    for p in 1..=m {
        for q in 1..=n {
            let dens: Vec<&FractionGraph> = pool.iter().filter(|b| b.outputs() == q).collect();
            let nums: Vec<&FractionGraph> = pool.iter().filter(|b| b.inputs() == p).collect();
            let drows = tuples(&dens, p, m, FractionGraph::inputs);
            if drows.is_empty() {
                continue;
            }
            let nrows = tuples(&nums, q, n, FractionGraph::outputs);
            for d in &drows {
                let d: Vec<FractionGraph> = d.iter().map(|&g| g.clone()).collect();
                for nr in &nrows {
                    let nr: Vec<FractionGraph> = nr.iter().map(|&g| g.clone()).collect();
                    let g = FractionGraph::fraction(&d, &nr)?;
                    if dim.is_some_and(|k| g.dim() != k) {
                        continue;
                    }
                    found.entry(g).or_default().push(Representation {
                        denominators: d.clone(),
                        numerators: nr,
                    });
                }
            }
        }
    }
    let mut out: Vec<Fraction> = found
        .into_iter()
        .map(|(graph, representations)| Fraction { graph, representations })
        .collect();
    out.sort_by(|a, b| (a.dim(), &a.graph).cmp(&(b.dim(), &b.graph)));
    Ok(out)
}

/// Leaf intervals spanned by the internal vertices of `t`.
fn spans(t: &PlanarTree) -> BTreeSet<(u8, u8)> {
    fn go(t: &PlanarTree, out: &mut BTreeSet<(u8, u8)>) -> (u8, u8) {
        match t {
            PlanarTree::Leaf(l) => (*l, *l),
            PlanarTree::Node(cs) => {
                let ends: Vec<(u8, u8)> = cs.iter().map(|c| go(c, out)).collect();
                let s = (ends[0].0, ends[ends.len() - 1].1);
                out.insert(s);
                s
            }
        }
    }
    let mut out = BTreeSet::new();
    go(t, &mut out);
    out
}

/// `s` is a face of `t` in `K_n`: `s` refines `t`.
fn is_face(s: &PlanarTree, t: &PlanarTree) -> bool {
    s.leaves() == t.leaves() && spans(t).is_subset(&spans(s))
}

/// The selection rule on one row. A numerator row of `q` elements with `p`
/// inputs each passes iff, read as trees, it is a face of a component of
/// `Δ_K^{(q-1)}` on the corolla with `p` leaves; denominator rows are read
/// upside down. Rows sharing at most two wires always pass.
pub fn row_admissible(row: &[FractionGraph], side: Row) -> Result<bool, MatradError> {
    let Some(first) = row.first() else {
        return Err(MatradError::Arity("empty row".into()));
    };
    let shared = match side {
        Row::Numerator => first.inputs(),
        Row::Denominator => first.outputs(),
    };
    if shared <= 2 {
        return Ok(true);
    }
    let trees = row
        .iter()
        .map(|g| {
            let g = match side {
                Row::Numerator => g.clone(),
                Row::Denominator => g.flip(),
            };
            g.to_tree()
                .ok_or_else(|| MatradError::Unsupported(format!("{g} is not a tree on a side of arity {shared}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let comps = iterated_diagonal_k(row.len() - 1, &PlanarTree::corolla(shared))?;
    let hit = comps.keys().any(|c| c.0.iter().zip(&trees).all(|(ct, t)| is_face(t, ct)));
    Ok(hit)
}

/// A fraction is admissible iff one of its representations passes the
/// selection rule on both rows.
pub fn admissible(f: &Fraction) -> Result<bool, MatradError> {
    let mut unsupported = None;
    for r in &f.representations {
        let check = row_admissible(&r.numerators, Row::Numerator)
            .and_then(|a| Ok(a && row_admissible(&r.denominators, Row::Denominator)?));
        match check {
            Ok(true) => return Ok(true),
            Ok(false) => {}
            Err(e @ MatradError::Unsupported(_)) => unsupported = Some(e),
            Err(e) => return Err(e),
        }
    }
    match unsupported {
        Some(e) => Err(e),
        None => Ok(false),
    }
}
