use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::enumerate::{admissible, enumerate_fractions, Fraction, Representation};
use crate::graph::{FractionGraph, Generator};
use crate::MatradError;

/// Largest `m + n` for which `KK_{n,m}` is built.
pub const MAX_ARITY_SUM: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub label: String,
    pub dim: usize,
    pub graph: FractionGraph,
}

/// A fraction discarded by the selection rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejected {
    pub label: String,
    pub dim: i64,
    pub graph: FractionGraph,
}

/// `KK_{n,m}` as a regular cell complex over F2: the top cell `θ_m^n` and the
/// admissible fractions, with boundary incidences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub n: usize,
    pub m: usize,
    pub cells: Vec<Cell>,
    /// `boundary[c]` lists the facets of cell `c` (indices into `cells`).
    pub boundary: Vec<Vec<usize>>,
    /// Fractions produced before the selection rule.
    pub enumerated: usize,
    pub rejected: Vec<Rejected>,
}

impl CellComplex {
    pub fn top_dim(&self) -> usize {
        self.n + self.m - 3
    }

    pub fn top(&self) -> &Cell {
        self.cells.last().expect("a complex has its top cell")
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.top_dim() + 1];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &k)| if d % 2 == 0 { k as i64 } else { -(k as i64) })
            .sum()
    }

    pub fn index_of(&self, g: &FractionGraph) -> Option<usize> {
        self.cells.iter().position(|c| &c.graph == g)
    }

    /// Cells in the boundary of the boundary of `c`, with odd multiplicity.
    pub fn boundary_squared(&self, c: usize) -> Vec<usize> {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for &f in &self.boundary[c] {
            for &g in &self.boundary[f] {
                *count.entry(g).or_default() += 1;
            }
        }
        count.into_iter().filter(|(_, k)| k % 2 == 1).map(|(g, _)| g).collect()
    }

    /// The F2 matrix of `∂: C_d → C_{d-1}` with rows indexed by
    /// `(d-1)`-cells and columns by `d`-cells, in cell order.
    pub fn boundary_matrix(&self, d: usize) -> Vec<Vec<u8>> {
        let rows: Vec<usize> = (0..self.cells.len()).filter(|&i| d > 0 && self.cells[i].dim == d - 1).collect();
        let cols: Vec<usize> = (0..self.cells.len()).filter(|&i| self.cells[i].dim == d).collect();
        rows.iter()
            .map(|r| cols.iter().map(|c| u8::from(self.boundary[*c].contains(r))).collect())
            .collect()
    }
}

/// Every `KK_{n,m}` with `3 <= m + n <= limit`, built in order of `m + n`.
#[derive(Clone, Debug, Default)]
pub struct KkAtlas {
    complexes: BTreeMap<(usize, usize), CellComplex>,
    labels: BTreeMap<FractionGraph, String>,
}

impl KkAtlas {
    pub fn build(limit: usize) -> Result<Self, MatradError> {
        let mut atlas = KkAtlas::default();
        atlas.labels.insert(FractionGraph::identity(), "1".into());
        for s in 3..=limit.min(MAX_ARITY_SUM) {
            for n in 1..s {
                let c = atlas.build_one(n, s - n)?;
                atlas.complexes.insert((n, s - n), c);
            }
        }
        Ok(atlas)
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&CellComplex> {
        self.complexes.get(&(n, m))
    }

    pub fn iter(&self) -> impl Iterator<Item = &CellComplex> {
        self.complexes.values()
    }

    pub fn label(&self, g: &FractionGraph) -> Option<&str> {
        self.labels.get(g).map(String::as_str)
    }

    /// Cells of every complex built so far with at most `m` inputs and `n`
    /// outputs, other than `KK_{n,m}` itself.
    pub fn blocks(&self, n: usize, m: usize) -> Vec<FractionGraph> {
        self.complexes
            .iter()
            .filter(|(&(b, a), _)| a <= m && b <= n && (a, b) != (m, n))
            .flat_map(|(_, c)| c.cells.iter().map(|cell| cell.graph.clone()))
            .collect()
    }

    /// `∂` of a generator: the sum of the facets of its complex.
    fn generator_facets(&self, g: Generator) -> Vec<FractionGraph> {
        self.complexes
            .get(&(g.outputs, g.inputs))
            .map(|c| {
                let d = c.top_dim();
                c.cells.iter().filter(|x| x.dim + 1 == d).map(|x| x.graph.clone()).collect()
            })
            .unwrap_or_default()
    }

    /// Over F2, `∂` of a composite replaces one generator at a time by its
    /// boundary.
    pub fn boundary_of(&self, g: &FractionGraph) -> Result<BTreeSet<FractionGraph>, MatradError> {
        let mut odd = BTreeSet::new();
        for (v, &gen) in g.nodes().iter().enumerate() {
            for h in self.generator_facets(gen) {
                let s = g.substitute(v, &h)?;
                if !odd.remove(&s) {
                    odd.insert(s);
                }
            }
        }
        Ok(odd)
    }

    fn rep_label(&self, r: &Representation) -> String {
        let name = |g: &FractionGraph| self.labels.get(g).cloned().unwrap_or_else(|| g.to_string());
        let wrap = |g: &FractionGraph| {
            let s = name(g);
            if s.contains(['∘', '/', ' ']) {
                format!("({s})")
            } else {
                s
            }
        };
        if r.denominators.len() == 1 && r.numerators.len() == 1 {
            return format!("{}∘{}", wrap(&r.numerators[0]), wrap(&r.denominators[0]));
        }
        let row = |gs: &[FractionGraph]| gs.iter().map(wrap).collect::<Vec<_>>().join(" ");
        format!("[{}]/[{}]", row(&r.numerators), row(&r.denominators))
    }

    fn fraction_label(&self, f: &Fraction) -> String {
        // prefer the representation with the fewest identity fillers
        let r = f
            .representations
            .iter()
            .min_by_key(|r| {
                r.numerators
                    .iter()
                    .chain(&r.denominators)
                    .filter(|g| g.is_identity())
                    .count()
            })
            .expect("a fraction has a representation");
        self.rep_label(r)
    }

    fn build_one(&mut self, n: usize, m: usize) -> Result<CellComplex, MatradError> {
        let top_gen = Generator::new(m, n);
        let top = FractionGraph::generator(top_gen);
        let d = n + m - 3;
        let fractions = enumerate_fractions(n, m, &self.blocks(n, m), None)?;
        let mut kept = Vec::new();
        let mut rejected = Vec::new();
        for f in &fractions {
            let label = self.fraction_label(f);
            if f.graph == top || f.dim() >= d as i64 {
                rejected.push(Rejected {
                    label,
                    dim: f.dim(),
                    graph: f.graph.clone(),
                });
            } else if admissible(f)? {
                kept.push((f.graph.clone(), label, f.dim() as usize));
            } else {
                rejected.push(Rejected {
                    label,
                    dim: f.dim(),
                    graph: f.graph.clone(),
                });
            }
        }
        kept.sort_by(|a, b| (a.2, &a.0).cmp(&(b.2, &b.0)));
        let mut cells: Vec<Cell> = kept
            .into_iter()
            .map(|(graph, label, dim)| Cell { label, dim, graph })
            .collect();
        cells.push(Cell {
            label: top_gen.to_string(),
            dim: d,
            graph: top.clone(),
        });
        let index: BTreeMap<FractionGraph, usize> = cells.iter().enumerate().map(|(i, c)| (c.graph.clone(), i)).collect();
        let mut boundary = Vec::with_capacity(cells.len());
        for c in &cells {
            let faces: Vec<FractionGraph> = if c.graph == top {
                cells.iter().filter(|x| x.dim + 1 == d).map(|x| x.graph.clone()).collect()
            } else {
                self.boundary_of(&c.graph)?.into_iter().collect()
            };
            let mut idx = Vec::new();
            let mut missing = Vec::new();
            for g in faces {
                match index.get(&g) {
                    Some(&i) => idx.push(i),
                    None => missing.push(g.to_string()),
                }
            }
            if !missing.is_empty() {
                return Err(MatradError::NotClosed {
                    cell: c.label.clone(),
                    missing: missing.join(", "),
                });
            }
            idx.sort_unstable();
            boundary.push(idx);
        }
        let complex = CellComplex {
            n,
            m,
            cells,
            boundary,
            enumerated: fractions.len(),
            rejected,
        };
        for (i, c) in complex.cells.iter().enumerate() {
            if !complex.boundary_squared(i).is_empty() {
                return Err(MatradError::BoundarySquare(c.label.clone()));
            }
        }
        let chi = complex.euler_characteristic();
        if chi != 1 {
            return Err(MatradError::Euler { n, m, chi });
        }
        for c in &complex.cells {
            self.labels.entry(c.graph.clone()).or_insert_with(|| c.label.clone());
        }
        Ok(complex)
    }
}

/// Builds `KK_{n,m}` together with every smaller complex it depends on.
pub fn build_kk(n: usize, m: usize) -> Result<CellComplex, MatradError> {
    if n == 0 || m == 0 || n + m < 3 {
        return Err(MatradError::TooSmall { n, m });
    }
    if n + m > MAX_ARITY_SUM {
        return Err(MatradError::OutOfRange { n, m });
    }
    let atlas = KkAtlas::build(n + m)?;
    Ok(atlas.get(n, m).expect("built above").clone())
}
