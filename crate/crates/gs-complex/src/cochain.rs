use std::collections::BTreeMap;
use std::fmt;

use coeff_chain::Chain;
use graded_hopf::{check_vanishes, check_vanishes_within, GradedBialgebra, HomComponent, Op, WindowCheck, Word};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{tridegree_of, GsError};

/// Internal degree `p` of a map `H^{⊗i} → H^{⊗j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tridegree {
    pub p: i64,
    pub i: usize,
    pub j: usize,
}

impl Tridegree {
    pub fn new(p: i64, i: usize, j: usize) -> Self {
        Tridegree { p, i, j }
    }

    /// The total degree `r` with `p + i + j = r + 1`.
    pub fn total(&self) -> i64 {
        self.p + self.i as i64 + self.j as i64 - 1
    }
}

impl fmt::Display for Tridegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.i, self.j)
    }
}

/// A cochain given by tables, one per tridegree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Entry>", try_from = "Vec<Entry>")]
pub struct GsCochain {
    components: BTreeMap<Tridegree, HomComponent>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    p: String,
    i: String,
    j: String,
    table: HomComponent,
}

impl From<GsCochain> for Vec<Entry> {
    fn from(c: GsCochain) -> Self {
        c.components
            .into_iter()
            .map(|(t, table)| Entry {
                p: t.p.to_string(),
                i: t.i.to_string(),
                j: t.j.to_string(),
                table,
            })
            .collect()
    }
}

impl TryFrom<Vec<Entry>> for GsCochain {
    type Error = String;

    fn try_from(v: Vec<Entry>) -> Result<Self, String> {
        let mut out = GsCochain::default();
        for e in v {
            let parse = |s: &str| s.parse::<i64>().map_err(|_| format!("bad integer `{s}`"));
            let t = Tridegree::new(parse(&e.p)?, parse(&e.i)? as usize, parse(&e.j)? as usize);
            let (p, i, j) = e.table.tridegree();
            if t != Tridegree::new(p, i, j) {
                return Err(format!("entry {t} holds a table at ({p}, {i}, {j})"));
            }
            out.insert(e.table).map_err(|e| e.to_string())?;
        }
        Ok(out)
    }
}

impl GsCochain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a component, summing with any existing one at the same tridegree.
    pub fn insert(&mut self, f: HomComponent) -> Result<(), GsError> {
        let (p, i, j) = f.tridegree();
        if i == 0 || j == 0 {
            return Err(GsError::ZeroArity(i.min(j)));
        }
        let t = Tridegree::new(p, i, j);
        let merged = match self.components.remove(&t) {
            Some(old) => {
                let one = old.ring().one();
                old.combine(&f, &one)?
            }
            None => f,
        };
        self.components.insert(t, merged);
        Ok(())
    }

    pub fn with(mut self, f: HomComponent) -> Result<Self, GsError> {
        self.insert(f)?;
        Ok(self)
    }

    pub fn get(&self, t: &Tridegree) -> Option<&HomComponent> {
        self.components.get(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tridegree, &HomComponent)> {
        self.components.iter()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn to_lazy(&self) -> LazyCochain {
        let mut out = LazyCochain::default();
        for f in self.components.values() {
            out.insert(f.to_op());
        }
        out
    }
}

/// A cochain whose components are unevaluated expressions.
#[derive(Clone, Debug, Default)]
pub struct LazyCochain {
    components: BTreeMap<Tridegree, Op>,
}

impl LazyCochain {
    pub fn insert(&mut self, op: Op) {
        let t = tridegree_of(&op);
        let merged = match self.components.remove(&t) {
            Some(old) => Op::Lin(vec![(coeff_chain::Ring::Z.one(), old), (coeff_chain::Ring::Z.one(), op)]),
            None => op,
        };
        self.components.insert(t, merged);
    }

    pub fn get(&self, t: &Tridegree) -> Option<&Op> {
        self.components.get(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tridegree, &Op)> {
        self.components.iter()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Check that every component vanishes on its largest safe window.
    pub fn check_vanishes(&self, h: &GradedBialgebra) -> Result<Vec<(Tridegree, WindowCheck)>, GsError> {
        self.components
            .iter()
            .map(|(t, op)| Ok((*t, check_vanishes(op, h)?)))
            .collect()
    }

    /// As [`Self::check_vanishes`] on a fixed window, which must be safe for
    /// every component.
    pub fn check_vanishes_within(
        &self,
        h: &GradedBialgebra,
        window: i64,
    ) -> Result<Vec<(Tridegree, WindowCheck)>, GsError> {
        use rayon::prelude::*;
        let comps: Vec<_> = self.components.iter().collect();
        comps
            .into_par_iter()
            .map(|(t, op)| Ok((*t, check_vanishes_within(op, h, window)?)))
            .collect()
    }

    /// Evaluate every component on all words up to `window`.
    pub fn tabulate(&self, h: &GradedBialgebra, window: i64) -> Result<GsCochain, GsError> {
        let mut out = GsCochain::new();
        for (t, op) in &self.components {
            out.insert(HomComponent::from_op(format!("{t}"), op, h, window)?)?;
        }
        Ok(out)
    }
}

/// A sparse random map at tridegree `t` on all words of `h`: each source
/// word is hit with probability `density` and sent to one or two target
/// words of the right degree with coefficients in `{±1, ±2}`.
pub fn random_component(h: &GradedBialgebra, t: Tridegree, density: f64, rng: &mut impl Rng) -> Result<HomComponent, GsError> {
    let ring = h.ring().clone();
    let mut by_deg: BTreeMap<i64, Vec<Word>> = BTreeMap::new();
    for w in h.words(t.j, h.d_max()) {
        by_deg.entry(w.deg()).or_default().push(w);
    }
    let mut out = HomComponent::new(format!("f{t}"), t.i, t.j, t.p, ring.clone());
    for w in h.words(t.i, h.d_max()) {
        if !rng.gen_bool(density) {
            continue;
        }
        let Some(targets) = by_deg.get(&(w.deg() + t.p)) else {
            continue;
        };
        let mut value = Chain::zero(ring.clone());
        for _ in 0..rng.gen_range(1..=2) {
            let u = targets[rng.gen_range(0..targets.len())].clone();
            value.add_int(u, [-2, -1, 1, 2][rng.gen_range(0..4)]);
        }
        if !value.is_zero() {
            out.insert(w, value)?;
        }
    }
    Ok(out)
}

/// A random total `r`-cochain with components at some of the tridegrees
/// `(r+1-i-j, i, j)` with `i + j <= max_ij`; at least one is present.
pub fn random_cochain(h: &GradedBialgebra, r: i64, max_ij: usize, density: f64, rng: &mut impl Rng) -> Result<GsCochain, GsError> {
    let slots: Vec<Tridegree> = (1..max_ij)
        .flat_map(|i| (1..=max_ij - i).map(move |j| (i, j)))
        .map(|(i, j)| Tridegree::new(r + 1 - i as i64 - j as i64, i, j))
        .collect();
    let forced = rng.gen_range(0..slots.len());
    let mut out = GsCochain::new();
    for (k, t) in slots.into_iter().enumerate() {
        if k == forced || rng.gen_bool(0.5) {
            out.insert(random_component(h, t, density, rng)?)?;
        }
    }
    Ok(out)
}
