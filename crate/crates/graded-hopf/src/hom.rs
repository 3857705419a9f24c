use std::collections::BTreeMap;

use coeff_chain::{Chain, Coeff, Ring};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{GradedBialgebra, HopfError, Op, Word, WordChain};

/// A sparse homogeneous map `H^{⊗i} → H^{⊗j}` of internal degree `deg`;
/// words absent from the table map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComponent {
    pub name: String,
    i: usize,
    j: usize,
    deg: i64,
    ring: Ring,
    table: BTreeMap<Word, WordChain>,
}

impl HomComponent {
    pub fn new(name: impl Into<String>, i: usize, j: usize, deg: i64, ring: Ring) -> Self {
        HomComponent {
            name: name.into(),
            i,
            j,
            deg,
            ring,
            table: BTreeMap::new(),
        }
    }

    pub fn arity_in(&self) -> usize {
        self.i
    }

    pub fn arity_out(&self) -> usize {
        self.j
    }

    pub fn degree(&self) -> i64 {
        self.deg
    }

    /// GS tridegree `(p, i, j)`.
    pub fn tridegree(&self) -> (i64, usize, usize) {
        (self.deg, self.i, self.j)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &WordChain)> {
        self.table.iter()
    }

    pub fn get(&self, w: &Word) -> Option<&WordChain> {
        self.table.get(w)
    }

    /// Add `value` to the entry at `w`, checking arities and homogeneity.
    pub fn insert(&mut self, w: Word, value: WordChain) -> Result<(), HopfError> {
        if w.arity() != self.i {
            return Err(HopfError::ArityMismatch {
                expected: self.i,
                found: w.arity(),
            });
        }
        for (u, _) in value.iter() {
            if u.arity() != self.j {
                return Err(HopfError::ArityMismatch {
                    expected: self.j,
                    found: u.arity(),
                });
            }
            if u.deg() != w.deg() + self.deg {
                return Err(HopfError::NotHomogeneous(format!(
                    "{}: {w} ↦ {u} does not have degree {}",
                    self.name, self.deg
                )));
            }
        }
        let value = value.change_ring(self.ring.clone());
        let entry = self.table.entry(w.clone()).or_insert_with(|| Chain::zero(self.ring.clone()));
        *entry = entry.add(&value)?;
        if entry.is_zero() {
            self.table.remove(&w);
        }
        Ok(())
    }

    pub fn apply(&self, h: &GradedBialgebra, w: &Word) -> Result<WordChain, HopfError> {
        if w.arity() != self.i {
            return Err(HopfError::ArityMismatch {
                expected: self.i,
                found: w.arity(),
            });
        }
        if w.deg() + self.deg > h.d_max() {
            return Err(HopfError::OutOfWindow {
                degree: w.deg() + self.deg,
                window: h.d_max(),
            });
        }
        Ok(match self.table.get(w) {
            Some(v) if v.ring() == h.ring() => v.clone(),
            Some(v) => v.change_ring(h.ring().clone()),
            None => Chain::zero(h.ring().clone()),
        })
    }

    /// Tabulate `op` on all words of degree at most `window`.
    pub fn from_op(name: impl Into<String>, op: &Op, h: &GradedBialgebra, window: i64) -> Result<Self, HopfError> {
        let mut out = HomComponent::new(name, op.arity_in(), op.arity_out(), op.degree(), h.ring().clone());
        for w in h.words(op.arity_in(), window) {
            let v = op.eval_word(h, &w)?;
            if !v.is_zero() {
                out.insert(w, v)?;
            }
        }
        Ok(out)
    }

    /// Termwise linear combination of two tables of the same shape.
    pub fn combine(&self, other: &HomComponent, scalar: &Coeff) -> Result<HomComponent, HopfError> {
        if self.tridegree() != other.tridegree() {
            return Err(HopfError::Shape(format!(
                "{:?} vs {:?}",
                self.tridegree(),
                other.tridegree()
            )));
        }
        let mut out = self.clone();
        for (w, v) in other.entries() {
            out.insert(w.clone(), v.scale(scalar))?;
        }
        Ok(out)
    }

    pub fn scale(&self, scalar: &Coeff) -> HomComponent {
        let mut out = HomComponent::new(self.name.clone(), self.i, self.j, self.deg, self.ring.clone());
        for (w, v) in self.entries() {
            let v = v.scale(scalar);
            if !v.is_zero() {
                out.table.insert(w.clone(), v);
            }
        }
        out
    }

    pub fn to_op(&self) -> Op {
        Op::table(self.clone())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn change_ring(&self, ring: Ring) -> HomComponent {
        let mut out = HomComponent::new(self.name.clone(), self.i, self.j, self.deg, ring.clone());
        for (w, v) in self.entries() {
            let v = v.change_ring(ring.clone());
            if !v.is_zero() {
                out.table.insert(w.clone(), v);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct HomRepr {
    name: String,
    source_arity: String,
    target_arity: String,
    degree: String,
    ring: Ring,
    table: BTreeMap<String, BTreeMap<String, Coeff>>,
}

impl Serialize for HomComponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let table = self
            .table
            .iter()
            .map(|(w, v)| {
                let inner = v.iter().map(|(u, c)| (u.to_string(), c.clone())).collect();
                (w.to_string(), inner)
            })
            .collect();
        HomRepr {
            name: self.name.clone(),
            source_arity: self.i.to_string(),
            target_arity: self.j.to_string(),
            degree: self.deg.to_string(),
            ring: self.ring.clone(),
            table,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomComponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = HomRepr::deserialize(d)?;
        let num = |s: &str| s.parse::<i64>().map_err(D::Error::custom);
        let mut out = HomComponent::new(
            r.name,
            num(&r.source_arity)? as usize,
            num(&r.target_arity)? as usize,
            num(&r.degree)?,
            r.ring.clone(),
        );
        for (w, inner) in r.table {
            let w: Word = w.parse().map_err(D::Error::custom)?;
            let mut v = Chain::zero(r.ring.clone());
            for (u, c) in inner {
                let u: Word = u.parse().map_err(D::Error::custom)?;
                v.add_term(u, &r.ring.normalize(c));
            }
            out.insert(w, v).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}
