use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::{ChainError, Coeff, Ring};

/// A finite formal sum of basis keys with coefficients in a fixed ring.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain<K: Ord> {
    ring: Ring,
    terms: BTreeMap<K, Coeff>,
}

impl<K: Ord + Clone> Chain<K> {
    pub fn zero(ring: Ring) -> Self {
        Chain {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(ring: Ring, key: K) -> Self {
        let mut c = Chain::zero(ring);
        let one = c.ring.one();
        c.add_term(key, &one);
        c
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (K, Coeff)>) -> Self {
        let mut c = Chain::zero(ring);
        for (k, v) in terms {
            c.add_term(k, &v);
        }
        c
    }

    pub fn from_int_terms(ring: Ring, terms: impl IntoIterator<Item = (K, i64)>) -> Self {
        let mut c = Chain::zero(ring);
        for (k, v) in terms {
            let v = c.ring.from_int(v);
            c.add_term(k, &v);
        }
        c
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> Coeff {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn contains(&self, k: &K) -> bool {
        self.terms.contains_key(k)
    }

    pub fn add_term(&mut self, key: K, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                let v = self.ring.add(e.get(), c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                let v = self.ring.normalize(c.clone());
                if !v.is_zero() {
                    e.insert(v);
                }
            }
        }
    }

    pub fn add_int(&mut self, key: K, n: i64) {
        let c = self.ring.from_int(n);
        self.add_term(key, &c);
    }

    /// `self += scalar * other`.
    pub fn add_scaled(&mut self, other: &Chain<K>, scalar: &Coeff) -> Result<(), ChainError> {
        self.check_ring(other)?;
        for (k, v) in &other.terms {
            let v = self.ring.mul(v, scalar);
            self.add_term(k.clone(), &v);
        }
        Ok(())
    }

    /// `a + scalar * b`.
    pub fn combine(&self, other: &Chain<K>, scalar: &Coeff) -> Result<Chain<K>, ChainError> {
        let mut out = self.clone();
        out.add_scaled(other, scalar)?;
        Ok(out)
    }

    pub fn add(&self, other: &Chain<K>) -> Result<Chain<K>, ChainError> {
        self.combine(other, &self.ring.one())
    }

    pub fn sub(&self, other: &Chain<K>) -> Result<Chain<K>, ChainError> {
        self.combine(other, &self.ring.from_int(-1))
    }

    pub fn scale(&self, s: &Coeff) -> Chain<K> {
        Chain::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(k, v)| (k.clone(), self.ring.mul(v, s))),
        )
    }

    pub fn neg(&self) -> Chain<K> {
        self.scale(&self.ring.from_int(-1))
    }

    fn check_ring(&self, other: &Chain<K>) -> Result<(), ChainError> {
        if self.ring != other.ring {
            return Err(ChainError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    /// Extend a map on basis keys linearly.
    pub fn try_map_linear<K2, E, F>(&self, mut f: F) -> Result<Chain<K2>, E>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Result<Chain<K2>, E>,
    {
        let mut out = Chain::zero(self.ring.clone());
        for (k, v) in &self.terms {
            for (k2, v2) in f(k)?.terms {
                let c = self.ring.mul(v, &v2);
                out.add_term(k2, &c);
            }
        }
        Ok(out)
    }

    pub fn map_linear<K2, F>(&self, mut f: F) -> Chain<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Chain<K2>,
    {
        self.try_map_linear::<K2, std::convert::Infallible, _>(|k| Ok(f(k)))
            .unwrap_or_else(|e| match e {})
    }

    /// Relabel keys (coefficient-preserving); colliding keys are summed.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Chain<K2> {
        Chain::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(k, v)| (f(k), v.clone())),
        )
    }

    /// Keep only the terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Chain<K> {
        Chain {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Same terms read in another ring (e.g. reduction Z -> F2).
    pub fn change_ring(&self, ring: Ring) -> Chain<K> {
        Chain::from_terms(ring, self.terms.iter().map(|(k, v)| (k.clone(), v.clone())))
    }

    /// Product over a bilinear map on keys, e.g. tensor concatenation.
    pub fn bilinear<K2, K3>(
        &self,
        other: &Chain<K2>,
        mut f: impl FnMut(&K, &K2) -> (K3, bool),
    ) -> Chain<K3>
    where
        K2: Ord + Clone,
        K3: Ord + Clone,
    {
        let mut out = Chain::zero(self.ring.clone());
        for (a, va) in &self.terms {
            for (b, vb) in &other.terms {
                let (k, negate) = f(a, b);
                let mut c = self.ring.mul(va, vb);
                if negate {
                    c = self.ring.neg(&c);
                }
                out.add_term(k, &c);
            }
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Display> Chain<K> {
    /// Terms ordered by the string form of their keys; this is the order
    /// used for every serialization.
    pub fn canonical_terms(&self) -> Vec<(String, &K, &Coeff)> {
        let mut v: Vec<(String, &K, &Coeff)> =
            self.terms.iter().map(|(k, c)| (k.to_string(), k, c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for Chain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.canonical_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (s, _, c)) in terms.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match c.to_i64() {
                Some(1) => write!(f, "{s}")?,
                Some(-1) => write!(f, "-{s}")?,
                _ => write!(f, "({c})*{s}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<K> {
    key: K,
    coeff: Coeff,
}

#[derive(Serialize, Deserialize)]
struct ChainRepr<K> {
    ring: Ring,
    terms: Vec<TermRepr<K>>,
}

impl<K: Ord + Clone + fmt::Display + Serialize> Serialize for Chain<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = ChainRepr {
            ring: self.ring.clone(),
            terms: self
                .canonical_terms()
                .into_iter()
                .map(|(_, k, c)| TermRepr {
                    key: k.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de, K: Ord + Clone + DeserializeOwned> Deserialize<'de> for Chain<K> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ChainRepr::<K>::deserialize(d)?;
        Ok(Chain::from_terms(
            repr.ring,
            repr.terms.into_iter().map(|t| (t.key, t.coeff)),
        ))
    }
}

/// A tensor word of basis keys, `k_1 ⊗ ... ⊗ k_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tensor<K>(pub Vec<K>);

impl<K> Tensor<K> {
    pub fn pair(a: K, b: K) -> Self {
        Tensor(vec![a, b])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl<K: fmt::Display> fmt::Display for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊗ ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_characteristic_two() {
        let c = Chain::from_int_terms(Ring::Z, [("a".to_string(), 3), ("b".to_string(), -1)]);
        assert!(c.combine(&c, &Ring::Z.from_int(-1)).unwrap().is_zero());
        let f = c.change_ring(Ring::F2);
        assert_eq!(f.len(), 2);
        assert!(f.add(&f).unwrap().is_zero());
    }

    #[test]
    fn combine_example() {
        let x = Chain::basis(Ring::Z, "x".to_string());
        let y = Chain::basis(Ring::Z, "y".to_string());
        let s = x.combine(&y, &Ring::Z.from_int(2)).unwrap();
        assert_eq!(s.coeff(&"x".to_string()), Ring::Z.from_int(1));
        assert_eq!(s.coeff(&"y".to_string()), Ring::Z.from_int(2));
        assert_eq!(s.to_string(), "x + (2)*y");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Chain::basis(Ring::Z, 1u32);
        let b = Chain::basis(Ring::Q, 1u32);
        assert!(matches!(a.add(&b), Err(ChainError::RingMismatch { .. })));
    }

    #[test]
    fn tensor_display() {
        assert_eq!(Tensor(vec!["a", "b", "c"]).to_string(), "a ⊗ b ⊗ c");
    }
}
