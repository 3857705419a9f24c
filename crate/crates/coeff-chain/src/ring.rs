use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ChainError;

/// Coefficient rings. `PolyT` adjoins a formal parameter `t` to its base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    F2,
    Fp(u64),
    Z,
    Q,
    PolyT(Box<Ring>),
}

/// A ring element, stored as a polynomial in `t` with exact rational
/// coefficients (index = power of `t`). Constants have length at most one.
/// Normalisation is the owning ring's job; a `Coeff` on its own is just data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coeff(Vec<BigRational>);

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn fp(p: u64) -> Result<Ring, ChainError> {
        match p {
            2 => Ok(Ring::F2),
            p if is_prime(p) => Ok(Ring::Fp(p)),
            p => Err(ChainError::NotPrime(p)),
        }
    }

    pub fn poly_t(base: Ring) -> Ring {
        Ring::PolyT(Box::new(base))
    }

    /// The constant (t-free) ring underneath any number of `PolyT` layers.
    pub fn base(&self) -> &Ring {
        match self {
            Ring::PolyT(b) => b.base(),
            r => r,
        }
    }

    pub fn has_t(&self) -> bool {
        matches!(self, Ring::PolyT(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self.base() {
            Ring::F2 => 2,
            Ring::Fp(p) => *p,
            _ => 0,
        }
    }

    /// True when nonzero constants are invertible.
    pub fn is_field(&self) -> bool {
        !self.has_t() && !matches!(self, Ring::Z)
    }

    pub fn zero(&self) -> Coeff {
        Coeff::default()
    }

    pub fn one(&self) -> Coeff {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        self.normalize(Coeff(vec![BigRational::from_integer(BigInt::from(n))]))
    }

    pub fn from_bigint(&self, n: BigInt) -> Coeff {
        self.normalize(Coeff(vec![BigRational::from_integer(n)]))
    }

    /// Rational constant; rejected over Z when not integral and over F_p when
    /// the denominator vanishes mod p.
    pub fn from_ratio(&self, q: BigRational) -> Result<Coeff, ChainError> {
        match self.base() {
            Ring::Z if !q.is_integer() => Err(ChainError::NotInRing {
                value: q.to_string(),
                ring: self.to_string(),
            }),
            Ring::F2 | Ring::Fp(_) => {
                let p = BigInt::from(self.characteristic());
                if q.denom().mod_floor(&p).is_zero() {
                    return Err(ChainError::NotInRing {
                        value: q.to_string(),
                        ring: self.to_string(),
                    });
                }
                Ok(self.normalize(Coeff(vec![q])))
            }
            _ => Ok(self.normalize(Coeff(vec![q]))),
        }
    }

    /// The formal parameter, when this ring has one.
    pub fn t(&self) -> Option<Coeff> {
        self.has_t()
            .then(|| Coeff(vec![BigRational::zero(), BigRational::one()]))
    }

    fn reduce_const(&self, q: BigRational) -> BigRational {
        let p = self.characteristic();
        if p == 0 {
            return q;
        }
        let p = BigInt::from(p);
        let num = q.numer().mod_floor(&p);
        let den = q.denom().mod_floor(&p);
        let inv = den
            .modpow(&(&p - BigInt::from(2)), &p)
            .mod_floor(&p);
        BigRational::from_integer((num * inv).mod_floor(&p))
    }

    pub fn normalize(&self, c: Coeff) -> Coeff {
        let mut v: Vec<BigRational> = c.0.into_iter().map(|q| self.reduce_const(q)).collect();
        if !self.has_t() {
            debug_assert!(v.iter().skip(1).all(Zero::is_zero), "t-term in constant ring");
            v.truncate(1);
        }
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Coeff(v)
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let n = a.0.len().max(b.0.len());
        let v = (0..n)
            .map(|k| {
                let x = a.0.get(k).cloned().unwrap_or_else(BigRational::zero);
                match b.0.get(k) {
                    Some(y) if x.is_integer() && y.is_integer() => BigRational::from_integer(x.numer() + y.numer()),
                    Some(y) => x + y,
                    None => x,
                }
            })
            .collect();
        self.normalize(Coeff(v))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.normalize(Coeff(a.0.iter().map(|q| -q.clone()).collect()))
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        if a.is_zero() || b.is_zero() {
            return Coeff::default();
        }
        let mut v = vec![BigRational::zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if x.is_integer() && y.is_integer() {
                    let prod = BigRational::from_integer(x.numer() * y.numer());
                    v[i + j] = if v[i + j].is_zero() { prod } else { &v[i + j] + prod };
                } else {
                    v[i + j] += x * y;
                }
            }
        }
        self.normalize(Coeff(v))
    }

    /// Inverse of a nonzero constant in a field.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if !self.is_field() || a.is_zero() || a.0.len() > 1 {
            return None;
        }
        let q = &a.0[0];
        match self {
            Ring::Q => Some(Coeff(vec![q.recip()])),
            _ => {
                let p = BigInt::from(self.characteristic());
                let n = q.to_integer().mod_floor(&p);
                let inv = n.modpow(&(&p - BigInt::from(2)), &p);
                Some(self.from_bigint(inv))
            }
        }
    }

    /// Substitute a constant for `t`, landing in the base ring.
    pub fn eval_t(&self, a: &Coeff, t: &BigRational) -> Coeff {
        let mut acc = BigRational::zero();
        let mut pow = BigRational::one();
        for q in &a.0 {
            acc += q * &pow;
            pow *= t;
        }
        self.base().normalize(Coeff(vec![acc]))
    }

    /// Reduce a coefficient of this ring into `target` (e.g. Z to F2).
    pub fn reduce_into(&self, a: &Coeff, target: &Ring) -> Coeff {
        target.normalize(a.clone())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::F2 => write!(f, "F2"),
            Ring::Fp(p) => write!(f, "F{p}"),
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::PolyT(b) => write!(f, "{b}[t]"),
        }
    }
}

impl FromStr for Ring {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(base) = s.strip_suffix("[t]") {
            return Ok(Ring::poly_t(base.parse()?));
        }
        match s {
            "Z" => Ok(Ring::Z),
            "Q" => Ok(Ring::Q),
            _ => {
                let p = s
                    .strip_prefix('F')
                    .and_then(|d| d.parse::<u64>().ok())
                    .ok_or_else(|| ChainError::UnknownRing(s.to_string()))?;
                Ring::fp(p)
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Coefficients of `t^0, t^1, ...`.
    pub fn terms(&self) -> &[BigRational] {
        &self.0
    }

    pub fn from_terms(v: Vec<BigRational>) -> Coeff {
        Coeff(v)
    }

    pub fn constant(&self) -> BigRational {
        self.0.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.0.iter().rposition(|q| !q.is_zero())
    }

    /// Small integer value, when the coefficient is a t-free integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.len() > 1 {
            return None;
        }
        let q = self.constant();
        if !q.is_integer() {
            return None;
        }
        q.to_integer().to_i64()
    }

    pub fn is_negative_constant(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_negative()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<(usize, &BigRational)> =
            self.0.iter().enumerate().filter(|(_, q)| !q.is_zero()).collect();
        if nz.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, q)) in nz.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{q}")?,
                1 => write!(f, "{q}*t")?,
                _ => write!(f, "{q}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Coeff {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ChainError::BadCoefficient(s.to_string());
        let mut v: Vec<BigRational> = Vec::new();
        for part in s.split(" + ") {
            let part = part.trim();
            let (q, k) = if let Some((q, pow)) = part.split_once("*t") {
                let k = match pow.strip_prefix('^') {
                    Some(e) => e.parse::<usize>().map_err(|_| bad())?,
                    None if pow.is_empty() => 1,
                    None => return Err(bad()),
                };
                (q, k)
            } else {
                (part, 0)
            };
            let q: BigRational = q.parse().map_err(|_| bad())?;
            if v.len() <= k {
                v.resize(k + 1, BigRational::zero());
            }
            v[k] += q;
        }
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Ok(Coeff(v))
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
