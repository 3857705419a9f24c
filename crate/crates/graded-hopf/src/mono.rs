use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::HopfError;

/// The monomial `x^x y^p` of `Λ(x,y)`, `|x| = 1`, `|y| = 2`, `x ∈ {0,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub x: u8,
    pub p: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { x: 0, p: 0 };
    pub const X: Mono = Mono { x: 1, p: 0 };
    pub const Y: Mono = Mono { x: 0, p: 1 };

    pub fn new(x: u8, p: u32) -> Result<Mono, HopfError> {
        if x > 1 {
            return Err(HopfError::Parse(format!("x^{x} is zero in the exterior part")));
        }
        Ok(Mono { x, p })
    }

    pub fn y_pow(p: u32) -> Mono {
        Mono { x: 0, p }
    }

    pub fn xy_pow(p: u32) -> Mono {
        Mono { x: 1, p }
    }

    pub fn deg(&self) -> i64 {
        self.x as i64 + 2 * self.p as i64
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.p) {
            (0, 0) => write!(f, "1"),
            (1, 0) => write!(f, "x"),
            (0, 1) => write!(f, "y"),
            (1, 1) => write!(f, "x*y"),
            (0, p) => write!(f, "y^{p}"),
            (_, p) => write!(f, "x*y^{p}"),
        }
    }
}

impl FromStr for Mono {
    type Err = HopfError;

    fn from_str(s: &str) -> Result<Mono, HopfError> {
        let s = s.trim();
        if s == "1" {
            return Ok(Mono::ONE);
        }
        let mut m = Mono::ONE;
        for factor in s.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| HopfError::Parse(s.to_string()))?),
                None => (factor, 1),
            };
            match base {
                "x" => m.x += exp as u8,
                "y" => m.p += exp,
                _ => return Err(HopfError::Parse(s.to_string())),
            }
        }
        Mono::new(m.x, m.p)
    }
}

/// A basis word `a_1|…|a_k` of `H^{⊗k}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Mono>);

impl Word {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn deg(&self) -> i64 {
        self.0.iter().map(Mono::deg).sum()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.0.iter().map(Mono::deg).collect()
    }

    pub fn single(m: Mono) -> Word {
        Word(vec![m])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "[]");
        }
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = HopfError;

    fn from_str(s: &str) -> Result<Word, HopfError> {
        if s.trim() == "[]" {
            return Ok(Word(Vec::new()));
        }
        s.split('|').map(str::parse).collect::<Result<_, _>>().map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        for s in ["1", "x", "y", "y^2", "x*y", "x*y^3"] {
            assert_eq!(s.parse::<Mono>().unwrap().to_string(), s);
        }
        assert!("x^2".parse::<Mono>().is_err());
        let w: Word = "x*y^2|y".parse().unwrap();
        assert_eq!(w.deg(), 7);
        assert_eq!(w.to_string(), "x*y^2|y");
    }
}
