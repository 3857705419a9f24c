use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::TreeError;

/// A planar rooted tree; internal vertices have at least two children.
/// Leaves carry their position, so a tree with `n` leaves is labelled `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlanarTree {
    Leaf(u8),
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    /// The corolla with `n` leaves.
    pub fn corolla(n: usize) -> Self {
        if n == 1 {
            return PlanarTree::Leaf(0);
        }
        PlanarTree::Node((0..n as u8).map(PlanarTree::Leaf).collect())
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf(_) => 1,
            PlanarTree::Node(cs) => cs.iter().map(PlanarTree::leaves).sum(),
        }
    }

    pub fn first_leaf(&self) -> u8 {
        match self {
            PlanarTree::Leaf(l) => *l,
            PlanarTree::Node(cs) => cs[0].first_leaf(),
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            PlanarTree::Leaf(_) => 0,
            PlanarTree::Node(cs) => 1 + cs.iter().map(PlanarTree::internal_vertices).sum::<usize>(),
        }
    }

    /// Dimension as a face of `K_{leaves}`.
    pub fn dim(&self) -> usize {
        self.leaves() - 1 - self.internal_vertices()
    }

    pub fn is_binary(&self) -> bool {
        match self {
            PlanarTree::Leaf(_) => true,
            PlanarTree::Node(cs) => cs.len() == 2 && cs.iter().all(PlanarTree::is_binary),
        }
    }

    pub fn children(&self) -> &[PlanarTree] {
        match self {
            PlanarTree::Leaf(_) => &[],
            PlanarTree::Node(cs) => cs,
        }
    }

    /// Arities of the internal vertices in post-order.
    pub fn arities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.post_order(&mut |t| out.push(t.children().len()));
        out
    }

    /// Visit internal vertices children first, left to right.
    pub fn post_order(&self, f: &mut impl FnMut(&PlanarTree)) {
        if let PlanarTree::Node(cs) = self {
            for c in cs {
                c.post_order(f);
            }
            f(self);
        }
    }

    /// Same shape with leaves renumbered `0..` from the left.
    pub fn relabel(&self) -> PlanarTree {
        fn go(t: &PlanarTree, next: &mut u8) -> PlanarTree {
            match t {
                PlanarTree::Leaf(_) => {
                    *next += 1;
                    PlanarTree::Leaf(*next - 1)
                }
                PlanarTree::Node(cs) => PlanarTree::Node(cs.iter().map(|c| go(c, next)).collect()),
            }
        }
        go(self, &mut 0)
    }

    pub fn shifted(&self, by: u8) -> PlanarTree {
        match self {
            PlanarTree::Leaf(l) => PlanarTree::Leaf(l + by),
            PlanarTree::Node(cs) => PlanarTree::Node(cs.iter().map(|c| c.shifted(by)).collect()),
        }
    }

    fn check(&self) -> Result<(), TreeError> {
        match self {
            PlanarTree::Leaf(_) => Ok(()),
            PlanarTree::Node(cs) if cs.len() < 2 => Err(TreeError::Invalid("vertex of arity < 2".into())),
            PlanarTree::Node(cs) => cs.iter().try_for_each(PlanarTree::check),
        }
    }

    /// Validate arities and the leaf labelling `0..n`.
    pub fn validate(&self) -> Result<(), TreeError> {
        self.check()?;
        if *self != self.relabel() {
            return Err(TreeError::Invalid(format!("leaves of {self} are not 0..n in order")));
        }
        Ok(())
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf(l) => write!(f, "{l}"),
            PlanarTree::Node(cs) => {
                write!(f, "(")?;
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for PlanarTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        let tokens: Vec<String> = {
            let mut out = Vec::new();
            let mut num = String::new();
            for ch in s.chars() {
                match ch {
                    '(' | ')' | ' ' | ',' => {
                        if !num.is_empty() {
                            out.push(std::mem::take(&mut num));
                        }
                        if ch == '(' || ch == ')' {
                            out.push(ch.to_string());
                        }
                    }
                    c if c.is_ascii_digit() => num.push(c),
                    c => return Err(TreeError::Parse(format!("unexpected {c:?} in {s:?}"))),
                }
            }
            if !num.is_empty() {
                out.push(num);
            }
            out
        };
        fn parse(tokens: &[String], pos: &mut usize) -> Result<PlanarTree, TreeError> {
            let tok = tokens.get(*pos).ok_or_else(|| TreeError::Parse("unexpected end".into()))?;
            *pos += 1;
            if tok == "(" {
                let mut cs = Vec::new();
                while tokens.get(*pos).map(String::as_str) != Some(")") {
                    cs.push(parse(tokens, pos)?);
                }
                *pos += 1;
                Ok(PlanarTree::Node(cs))
            } else if tok == ")" {
                Err(TreeError::Parse("unbalanced ')'".into()))
            } else {
                tok.parse().map(PlanarTree::Leaf).map_err(|_| TreeError::Parse(tok.clone()))
            }
        }
        let mut pos = 0;
        let t = parse(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(TreeError::Parse(format!("trailing input in {s:?}")));
        }
        t.validate()?;
        Ok(t)
    }
}

/// All planar trees with `n` leaves (internal arities ≥ 2), optionally of a
/// single dimension, sorted.
pub fn enumerate_tree_faces(n: usize, dim: Option<usize>) -> Result<Vec<PlanarTree>, TreeError> {
    if n < 2 {
        return Err(TreeError::TooFewLeaves(n));
    }
    let mut by_size: Vec<Vec<PlanarTree>> = vec![Vec::new(), vec![PlanarTree::Leaf(0)]];
    for m in 2..=n {
        let mut trees = Vec::new();
        // root children: a composition of m into at least two parts
        fn comps(rest: usize, m: usize, parts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                if parts.len() >= 2 {
                    out.push(parts.clone());
                }
                return;
            }
            for k in 1..=rest.min(m - 1) {
                parts.push(k);
                comps(rest - k, m, parts, out);
                parts.pop();
            }
        }
        let mut cs = Vec::new();
        comps(m, m, &mut Vec::new(), &mut cs);
        for parts in cs {
            let mut acc: Vec<Vec<PlanarTree>> = vec![Vec::new()];
            let mut offset = 0u8;
            for &k in &parts {
                let mut next = Vec::new();
                for prefix in &acc {
                    for t in &by_size[k] {
                        let mut v = prefix.clone();
                        v.push(t.shifted(offset));
                        next.push(v);
                    }
                }
                acc = next;
                offset += k as u8;
            }
            trees.extend(acc.into_iter().map(PlanarTree::Node));
        }
        by_size.push(trees);
    }
    let mut out: Vec<PlanarTree> = by_size
        .swap_remove(n)
        .into_iter()
        .filter(|t| dim.map_or(true, |d| t.dim() == d))
        .collect();
    out.sort();
    Ok(out)
}

/// Facets of `t`: split one vertex of arity `a ≥ 3` by grouping a run of
/// `2..a-1` consecutive children under a new vertex.
pub fn tree_facets(t: &PlanarTree) -> Vec<PlanarTree> {
    let PlanarTree::Node(cs) = t else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (k, c) in cs.iter().enumerate() {
        for sub in tree_facets(c) {
            let mut v = cs.clone();
            v[k] = sub;
            out.push(PlanarTree::Node(v));
        }
    }
    let a = cs.len();
    for s in 0..a {
        for e in s + 2..=a {
            if e - s == a {
                continue;
            }
            let mut v = cs[..s].to_vec();
            v.push(PlanarTree::Node(cs[s..e].to_vec()));
            v.extend_from_slice(&cs[e..]);
            out.push(PlanarTree::Node(v));
        }
    }
    out.sort();
    out
}
