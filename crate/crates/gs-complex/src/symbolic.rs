use std::collections::BTreeMap;
use std::fmt;

use crate::Tridegree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GsOp {
    D,
    Partial,
    Delta,
}

impl GsOp {
    pub fn target(self, t: Tridegree) -> Tridegree {
        match self {
            GsOp::D => Tridegree::new(t.p + 1, t.i, t.j),
            GsOp::Partial => Tridegree::new(t.p, t.i + 1, t.j),
            GsOp::Delta => Tridegree::new(t.p, t.i, t.j + 1),
        }
    }

    /// The coefficient of this piece in the total differential at `t`.
    pub fn sign_at(self, t: Tridegree) -> i8 {
        let e = match self {
            GsOp::D => t.i + t.j,
            GsOp::Partial => 0,
            GsOp::Delta => t.i,
        };
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for GsOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GsOp::D => "d",
            GsOp::Partial => "∂",
            GsOp::Delta => "δ",
        })
    }
}

/// `sign · op(name)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymTerm {
    pub sign: i8,
    pub op: GsOp,
    pub name: String,
}

impl fmt::Display for SymTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}({})", if self.sign < 0 { "-" } else { "+" }, self.op, self.name)
    }
}

/// Formal expansion of `D(Σ name)`, grouped by target tridegree.
pub fn symbolic_total_d(components: &[(String, Tridegree)]) -> BTreeMap<Tridegree, Vec<SymTerm>> {
    let mut out: BTreeMap<Tridegree, Vec<SymTerm>> = BTreeMap::new();
    for (name, t) in components {
        for op in [GsOp::D, GsOp::Partial, GsOp::Delta] {
            out.entry(op.target(*t)).or_default().push(SymTerm {
                sign: op.sign_at(*t),
                op,
                name: name.clone(),
            });
        }
    }
    out
}

pub(crate) fn equation_string(terms: &[SymTerm]) -> String {
    let mut s = String::new();
    for (k, t) in terms.iter().enumerate() {
        match (k, t.sign < 0) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        s.push_str(&format!("{}({})", t.op, t.name));
    }
    s.push_str(" = 0");
    s
}
