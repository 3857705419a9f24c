use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use tonks_associahedron::PlanarTree;

use crate::MatradError;

/// The double corolla `θ_m^n` with `m` inputs and `n` outputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Generator {
    pub inputs: usize,
    pub outputs: usize,
}

impl Generator {
    pub fn new(inputs: usize, outputs: usize) -> Self {
        Generator { inputs, outputs }
    }

    /// `m + n - 3`; the identity wire `θ_1^1` has dimension `-1`.
    pub fn dim(self) -> i64 {
        (self.inputs + self.outputs) as i64 - 3
    }

    pub fn is_identity(self) -> bool {
        self.inputs == 1 && self.outputs == 1
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ_{}^{}", self.inputs, self.outputs)
    }
}

/// Start of a wire: a global input or output port `k` of node `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Src {
    In(usize),
    Node(usize, usize),
}

/// End of a wire: a global output or input port `k` of node `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dst {
    Out(usize),
    Node(usize, usize),
}

/// A connected graph of generators with ordered ports, in canonical form:
/// nodes are numbered by a depth-first walk starting from the global inputs
/// in order, so two graphs are equal iff they describe the same composite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FractionGraph {
    nodes: Vec<Generator>,
    wires: Vec<(Src, Dst)>,
    inputs: usize,
    outputs: usize,
}

impl FractionGraph {
    pub fn identity() -> Self {
        FractionGraph {
            nodes: Vec::new(),
            wires: vec![(Src::In(0), Dst::Out(0))],
            inputs: 1,
            outputs: 1,
        }
    }

    /// The single generator `θ_m^n`; `θ_1^1` is the identity wire.
    pub fn generator(g: Generator) -> Self {
        if g.is_identity() {
            return Self::identity();
        }
        let mut wires: Vec<(Src, Dst)> = (0..g.inputs).map(|k| (Src::In(k), Dst::Node(0, k))).collect();
        wires.extend((0..g.outputs).map(|k| (Src::Node(0, k), Dst::Out(k))));
        FractionGraph {
            nodes: vec![g],
            wires,
            inputs: g.inputs,
            outputs: g.outputs,
        }
        .canonical()
        .expect("a corolla is connected")
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn nodes(&self) -> &[Generator] {
        &self.nodes
    }

    pub fn wires(&self) -> &[(Src, Dst)] {
        &self.wires
    }

    /// Sum of the dimensions of the generators; identity wires count 0.
    pub fn dim(&self) -> i64 {
        self.nodes.iter().map(|g| g.dim()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The generator when the graph is a single corolla.
    pub fn as_generator(&self) -> Option<Generator> {
        match self.nodes.as_slice() {
            [g] => Some(*g),
            [] => Some(Generator::new(1, 1)),
            _ => None,
        }
    }

    /// Every port carries exactly one wire.
    fn well_formed(&self) -> bool {
        let mut srcs: Vec<Src> = (0..self.inputs).map(Src::In).collect();
        let mut dsts: Vec<Dst> = (0..self.outputs).map(Dst::Out).collect();
        for (v, g) in self.nodes.iter().enumerate() {
            srcs.extend((0..g.outputs).map(|k| Src::Node(v, k)));
            dsts.extend((0..g.inputs).map(|k| Dst::Node(v, k)));
        }
        let mut ws: Vec<Src> = self.wires.iter().map(|w| w.0).collect();
        let mut wd: Vec<Dst> = self.wires.iter().map(|w| w.1).collect();
        srcs.sort();
        dsts.sort();
        ws.sort();
        wd.sort();
        srcs == ws && dsts == wd
    }

    fn canonical(self) -> Result<Self, MatradError> {
        if !self.well_formed() {
            return Err(MatradError::Arity(format!("ports of {self} are not wired exactly once")));
        }
        let dst_of: BTreeMap<Src, Dst> = self.wires.iter().copied().collect();
        let src_of: BTreeMap<Dst, Src> = self.wires.iter().map(|&(s, d)| (d, s)).collect();
        let mut order: Vec<usize> = Vec::with_capacity(self.nodes.len());
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<usize> = Vec::new();
        let mut visit = |start: usize, order: &mut Vec<usize>, seen: &mut Vec<bool>| {
            stack.push(start);
            while let Some(v) = stack.pop() {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                order.push(v);
                let g = self.nodes[v];
                let mut next = Vec::new();
                for k in 0..g.inputs {
                    if let Some(Src::Node(u, _)) = src_of.get(&Dst::Node(v, k)) {
                        next.push(*u);
                    }
                }
                for k in 0..g.outputs {
                    if let Some(Dst::Node(u, _)) = dst_of.get(&Src::Node(v, k)) {
                        next.push(*u);
                    }
                }
                stack.extend(next.into_iter().rev());
            }
        };
        for g in 0..self.inputs {
            if let Some(Dst::Node(v, _)) = dst_of.get(&Src::In(g)) {
                visit(*v, &mut order, &mut seen);
            }
        }
        for g in 0..self.outputs {
            if let Some(Src::Node(v, _)) = src_of.get(&Dst::Out(g)) {
                visit(*v, &mut order, &mut seen);
            }
        }
        if order.len() != self.nodes.len() {
            return Err(MatradError::Disconnected);
        }
        if self.nodes.is_empty() && self.wires.len() != 1 {
            return Err(MatradError::Disconnected);
        }
        let mut index = vec![0; self.nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            index[old] = new;
        }
        let rs = |s: Src| match s {
            Src::Node(v, k) => Src::Node(index[v], k),
            s => s,
        };
        let rd = |d: Dst| match d {
            Dst::Node(v, k) => Dst::Node(index[v], k),
            d => d,
        };
        let mut wires: Vec<(Src, Dst)> = self.wires.iter().map(|&(s, d)| (rs(s), rd(d))).collect();
        wires.sort();
        Ok(FractionGraph {
            nodes: order.iter().map(|&v| self.nodes[v]).collect(),
            wires,
            inputs: self.inputs,
            outputs: self.outputs,
        })
    }

    /// The elementary fraction with denominator row `dens` (each with
    /// `q = nums.len()` outputs) and numerator row `nums` (each with
    /// `p = dens.len()` inputs): output `j` of `dens[i]` feeds input `i` of
    /// `nums[j]`. Identity wires are contracted.
    pub fn fraction(dens: &[FractionGraph], nums: &[FractionGraph]) -> Result<Self, MatradError> {
        let (p, q) = (dens.len(), nums.len());
        if p == 0 || q == 0 {
            return Err(MatradError::Arity("empty row".into()));
        }
        if let Some(d) = dens.iter().find(|d| d.outputs != q) {
            return Err(MatradError::Arity(format!("denominator with {} outputs in a row of {q} numerators", d.outputs)));
        }
        if let Some(n) = nums.iter().find(|n| n.inputs != p) {
            return Err(MatradError::Arity(format!("numerator with {} inputs over {p} denominators", n.inputs)));
        }
        let mut nodes = Vec::new();
        let mut wires = Vec::new();
        // output j of dens[i] and input i of nums[j]
        let mut link_src: BTreeMap<(usize, usize), Src> = BTreeMap::new();
        let mut link_dst: BTreeMap<(usize, usize), Dst> = BTreeMap::new();
        let mut in_offset = 0;
        for (i, d) in dens.iter().enumerate() {
            let off = nodes.len();
            nodes.extend_from_slice(&d.nodes);
            for &(s, t) in &d.wires {
                let s = match s {
                    Src::In(g) => Src::In(g + in_offset),
                    Src::Node(v, k) => Src::Node(v + off, k),
                };
                match t {
                    Dst::Out(j) => {
                        link_src.insert((i, j), s);
                    }
                    Dst::Node(v, k) => wires.push((s, Dst::Node(v + off, k))),
                }
            }
            in_offset += d.inputs;
        }
        let mut out_offset = 0;
        for (j, n) in nums.iter().enumerate() {
            let off = nodes.len();
            nodes.extend_from_slice(&n.nodes);
            for &(s, t) in &n.wires {
                let t = match t {
                    Dst::Out(g) => Dst::Out(g + out_offset),
                    Dst::Node(v, k) => Dst::Node(v + off, k),
                };
                match s {
                    Src::In(i) => {
                        link_dst.insert((i, j), t);
                    }
                    Src::Node(v, k) => wires.push((Src::Node(v + off, k), t)),
                }
            }
            out_offset += n.outputs;
        }
        for (key, s) in link_src {
            wires.push((s, link_dst[&key]));
        }
        FractionGraph {
            nodes,
            wires,
            inputs: in_offset,
            outputs: out_offset,
        }
        .canonical()
    }

    /// Replaces node `v` by the graph `h`, which must have the same arities.
    pub fn substitute(&self, v: usize, h: &FractionGraph) -> Result<Self, MatradError> {
        let g = self.nodes[v];
        if (g.inputs, g.outputs) != (h.inputs, h.outputs) {
            return Err(MatradError::Arity(format!("cannot put a {}>{} graph in place of {g}", h.inputs, h.outputs)));
        }
        let keep: Vec<usize> = (0..self.nodes.len()).filter(|&u| u != v).collect();
        let mut index = vec![usize::MAX; self.nodes.len()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let off = keep.len();
        let rs = |s: Src| match s {
            Src::Node(u, k) => Src::Node(index[u], k),
            s => s,
        };
        let rd = |d: Dst| match d {
            Dst::Node(u, k) => Dst::Node(index[u], k),
            d => d,
        };
        let mut into = BTreeMap::new();
        let mut out_of = BTreeMap::new();
        let mut wires = Vec::new();
        for &(s, t) in &self.wires {
            match (s, t) {
                (_, Dst::Node(u, k)) if u == v => {
                    into.insert(k, s);
                }
                (Src::Node(u, k), _) if u == v => {
                    out_of.insert(k, t);
                }
                _ => wires.push((rs(s), rd(t))),
            }
        }
        for &(s, t) in &h.wires {
            let s = match s {
                Src::In(k) => rs(into[&k]),
                Src::Node(u, k) => Src::Node(u + off, k),
            };
            let t = match t {
                Dst::Out(k) => rd(out_of[&k]),
                Dst::Node(u, k) => Dst::Node(u + off, k),
            };
            wires.push((s, t));
        }
        let mut nodes: Vec<Generator> = keep.iter().map(|&u| self.nodes[u]).collect();
        nodes.extend_from_slice(&h.nodes);
        FractionGraph {
            nodes,
            wires,
            inputs: self.inputs,
            outputs: self.outputs,
        }
        .canonical()
    }

    /// The same graph read upside down: inputs and outputs trade places.
    pub fn flip(&self) -> Self {
        let wires = self
            .wires
            .iter()
            .map(|&(s, t)| {
                let s2 = match t {
                    Dst::Out(g) => Src::In(g),
                    Dst::Node(v, k) => Src::Node(v, k),
                };
                let t2 = match s {
                    Src::In(g) => Dst::Out(g),
                    Src::Node(v, k) => Dst::Node(v, k),
                };
                (s2, t2)
            })
            .collect();
        FractionGraph {
            nodes: self.nodes.iter().map(|g| Generator::new(g.outputs, g.inputs)).collect(),
            wires,
            inputs: self.outputs,
            outputs: self.inputs,
        }
        .canonical()
        .expect("flipping keeps connectivity")
    }

    /// The planar tree of a graph whose nodes all have one output.
    pub fn to_tree(&self) -> Option<PlanarTree> {
        if self.outputs != 1 || self.nodes.iter().any(|g| g.outputs != 1) {
            return None;
        }
        let src_of: BTreeMap<Dst, Src> = self.wires.iter().map(|&(s, d)| (d, s)).collect();
        fn build(s: Src, g: &FractionGraph, src_of: &BTreeMap<Dst, Src>) -> PlanarTree {
            match s {
                Src::In(k) => PlanarTree::Leaf(k as u8),
                Src::Node(v, _) => PlanarTree::Node(
                    (0..g.nodes[v].inputs)
                        .map(|k| build(src_of[&Dst::Node(v, k)], g, src_of))
                        .collect(),
                ),
            }
        }
        let t = build(src_of[&Dst::Out(0)], self, &src_of);
        t.validate().ok()?;
        Some(t)
    }

    /// The graph of a planar tree, with one `θ_a^1` per vertex of arity `a`.
    pub fn from_tree(t: &PlanarTree) -> Self {
        fn go(t: &PlanarTree, nodes: &mut Vec<Generator>, wires: &mut Vec<(Src, Dst)>) -> Src {
            match t {
                PlanarTree::Leaf(l) => Src::In(*l as usize),
                PlanarTree::Node(cs) => {
                    let v = nodes.len();
                    nodes.push(Generator::new(cs.len(), 1));
                    for (k, c) in cs.iter().enumerate() {
                        let s = go(c, nodes, wires);
                        wires.push((s, Dst::Node(v, k)));
                    }
                    Src::Node(v, 0)
                }
            }
        }
        let (mut nodes, mut wires) = (Vec::new(), Vec::new());
        let root = go(t, &mut nodes, &mut wires);
        wires.push((root, Dst::Out(0)));
        FractionGraph {
            nodes,
            wires,
            inputs: t.leaves(),
            outputs: 1,
        }
        .canonical()
        .expect("trees are connected")
    }
}

impl fmt::Display for Src {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Src::In(g) => write!(f, "i{g}"),
            Src::Node(v, k) => write!(f, "{v}.{k}"),
        }
    }
}

impl fmt::Display for Dst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dst::Out(g) => write!(f, "o{g}"),
            Dst::Node(v, k) => write!(f, "{v}.{k}"),
        }
    }
}

/// Canonical serialization `inputs>outputs:[a>b,...]:[src-dst,...]`.
impl fmt::Display for FractionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.nodes.iter().map(|g| format!("{}>{}", g.inputs, g.outputs)).collect();
        let wires: Vec<String> = self.wires.iter().map(|(s, t)| format!("{s}-{t}")).collect();
        write!(f, "{}>{}:[{}]:[{}]", self.inputs, self.outputs, nodes.join(","), wires.join(","))
    }
}

impl Serialize for FractionGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for FractionGraph {
    type Err = MatradError;

    fn from_str(s: &str) -> Result<Self, MatradError> {
        let bad = || MatradError::Parse(s.to_string());
        let pair = |t: &str| -> Result<(usize, usize), MatradError> {
            let (a, b) = t.split_once('>').ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        };
        let list = |t: &str| -> Result<Vec<String>, MatradError> {
            let inner = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
            Ok(if inner.is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(str::to_string).collect()
            })
        };
        let port = |t: &str| -> Result<(char, usize, usize), MatradError> {
            if let Some(g) = t.strip_prefix('i') {
                return Ok(('i', g.parse().map_err(|_| bad())?, 0));
            }
            if let Some(g) = t.strip_prefix('o') {
                return Ok(('o', g.parse().map_err(|_| bad())?, 0));
            }
            let (v, k) = t.split_once('.').ok_or_else(bad)?;
            Ok(('n', v.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?))
        };
        let mut parts = s.splitn(3, ':');
        let (head, nodes, wires) = (
            parts.next().ok_or_else(bad)?,
            parts.next().ok_or_else(bad)?,
            parts.next().ok_or_else(bad)?,
        );
        let (inputs, outputs) = pair(head)?;
        let nodes = list(nodes)?
            .iter()
            .map(|t| pair(t).map(|(a, b)| Generator::new(a, b)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ws = Vec::new();
        for w in list(wires)? {
            let (a, b) = w.split_once('-').ok_or_else(bad)?;
            let s = match port(a)? {
                ('i', g, _) => Src::In(g),
                ('n', v, k) => Src::Node(v, k),
                _ => return Err(bad()),
            };
            let t = match port(b)? {
                ('o', g, _) => Dst::Out(g),
                ('n', v, k) => Dst::Node(v, k),
                _ => return Err(bad()),
            };
            ws.push((s, t));
        }
        let g = FractionGraph {
            nodes,
            wires: ws,
            inputs,
            outputs,
        };
        let c = g.clone().canonical()?;
        if c != g {
            return Err(bad());
        }
        Ok(c)
    }
}
