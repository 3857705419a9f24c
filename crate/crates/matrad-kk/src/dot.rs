use std::fmt::Write;

use crate::graph::{Dst, FractionGraph, Src};
use crate::kk::CellComplex;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of the face poset, each cell pointing at its facets.
pub fn face_poset_dot(c: &CellComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&format!("KK_{},{}", c.n, c.m)));
    let _ = writeln!(out, "  rankdir=BT;");
    for (i, cell) in c.cells.iter().enumerate() {
        let _ = writeln!(out, "  c{i} [label={}];", quote(&format!("{} (dim {})", cell.label, cell.dim)));
    }
    for (i, faces) in c.boundary.iter().enumerate() {
        for f in faces {
            let _ = writeln!(out, "  c{f} -> c{i};");
        }
    }
    out.push_str("}\n");
    out
}

/// The wiring diagram of a fraction, inputs at the bottom.
pub fn fraction_dot(g: &FractionGraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    let _ = writeln!(out, "  rankdir=BT;");
    for k in 0..g.inputs() {
        let _ = writeln!(out, "  in{k} [shape=point, xlabel=\"in {k}\"];");
    }
    for k in 0..g.outputs() {
        let _ = writeln!(out, "  out{k} [shape=point, xlabel=\"out {k}\"];");
    }
    for (v, gen) in g.nodes().iter().enumerate() {
        let _ = writeln!(out, "  n{v} [label={}];", quote(&gen.to_string()));
    }
    for (s, t) in g.wires() {
        let (from, tail) = match s {
            Src::In(k) => (format!("in{k}"), String::new()),
            Src::Node(v, k) => (format!("n{v}"), format!("taillabel=\"{k}\"")),
        };
        let (to, head) = match t {
            Dst::Out(k) => (format!("out{k}"), String::new()),
            Dst::Node(v, k) => (format!("n{v}"), format!("headlabel=\"{k}\"")),
        };
        let attrs: Vec<String> = [tail, head].into_iter().filter(|a| !a.is_empty()).collect();
        if attrs.is_empty() {
            let _ = writeln!(out, "  {from} -> {to};");
        } else {
            let _ = writeln!(out, "  {from} -> {to} [{}];", attrs.join(", "));
        }
    }
    out.push_str("}\n");
    out
}
