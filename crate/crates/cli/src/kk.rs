use std::collections::BTreeMap;

use matrad_kk::{build_kk, face_poset_dot, fraction_dot, MatradError};
use serde_json::{json, Value};

use crate::{usage, CliError, Report};

#[derive(Clone, Debug)]
pub struct KkArgs {
    pub n: usize,
    pub m: usize,
}

/// `KK_{n,m}`: f-vector, cells, boundary matrices over F2 and the selection
/// record, with DOT for the face poset and for every cell's fraction.
pub fn cmd_kk(a: &KkArgs) -> Result<Report, CliError> {
    let c = build_kk(a.n, a.m).map_err(|e| match e {
        MatradError::Unsupported(_) => CliError::Capability(e.to_string()),
        other => usage(other),
    })?;
    let cells: Vec<Value> = c
        .cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            json!({
                "index": i,
                "label": cell.label,
                "dim": cell.dim,
                "graph": cell.graph.to_string(),
                "boundary": c.boundary[i],
            })
        })
        .collect();
    let matrices: BTreeMap<String, Vec<Vec<u8>>> = (1..=c.top_dim()).map(|d| (d.to_string(), c.boundary_matrix(d))).collect();
    let rejected: Vec<Value> = c
        .rejected
        .iter()
        .map(|r| json!({ "label": r.label, "dim": r.dim, "graph": r.graph.to_string() }))
        .collect();
    let body = json!({
        "n": a.n,
        "m": a.m,
        "dim": c.top_dim(),
        "f_vector": c.f_vector(),
        "euler_characteristic": c.euler_characteristic(),
        "cells": cells,
        "boundary_matrices": matrices,
        "enumerated": c.enumerated,
        "rejected": rejected,
    });
    let params = BTreeMap::from([("n".to_string(), a.n.to_string()), ("m".to_string(), a.m.to_string())]);
    let mut report = Report::new("kk", params, "F2", None, &[], body, true);
    report.face_poset_dot = Some(face_poset_dot(&c));
    report.fractions_dot = Some(c.cells.iter().map(|cell| fraction_dot(&cell.graph, &cell.label)).collect());
    Ok(report)
}
