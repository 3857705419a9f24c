use std::collections::BTreeMap;
use std::fmt::Display;

use coeff_chain::{Chain, Ring, Tensor};
use permutahedron::OrderedPartition;
use serde_json::{json, Value};
use su_diagonal::{iterated_diagonal, solve_integer_signs, DiagError};
use tonks_associahedron::{iterated_diagonal_k, PlanarTree};

use crate::{usage, CliError, Report, RingArg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Polytope {
    P,
    K,
}

#[derive(Clone, Debug)]
pub struct DiagArgs {
    pub polytope: Polytope,
    pub n: usize,
    pub ring: RingArg,
    pub iterate: usize,
}

fn terms<K: Ord + Clone + Display>(c: &Chain<Tensor<K>>) -> Vec<Value> {
    c.canonical_terms()
        .into_iter()
        .map(|(_, k, coeff)| {
            json!({
                "factors": k.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "coeff": coeff.to_string(),
            })
        })
        .collect()
}

fn diag_error(e: DiagError) -> CliError {
    match e {
        DiagError::SignsUnavailable(_) | DiagError::Unsatisfiable(_) | DiagError::MissingSigns(_) => {
            CliError::Capability(e.to_string())
        }
        other => usage(other),
    }
}

/// Iterated diagonal on the top cell of `P_n` or `K_n`.
pub fn cmd_diag(a: &DiagArgs) -> Result<Report, CliError> {
    if a.iterate == 0 || a.iterate > 3 {
        return Err(usage("--iterate must be 1, 2 or 3"));
    }
    let (top, result) = match a.polytope {
        Polytope::P => {
            if !(1..=6).contains(&a.n) {
                return Err(usage("P_n needs 1 <= n <= 6"));
            }
            let top = OrderedPartition::top(a.n);
            let chain = match a.ring {
                RingArg::F2 => iterated_diagonal(a.iterate, &top, &Ring::F2, None),
                RingArg::Z => {
                    let signs = solve_integer_signs(a.n).map_err(|e| CliError::Capability(e.to_string()))?;
                    iterated_diagonal(a.iterate, &top, &Ring::Z, Some(&signs))
                }
            }
            .map_err(diag_error)?;
            (top.to_string(), terms(&chain))
        }
        Polytope::K => {
            if !(2..=7).contains(&a.n) {
                return Err(usage("K_n needs 2 <= n <= 7"));
            }
            if a.ring == RingArg::Z {
                return Err(CliError::Capability("the associahedral diagonal is computed over F2 only".into()));
            }
            let top = PlanarTree::corolla(a.n);
            let chain = iterated_diagonal_k(a.iterate, &top).map_err(usage)?;
            (top.to_string(), terms(&chain))
        }
    };
    let polytope = match a.polytope {
        Polytope::P => "P",
        Polytope::K => "K",
    };
    let params = BTreeMap::from([
        ("polytope".to_string(), polytope.to_string()),
        ("n".to_string(), a.n.to_string()),
        ("iterate".to_string(), a.iterate.to_string()),
        ("ring".to_string(), a.ring.name().to_string()),
    ]);
    let body = json!({
        "polytope": polytope,
        "n": a.n,
        "iterate": a.iterate,
        "cell": top,
        "count": result.len(),
        "terms": result,
    });
    Ok(Report::new("diag", params, a.ring.name(), None, &[], body, true))
}
