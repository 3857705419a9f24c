use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use permudiag::{cmd_diag, cmd_kk, cmd_verify, CliError, DiagArgs, KkArgs, Polytope, Report, RingArg, Suite, VerifyArgs};

/// Diagonals on permutahedra and associahedra, structure-relation
/// verifiers and small biassociahedra.
#[derive(Parser, Debug)]
#[command(name = "permudiag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterated diagonal on the top cell of P_n or K_n.
    Diag {
        #[arg(long, value_enum, ignore_case = true)]
        polytope: Polytope,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, ignore_case = true, default_value = "f2")]
        ring: RingArg,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
        /// JSON output path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a family of relations on a built-in instance or supplied tables.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        instance: Option<String>,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long)]
        k_max: Option<usize>,
        /// Arity for hopf and chainmap; for gs, switches to deforming every
        /// cocycle at tridegree (2-n, n, 1).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, ignore_case = true, default_value = "f2")]
        ring: RingArg,
        /// Number of random cochains for the gs suite.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree cutoff of the algebra for the gs and bider suites.
        #[arg(long)]
        cutoff: Option<i64>,
        /// JSON file with operation tables.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build KK_{n,m} for m + n <= 5.
    Kk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Face poset as Graphviz text.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Wiring diagram of every cell as Graphviz text.
        #[arg(long)]
        fractions_dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn threads_from_env() -> Result<(), CliError> {
    let Ok(v) = std::env::var("PERMUDIAG_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("PERMUDIAG_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Result<Report, CliError>> {
    if let Err(e) = threads_from_env() {
        return Ok(Err(e));
    }
    Ok(match cli.command {
        Command::Diag { polytope, n, ring, iterate, out } => {
            let r = cmd_diag(&DiagArgs { polytope, n, ring, iterate });
            if let Ok(rep) = &r {
                write(out.as_deref(), &rep.to_json_string())?;
            }
            r
        }
        Command::Verify {
            suite,
            instance,
            window,
            k_max,
            n,
            ring,
            trials,
            seed,
            cutoff,
            table,
            out,
        } => {
            let table = match table {
                Some(p) => match std::fs::read_to_string(&p) {
                    Ok(t) => Some(t),
                    Err(e) => return Ok(Err(CliError::Usage(format!("{}: {e}", p.display())))),
                },
                None => None,
            };
            let args = VerifyArgs {
                suite,
                instance,
                window,
                k_max,
                n,
                ring,
                trials,
                seed,
                cutoff,
                table,
            };
            let r = cmd_verify(&args);
            if let Ok(rep) = &r {
                write(out.as_deref(), &rep.to_json_string())?;
            }
            r
        }
        Command::Kk { n, m, dot, fractions_dot, json } => {
            let r = cmd_kk(&KkArgs { n, m });
            if let Ok(rep) = &r {
                if dot.is_none() && json.is_none() && fractions_dot.is_none() {
                    write(None, &rep.to_json_string())?;
                }
                if let Some(p) = &json {
                    write(Some(p), &rep.to_json_string())?;
                }
                if let Some(p) = &dot {
                    write(Some(p), rep.face_poset_dot.as_deref().unwrap_or_default())?;
                }
                if let Some(p) = &fractions_dot {
                    write(Some(p), rep.fractions_dot.as_deref().unwrap_or_default())?;
                }
            }
            r
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Ok(report)) => ExitCode::from(report.exit_code()),
        Ok(Err(e)) => {
            eprintln!("permudiag: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(e) => {
            eprintln!("permudiag: {e:#}");
            ExitCode::from(2)
        }
    }
}
