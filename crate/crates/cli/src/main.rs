//! Batch front-end for the factor-complex toolkit.
//!
//! Subcommands build the field-model complexes and posets, the truncated
//! free-group complex, run exact homology on sc-v1 files, sweep the
//! dual-graph verifiers, and bundle reports into tables. Outputs are
//! byte-stable across runs and thread counts.
//!
//! Exit codes: 0 success, 1 verifier or fiber violation, 2 invalid
//! parameters or input, 3 cap exceeded, 4 internal invariant breach (the
//! failing witness is printed to stderr).

mod cache;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use factorcomplex::homology::{homology_report_seeded, ChainComplex, Coefficients, DEFAULT_SEED};
use factorcomplex::io::{to_json_string, HomologyV1, PosetV1, ReportMeta, ScV1, VerifyV1};
use factorcomplex::quillen::check_quillen_fibers;
use factorcomplex::report::{bundle_reports, rows_to_csv};
use factorcomplex::{Error, Result};

#[derive(Parser)]
#[command(name = "factorcomplex", version, about = "Common-basis complexes in three models: build, verify, measure")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for parallel sweeps (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Seed for randomized internals (the prime choice of the rational-rank
    /// shortcut).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build the common basis complex of F_q^n (sc-v1).
    BuildCbField {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        q: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the partial-decomposition poset of F_q^n (poset-v1).
    BuildPdField {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        q: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the basis-compatible pair poset of F_q^n (poset-v1).
    BuildFcdField {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        q: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that phi is order-preserving with acyclic lower fibers.
    PhiCheck {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        q: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the truncated free-group common basis complex (sc-v1).
    /// Basis enumeration is cached under $FACTORCOMPLEX_CACHE when set.
    BuildCbFree {
        #[arg(long)]
        n: u8,
        #[arg(long = "L")]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homology of an sc-v1 file (homology-v1 JSON, or CSV for .csv outputs).
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        /// Q for rationals with torsion, or GFp:<p> for a prime field.
        #[arg(long, default_value = "Q")]
        coefficients: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional provenance stamped into the report meta.
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long = "L")]
        l: Option<u32>,
    },
    /// Exhaustive dual-graph verifier sweep; writes one verify-v1 report per
    /// check into --out (a directory) when given.
    SphereVerify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_edges: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Merge homology-v1 / verify-v1 reports into one table (CSV, or JSON
    /// for .json outputs).
    Report {
        #[arg(long = "in", required = false)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let run_it = || match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidInput(_) | Error::Io(_) | Error::Format(_) => 2,
                Error::CapExceeded(_) => 3,
                Error::InvariantBreach { witness, .. } => {
                    eprintln!("witness: {witness}");
                    4
                }
            }
        }
    };
    let code = if threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(run_it)
    } else {
        run_it()
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::BuildCbField { n, q, out } => {
            let cb = factorcomplex::field::build_cb(n, q)?;
            emit(&to_json_string(&ScV1::from_complex(&cb))?, out.as_deref())?;
            eprintln!("cb-field n={n} q={q}: {} faces", cb.face_count());
            Ok(0)
        }
        Command::BuildPdField { n, q, out } => {
            let pd = factorcomplex::field::build_pd(n, q)?;
            emit(&to_json_string(&PosetV1::from_poset(&pd))?, out.as_deref())?;
            eprintln!("pd-field n={n} q={q}: {} elements", pd.len());
            Ok(0)
        }
        Command::BuildFcdField { n, q, out } => {
            let fcd = factorcomplex::field::build_fcd(n, q)?;
            emit(&to_json_string(&PosetV1::from_poset(&fcd))?, out.as_deref())?;
            eprintln!("fcd-field n={n} q={q}: {} elements", fcd.len());
            Ok(0)
        }
        Command::PhiCheck { n, q, out } => {
            let phi = factorcomplex::field::phi_map(n, q)?;
            let map = phi.map();
            let report = check_quillen_fibers(&map)?;
            let payload = serde_json::json!({
                "format": "phi-v1",
                "n": n,
                "q": q,
                "order_preserving": report.order_preserving,
                "all_pass": report.all_pass(),
                "fibers": report.fibers,
            });
            emit(&format!("{}\n", serde_json::to_string_pretty(&payload)?), out.as_deref())?;
            let failures = report.failures().len();
            eprintln!(
                "phi-check n={n} q={q}: {} fibers, {failures} failures",
                report.fibers.len()
            );
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::BuildCbFree { n, l, out } => {
            let bases = cache::enumerate_bases_cached(n, l)?;
            let cb = factorcomplex::freegroup::build_truncated_cb_from_bases(n, &bases)?;
            emit(&to_json_string(&ScV1::from_complex(&cb))?, out.as_deref())?;
            eprintln!(
                "cb-free n={n} L={l}: {} bases, {} faces",
                bases.len(),
                cb.face_count()
            );
            Ok(0)
        }
        Command::Homology { input, coefficients, out, model, n, q, l } => {
            let text = std::fs::read_to_string(&input)?;
            let probe: serde_json::Value = serde_json::from_str(&text)?;
            let complex = match probe.get("format").and_then(|f| f.as_str()) {
                Some("sc-v1") => serde_json::from_str::<ScV1>(&text)?.into_complex()?,
                // posets are measured through their order complexes
                Some("poset-v1") => serde_json::from_str::<PosetV1>(&text)?
                    .into_poset()?
                    .order_complex()?,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "homology expects sc-v1 or poset-v1 input, got {other:?}"
                    )))
                }
            };
            let coeff = Coefficients::parse(&coefficients)?;
            let meta = model.map(|m| ReportMeta { model: m, n, q, l });
            let payload = match coeff {
                Coefficients::Rationals => {
                    let report = homology_report_seeded(&complex, cli.seed)?;
                    HomologyV1::from_report(&report, meta)
                }
                Coefficients::GfP(_) => {
                    let cc = ChainComplex::of(&complex)?;
                    let betti = cc.betti_seeded(coeff, cli.seed)?;
                    HomologyV1::from_betti(betti, cc.euler(), coeff, meta)
                }
            };
            let is_csv = out.as_deref().is_some_and(|p| {
                p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
            });
            if is_csv {
                emit(&payload.to_csv(), out.as_deref())?;
            } else {
                emit(&to_json_string(&payload)?, out.as_deref())?;
            }
            Ok(0)
        }
        Command::SphereVerify { n, max_edges, out } => {
            let reports = factorcomplex::spheres::verify_all(n, max_edges)?;
            let mut total_violations = 0usize;
            for report in &reports {
                total_violations += report.violations.len()
                    + report
                        .violations_loop_reading
                        .as_ref()
                        .map_or(0, Vec::len);
                eprintln!(
                    "{}: checked {} violations {}",
                    report.check,
                    report.checked,
                    report.violations.len()
                );
                if let Some(dir) = &out {
                    std::fs::create_dir_all(dir)?;
                    let path = dir.join(format!(
                        "verify-{}-n{n}-e{max_edges}.json",
                        report.check
                    ));
                    std::fs::write(&path, to_json_string(&VerifyV1::from_report(report.clone()))?)?;
                }
            }
            println!("violations: {total_violations}");
            Ok(if total_violations == 0 { 0 } else { 1 })
        }
        Command::Report { inputs, out } => {
            let mut payloads = Vec::new();
            for path in &inputs {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                payloads.push((name, std::fs::read_to_string(path)?));
            }
            let rows = bundle_reports(&payloads)?;
            let is_json = out.as_deref().is_some_and(|p| {
                p.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
            });
            if is_json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&rows)?), out.as_deref())?;
            } else {
                emit(&rows_to_csv(&rows), out.as_deref())?;
            }
            Ok(0)
        }
    }
}

fn emit(payload: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}
