//! Command-line front end.
//!
//! Every subcommand renders as a table (default), CSV, or a JSON document
//! `{"command": .., "params": .., "result": ..}`. Exit codes: 0 success or
//! PASS, 1 verification FAIL, 2 usage error, 3 cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::limits::Limits;
use crate::oracle::{compare, fiber_point_count, OracleConfig};
use crate::partition::{
    enumerate_gamma_partitions, enumerate_kappa, kappa_to_mu, kappa_to_nu, GammaPartition,
};
use crate::poly::{kostant_poly, kostant_poly_via_strata};
use crate::roots::{GammaVec, Rank};
use crate::strata::{enumerate_strata, ic_stalk_table, moduli_dim, parity_check, smallness_from_records, Verdict};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "quasiflag", version, about = "Quasimap strata, Kostant q-analogues and fiber point counts for SL_n")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Override the rank cap.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Override the length cap |alpha|.
    #[arg(long, global = true)]
    max_length: Option<u64>,
    /// Override the field-size cap of fiber-count.
    #[arg(long, global = true)]
    max_q: Option<u32>,
    /// Override the per-level lattice cap of fiber-count.
    #[arg(long, global = true)]
    max_lattices: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the positive coroots [p,q].
    Roots {
        #[arg(long)]
        n: usize,
    },
    /// List the partitions of gamma into positive coroots.
    Kpartitions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: String,
    },
    /// The t-analogue of the Kostant partition function.
    Kostant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: String,
    },
    /// List the vector partitions of alpha.
    GammaPartitions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
    },
    /// All strata (beta, Gamma) of the quasimap space of degree alpha.
    Strata {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
    },
    /// Check codim > 2 * fiber dimension over every stratum.
    Smallness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
    },
    /// Tate multiplicities of the IC stalk at a stratum.
    IcStalks {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Parts of Gamma as "g;g;..", each g comma separated.
        #[arg(long, allow_hyphen_values = true)]
        parts: String,
    },
    /// Count F_q points of the simple fiber over defect gamma.
    FiberCount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        q: u32,
        /// Compare against K_gamma(q) and q^{dim} per stratum.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Rendered {
    command: &'static str,
    params: Value,
    result: Value,
    table: String,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
    passed: bool,
}

/// Parses `argv` and writes the rendered output to `out`, diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let quiet = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if quiet { out } else { err };
            let _ = write!(sink, "{e}");
            return if quiet { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let text = match cli.format {
                Format::Table => r.table.clone(),
                Format::Json => {
                    let doc = json!({ "command": r.command, "params": r.params, "result": r.result });
                    let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
                    s.push('\n');
                    s
                }
                Format::Csv => render_csv(&r.csv_header, &r.csv_rows),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            if r.passed {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_cap() {
                EXIT_CAP
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn limits(cli: &Cli) -> Limits {
    let d = Limits::default();
    Limits {
        max_rank: cli.max_n.unwrap_or(d.max_rank),
        max_length: cli.max_length.unwrap_or(d.max_length),
    }
}

fn oracle_config(cli: &Cli) -> OracleConfig {
    let d = OracleConfig::default();
    OracleConfig {
        max_rank: cli.max_n.unwrap_or(d.max_rank),
        max_length: cli.max_length.unwrap_or(d.max_length),
        max_q: cli.max_q.unwrap_or(d.max_q),
        max_lattices: cli.max_lattices.unwrap_or(d.max_lattices),
        extra_truncation: d.extra_truncation,
    }
}

fn rank(n: usize, limits: &Limits) -> CliResult<Rank> {
    let r = Rank::new(n).map_err(|e| CliError::Usage(e.to_string()))?;
    limits.check_rank(n)?;
    Ok(r)
}

/// Comma-separated nonnegative integers of arity `n - 1`.
pub fn parse_vector(text: &str, rank: Rank, name: &str) -> Result<GammaVec, String> {
    let coeffs = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| format!("--{name}: '{}' is not a nonnegative integer", s.trim()))
        })
        .collect::<Result<Vec<u32>, String>>()?;
    GammaVec::new(rank, coeffs).map_err(|e| format!("--{name}: {e}"))
}

/// Semicolon-separated vectors; the empty string is the empty partition.
pub fn parse_parts(text: &str, rank: Rank) -> Result<GammaPartition, String> {
    let parts = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_vector(s, rank, "parts"))
        .collect::<Result<Vec<_>, String>>()?;
    GammaPartition::new(rank, parts).map_err(|e| format!("--parts: {e}"))
}

fn vector(text: &str, rank: Rank, name: &str) -> CliResult<GammaVec> {
    parse_vector(text, rank, name).map_err(CliError::Usage)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn execute(cli: &Cli) -> CliResult<Rendered> {
    let lim = limits(cli);
    match &cli.command {
        Command::Roots { n } => {
            let r = rank(*n, &lim)?;
            let roots = r.positive_coroots();
            let mut table = String::new();
            let mut rows = Vec::new();
            let mut listed = Vec::new();
            for c in &roots {
                let g = c.to_gamma(r)?;
                let _ = writeln!(table, "{c}\t{g}");
                rows.push(vec![c.p.to_string(), c.q.to_string(), c.len().to_string()]);
                listed.push(json!({ "p": c.p, "q": c.q, "gamma": g }));
            }
            let _ = writeln!(table, "{} positive coroots, dim B = {}", roots.len(), r.flag_dim());
            Ok(Rendered {
                command: "roots",
                params: json!({ "n": n }),
                result: json!({ "coroots": listed, "count": roots.len(), "flag_dim": r.flag_dim() }),
                table,
                csv_header: vec!["p", "q", "length"],
                csv_rows: rows,
                passed: true,
            })
        }
        Command::Kpartitions { n, gamma } => {
            let r = rank(*n, &lim)?;
            let g = vector(gamma, r, "gamma")?;
            let kappas = enumerate_kappa(&g, &lim)?;
            let mut table = String::new();
            let mut rows = Vec::new();
            let mut listed = Vec::new();
            for k in &kappas {
                let nu = kappa_to_nu(k);
                let mu = kappa_to_mu(k);
                let dim = mu.stratum_dim()?;
                let _ = writeln!(table, "{k}\tK = {}\tmu = {mu}\tdim = {dim}", k.parts());
                rows.push(vec![k.to_string(), k.parts().to_string(), mu.to_string(), dim.to_string()]);
                let mult: Vec<Value> = k.iter().map(|(c, m)| json!({ "p": c.p, "q": c.q, "mult": m })).collect();
                listed.push(json!({ "kappa": mult, "parts": k.parts(), "nu": nu, "mu": mu, "stratum_dim": dim }));
            }
            let _ = writeln!(table, "{} partitions", kappas.len());
            Ok(Rendered {
                command: "kpartitions",
                params: json!({ "n": n, "gamma": g }),
                result: json!({ "count": kappas.len(), "partitions": listed }),
                table,
                csv_header: vec!["kappa", "parts", "mu", "stratum_dim"],
                csv_rows: rows,
                passed: true,
            })
        }
        Command::Kostant { n, gamma } => {
            let r = rank(*n, &lim)?;
            let g = vector(gamma, r, "gamma")?;
            let p = kostant_poly(&g, &lim)?;
            let via = kostant_poly_via_strata(&g, &lim)?;
            let rows = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| vec![j.to_string(), c.to_string()])
                .collect();
            Ok(Rendered {
                command: "kostant",
                params: json!({ "n": n, "gamma": g }),
                result: json!({
                    "polynomial": p,
                    "text": p.to_string(),
                    "partition_count": p.eval(1)?,
                    "via_strata_agrees": p == via,
                }),
                table: format!("{p}\n"),
                csv_header: vec!["degree", "coefficient"],
                csv_rows: rows,
                passed: p == via,
            })
        }
        Command::GammaPartitions { n, alpha } => {
            let r = rank(*n, &lim)?;
            let a = vector(alpha, r, "alpha")?;
            let parts = enumerate_gamma_partitions(&a, &lim)?;
            let mut table = String::new();
            let mut rows = Vec::new();
            for p in &parts {
                let _ = writeln!(table, "{p}");
                rows.push(vec![p.to_string(), p.len().to_string()]);
            }
            let _ = writeln!(table, "{} partitions", parts.len());
            Ok(Rendered {
                command: "gamma-partitions",
                params: json!({ "n": n, "alpha": a }),
                result: json!({ "count": parts.len(), "partitions": parts }),
                table,
                csv_header: vec!["partition", "m"],
                csv_rows: rows,
                passed: true,
            })
        }
        Command::Strata { n, alpha } => {
            let r = rank(*n, &lim)?;
            let a = vector(alpha, r, "alpha")?;
            let records = enumerate_strata(&a, &lim)?;
            let mut table = String::new();
            let _ = writeln!(table, "beta\tGamma\tm\tdim\tcodim\tfiber_dim\tbound\tK_Gamma");
            let mut rows = Vec::new();
            for s in &records {
                let _ = writeln!(
                    table,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    s.beta, s.gamma, s.m, s.stratum_dim, s.codim, s.fiber_dim, s.fiber_dim_bound, s.fiber_poincare
                );
                rows.push(vec![
                    s.beta.to_string(),
                    s.gamma.to_string(),
                    s.m.to_string(),
                    s.stratum_dim.to_string(),
                    s.codim.to_string(),
                    s.fiber_dim.to_string(),
                    s.fiber_dim_bound.to_string(),
                    s.fiber_poincare.to_string(),
                ]);
            }
            let _ = writeln!(table, "{} strata, dim = {}", records.len(), moduli_dim(&a));
            Ok(Rendered {
                command: "strata",
                params: json!({ "n": n, "alpha": a }),
                result: json!({ "moduli_dim": moduli_dim(&a), "records": to_value(&records) }),
                table,
                csv_header: vec!["beta", "gamma", "m", "stratum_dim", "codim", "fiber_dim", "fiber_dim_bound", "fiber_poincare"],
                csv_rows: rows,
                passed: true,
            })
        }
        Command::Smallness { n, alpha } => {
            let r = rank(*n, &lim)?;
            let a = vector(alpha, r, "alpha")?;
            let records = enumerate_strata(&a, &lim)?;
            let report = smallness_from_records(&records);
            let mut table = String::new();
            match (&report.verdict, &report.witness) {
                (Verdict::Pass { margin }, Some(w)) => {
                    let _ = writeln!(
                        table,
                        "PASS with margin {margin}: witness beta = {}, Gamma = {}, codim {} > 2*{}",
                        w.beta, w.gamma, w.codim, w.fiber_dim
                    );
                }
                (Verdict::VacuousPass, _) => {
                    let _ = writeln!(table, "PASS (vacuous): every fiber is a point");
                }
                _ => {
                    let _ = writeln!(table, "FAIL");
                }
            }
            let _ = writeln!(table, "beta\tGamma\tcodim\tfiber_dim\tmargin\tok");
            let mut rows = Vec::new();
            for s in &report.strata {
                let margin = s.margin.map_or_else(|| "-".to_string(), |m| m.to_string());
                let _ = writeln!(table, "{}\t{}\t{}\t{}\t{}\t{}", s.beta, s.gamma, s.codim, s.fiber_dim, margin, s.ok);
                rows.push(vec![
                    s.beta.to_string(),
                    s.gamma.to_string(),
                    s.codim.to_string(),
                    s.fiber_dim.to_string(),
                    margin,
                    s.ok.to_string(),
                ]);
            }
            for l in &report.levels {
                let _ = writeln!(table, "level {}: min codim {} > {}: {}", l.level, l.min_codim, 2 * l.level, l.ok);
            }
            Ok(Rendered {
                command: "smallness",
                params: json!({ "n": n, "alpha": a }),
                passed: report.verdict.passed(),
                result: to_value(&report),
                table,
                csv_header: vec!["beta", "gamma", "codim", "fiber_dim", "margin", "ok"],
                csv_rows: rows,
            })
        }
        Command::IcStalks { n, alpha, beta, parts } => {
            let r = rank(*n, &lim)?;
            let a = vector(alpha, r, "alpha")?;
            let b = vector(beta, r, "beta")?;
            let gamma = parse_parts(parts, r).map_err(CliError::Usage)?;
            let table_data = match ic_stalk_table(&a, &b, &gamma, &lim) {
                Err(Error::InvalidStratum(msg)) => return Err(CliError::Usage(msg)),
                other => other?,
            };
            let parity = parity_check(&table_data);
            let mut table = String::new();
            let _ = writeln!(table, "degree\ttwist\tmultiplicity");
            let mut rows = Vec::new();
            for e in &table_data.entries {
                let _ = writeln!(table, "{}\t{}\t{}", e.degree, e.twist, e.multiplicity);
                rows.push(vec![e.degree.to_string(), e.twist.to_string(), e.multiplicity.to_string()]);
            }
            let _ = writeln!(table, "parity: {}", if parity { "ok" } else { "VIOLATED" });
            Ok(Rendered {
                command: "ic-stalks",
                params: json!({ "n": n, "alpha": a, "beta": b, "parts": gamma }),
                result: json!({ "table": to_value(&table_data), "parity_ok": parity }),
                table,
                csv_header: vec!["degree", "twist", "multiplicity"],
                csv_rows: rows,
                passed: parity,
            })
        }
        Command::FiberCount { n, gamma, q, verify } => {
            let cfg = oracle_config(cli);
            let r = Rank::new(*n).map_err(|e| CliError::Usage(e.to_string()))?;
            let g = vector(gamma, r, "gamma")?;
            let count = match fiber_point_count(&g, *q, &cfg) {
                Err(Error::NotPrime(q)) => return Err(CliError::Usage(format!("--q: {q} is not a prime"))),
                other => other?,
            };
            let mut table = String::new();
            let mut rows = Vec::new();
            let buckets: Vec<Value> = count
                .buckets
                .iter()
                .map(|(mu, c)| json!({ "mu": mu, "count": c }))
                .collect();
            let mut result = json!({ "total": count.total, "buckets": buckets });
            let mut passed = true;
            if *verify {
                let report = compare(&g, *q, &count, &cfg)?;
                passed = report.passed();
                let _ = writeln!(
                    table,
                    "{}: total {} (K_gamma({}) = {})",
                    if passed { "PASS" } else { "FAIL" },
                    report.total,
                    q,
                    report.expected_total
                );
                let _ = writeln!(table, "mu\tdim\tcount\texpected\tok");
                for b in &report.buckets {
                    let _ = writeln!(table, "{}\t{}\t{}\t{}\t{}", b.mu, b.stratum_dim, b.count, b.expected, b.ok);
                    rows.push(vec![
                        b.mu.to_string(),
                        b.stratum_dim.to_string(),
                        b.count.to_string(),
                        b.expected.to_string(),
                        b.ok.to_string(),
                    ]);
                }
                for m in &report.missing {
                    let _ = writeln!(table, "missing stratum: {m}");
                }
                for m in &report.unexpected {
                    let _ = writeln!(table, "unexpected stratum: {m}");
                }
                result["verdict"] = json!(if passed { "PASS" } else { "FAIL" });
                result["report"] = to_value(&report);
            } else {
                let _ = writeln!(table, "total {}", count.total);
                let _ = writeln!(table, "mu\tcount");
                for (mu, c) in &count.buckets {
                    let dim = mu.stratum_dim()?;
                    let _ = writeln!(table, "{mu}\t{c}");
                    rows.push(vec![mu.to_string(), dim.to_string(), c.to_string(), String::new(), String::new()]);
                }
            }
            Ok(Rendered {
                command: "fiber-count",
                params: json!({ "n": n, "gamma": g, "q": q, "verify": verify }),
                result,
                table,
                csv_header: vec!["mu", "stratum_dim", "count", "expected", "ok"],
                csv_rows: rows,
                passed,
            })
        }
    }
}
