//! `qrun`: exact counting tables, identity-verification suites, and
//! asymptotic convergence studies for run-constrained partition families,
//! emitted as deterministic JSON or CSV.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 budget exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use qrun_core::asymptotics::{
    hk_asymptote, hk_numeric, ln_bigint, p2_asymptote, pbar_asymptote, pk_log_asymptote,
};
use qrun_core::enumeration::{
    conjugate, count_no_k_sequence, enumerate_overpartitions, is_lower_k_run, is_upper_k_run,
    lower_to_upper, upper_to_lower, Overpartition,
};
use qrun_core::qgen::{
    chi_series, check_g2_chi, check_gbar1_fine, check_gbar1_phi, check_q_difference,
    compare_series, fine_bracket_series, gbar_bivariate, gbar_series, gk_series, hk_series,
    lambda_coeffs, lbar_bivariate, phi_series, VerificationReport,
};
use qrun_core::series::{euler_inverse, euler_series};
use qrun_core::{configure_threads, AsymError, IntSeries};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qrun",
    version,
    about = "Exact q-series tables, identity checks, and asymptotics for run-constrained partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Thread count for the parallel kernels (overrides QRUN_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, ValueEnum)]
enum CountFamily {
    /// k-run overpartition counts.
    Pbar,
    /// Counts of partitions without k consecutive parts.
    Pk,
}

#[derive(Copy, Clone, ValueEnum)]
enum SeriesFamily {
    Gbar,
    Gk,
    Hk,
    Phi,
    Chi,
    Fine,
    Euler,
    EulerInv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bijection,
    Qdiff,
    Lambda,
    Fine,
    Phi,
    Chi,
    Gk,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AsymKind {
    Pbar,
    P2,
    Pklog,
    Hk,
}

impl AsymKind {
    fn name(self) -> &'static str {
        match self {
            AsymKind::Pbar => "pbar",
            AsymKind::P2 => "p2",
            AsymKind::Pklog => "pklog",
            AsymKind::Hk => "hk",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact counts of one family as (n, count) rows.
    Count {
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Largest n to tabulate.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CountFamily::Pbar)]
        family: CountFamily,
        /// Largest allowed series order.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Coefficients of a named q-series.
    Series {
        #[arg(long, value_enum, default_value_t = SeriesFamily::Gbar)]
        family: SeriesFamily,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Truncation order (inclusive).
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Part-count-refined coefficients of the overpartition series.
    Bivariate {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long = "x-order")]
        x_order: usize,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Identity-verification suites; exit code 1 on any hard failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// q-truncation order for series identities.
        #[arg(long, default_value_t = 120)]
        order: usize,
        /// x-truncation order for bivariate identities.
        #[arg(long = "x-order", default_value_t = 16)]
        x_order: usize,
        /// Exhaustive-enumeration size bound for the bijection suite.
        #[arg(long, default_value_t = 12)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Append a synthetic failing report (harness self-test).
        #[arg(long, hide = true, default_value_t = false)]
        inject_fault: bool,
    },
    /// Exact-vs-asymptote comparison rows.
    Asym {
        #[arg(long, value_enum)]
        kind: AsymKind,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Evaluation points n (comma-separated) for pbar/p2/pklog.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Evaluation points eps (comma-separated) for hk.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Convergence sweep: halved eps or decade-spaced n.
    Sweep {
        #[arg(long, value_enum)]
        kind: AsymKind,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0.2)]
        eps_start: f64,
        #[arg(long, default_value_t = 3)]
        halvings: u32,
        #[arg(long, default_value_t = 100)]
        n_start: usize,
        #[arg(long, default_value_t = 2)]
        decades: u32,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(#[from] AsymError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget(_) => 3,
            CliError::Numeric(
                AsymError::ConvergenceBudgetExceeded { .. }
                | AsymError::QuadratureNotConverged { .. },
            ) => 3,
            _ => 2,
        }
    }
}

#[derive(Serialize)]
struct CountRow {
    n: usize,
    count: String,
}

#[derive(Serialize)]
struct SeriesRow {
    n: usize,
    coeff: String,
}

#[derive(Serialize)]
struct BivariateRow {
    x_degree: usize,
    n: usize,
    coeff: String,
}

#[derive(Serialize)]
struct AsymRow {
    kind: &'static str,
    k: u32,
    point: f64,
    exact_log: f64,
    asym_log: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    params: Value,
    rows: &'a [T],
}

struct Output {
    format: Format,
    sink: Box<dyn Write>,
}

impl Output {
    fn new(cli_format: Format, out: &Option<PathBuf>) -> Result<Self, CliError> {
        let sink: Box<dyn Write> = match out {
            Some(path) => Box::new(std::fs::File::create(path)?),
            None => Box::new(std::io::stdout()),
        };
        Ok(Output {
            format: cli_format,
            sink,
        })
    }

    fn emit<T: Serialize>(
        &mut self,
        command: &str,
        params: Value,
        rows: &[T],
        headers: &[&str],
        to_record: impl Fn(&T) -> Vec<String>,
    ) -> Result<(), CliError> {
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(
                    &mut self.sink,
                    &Envelope {
                        command,
                        params,
                        rows,
                    },
                )?;
                writeln!(self.sink)?;
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(&mut self.sink);
                w.write_record(headers)?;
                for row in rows {
                    w.write_record(to_record(row))?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn verify_record(r: &VerificationReport) -> Vec<String> {
    vec![
        r.identity_name.clone(),
        r.trunc_order.to_string(),
        if r.passed() { "pass" } else { "fail" }.to_string(),
        opt_str(&r.first_mismatch),
        opt_str(&r.mismatch_x_degree),
        r.lhs_coeff.clone().unwrap_or_default(),
        r.rhs_coeff.clone().unwrap_or_default(),
        r.informational.to_string(),
    ]
}

const VERIFY_HEADERS: [&str; 8] = [
    "identity_name",
    "trunc_order",
    "status",
    "first_mismatch",
    "mismatch_x_degree",
    "lhs_coeff",
    "rhs_coeff",
    "informational",
];

const ASYM_HEADERS: [&str; 6] = ["kind", "k", "point", "exact_log", "asym_log", "ratio"];

fn asym_record(r: &AsymRow) -> Vec<String> {
    vec![
        r.kind.to_string(),
        r.k.to_string(),
        r.point.to_string(),
        r.exact_log.to_string(),
        r.asym_log.to_string(),
        r.ratio.to_string(),
    ]
}

/// Equinumerosity plus full bijectivity of the overline shift at every size
/// up to `n_max`, reported in the shared comparison format.
fn bijection_report(k: u32, n_max: u32) -> VerificationReport {
    let name = format!("bijection(k={k})");
    for n in 0..=n_max {
        let all = enumerate_overpartitions(n);
        let lower: Vec<&Overpartition> =
            all.iter().filter(|op| is_lower_k_run(op, k)).collect();
        let upper: Vec<&Overpartition> =
            all.iter().filter(|op| is_upper_k_run(op, k)).collect();
        if lower.len() != upper.len() {
            return VerificationReport::fail(
                &name,
                n_max as usize,
                n as usize,
                None,
                lower.len().to_string(),
                upper.len().to_string(),
            );
        }
        let mut images = BTreeSet::new();
        for op in &lower {
            let img = match lower_to_upper(op, k) {
                Ok(img) => img,
                Err(_) => {
                    return VerificationReport::fail(
                        &name,
                        n_max as usize,
                        n as usize,
                        None,
                        format!("unmappable: {op}"),
                        String::new(),
                    )
                }
            };
            let preserved = img.size() == op.size()
                && img.parts_count() == op.parts_count()
                && img.overline_count() == op.overline_count()
                && is_upper_k_run(&img, k)
                && upper_to_lower(&img, k).as_ref() == Ok(op);
            if !preserved {
                return VerificationReport::fail(
                    &name,
                    n_max as usize,
                    n as usize,
                    None,
                    format!("{op}"),
                    format!("{img}"),
                );
            }
            images.insert(img);
        }
        if images.len() != lower.len() {
            return VerificationReport::fail(
                &name,
                n_max as usize,
                n as usize,
                None,
                format!("distinct images {}", images.len()),
                format!("class size {}", lower.len()),
            );
        }
    }
    VerificationReport::pass(&name, n_max as usize)
}

/// Conjugation is an involution, and the marked-diagram worked example maps
/// as drawn.
fn conjugation_report(n_max: u32) -> VerificationReport {
    let name = "conjugation_involution";
    let lhs = Overpartition::from_entries(&[(6, 1, true), (4, 1, true), (1, 3, true)])
        .expect("valid overpartition");
    let rhs = Overpartition::from_entries(&[(5, 1, true), (2, 3, true), (1, 2, true)])
        .expect("valid overpartition");
    if conjugate(&lhs) != rhs {
        return VerificationReport::fail(
            name,
            n_max as usize,
            lhs.size() as usize,
            None,
            format!("{}", conjugate(&lhs)),
            format!("{rhs}"),
        );
    }
    for n in 0..=n_max {
        for op in enumerate_overpartitions(n) {
            if conjugate(&conjugate(&op)) != op {
                return VerificationReport::fail(
                    name,
                    n_max as usize,
                    n as usize,
                    None,
                    format!("{op}"),
                    format!("{}", conjugate(&conjugate(&op))),
                );
            }
        }
    }
    VerificationReport::pass(name, n_max as usize)
}

/// First-order recurrence output versus the x-columns of the double sum.
fn lambda_report(k: u32, m_max: usize, order: usize) -> VerificationReport {
    let name = format!("lambda(k={k})");
    let lam = lambda_coeffs(k, m_max, order);
    let l = lbar_bivariate(k, m_max, order);
    for (m, lam_m) in lam.iter().enumerate() {
        let mut rep = compare_series(&name, lam_m, &l.coefficient(m));
        if !rep.passed() {
            rep.mismatch_x_degree = Some(m);
            return rep;
        }
    }
    VerificationReport::pass(&name, order)
}

/// Series coefficients versus exhaustive no-k-sequence counts.
fn gk_report(k: u32, n_max: u32, order: usize) -> VerificationReport {
    let name = format!("gk_counts(k={k})");
    let bound = (n_max as usize).min(order);
    let series = gk_series(k, bound);
    for n in 0..=bound {
        let exact = count_no_k_sequence(n as u32, k).to_string();
        let got = series.coeff(n).to_string();
        if exact != got {
            return VerificationReport::fail(&name, bound, n, None, got, exact);
        }
    }
    VerificationReport::pass(&name, bound)
}

fn suite_reports(
    suite: Suite,
    order: usize,
    x_order: usize,
    n_enum: u32,
) -> Vec<VerificationReport> {
    let mut rows = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Bijection) {
        for k in 1..=3 {
            rows.push(bijection_report(k, n_enum));
        }
        rows.push(conjugation_report(n_enum));
    }
    if want(Suite::Qdiff) {
        for k in 1..=3 {
            rows.push(check_q_difference(k, x_order, order));
        }
    }
    if want(Suite::Lambda) {
        for k in 1..=3 {
            rows.push(lambda_report(k, x_order, order));
        }
    }
    if want(Suite::Fine) {
        rows.push(check_gbar1_fine(order));
    }
    if want(Suite::Chi) {
        rows.push(check_g2_chi(order));
    }
    if want(Suite::Gk) {
        for k in 2..=3 {
            rows.push(gk_report(k, n_enum.max(14), order));
        }
    }
    if want(Suite::Phi) {
        rows.push(check_gbar1_phi(order));
    }
    rows
}

fn named_series(family: SeriesFamily, k: u32, order: usize) -> IntSeries {
    match family {
        SeriesFamily::Gbar => gbar_series(k, order),
        SeriesFamily::Gk => gk_series(k, order),
        SeriesFamily::Hk => hk_series(k, order),
        SeriesFamily::Phi => phi_series(order),
        SeriesFamily::Chi => chi_series(order),
        SeriesFamily::Fine => fine_bracket_series(order),
        SeriesFamily::Euler => euler_series(order),
        SeriesFamily::EulerInv => euler_inverse(order),
    }
}

fn check_budget(what: &str, value: usize, budget: usize) -> Result<(), CliError> {
    if value > budget {
        return Err(CliError::Budget(format!(
            "{what} = {value} exceeds budget {budget} (raise --budget to allow it)"
        )));
    }
    Ok(())
}

fn asym_rows(
    kind: AsymKind,
    k: u32,
    n_points: &[usize],
    eps_points: &[f64],
    budget: usize,
) -> Result<Vec<AsymRow>, CliError> {
    let mut rows = Vec::new();
    match kind {
        AsymKind::Hk => {
            let eps_points = if eps_points.is_empty() {
                vec![0.1, 0.05, 0.02]
            } else {
                eps_points.to_vec()
            };
            for &eps in &eps_points {
                if eps <= 0.0 {
                    return Err(CliError::Usage(format!("eps = {eps} must be positive")));
                }
                let exact_log = hk_numeric(k, eps)?.ln();
                let asym_log = hk_asymptote(k, eps).log_value;
                rows.push(AsymRow {
                    kind: kind.name(),
                    k,
                    point: eps,
                    exact_log,
                    asym_log,
                    ratio: (exact_log - asym_log).exp(),
                });
            }
        }
        AsymKind::Pbar | AsymKind::P2 | AsymKind::Pklog => {
            let k = if matches!(kind, AsymKind::P2) { 2 } else { k };
            if matches!(kind, AsymKind::Pklog) && k < 2 {
                return Err(CliError::Usage(
                    "--kind pklog requires --k >= 2".to_string(),
                ));
            }
            let n_points = if n_points.is_empty() {
                vec![100, 1000, 10_000]
            } else {
                n_points.to_vec()
            };
            let order = *n_points.iter().max().expect("nonempty points");
            check_budget("n", order, budget)?;
            let series = match kind {
                AsymKind::Pbar => gbar_series(k, order),
                _ => gk_series(k, order),
            };
            for &n in &n_points {
                if n == 0 {
                    return Err(CliError::Usage("n must be >= 1".to_string()));
                }
                let exact_log = ln_bigint(&series.coeff(n));
                let (asym_log, ratio) = match kind {
                    AsymKind::Pbar => {
                        let a = pbar_asymptote(k, n as u64).log_value;
                        (a, (exact_log - a).exp())
                    }
                    AsymKind::P2 => {
                        let a = p2_asymptote(n as u64).log_value;
                        (a, (exact_log - a).exp())
                    }
                    // the k-sequence estimate is about the logarithm itself,
                    // so the ratio column compares logs
                    AsymKind::Pklog => {
                        let a = pk_log_asymptote(k, n as u64);
                        (a, exact_log / a)
                    }
                    AsymKind::Hk => unreachable!(),
                };
                rows.push(AsymRow {
                    kind: kind.name(),
                    k,
                    point: n as f64,
                    exact_log,
                    asym_log,
                    ratio,
                });
            }
        }
    }
    Ok(rows)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let threads = cli.threads.or_else(|| {
        std::env::var("QRUN_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    configure_threads(threads);
    let mut output = Output::new(cli.format, &cli.out)?;

    match cli.command {
        Cmd::Count {
            k,
            n,
            family,
            budget,
        } => {
            check_budget("n", n, budget)?;
            let (series, family_name) = match family {
                CountFamily::Pbar => (gbar_series(k, n), "pbar"),
                CountFamily::Pk => (gk_series(k, n), "pk"),
            };
            let rows: Vec<CountRow> = (0..=n)
                .map(|i| CountRow {
                    n: i,
                    count: series.coeff(i).to_string(),
                })
                .collect();
            output.emit(
                "count",
                json!({"k": k, "n": n, "family": family_name, "budget": budget}),
                &rows,
                &["n", "count"],
                |r| vec![r.n.to_string(), r.count.clone()],
            )?;
            Ok(0)
        }
        Cmd::Series {
            family,
            k,
            order,
            budget,
        } => {
            check_budget("order", order, budget)?;
            let family_name = match family {
                SeriesFamily::Gbar => "gbar",
                SeriesFamily::Gk => "gk",
                SeriesFamily::Hk => "hk",
                SeriesFamily::Phi => "phi",
                SeriesFamily::Chi => "chi",
                SeriesFamily::Fine => "fine",
                SeriesFamily::Euler => "euler",
                SeriesFamily::EulerInv => "euler-inv",
            };
            let series = named_series(family, k, order);
            let rows: Vec<SeriesRow> = (0..=order)
                .map(|i| SeriesRow {
                    n: i,
                    coeff: series.coeff(i).to_string(),
                })
                .collect();
            output.emit(
                "series",
                json!({"family": family_name, "k": k, "order": order, "budget": budget}),
                &rows,
                &["n", "coeff"],
                |r| vec![r.n.to_string(), r.coeff.clone()],
            )?;
            Ok(0)
        }
        Cmd::Bivariate {
            k,
            x_order,
            order,
            budget,
        } => {
            check_budget("order", order, budget)?;
            check_budget("x-order", x_order, budget)?;
            let b = gbar_bivariate(k, x_order, order);
            let mut rows = Vec::new();
            for m in 0..=x_order {
                let col = b.coefficient(m);
                for n in 0..=order {
                    rows.push(BivariateRow {
                        x_degree: m,
                        n,
                        coeff: col.coeff(n).to_string(),
                    });
                }
            }
            output.emit(
                "bivariate",
                json!({"k": k, "x_order": x_order, "order": order, "budget": budget}),
                &rows,
                &["x_degree", "n", "coeff"],
                |r| vec![r.x_degree.to_string(), r.n.to_string(), r.coeff.clone()],
            )?;
            Ok(0)
        }
        Cmd::Verify {
            suite,
            order,
            x_order,
            n,
            budget,
            inject_fault,
        } => {
            check_budget("order", order, budget)?;
            let suite_name = match suite {
                Suite::Bijection => "bijection",
                Suite::Qdiff => "qdiff",
                Suite::Lambda => "lambda",
                Suite::Fine => "fine",
                Suite::Phi => "phi",
                Suite::Chi => "chi",
                Suite::Gk => "gk",
                Suite::All => "all",
            };
            let mut rows = suite_reports(suite, order, x_order, n);
            if inject_fault {
                rows.push(VerificationReport::fail(
                    "injected_fault",
                    0,
                    0,
                    None,
                    "0".to_string(),
                    "1".to_string(),
                ));
            }
            let failed = rows.iter().any(|r| !r.passed() && !r.informational);
            output.emit(
                "verify",
                json!({
                    "suite": suite_name, "order": order, "x_order": x_order,
                    "n": n, "budget": budget, "inject_fault": inject_fault
                }),
                &rows,
                &VERIFY_HEADERS,
                verify_record,
            )?;
            Ok(if failed { 1 } else { 0 })
        }
        Cmd::Asym {
            kind,
            k,
            n,
            eps,
            budget,
        } => {
            let rows = asym_rows(kind, k, &n, &eps, budget)?;
            output.emit(
                "asym",
                json!({
                    "kind": kind.name(), "k": k, "n": n, "eps": eps, "budget": budget
                }),
                &rows,
                &ASYM_HEADERS,
                asym_record,
            )?;
            Ok(0)
        }
        Cmd::Sweep {
            kind,
            k,
            eps_start,
            halvings,
            n_start,
            decades,
            budget,
        } => {
            if eps_start <= 0.0 {
                return Err(CliError::Usage("eps-start must be positive".to_string()));
            }
            let (n_points, eps_points) = match kind {
                AsymKind::Hk => (
                    Vec::new(),
                    (0..=halvings)
                        .map(|i| eps_start / f64::powi(2.0, i as i32))
                        .collect(),
                ),
                _ => (
                    (0..=decades)
                        .map(|i| n_start.saturating_mul(10usize.pow(i)))
                        .collect(),
                    Vec::new(),
                ),
            };
            let rows = asym_rows(kind, k, &n_points, &eps_points, budget)?;
            output.emit(
                "sweep",
                json!({
                    "kind": kind.name(), "k": k, "eps_start": eps_start,
                    "halvings": halvings, "n_start": n_start, "decades": decades,
                    "budget": budget
                }),
                &rows,
                &ASYM_HEADERS,
                asym_record,
            )?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
