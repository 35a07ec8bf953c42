//! Command-line front end: `verify`, `classify`, `catalog`, `normalize` and
//! `frobenius`.
//!
//! Exit codes: 0 success or passing verdict, 1 failing verdict, 2 usage or
//! input error, 3 internal error.

mod classify;
mod report;
mod spec_file;

pub use classify::{classify, fit_affine_eigenvalues, ClassifyReport, EigenvalueValues};
pub use report::ReportFile;
pub use spec_file::{LinearTerm, MetricFile, OperatorSpecFile};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogEntry};
use crate::error::Error;
use crate::exact::{Matrix, Rational};
use crate::frobenius::{build_cp_frobenius, check_frobenius_axioms, intersection_form, FrobeniusReport};
use crate::pencil::{
    affinor, jordan_g0, lie_flow_normalize, lie_flow_normalize_constant_eig, mu, segre_type, JordanFamilyCoeffs,
    NormalForm,
};
use crate::tensor::{verify_operator, LinearMetric, MetricSerial, Mode, OperatorSpec, VerifyOptions, DEFAULT_SEED};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable holding the default seed for sampled mode.
pub const SEED_ENV: &str = "HYDROHAM_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } => EXIT_USAGE,
            CliError::Write { .. } => EXIT_INTERNAL,
            CliError::Lib(Error::DisagreementBug(_) | Error::DivisionByZero | Error::NonLinearSolutionSet(_)) => {
                EXIT_INTERNAL
            }
            CliError::Lib(_) => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hydroham", version, about = "Exact checks for Hamiltonian operators of hydrodynamic type")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check Hamiltonianity of an operator file.
    Verify(VerifyArgs),
    /// Segre type, eigenvalues and nearest catalog entries of a pencil.
    Classify(ClassifyArgs),
    /// List catalog entries or emit one as an operator file.
    Catalog(CatalogArgs),
    /// Normal form of a single-Jordan-block pencil.
    Normalize(NormalizeArgs),
    /// Axiom checks for the trivial Frobenius structure and its intersection form.
    Frobenius(FrobeniusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub output: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    /// Defaults to symbolic for n <= 5, sampled above.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, env = SEED_ENV)]
    pub seed: Option<u64>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Entry id or family name; a unique match is emitted as an operator file.
    #[arg(long)]
    pub id: Option<String>,
    /// Values for the free constants kappa1, kappa2, ... (default 2, 3, ...).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub kappa: Vec<Rational>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct NormalizeArgs {
    #[arg(long)]
    pub n: usize,
    /// Coefficients xi_0, ..., xi_{n-2} of mu(n;0), ..., mu(n;n-2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub xi: Vec<Rational>,
    /// Leading index for the constant-eigenvalue case.
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Eigenvalue at `u = 0`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub lambda: Rational,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FrobeniusArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Rendered command output with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

/// Parse `args` (program name first), run, and print. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let out = match &cli.command {
        Command::Verify(a) => a.output.out.clone(),
        Command::Classify(a) => a.output.out.clone(),
        Command::Catalog(a) => a.output.out.clone(),
        Command::Normalize(a) => a.output.out.clone(),
        Command::Frobenius(a) => a.output.out.clone(),
    };
    let result = execute(&cli).and_then(|o| emit(&o.body, out.as_deref()).map(|()| o.code));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(body: &str, out: Option<&Path>) -> Result<(), CliError> {
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match out {
        Some(p) => std::fs::write(p, body).map_err(|source| CliError::Write { path: p.to_path_buf(), source }),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(body.as_bytes()).map_err(|source| CliError::Write { path: "<stdout>".into(), source })
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Catalog(a) => cmd_catalog(a),
        Command::Normalize(a) => cmd_normalize(a),
        Command::Frobenius(a) => cmd_frobenius(a),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

pub fn load_spec(path: &Path) -> Result<OperatorSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    Ok(OperatorSpecFile::from_json(&text)?.to_spec()?)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.input)?;
    let seed = a.seed.unwrap_or(DEFAULT_SEED);
    let opts = match a.mode {
        None => VerifyOptions::for_size(spec.n(), seed),
        Some(ModeArg::Symbolic) => VerifyOptions { mode: Mode::Symbolic, seed },
        Some(ModeArg::Sampled) => VerifyOptions::sampled(seed),
    };
    let start = Instant::now();
    let rep = verify_operator(&spec, opts)?;
    let elapsed = start.elapsed();
    let mut notes = Vec::new();
    let segre = if spec.d() >= 2 {
        match affinor(spec.metric(0), spec.metric(1)).and_then(|l| segre_type(&l, None)) {
            Ok(s) => Some(s),
            Err(e) => {
                notes.push(format!("no Segre data: {e}"));
                None
            }
        }
    } else {
        None
    };
    let mut file = ReportFile::new(spec.n(), spec.d(), seed, rep, segre);
    file.notes.extend(notes);
    if a.timing {
        file.timing_ms = Some(elapsed.as_millis() as u64);
    }
    let body = match a.output.output {
        Format::Json => file.to_json(),
        Format::Text => file.to_text(),
    };
    Ok(Outcome { body, code: if file.verdict { EXIT_PASS } else { EXIT_FAIL } })
}

pub fn cmd_classify(a: &ClassifyArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.input)?;
    let entries = catalog::catalog()?;
    let rep = classify(&spec, &entries)?;
    let body = match a.output.output {
        Format::Json => to_json(&rep),
        Format::Text => classify_text(&rep),
    };
    Ok(Outcome { body, code: EXIT_PASS })
}

fn classify_text(r: &ClassifyReport) -> String {
    let mut out = format!("n = {}  d = {}\nsegre: {}{}\n", r.n, r.d, r.symbol, if r.segre.consistent { "" } else { " (inconsistent)" });
    if let Some(polys) = &r.eigenvalue_polynomials {
        for p in polys {
            out.push_str(&format!("eigenvalue: {p}\n"));
        }
    }
    if let Some(values) = &r.eigenvalue_values {
        for v in values {
            let pt: Vec<String> = v.point.iter().map(|x| x.to_string()).collect();
            let ev: Vec<String> = v.eigenvalues.iter().map(|e| format!("{} {:?}", e.value, e.blocks)).collect();
            out.push_str(&format!("at ({}): {}\n", pt.join(", "), ev.join("; ")));
        }
    }
    if r.reducible_hint {
        out.push_str("hint: several eigenvalue groups, the pair is reducible\n");
    }
    match &r.best_match {
        Some(m) => out.push_str(&format!("match: {m}\n")),
        None => out.push_str("match: none\n"),
    }
    if r.matches.len() > 1 {
        out.push_str(&format!("also: {}\n", r.matches[1..].join(", ")));
    }
    out
}

/// The entry's operator with its formal constants replaced by `kappa`,
/// padded with 2, 3, ...
pub fn specialize_entry(e: &CatalogEntry, kappa: &[Rational]) -> crate::Result<(OperatorSpec, Vec<Rational>)> {
    let p = e.params.len();
    let values: Vec<Rational> =
        (0..p).map(|a| kappa.get(a).cloned().unwrap_or_else(|| Rational::from(a as i64 + 2))).collect();
    Ok((e.spec.specialize(&values)?, values))
}

pub fn cmd_catalog(a: &CatalogArgs) -> Result<Outcome, CliError> {
    let entries = catalog::catalog()?;
    let filtered: Vec<&CatalogEntry> = entries
        .iter()
        .filter(|e| a.n.map_or(true, |n| e.n() == n) && a.d.map_or(true, |d| e.d() == d))
        .collect();
    let Some(id) = &a.id else {
        let list: Vec<CatalogEntry> = filtered.into_iter().cloned().collect();
        let body = match a.output.output {
            Format::Json => to_json(&catalog::manifest(&list)),
            Format::Text => list
                .iter()
                .map(|e| {
                    format!("{}\tn={}\td={}\t{}\t{}", e.id, e.n(), e.d(), e.segre.as_deref().unwrap_or("-"), e.description)
                })
                .collect::<Vec<_>>()
                .join("\n"),
        };
        return Ok(Outcome { body, code: EXIT_PASS });
    };
    let hits: Vec<&&CatalogEntry> = filtered.iter().filter(|e| &e.id == id || &e.family == id).collect();
    match hits.as_slice() {
        [] => {
            let ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
            Err(CliError::Usage(format!("no catalog entry {id:?}; available ids: {}", ids.join(", "))))
        }
        [e] => {
            let (spec, values) = specialize_entry(e, &a.kappa)?;
            let mut description = format!("{}: {}", e.id, e.description);
            for (name, v) in e.params.iter().zip(&values) {
                description.push_str(&format!("; {name} = {v}"));
            }
            let file = OperatorSpecFile::from_spec(&spec, Some(description))?;
            Ok(Outcome { body: file.to_json(), code: EXIT_PASS })
        }
        many => {
            let ids: Vec<&str> = many.iter().map(|e| e.id.as_str()).collect();
            Err(CliError::Usage(format!("{id:?} matches several entries, narrow with --n/--d: {}", ids.join(", "))))
        }
    }
}

/// `NormalForm` plus its rendering.
#[derive(Debug, Serialize)]
pub struct NormalizeReport {
    pub normal_form: String,
    /// `zero`, `g0(lambda)` or `other`; see `constant` for the matrix.
    pub constant_part: String,
    #[serde(flatten)]
    pub result: NormalForm,
}

/// `mu(n;0) + 5/3*mu(n;2)`-style rendering of the coefficients.
pub fn render_normal_form(nf: &NormalForm) -> String {
    let terms: Vec<String> = nf
        .support()
        .into_iter()
        .map(|m| {
            let c = &nf.coeffs[m];
            if c.is_one() {
                format!("mu({};{m})", nf.n)
            } else {
                format!("{c}*mu({};{m})", nf.n)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn cmd_normalize(a: &NormalizeArgs) -> Result<Outcome, CliError> {
    let n = a.n;
    if n < 2 {
        return Err(CliError::Usage(format!("n must be at least 2, got {n}")));
    }
    let coeffs = JordanFamilyCoeffs::new(n, a.xi.clone(), a.lambda.clone())?;
    let nf = match a.alpha {
        None if a.xi[0].is_zero() => {
            return Err(CliError::Usage(
                "xi_0 = 0 is the constant-eigenvalue case: pass --alpha with the leading index".into(),
            ))
        }
        None => lie_flow_normalize(&coeffs)?,
        Some(alpha) => {
            let lead = a.xi.iter().position(|x| !x.is_zero());
            if lead != Some(alpha) {
                return Err(CliError::Usage(format!("--alpha {alpha} but the first nonzero xi has index {lead:?}")));
            }
            lie_flow_normalize_constant_eig(&coeffs)?
        }
    };
    let constant_part = if nf.constant.iter().all(Rational::is_zero) {
        "zero"
    } else if nf.constant == jordan_g0(n, &a.lambda) {
        "g0(lambda)"
    } else {
        "other"
    };
    let rep = NormalizeReport { normal_form: render_normal_form(&nf), constant_part: constant_part.into(), result: nf };
    let body = match a.output.output {
        Format::Json => to_json(&rep),
        Format::Text => normalize_text(&rep),
    };
    Ok(Outcome { body, code: EXIT_PASS })
}

fn render_vec(v: &[Rational]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn render_rows(m: &Matrix<Rational>) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| render_vec(r)).collect();
    format!("[{}]", rows.join(", "))
}

fn normalize_text(r: &NormalizeReport) -> String {
    let nf = &r.result;
    let mut out = format!("normal form: {}\nconstant part: {}", r.normal_form, r.constant_part);
    if r.constant_part == "other" {
        out.push_str(&format!(" {}", render_rows(&nf.constant)));
    }
    out.push_str(&format!("\ntranscript:\n  shift u -> u + {}\n", render_vec(&nf.initial_shift)));
    if let Some(m) = &nf.set_aside {
        out.push_str(&format!("  set aside constant part {}\n", render_rows(m)));
    }
    for s in &nf.steps {
        match &s.t {
            Some(t) => out.push_str(&format!("  flow X_({}): weight {}, t = {t}\n", s.k, s.weight)),
            None => out.push_str(&format!("  flow X_({}): weight {}, skipped\n", s.k, s.weight)),
        }
    }
    out.push_str(&format!("  shift u -> u + {}\n", render_vec(&nf.final_shift)));
    out
}

#[derive(Debug, Serialize)]
pub struct FrobeniusOutput {
    pub n: usize,
    pub passed: bool,
    pub axioms: FrobeniusReport,
    pub intersection_form: MetricSerial,
    /// Intersection form equals `mu(n;0)` entrywise.
    pub intersection_is_mu: bool,
    /// The pair (antidiagonal metric, intersection form) is Hamiltonian.
    pub pencil_hamiltonian: bool,
}

pub fn cmd_frobenius(a: &FrobeniusArgs) -> Result<Outcome, CliError> {
    let n = a.n;
    if n < 2 {
        return Err(CliError::Usage(format!("frobenius needs n >= 2, got {n}")));
    }
    let f = build_cp_frobenius(n)?;
    let axioms = check_frobenius_axioms(&f);
    let form = intersection_form(&f)?;
    let intersection_is_mu = form.matrix() == &mu(n, 0);
    let spec = OperatorSpec::new(vec![LinearMetric::antidiagonal(n, n), form.clone()])?;
    let pencil_hamiltonian = verify_operator(&spec, VerifyOptions::symbolic())?.verdict;
    let out = FrobeniusOutput {
        n,
        passed: axioms.passed() && intersection_is_mu && pencil_hamiltonian,
        axioms,
        intersection_form: form.to_serial(),
        intersection_is_mu,
        pencil_hamiltonian,
    };
    let body = match a.output.output {
        Format::Json => to_json(&out),
        Format::Text => frobenius_text(&out),
    };
    Ok(Outcome { body, code: if out.passed { EXIT_PASS } else { EXIT_FAIL } })
}

fn frobenius_text(o: &FrobeniusOutput) -> String {
    let mut out = format!("n = {}\n", o.n);
    for c in &o.axioms.checks {
        out.push_str(&format!("  [{}] {}\n", if c.passed { "pass" } else { "FAIL" }, c.name));
        if let Some(w) = &c.witness {
            out.push_str(&format!("      witness: {w}\n"));
        }
    }
    let show = |x: &Option<Rational>| x.as_ref().map_or("-".to_string(), Rational::to_string);
    let ef = &o.axioms.euler_factors;
    out.push_str(&format!(
        "Lie_E factors: unity {}, product {}, metric {}\n",
        show(&ef.unity),
        show(&ef.product),
        show(&ef.metric)
    ));
    out.push_str(&format!("intersection form = mu({};0): {}\n", o.n, o.intersection_is_mu));
    out.push_str(&format!("pencil Hamiltonian: {}\n", o.pencil_hamiltonian));
    out.push_str(&format!("verdict: {}\n", if o.passed { "PASS" } else { "FAIL" }));
    out
}
