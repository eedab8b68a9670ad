//! The `catalan` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use catalan_core::combinatorics::{catalan_polynomial, row_polynomial_p, row_polynomial_q, triangle_row, TriangleKind};
use catalan_core::numeric::{big_to_f64_scaled, fmt_g17};
use catalan_core::oeis;
use catalan_core::operator_calculus::{
    catalan_operator, catalan_power, spectral_mapping_check, ComplexMatrix, DEFAULT_TOL,
};
use catalan_core::report::Report;
use catalan_core::seq_algebra::{
    catalan_inverse_power, catalan_seq, inverse_norm_bound, seq_power, spectrum_boundary, weighted_norm,
};
use catalan_core::verify::{self, Suite};
use catalan_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::value::RawValue;

/// Exit status for a failed verification.
pub const EXIT_FAILED: u8 = 1;
/// Exit status for invalid arguments.
pub const EXIT_USAGE: u8 = 2;
/// Exit status for I/O errors and operators that could not be certified.
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "catalan", version, about = "Catalan triangles, convolution powers and the Catalan operator C(T)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print rows of a Catalan triangle.
    Triangle {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Last row to print.
        #[arg(long)]
        rows: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Convolution powers of the Catalan sequence and their inverses.
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Coefficient lists of the row polynomials or the Catalan polynomials.
    Polys {
        #[arg(long, value_enum)]
        family: Family,
        /// Highest index.
        #[arg(long)]
        n: usize,
    },
    /// Run verification suites; exits with 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Also write the records as JSON to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate the Catalan operator on a matrix read from JSON.
    #[command(subcommand)]
    Op(OpCommand),
    /// Sample the boundary curve of the spectrum of c^j as CSV.
    Spectrum {
        #[arg(long, allow_negative_numbers = true)]
        power: i64,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check locally computed terms against OEIS b-files.
    #[command(subcommand)]
    Oeis(OeisCommand),
}

#[derive(Debug, Subcommand)]
pub enum SeqCommand {
    /// Entries of c^k, the k-th convolution power of the Catalan sequence.
    Pow {
        #[arg(long)]
        k: u64,
        /// Number of entries.
        #[arg(long)]
        len: usize,
        /// Print exact integers instead of doubles.
        #[arg(long)]
        exact: bool,
    },
    /// Entries of the convolution inverse of c^k and its weighted norm.
    Inv {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        len: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum OpCommand {
    /// C(T)^J as a JSON matrix.
    Eval {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, allow_negative_numbers = true)]
        power: i64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Residual of T C(T)^2 - C(T) + I.
    Residual {
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Eigenvalues of C(T)^J against C(eigenvalues of T)^J.
    SpectrumMap {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, allow_negative_numbers = true)]
        power: i64,
    },
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// JSON file `{"d": n, "re": [[..]], "im": [[..]]}`.
    #[arg(long)]
    pub matrix: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum OeisCommand {
    /// Compare computed terms with the b-file of one sequence.
    Check {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Allow downloading a missing b-file from oeis.org.
        #[arg(long)]
        online: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "A", alias = "a")]
    A,
}

impl From<Kind> for TriangleKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::B => TriangleKind::B,
            Kind::A => TriangleKind::A,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Q", alias = "q")]
    Q,
    Catalan,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Abel,
    Asymptotics,
    Inverse,
    Operator,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Abel => Suite::Abel,
            SuiteArg::Asymptotics => Suite::Asymptotics,
            SuiteArg::Inverse => Suite::Inverse,
            SuiteArg::Operator => Suite::Operator,
            SuiteArg::All => Suite::All,
        }
    }
}

/// A failure carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
    fn failed(message: impl Into<String>) -> Self {
        Self { code: EXIT_FAILED, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IndexOutOfRange(_)
            | Error::Domain(_)
            | Error::InvalidPower(_)
            | Error::Precondition(_)
            | Error::Parse(_) => EXIT_USAGE,
            Error::NoAlignment(_) => EXIT_FAILED,
            _ => EXIT_IO,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self { code: EXIT_IO, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self { code: EXIT_IO, message: e.to_string() }
    }
}

type CliResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("catalan: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Runs one command, writing data output to `out`.
pub fn run(cmd: &Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Triangle { kind, rows, format } => triangle(TriangleKind::from(*kind), *rows, *format, out),
        Command::Seq(SeqCommand::Pow { k, len, exact }) => seq_pow(*k, *len, *exact, out),
        Command::Seq(SeqCommand::Inv { k, len }) => seq_inv(*k, *len, out),
        Command::Polys { family, n } => polys(*family, *n, out),
        Command::Verify { suite, report } => verify_cmd((*suite).into(), report.as_deref(), out),
        Command::Op(OpCommand::Eval { matrix, power, tol }) => {
            if !(*tol > 0.0) {
                return Err(Failure::usage("--tol must be positive"));
            }
            let t = read_matrix(&matrix.matrix)?;
            let v = catalan_power(&t, *power, *tol)?;
            writeln!(out, "{}", v.to_json()?)?;
            Ok(())
        }
        Command::Op(OpCommand::Residual { matrix }) => op_residual(&read_matrix(&matrix.matrix)?, out),
        Command::Op(OpCommand::SpectrumMap { matrix, power }) => {
            let t = read_matrix(&matrix.matrix)?;
            let rep = spectral_mapping_check(&t, *power)?;
            let pass = rep.max_distance < SPECTRUM_MAP_TOL;
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                report: &'a catalan_core::operator_calculus::SpectralMappingReport,
                bound: f64,
                pass: bool,
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&Out { report: &rep, bound: SPECTRUM_MAP_TOL, pass })?)?;
            if pass {
                Ok(())
            } else {
                Err(Failure::failed(format!("eigenvalue distance {:e} exceeds {SPECTRUM_MAP_TOL:e}", rep.max_distance)))
            }
        }
        Command::Spectrum { power, samples, out: path } => {
            if *power == 0 {
                return Err(Failure::usage("--power must be nonzero"));
            }
            if *samples < 2 {
                return Err(Failure::usage("--samples must be at least 2"));
            }
            let curve = spectrum_boundary(*power, *samples)?;
            match path {
                Some(p) => write_atomically(p, curve.to_csv().as_bytes())?,
                None => curve.write_csv(&mut *out)?,
            }
            Ok(())
        }
        Command::Oeis(OeisCommand::Check { id, count, online }) => oeis_check(id, *count, *online, out),
    }
}

const SPECTRUM_MAP_TOL: f64 = 1e-7;

fn read_matrix(path: &Path) -> Result<ComplexMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })?;
    ComplexMatrix::from_json(&text).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })
}

fn write_atomically(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn decimal_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn triangle(kind: TriangleKind, last: u64, format: Format, out: &mut dyn Write) -> CliResult {
    if last < kind.first_row() {
        return Err(Failure::usage(format!("--rows must be at least {}", kind.first_row())));
    }
    let rows = (kind.first_row()..=last).map(|n| Ok((n, triangle_row(kind, n)?))).collect::<Result<Vec<_>, Error>>()?;
    match format {
        Format::Table => {
            for (_, row) in &rows {
                writeln!(out, "{}", decimal_strings(row).join(" "))?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,k,value")?;
            for (n, row) in &rows {
                for (i, x) in row.iter().enumerate() {
                    writeln!(out, "{n},{},{x}", i + 1)?;
                }
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: u64,
                entries: Vec<String>,
            }
            #[derive(Serialize)]
            struct Table {
                kind: String,
                rows: Vec<Row>,
            }
            let t = Table {
                kind: kind.to_string(),
                rows: rows.iter().map(|(n, r)| Row { n: *n, entries: decimal_strings(r) }).collect(),
            };
            writeln!(out, "{}", serde_json::to_string(&t)?)?;
        }
    }
    Ok(())
}

fn check_len(len: usize) -> CliResult {
    if len == 0 {
        return Err(Failure::usage("--len must be at least 1"));
    }
    Ok(())
}

fn seq_pow(k: u64, len: usize, exact: bool, out: &mut dyn Write) -> CliResult {
    check_len(len)?;
    let p = seq_power(&catalan_seq(len - 1), k);
    for (n, x) in p.entries().iter().enumerate() {
        if exact {
            writeln!(out, "{n} {x}")?;
        } else {
            writeln!(out, "{n} {}", fmt_g17(big_to_f64_scaled(x, 0)))?;
        }
    }
    Ok(())
}

fn seq_inv(k: u64, len: usize, out: &mut dyn Write) -> CliResult {
    check_len(len)?;
    if k == 0 {
        return Err(Failure::usage("--k must be at least 1"));
    }
    let inv = catalan_inverse_power(k, len - 1)?;
    let norm = weighted_norm(&inv);
    let bound = inverse_norm_bound(k)?;
    #[derive(Serialize)]
    struct Out {
        k: u64,
        entries: Vec<String>,
        norm: Box<RawValue>,
        norm_exact: Option<String>,
        tail_bound: Option<Box<RawValue>>,
        norm_limit_bound: String,
    }
    let raw = |x: f64| RawValue::from_string(fmt_g17(x));
    let o = Out {
        k,
        entries: decimal_strings(inv.entries()),
        norm: raw(norm.value)?,
        norm_exact: norm.exact.map(|q| q.to_string()),
        tail_bound: norm.tail_bound.map(raw).transpose()?,
        norm_limit_bound: bound.to_string(),
    };
    writeln!(out, "{}", serde_json::to_string(&o)?)?;
    Ok(())
}

fn polys(family: Family, n: usize, out: &mut dyn Write) -> CliResult {
    for i in 0..=n {
        let p = match family {
            Family::P => row_polynomial_p(i as u64),
            Family::Q => row_polynomial_q(i as u64),
            Family::Catalan => catalan_polynomial(i),
        };
        writeln!(out, "{i}: {}", decimal_strings(p.coeffs()).join(" "))?;
    }
    Ok(())
}

fn print_report(report: &Report, out: &mut dyn Write) -> io::Result<()> {
    for c in &report.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} {} (value {}, bound {})", c.name, fmt_g17(c.value), fmt_g17(c.bound))?;
    }
    for s in &report.skipped {
        writeln!(out, "SKIP {s}")?;
    }
    let failed = report.failures().count();
    writeln!(out, "{} checks, {} failed, {} skipped", report.checks.len(), failed, report.skipped.len())
}

fn verify_cmd(suite: Suite, report_path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    let report = verify::run(suite);
    print_report(&report, out)?;
    if let Some(p) = report_path {
        #[derive(Serialize)]
        struct Out<'a> {
            suite: Suite,
            all_pass: bool,
            #[serde(flatten)]
            report: &'a Report,
        }
        let text = serde_json::to_string_pretty(&Out { suite, all_pass: report.all_pass(), report: &report })?;
        write_atomically(p, text.as_bytes())?;
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::failed(format!("{} of {} checks failed", report.failures().count(), report.checks.len())))
    }
}

fn op_residual(t: &ComplexMatrix, out: &mut dyn Write) -> CliResult {
    let op = catalan_operator(t, DEFAULT_TOL)?;
    let bound = 10.0 * t.dim() as f64 * DEFAULT_TOL;
    let pass = op.residual < bound;
    #[derive(Serialize)]
    struct Out {
        name: &'static str,
        value: f64,
        bound: f64,
        pass: bool,
        method: catalan_core::operator_calculus::EvalMethod,
        truncation: usize,
        tail_bound: Option<f64>,
        certificate: catalan_core::operator_calculus::PowerBoundCertificate,
    }
    let o = Out {
        name: "||T C(T)^2 - C(T) + I||",
        value: op.residual,
        bound,
        pass,
        method: op.method,
        truncation: op.truncation,
        tail_bound: op.tail_bound,
        certificate: op.certificate,
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&o)?)?;
    if pass {
        Ok(())
    } else {
        Err(Failure::failed(format!("residual {:e} exceeds {bound:e}", op.residual)))
    }
}

fn oeis_check(id: &str, count: usize, online: bool, out: &mut dyn Write) -> CliResult {
    if count == 0 {
        return Err(Failure::usage("--count must be at least 1"));
    }
    oeis::validate_id(id)?;
    let seq = oeis::load(id, count, !online)?;
    let (offset, computed) = oeis::computed_terms(id, count)?;
    let report = oeis::compare(&seq, &computed[..count], offset)?;
    #[derive(Serialize)]
    struct Out<'a> {
        source: oeis::Source,
        #[serde(flatten)]
        report: &'a oeis::CompareReport,
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&Out { source: seq.source, report: &report })?)?;
    if report.full_match {
        Ok(())
    } else {
        Err(Failure::failed(format!("{id}: mismatch after {} matching terms", report.matched)))
    }
}
