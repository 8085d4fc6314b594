//! Command-line front end: matrix files, entropy and inequality reports,
//! the Werner sweep to CSV and the randomized inequality harness.
//!
//! Exit codes: 0 ok, 1 invalid matrix, 2 parse error, 3 bad arguments,
//! 4 inequality violation.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::entropy::{quantum_renyi, quantum_tsallis, von_neumann, DeformationParam};
use crate::error::Error;
use crate::inequalities::{
    check_renyi_inequality, check_subadditivity, q_information_parts, uniform_grid,
    werner_q_information_curve, SweepResult, SweepRow, DEFAULT_TOL,
};
use crate::linalg::ComplexMatrix;
use crate::states::{
    check_density, random_density_from, validate_density, DensityMatrix, Dims, IndexLabeling,
};

pub const CSV_HEADER: &str = "p,q,I_T,S_joint,S_first,S_second";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    InvalidMatrix = 1,
    ParseError = 2,
    BadArguments = 3,
    Violation = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// A parse failure in a matrix file, positioned at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Parses one `a+bi` / `a-bi` literal. The imaginary part is mandatory.
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let body = token
        .strip_suffix('i')
        .ok_or_else(|| format!("complex literal `{token}` must end in `i`"))?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(|| format!("complex literal `{token}` has no imaginary part"))?;
    let (re_s, im_s) = body.split_at(split);
    let parse = |s: &str| -> Result<f64, String> {
        let v: f64 = s
            .parse()
            .map_err(|_| format!("`{s}` is not a decimal number in `{token}`"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("non-finite value in `{token}`"))
        }
    };
    // `parse` would accept `+-1`; keep a single sign on the imaginary part.
    if im_s.len() < 2 || matches!(im_s.as_bytes()[1], b'+' | b'-') {
        return Err(format!("malformed imaginary part in `{token}`"));
    }
    Ok(Complex64::new(parse(re_s)?, parse(im_s)?))
}

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, first) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "empty file; expected the dimension"))?;
    let dim_text = first.trim();
    let dim: usize =
        dim_text.parse().ok().filter(|&d| d > 0).ok_or_else(|| {
            parse_error(1, 1, format!("`{dim_text}` is not a positive dimension"))
        })?;

    let mut data = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_error(row + 2, 1, format!("expected {dim} rows, found {row}")))?;
        let mut count = 0;
        for (column, token) in tokens(line) {
            if count == dim {
                return Err(parse_error(
                    line_no,
                    column,
                    format!("more than {dim} entries"),
                ));
            }
            let z = parse_complex(token).map_err(|m| parse_error(line_no, column, m))?;
            data.push(z);
            count += 1;
        }
        if count != dim {
            return Err(parse_error(
                line_no,
                line.chars().count() + 1,
                format!("expected {dim} entries, found {count}"),
            ));
        }
    }
    if let Some((line_no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(parse_error(
            line_no,
            1,
            "unexpected content after the last row",
        ));
    }
    ComplexMatrix::new(dim, data).map_err(|e| parse_error(1, 1, e.to_string()))
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((c, b))) => {
                out.push((c, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &line[b..]));
    }
    out.into_iter()
}

pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut s = format!("{}\n", m.dim());
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|j| format_complex(m[(i, j)])).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn read_matrix_file(path: &Path) -> Result<ComplexMatrix, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_error(0, 0, format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sweep_to_csv(sweep: &SweepResult) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in &sweep.rows {
        let cells = [r.p, r.q, r.i_q, r.s_joint, r.s_first, r.s_second].map(format_value);
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => return Err(parse_error(1, 1, format!("header must be `{CSV_HEADER}`"))),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(n, l)| {
            let cells = l
                .split(',')
                .enumerate()
                .map(|(k, c)| {
                    c.parse::<f64>()
                        .map_err(|_| parse_error(n, k + 1, format!("`{c}` is not a number")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            match cells[..] {
                [p, q, i_q, s_joint, s_first, s_second] => Ok(SweepRow {
                    p,
                    q,
                    i_q,
                    s_joint,
                    s_first,
                    s_second,
                }),
                _ => Err(parse_error(
                    n,
                    1,
                    format!("expected 6 fields, found {}", cells.len()),
                )),
            }
        })
        .collect()
}

fn gnuplot_script(csv: &Path, sweep: &SweepResult) -> String {
    let mut qs: Vec<f64> = sweep.rows.iter().map(|r| r.q).collect();
    qs.dedup();
    let plots: Vec<String> = qs
        .iter()
        .map(|q| {
            format!(
                "'{}' using ($2=={q:.16e} ? $1 : 1/0):3 with lines title 'q = {q}'",
                csv.display()
            )
        })
        .collect();
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 'p'\n\
         set ylabel 'I_q^T'\n\
         set arrow from {b},graph 0 to {b},graph 1 nohead dashtype 2\n\
         plot {}\n",
        plots.join(", \\\n     "),
        b = sweep.boundary_p,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelingArg {
    TwoQubit,
    Spin32,
}

impl From<LabelingArg> for IndexLabeling {
    fn from(l: LabelingArg) -> Self {
        match l {
            LabelingArg::TwoQubit => IndexLabeling::TwoQubit,
            LabelingArg::Spin32 => IndexLabeling::SpinThreeHalves,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EntropyKindArg {
    Tsallis,
    Renyi,
    VonNeumann,
}

#[derive(Debug, Parser)]
#[command(
    name = "qentropy",
    version,
    about = "Deformed entropies and entropic inequalities for qubit pairs and spin-3/2 qudits"
)]
pub struct Cli {
    /// Tolerance on inequality margins.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Interpretation of the flat indices 1..4 in reports.
    #[arg(long, global = true, value_enum, default_value_t = LabelingArg::Spin32)]
    pub labeling: LabelingArg,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check Hermiticity, unit trace and positivity of a matrix file.
    Validate { file: PathBuf },
    /// Print the entropy of the state in a matrix file.
    Entropy {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<f64>,
        #[arg(long, value_enum, default_value_t = EntropyKindArg::Tsallis)]
        kind: EntropyKindArg,
    },
    /// Print the q-information of a 4x4 state and optionally check both inequalities.
    Qinfo {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
        #[arg(long)]
        check: bool,
    },
    /// Tabulate the Werner-state q-information to CSV.
    Sweep {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        p_min: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
        p_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, allow_hyphen_values = true)]
        q_list: String,
        #[arg(long)]
        out: PathBuf,
        /// Also write a gnuplot script for the CSV.
        #[arg(long)]
        gnuplot: Option<PathBuf>,
    },
    /// Check both inequalities on seeded random two-qubit states.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, allow_hyphen_values = true)]
        q_list: String,
    },
}

/// Accepts decimals and fractions such as `-1/3`.
fn parse_real(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in `{s}`"))?;
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in `{s}`"))?;
            n / d
        }
        None => s
            .trim()
            .parse()
            .map_err(|_| format!("`{s}` is not a number"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_q_list(s: &str) -> Result<Vec<DeformationParam>, String> {
    s.split(',')
        .map(|t| {
            let v = parse_real(t)?;
            DeformationParam::new(v).map_err(|e| e.to_string())
        })
        .collect()
}

/// Error carrying the exit status it maps to.
#[derive(Debug)]
struct Failure {
    status: ExitStatus,
    message: String,
}

impl Failure {
    fn new(status: ExitStatus, message: impl fmt::Display) -> Self {
        Self {
            status,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<ExitStatus, Failure>;

fn load_state(path: &Path) -> Result<DensityMatrix, Failure> {
    let m = read_matrix_file(path).map_err(|e| Failure::new(ExitStatus::ParseError, e))?;
    validate_density(m).map_err(|e| Failure::new(ExitStatus::InvalidMatrix, e))
}

fn with_labeling(rho: DensityMatrix, labeling: IndexLabeling) -> Result<DensityMatrix, Failure> {
    if rho.dim() == 4 {
        rho.with_dims(labeling.dims())
            .map_err(|e| Failure::new(ExitStatus::InvalidMatrix, e))
    } else {
        Ok(rho)
    }
}

fn q_param(q: f64) -> Result<DeformationParam, Failure> {
    DeformationParam::new(q).map_err(|e| Failure::new(ExitStatus::BadArguments, e))
}

fn tol_param(tol: f64) -> Result<f64, Failure> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(Failure::new(
            ExitStatus::BadArguments,
            format!("--tol must be a nonnegative number, got {tol}"),
        ))
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::new(ExitStatus::BadArguments, e)
}

fn cmd_validate(file: &Path, labeling: IndexLabeling, out: &mut dyn Write) -> CmdResult {
    let m = read_matrix_file(file).map_err(|e| Failure::new(ExitStatus::ParseError, e))?;
    let check = check_density(&m).map_err(|e| Failure::new(ExitStatus::InvalidMatrix, e))?;
    let w = &mut *out;
    (|| -> std::io::Result<()> {
        writeln!(w, "dimension: {}", m.dim())?;
        writeln!(w, "hermitian residual: {:e}", check.hermitian_residual)?;
        writeln!(w, "trace: {}", format_complex(check.trace))?;
        match &check.spectrum {
            Some(s) => {
                let cells: Vec<String> = s.iter().map(|&x| format_value(x)).collect();
                writeln!(w, "spectrum: {}", cells.join(" "))?;
            }
            None => writeln!(w, "spectrum: not computed (matrix is not Hermitian)")?,
        }
        if m.dim() == 4 {
            writeln!(w, "populations ({labeling:?} labels):")?;
            for i in 1..=4 {
                let label = labeling.label(i).expect("index in 1..=4");
                writeln!(w, "  {i} {label}: {}", format_value(m[(i - 1, i - 1)].re))?;
            }
        }
        if check.is_valid() {
            writeln!(w, "verdict: valid density matrix")?;
        } else {
            for v in &check.violations {
                writeln!(w, "violation: {v}")?;
            }
            writeln!(w, "verdict: invalid")?;
        }
        Ok(())
    })()
    .map_err(io_failure)?;
    Ok(if check.is_valid() {
        ExitStatus::Ok
    } else {
        ExitStatus::InvalidMatrix
    })
}

fn cmd_entropy(
    file: &Path,
    q: Option<f64>,
    kind: EntropyKindArg,
    out: &mut dyn Write,
) -> CmdResult {
    let q = match kind {
        EntropyKindArg::VonNeumann => None,
        _ => Some(q_param(q.ok_or_else(|| {
            Failure::new(
                ExitStatus::BadArguments,
                "--q is required for tsallis and renyi",
            )
        })?)?),
    };
    let rho = load_state(file)?;
    let value = match (kind, q) {
        (EntropyKindArg::Tsallis, Some(q)) => quantum_tsallis(&rho, q),
        (EntropyKindArg::Renyi, Some(q)) => quantum_renyi(&rho, q),
        _ => von_neumann(&rho),
    }
    .map_err(|e| Failure::new(ExitStatus::InvalidMatrix, e))?;
    writeln!(out, "{}", format_value(value.value)).map_err(io_failure)?;
    Ok(ExitStatus::Ok)
}

fn cmd_qinfo(
    file: &Path,
    q: f64,
    check: bool,
    tol: f64,
    labeling: IndexLabeling,
    out: &mut dyn Write,
) -> CmdResult {
    let q = q_param(q)?;
    let tol = tol_param(tol)?;
    let rho = load_state(file)?;
    if rho.dim() != 4 {
        return Err(Failure::new(
            ExitStatus::InvalidMatrix,
            Error::DimensionMismatch(format!(
                "qinfo needs a 4x4 state, got {}x{}",
                rho.dim(),
                rho.dim()
            )),
        ));
    }
    let rho = with_labeling(rho, labeling)?;
    let invalid = |e: Error| Failure::new(ExitStatus::InvalidMatrix, e);
    let parts = q_information_parts(&rho, q).map_err(invalid)?;
    let renyi = check_renyi_inequality(&rho, q, tol).map_err(invalid)?;
    let sub = check_subadditivity(&rho, q, tol).map_err(invalid)?;

    let reading = match rho.dims() {
        Dims::Bipartite(..) => "two-qubit state",
        Dims::Single(_) => "single spin-3/2 qudit via the two-qubit index map",
    };
    let w = &mut *out;
    (|| -> std::io::Result<()> {
        writeln!(w, "state: {reading}")?;
        writeln!(w, "q: {q}")?;
        writeln!(w, "S_joint: {}", format_value(parts.s_joint))?;
        writeln!(w, "S_first: {}", format_value(parts.s_first))?;
        writeln!(w, "S_second: {}", format_value(parts.s_second))?;
        writeln!(w, "I_T: {}", format_value(parts.value))?;
        writeln!(w, "renyi_lhs: {}", format_value(renyi.lhs))?;
        if check {
            writeln!(w, "tolerance: {tol:e}")?;
            if !sub.guaranteed {
                writeln!(w, "note: q <= 1, subadditivity is not guaranteed")?;
            }
            writeln!(
                w,
                "subadditivity: {}",
                verdict(sub.satisfied, sub.saturated)
            )?;
            writeln!(
                w,
                "renyi inequality: {}",
                verdict(renyi.satisfied, renyi.saturated)
            )?;
        }
        Ok(())
    })()
    .map_err(io_failure)?;
    Ok(if check && !(sub.satisfied && renyi.satisfied) {
        ExitStatus::Violation
    } else {
        ExitStatus::Ok
    })
}

fn verdict(satisfied: bool, saturated: bool) -> &'static str {
    match (satisfied, saturated) {
        (true, true) => "satisfied (saturated)",
        (true, false) => "satisfied",
        (false, _) => "VIOLATED",
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    p_min: f64,
    p_max: f64,
    steps: usize,
    q_list: &str,
    csv_path: &Path,
    gnuplot: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let bad = |m: String| Failure::new(ExitStatus::BadArguments, m);
    if steps == 0 {
        return Err(bad("--steps must be at least 1".into()));
    }
    if p_min > p_max {
        return Err(bad(format!("--p-min {p_min} exceeds --p-max {p_max}")));
    }
    let qs = parse_q_list(q_list).map_err(bad)?;
    let grid = uniform_grid(p_min, p_max, steps);
    let sweep = werner_q_information_curve(&grid, &qs).map_err(|e| bad(e.to_string()))?;
    std::fs::write(csv_path, sweep_to_csv(&sweep)).map_err(io_failure)?;
    if let Some(script) = gnuplot {
        std::fs::write(script, gnuplot_script(csv_path, &sweep)).map_err(io_failure)?;
    }
    writeln!(
        out,
        "wrote {} rows to {}",
        sweep.rows.len(),
        csv_path.display()
    )
    .map_err(io_failure)?;
    Ok(ExitStatus::Ok)
}

fn cmd_fuzz(seed: u64, count: usize, q_list: &str, tol: f64, out: &mut dyn Write) -> CmdResult {
    let bad = |m: String| Failure::new(ExitStatus::BadArguments, m);
    if count == 0 {
        return Err(bad("--count must be at least 1".into()));
    }
    let tol = tol_param(tol)?;
    let qs = parse_q_list(q_list).map_err(bad)?;
    if let Some(q) = qs.iter().find(|q| q.value() <= 1.0) {
        return Err(bad(format!("q must exceed 1 (got {q})")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<DensityMatrix> = (0..count)
        .map(|_| {
            random_density_from(&mut rng, 4)
                .with_dims(Dims::Bipartite(2, 2))
                .expect("4 = 2x2")
        })
        .collect();

    let mut violations = 0usize;
    let w = &mut *out;
    writeln!(w, "seed: {seed}, states: {count}, tolerance: {tol:e}").map_err(io_failure)?;
    for &q in &qs {
        let mut min_info = f64::INFINITY;
        let mut max_lhs = f64::NEG_INFINITY;
        for (k, rho) in states.iter().enumerate() {
            let internal = |e: Error| Failure::new(ExitStatus::InvalidMatrix, e);
            let sub = check_subadditivity(rho, q, tol).map_err(internal)?;
            let ren = check_renyi_inequality(rho, q, tol).map_err(internal)?;
            min_info = min_info.min(sub.margin);
            max_lhs = max_lhs.max(ren.lhs);
            if !sub.satisfied {
                violations += 1;
                writeln!(
                    w,
                    "violation: sample {k}, q = {q}, I_T = {}",
                    format_value(sub.margin)
                )
                .map_err(io_failure)?;
            }
            if !ren.satisfied {
                violations += 1;
                writeln!(
                    w,
                    "violation: sample {k}, q = {q}, renyi_lhs = {}",
                    format_value(ren.lhs)
                )
                .map_err(io_failure)?;
            }
        }
        writeln!(
            w,
            "q = {q}: min I_T = {}, max renyi_lhs = {}",
            format_value(min_info),
            format_value(max_lhs)
        )
        .map_err(io_failure)?;
    }
    writeln!(w, "violations: {violations}").map_err(io_failure)?;
    Ok(if violations == 0 {
        ExitStatus::Ok
    } else {
        ExitStatus::Violation
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitStatus::Ok,
                _ => ExitStatus::BadArguments,
            };
            let rendered = e.render().to_string();
            let _ = if status == ExitStatus::Ok {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return status;
        }
    };
    let labeling = IndexLabeling::from(cli.labeling);
    let result = match &cli.command {
        Command::Validate { file } => cmd_validate(file, labeling, out),
        Command::Entropy { file, q, kind } => cmd_entropy(file, *q, *kind, out),
        Command::Qinfo { file, q, check } => cmd_qinfo(file, *q, *check, cli.tol, labeling, out),
        Command::Sweep {
            p_min,
            p_max,
            steps,
            q_list,
            out: csv,
            gnuplot,
        } => cmd_sweep(*p_min, *p_max, *steps, q_list, csv, gnuplot.as_deref(), out),
        Command::Fuzz {
            seed,
            count,
            q_list,
        } => cmd_fuzz(*seed, *count, q_list, cli.tol, out),
    };
    match result {
        Ok(status) => status,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.25+0.0i"), Ok(Complex64::new(0.25, 0.0)));
        assert_eq!(parse_complex("-1.5-2i"), Ok(Complex64::new(-1.5, -2.0)));
        assert_eq!(
            parse_complex("1e-3+2.5E+2i"),
            Ok(Complex64::new(1e-3, 250.0))
        );
        assert!(parse_complex("0.25").is_err());
        assert!(parse_complex("0.25i").is_err());
        assert!(parse_complex("0.2.5+0i").is_err());
        assert!(parse_complex("1+-2i").is_err());
        assert!(parse_complex("inf+0i").is_err());
        assert!(parse_complex("1+nani").is_err());
    }

    #[test]
    fn matrix_parse_errors_are_positioned() {
        let e = parse_matrix("2\n0.5+0i 0+0i\n0+0i 0.5+0x\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 6));
        let e = parse_matrix("x\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_matrix("2\n0.5+0i 0+0i\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_matrix("1\n1+0i 0+0i\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
        let e = parse_matrix("1\n1+0i\nextra\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_matrix("1\n1+0i\n\n").is_ok());
    }

    #[test]
    fn csv_header_and_parse() {
        let sweep = werner_q_information_curve(&[0.0, 1.0], &[DeformationParam::new(2.0).unwrap()])
            .unwrap();
        let csv = sweep_to_csv(&sweep);
        assert!(csv.starts_with("p,q,I_T,S_joint,S_first,S_second\n"));
        assert_eq!(parse_sweep_csv(&csv).unwrap(), sweep.rows);
        assert!(parse_sweep_csv("p,q\n").is_err());
    }

    #[test]
    fn real_arguments_accept_fractions() {
        assert_eq!(parse_real("-1/3"), Ok(-1.0 / 3.0));
        assert_eq!(parse_real("0.5"), Ok(0.5));
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("abc").is_err());
        assert!(parse_q_list("1.000001,2,5").is_ok());
        assert!(parse_q_list("2,-1").is_err());
    }

    #[test]
    fn gnuplot_script_mentions_boundary() {
        let sweep = werner_q_information_curve(&[0.0, 1.0], &[DeformationParam::new(2.0).unwrap()])
            .unwrap();
        let s = gnuplot_script(Path::new("out.csv"), &sweep);
        assert!(s.contains("set arrow from 0.3333333333333333"));
        assert!(s.contains("'out.csv'"));
    }
}
