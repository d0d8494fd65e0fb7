//! Command-line front end: argument parsing, command dispatch and the text,
//! CSV and JSON renderings of every result.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use alpert::filterbank::{d1_matrix, Method};
use alpert::fourier::{h_hat, psi_hat};
use alpert::legendre::refinement_matrices;
use alpert::scalar::parse_rational;
use alpert::signal_io::{read_coeffs, read_signal, write_coeffs, write_signal};
use alpert::transform::{analyze, compress, synthesize, Coefficient, CompressionStats};
use alpert::verify::{run_all, MODULES};
use alpert::wavelets::{has_own_table, wavelet_coefficients, wavelet_polynomial};
use alpert::{ExactMatrix, Report, SurdSum};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

/// Largest `n` accepted in exact mode.
pub const EXACT_N_LIMIT: usize = 30;
/// Largest `n` for which exact mode is the default.
pub const EXACT_DEFAULT_LIMIT: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] alpert::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Only a failed `verify` exits with 1, which is reported separately.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    C1,
    Cm1,
    D1,
    Dm1,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::C1 => "c1",
            Which::Cm1 => "cm1",
            Which::D1 => "d1",
            Which::Dm1 => "dm1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Alternate,
    Recurrence,
    Integral,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Alternate => Method::Alternate,
            MethodArg::Recurrence => Method::Recurrence,
            MethodArg::Integral => Method::Integral,
        }
    }
}

/// `h` is the wavelet on `[-1, 1)`, `psi` its copy `h(2t - 1)` on `[0, 1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Function {
    #[default]
    H,
    Psi,
}

#[derive(Debug, Parser)]
#[command(name = "alpert", version, about = "Explicit orthonormal Alpert multiwavelets")]
pub struct Cli {
    /// Arithmetic: exact by default for n ≤ 12, float above.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient tables d^i_{n,k} of the wavelets' [0, 1) pieces.
    Coeffs {
        #[arg(long)]
        n: usize,
        /// One table only; i must be 0 or odd.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Refinement (c) or wavelet (d) filter matrices.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Point values of h^n_m or psi^n_m.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        index: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        points: Vec<String>,
        #[arg(long, value_enum, default_value_t = Function::H)]
        function: Function,
    },
    /// Fourier transform values.
    Fourier {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        index: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        theta: Vec<f64>,
        #[arg(long, default_value_t = 1e-15)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Function::H)]
        function: Function,
    },
    /// Forward or inverse multiresolution transform of a CSV file.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        inverse: bool,
        /// Zero every detail coefficient smaller in magnitude.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Runs the identity suites.
    Verify {
        #[arg(long, default_value_t = EXACT_DEFAULT_LIMIT)]
        n_max: usize,
        #[arg(long)]
        module: Option<String>,
    },
}

/// Resolves `--mode` against `n`.
pub fn resolve_mode(mode: Option<Mode>, n: usize) -> CliResult<Mode> {
    match mode {
        Some(Mode::Exact) if n > EXACT_N_LIMIT => Err(CliError::Usage(format!(
            "exact mode supports n ≤ {EXACT_N_LIMIT}, got n = {n}; use --mode float"
        ))),
        Some(m) => Ok(m),
        None if n <= EXACT_DEFAULT_LIMIT => Ok(Mode::Exact),
        None => Ok(Mode::Float),
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }
}

/// An exact value as printed in `mode`.
pub fn render_value(v: &SurdSum, mode: Mode) -> String {
    match mode {
        Mode::Exact => v.to_string(),
        Mode::Float => v.to_f64().to_string(),
    }
}

fn json_value(v: &SurdSum, mode: Mode) -> Value {
    match mode {
        Mode::Exact => Value::String(v.to_string()),
        Mode::Float => json!(v.to_f64()),
    }
}

fn bracketed(items: impl IntoIterator<Item = String>) -> String {
    format!("[{}]", items.into_iter().collect::<Vec<_>>().join(", "))
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

fn finish_csv(mut w: csv::Writer<&mut dyn Write>) -> CliResult<()> {
    w.flush()?;
    Ok(())
}

fn write_json(out: &mut dyn Write, v: &Value) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

/// Renders a matrix. Text prints one bracketed row per line; CSV has
/// `row,col,value` records; JSON holds the rows under `"rows"`.
pub fn render_matrix(
    out: &mut dyn Write,
    m: &ExactMatrix,
    meta: &[(&str, Value)],
    mode: Mode,
    format: Format,
) -> CliResult<()> {
    match format {
        Format::Text => {
            for r in 0..m.rows() {
                writeln!(out, "{}", bracketed(m.row(r).iter().map(|v| render_value(v, mode))))?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["row", "col", "value"]).map_err(csv_err)?;
            for r in 0..m.rows() {
                for (c, v) in m.row(r).iter().enumerate() {
                    w.write_record([r.to_string(), c.to_string(), render_value(v, mode)])
                        .map_err(csv_err)?;
                }
            }
            finish_csv(w)
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (k, v) in meta {
                obj.insert(k.to_string(), v.clone());
            }
            obj.insert("mode".into(), json!(mode_name(mode)));
            let rows: Vec<Value> = (0..m.rows())
                .map(|r| Value::Array(m.row(r).iter().map(|v| json_value(v, mode)).collect()))
                .collect();
            obj.insert("rows".into(), Value::Array(rows));
            write_json(out, &Value::Object(obj))
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Library(alpert::Error::from(e))
}

/// Parses the CSV rendering of a matrix back into exact values. Float
/// renderings parse too, as the rationals their decimals denote.
pub fn parse_matrix_csv(text: &str) -> CliResult<ExactMatrix> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut entries = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let field = |k: usize| rec.get(k).ok_or_else(|| CliError::Usage(format!("short record {rec:?}")));
        let r: usize = field(0)?.parse().map_err(|_| CliError::Usage("bad row index".into()))?;
        let c: usize = field(1)?.parse().map_err(|_| CliError::Usage("bad column index".into()))?;
        entries.push((r, c, field(2)?.parse::<SurdSum>()?));
    }
    let rows = entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
    let cols = entries.iter().map(|e| e.1 + 1).max().unwrap_or(0);
    let mut m = ExactMatrix::zeros(rows, cols);
    for (r, c, v) in entries {
        m.set(r, c, v);
    }
    Ok(m)
}

/// Parses the JSON rendering of a matrix; returns the metadata fields and
/// the entries.
pub fn parse_matrix_json(text: &str) -> CliResult<(Vec<(String, Value)>, ExactMatrix, Mode)> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v.as_object().ok_or_else(|| CliError::Usage("expected a JSON object".into()))?;
    let mode = match obj.get("mode").and_then(Value::as_str) {
        Some("exact") => Mode::Exact,
        Some("float") => Mode::Float,
        _ => return Err(CliError::Usage("missing or invalid \"mode\"".into())),
    };
    let rows = obj
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Usage("missing \"rows\"".into()))?;
    let mut parsed = Vec::new();
    for row in rows {
        let row = row.as_array().ok_or_else(|| CliError::Usage("row is not an array".into()))?;
        let vals = row
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(s.parse::<SurdSum>()?),
                Value::Number(num) => Ok(parse_rational(&num.to_string())
                    .map(SurdSum::from)?),
                _ => Err(CliError::Usage(format!("invalid entry {x}"))),
            })
            .collect::<CliResult<Vec<_>>>()?;
        parsed.push(vals);
    }
    let cols = parsed.first().map_or(0, Vec::len);
    let m = ExactMatrix::try_from_fn(parsed.len(), cols, |r, c| {
        parsed[r].get(c).cloned().ok_or_else(|| CliError::Usage("ragged rows".into()))
    })?;
    let meta = obj
        .iter()
        .filter(|(k, _)| *k != "rows" && *k != "mode")
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Ok((meta, m, mode))
}

/// Parses and runs one command line; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command; returns 0, or 1 when verification fails.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let format = cli.format;
    match &cli.command {
        Command::Coeffs { n, i } => coeffs(out, *n, *i, resolve_mode(cli.mode, *n)?, format),
        Command::Matrix { n, which, method } => {
            let mode = resolve_mode(cli.mode, *n)?;
            let m = match which {
                Which::C1 => refinement_matrices(*n).c_plus1,
                Which::Cm1 => refinement_matrices(*n).c_minus1,
                Which::D1 => d1_matrix(*n, (*method).into())?.d_plus1,
                Which::Dm1 => d1_matrix(*n, (*method).into())?.d_minus1,
            };
            let mut meta = vec![("n", json!(n)), ("which", json!(which.name()))];
            if matches!(which, Which::D1 | Which::Dm1) {
                meta.push(("method", json!(Method::from(*method).name())));
            }
            render_matrix(out, &m, &meta, mode, format)?;
            Ok(0)
        }
        Command::Eval { n, index, points, function } => {
            eval(out, *n, *index, points, *function, resolve_mode(cli.mode, *n)?, format)
        }
        Command::Fourier { n, index, theta, tol, function } => fourier(out, *n, *index, theta, *tol, *function, format),
        Command::Transform { input, n, levels, inverse, threshold, output } => {
            let job = TransformJob {
                input,
                output,
                n: *n,
                levels: *levels,
                inverse: *inverse,
                threshold: *threshold,
            };
            match resolve_mode(cli.mode, *n)? {
                Mode::Exact => transform::<SurdSum>(out, &job, format),
                Mode::Float => transform::<f64>(out, &job, format),
            }
        }
        Command::Verify { n_max, module } => verify(out, *n_max, module.as_deref(), format),
    }
}

fn coeffs(out: &mut dyn Write, n: usize, i: Option<usize>, mode: Mode, format: Format) -> CliResult<i32> {
    let indices: Vec<usize> = match i {
        Some(i) if i > n => return Err(CliError::Usage(format!("--i {i} exceeds --n {n}"))),
        Some(i) if !has_own_table(i) => {
            return Err(CliError::Usage(format!(
                "d^i_(n,k) has its own table only for i = 0 or odd i; even i = {i} reuses the table of (n-1, i-1)"
            )))
        }
        Some(i) => vec![i],
        None => (0..=n).filter(|&i| has_own_table(i)).collect(),
    };
    let tables = indices
        .iter()
        .map(|&i| Ok((i, wavelet_coefficients(n, i)?.into_iter().map(SurdSum::from).collect())))
        .collect::<CliResult<Vec<(usize, Vec<SurdSum>)>>>()?;
    match format {
        Format::Text => {
            for (i, t) in &tables {
                writeln!(out, "i = {i}: {}", bracketed(t.iter().map(|v| render_value(v, mode))))?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["i", "k", "value"]).map_err(csv_err)?;
            for (i, t) in &tables {
                for (k, v) in t.iter().enumerate() {
                    w.write_record([i.to_string(), k.to_string(), render_value(v, mode)])
                        .map_err(csv_err)?;
                }
            }
            finish_csv(w)?;
        }
        Format::Json => {
            let tables: Vec<Value> = tables
                .iter()
                .map(|(i, t)| json!({"i": i, "values": t.iter().map(|v| json_value(v, mode)).collect::<Vec<_>>()}))
                .collect();
            write_json(out, &json!({"n": n, "mode": mode_name(mode), "tables": tables}))?;
        }
    }
    Ok(0)
}

fn eval(
    out: &mut dyn Write,
    n: usize,
    index: usize,
    points: &[String],
    function: Function,
    mode: Mode,
    format: Format,
) -> CliResult<i32> {
    if index > n {
        return Err(CliError::Usage(format!("--index {index} exceeds --n {n}")));
    }
    let h = wavelet_polynomial(n, index);
    let two = BigRational::from_integer(2.into());
    let mut values = Vec::new();
    for p in points {
        let t = parse_rational(p).map_err(|e| CliError::Usage(format!("--points: {e}")))?;
        // points are exact rationals, so both modes evaluate exactly
        let v = match function {
            Function::H => h.eval(&t),
            Function::Psi => h.eval(&(&t * &two - BigRational::from_integer(1.into()))),
        };
        values.push((p.trim().to_string(), v));
    }
    match format {
        Format::Text => writeln!(out, "{}", values.iter().map(|(_, v)| render_value(v, mode)).collect::<Vec<_>>().join(", "))?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["t", "value"]).map_err(csv_err)?;
            for (t, v) in &values {
                w.write_record([t.clone(), render_value(v, mode)]).map_err(csv_err)?;
            }
            finish_csv(w)?;
        }
        Format::Json => {
            let vals: Vec<Value> = values
                .iter()
                .map(|(t, v)| json!({"t": t, "value": json_value(v, mode)}))
                .collect();
            write_json(out, &json!({"n": n, "index": index, "mode": mode_name(mode), "values": vals}))?;
        }
    }
    Ok(0)
}

fn fourier(
    out: &mut dyn Write,
    n: usize,
    index: usize,
    thetas: &[f64],
    tol: f64,
    function: Function,
    format: Format,
) -> CliResult<i32> {
    if index > n {
        return Err(CliError::Usage(format!("--index {index} exceeds --n {n}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let values = thetas
        .iter()
        .map(|&th| {
            let v = match function {
                Function::H => h_hat(n, index, th, tol),
                Function::Psi => psi_hat(n, index, th, tol),
            }?;
            Ok((th, v))
        })
        .collect::<CliResult<Vec<_>>>()?;
    match format {
        Format::Text => {
            for (th, v) in &values {
                let sign = if v.im.is_sign_negative() { '-' } else { '+' };
                writeln!(out, "{th}: {} {sign} {}i", v.re, v.im.abs())?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["theta", "re", "im"]).map_err(csv_err)?;
            for (th, v) in &values {
                w.write_record([th.to_string(), v.re.to_string(), v.im.to_string()]).map_err(csv_err)?;
            }
            finish_csv(w)?;
        }
        Format::Json => {
            let vals: Vec<Value> = values
                .iter()
                .map(|(th, v)| json!({"theta": th, "re": v.re, "im": v.im}))
                .collect();
            write_json(out, &json!({"n": n, "index": index, "values": vals}))?;
        }
    }
    Ok(0)
}

struct TransformJob<'a> {
    input: &'a PathBuf,
    output: &'a PathBuf,
    n: usize,
    levels: usize,
    inverse: bool,
    threshold: Option<f64>,
}

fn transform<T: Coefficient>(out: &mut dyn Write, job: &TransformJob, format: Format) -> CliResult<i32> {
    let input = BufReader::new(File::open(job.input).map_err(|e| {
        CliError::Usage(format!("cannot open {}: {e}", job.input.display()))
    })?);
    let squeeze = |c| match job.threshold {
        Some(x) => compress(&c, x).map(|(c, s)| (c, Some(s))),
        None => Ok((c, None)),
    };
    let (stats, kind): (Option<CompressionStats>, &str) = if job.inverse {
        let coeffs = read_coeffs::<T>(input, job.n, job.levels)?;
        let (coeffs, stats) = squeeze(coeffs)?;
        let signal = synthesize(&coeffs)?;
        write_signal(BufWriter::new(File::create(job.output)?), &signal)?;
        (stats, "signal")
    } else {
        let signal = read_signal::<T>(input, job.n, job.levels)?;
        let (coeffs, stats) = squeeze(analyze(&signal)?)?;
        write_coeffs(BufWriter::new(File::create(job.output)?), &coeffs)?;
        (stats, "coefficients")
    };
    let total = (job.n + 1) << job.levels;
    match format {
        Format::Text => {
            writeln!(out, "wrote {total} {kind} to {}", job.output.display())?;
            if let Some(s) = stats {
                writeln!(
                    out,
                    "retained {} of {} coefficients, dropped energy {:e}",
                    s.retained, s.total, s.dropped_energy
                )?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["output", "kind", "count", "retained", "dropped_energy"]).map_err(csv_err)?;
            let (retained, dropped) = stats.map_or((String::new(), String::new()), |s| {
                (s.retained.to_string(), s.dropped_energy.to_string())
            });
            w.write_record([job.output.display().to_string(), kind.into(), total.to_string(), retained, dropped])
                .map_err(csv_err)?;
            finish_csv(w)?;
        }
        Format::Json => {
            let mut v = json!({"output": job.output.display().to_string(), "kind": kind, "count": total});
            if let Some(s) = stats {
                v["retained"] = json!(s.retained);
                v["dropped_energy"] = json!(s.dropped_energy);
            }
            write_json(out, &v)?;
        }
    }
    Ok(0)
}

fn verify(out: &mut dyn Write, n_max: usize, module: Option<&str>, format: Format) -> CliResult<i32> {
    if n_max > EXACT_N_LIMIT {
        return Err(CliError::Usage(format!(
            "verification is exact and supports --n-max ≤ {EXACT_N_LIMIT}"
        )));
    }
    let modules: Vec<&str> = match module {
        Some(m) if MODULES.contains(&m) => vec![m],
        Some(m) => {
            return Err(CliError::Usage(format!(
                "unknown module '{m}', expected one of {}",
                MODULES.join(", ")
            )))
        }
        None => MODULES.to_vec(),
    };
    let reports = run_all(&modules, n_max)?;
    render_reports(out, &reports, format)?;
    Ok(if reports.iter().all(Report::all_passed) { 0 } else { 1 })
}

fn render_reports(out: &mut dyn Write, reports: &[Report], format: Format) -> CliResult<()> {
    match format {
        Format::Text => {
            for r in reports {
                writeln!(out, "== {} ==", r.title)?;
                write!(out, "{r}")?;
            }
            let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
            let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
            writeln!(out, "{} checks, {failed} failed", checks)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["module", "check", "status", "detail"]).map_err(csv_err)?;
            for r in reports {
                for c in &r.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    w.write_record([r.title.as_str(), &c.name, status, &c.detail]).map_err(csv_err)?;
                }
            }
            finish_csv(w)?;
        }
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "module": r.title,
                        "checks": r.checks.iter().map(|c| json!({
                            "name": c.name, "passed": c.passed, "detail": c.detail
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            write_json(out, &Value::Array(v))?;
        }
    }
    Ok(())
}
