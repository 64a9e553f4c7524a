//! Argument handling and dispatch for the `toda` binary.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use toda_core::harish_chandra::{
    b_denominator, c_function, c_s, hc_suite, m_function, plancherel_density, scattering_matrices, Character,
    WeylPermutation,
};
use toda_core::mellin_barnes::{grid_scan, spherical_eval, whittaker_eval, whittaker_recursive, GridRequest, Kind};
use toda_core::report::{format_f64, to_canonical_json, VerificationReport};
use toda_core::toda_oracle::{check_eigen, EigenGrid};
use toda_core::{gz, qism, separation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "toda", version, about = "Open Toda chain wave functions and their algebraic checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whittaker function ψ_α(x) as a Mellin–Barnes integral over a triangular array.
    #[command(subcommand)]
    Whittaker(EvalCommand),
    /// Spherical function restricted to the diagonal, with paired Γ(·/2i + 1/4) kernel.
    #[command(subcommand)]
    Spherical(EvalCommand),
    /// c-function, M-function, scattering factors, b-normalizer and Plancherel density at λ.
    Cfunction(CfunctionArgs),
    /// Run a verification suite and print its reports.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Print the JSON schema of a verification report.
    Schema,
}

#[derive(Subcommand, Debug)]
enum EvalCommand {
    /// Value at one point.
    Eval(EvalArgs),
    /// Scan along one coordinate axis.
    Grid(GridArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Recursive,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    n: usize,
    /// Spectral parameters (Whittaker) as a comma list.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    /// Top row λ_N (spherical) as a comma list.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<f64>,
    /// Direct cubature over the whole array, or level-by-level through the separated kernel.
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<f64>>,
    /// Base point; coordinates other than the scanned one stay here. Defaults to the origin.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<f64>>,
    /// 1-based coordinate to scan.
    #[arg(long)]
    axis: usize,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long)]
    steps: usize,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CfunctionArgs {
    #[arg(long)]
    n: usize,
    /// λ as a comma list; entries may be complex, e.g. `0.5+1.2i`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<String>,
    /// Weyl element in one-line notation (1-based images); defaults to the longest element.
    #[arg(long, value_delimiter = ',')]
    weyl: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// RLL relation, commuting transfer matrices, A/C exchange and the monodromy recursion, exactly.
    Qism(VerifyArgs),
    /// Separated difference equation, measure equations and the Lagrange identity.
    Separation(VerifyArgs),
    /// gl(N) relations and Serre relations of the difference-operator realization, plus
    /// Whittaker, spherical and measure equations.
    Gz(VerifyArgs),
    /// Finite-difference residual of (-½Δ + Σ e^{x_{k+1}-x_k}) ψ = ½Σα² ψ.
    Eigen(EigenArgs),
    /// Gamma-product identities: multiplicativity, cocycle, Plancherel invariance, normalizer.
    Hc(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    /// Random samples per relation.
    #[arg(long)]
    trials: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct EigenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Vec<f64>,
    /// `origin:step:count`, applied to every axis, or one spec per axis separated by `;`.
    #[arg(long, allow_hyphen_values = true, default_value = "-1.575:0.05:64")]
    grid: String,
    /// Residual threshold.
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn failure(msg: impl Into<String>) -> Self {
        Self { code: EXIT_FAILURE, stdout: String::new(), stderr: msg.into() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

enum Failure {
    Usage(String),
    Eval(String),
}

impl From<toda_core::Error> for Failure {
    fn from(e: toda_core::Error) -> Self {
        Failure::Eval(e.to_string())
    }
}

type Run<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome::ok(text) };
        }
    };
    log::debug!("dispatch {:?}", cli.command);
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => Outcome::usage(format!("error: {m}\n")),
        Err(Failure::Eval(m)) => Outcome::failure(format!("error: {m}\n")),
    }
}

fn dispatch(cmd: Command) -> Run<Outcome> {
    match cmd {
        Command::Whittaker(EvalCommand::Eval(a)) => eval(Kind::Whittaker, a),
        Command::Spherical(EvalCommand::Eval(a)) => eval(Kind::Spherical, a),
        Command::Whittaker(EvalCommand::Grid(a)) => grid(Kind::Whittaker, a),
        Command::Spherical(EvalCommand::Grid(a)) => grid(Kind::Spherical, a),
        Command::Cfunction(a) => cfunction(a),
        Command::Verify(v) => verify(v),
        Command::Schema => Ok(Outcome::ok(to_canonical_json(&report_schema()) + "\n")),
    }
}

fn params(kind: Kind, n: usize, alpha: Option<Vec<f64>>, lambda: Option<Vec<f64>>) -> Run<Vec<f64>> {
    let (name, v) = match kind {
        Kind::Whittaker => ("--alpha", alpha),
        Kind::Spherical => ("--lambda", lambda),
    };
    let v = v.ok_or_else(|| Failure::Usage(format!("{name} is required")))?;
    if v.len() != n {
        return Err(Failure::Usage(format!("{name} has {} entries, expected {n}", v.len())));
    }
    Ok(v)
}

fn check_common(c: &Common) -> Run<()> {
    if !(c.tol > 0.0 && c.tol < 1.0) {
        return Err(Failure::Usage(format!("--tol {} must lie in (0, 1)", c.tol)));
    }
    Ok(())
}

fn eval(kind: Kind, a: EvalArgs) -> Run<Outcome> {
    check_common(&a.common)?;
    let p = params(kind, a.n, a.alpha, a.lambda)?;
    if a.x.len() != a.n {
        return Err(Failure::Usage(format!("--x has {} entries, expected {}", a.x.len(), a.n)));
    }
    let r = match (kind, a.method) {
        (Kind::Whittaker, Method::Direct) => whittaker_eval(a.n, &p, &a.x, a.common.tol)?,
        (Kind::Whittaker, Method::Recursive) => whittaker_recursive(a.n, &p, &a.x, a.common.tol)?,
        (Kind::Spherical, Method::Direct) => spherical_eval(a.n, &p, &a.x, a.common.tol)?,
        (Kind::Spherical, Method::Recursive) => {
            return Err(Failure::Usage("the recursive method applies to Whittaker functions only".into()))
        }
    };
    let row = TableRow { x: a.x, re: r.value.re, im: r.value.im, abs: r.value.norm(), error_estimate: r.error_estimate };
    Ok(Outcome::ok(render_table(&[row], a.n, a.common.format)))
}

fn grid(kind: Kind, a: GridArgs) -> Run<Outcome> {
    check_common(&a.common)?;
    let p = params(kind, a.n, a.alpha, a.lambda)?;
    let base = a.x.unwrap_or_else(|| vec![0.0; a.n]);
    if base.len() != a.n {
        return Err(Failure::Usage(format!("--x has {} entries, expected {}", base.len(), a.n)));
    }
    if a.axis == 0 || a.axis > a.n {
        return Err(Failure::Usage(format!("--axis {} not in 1..={}", a.axis, a.n)));
    }
    if a.steps == 0 {
        return Err(Failure::Usage("--steps must be positive".into()));
    }
    let req = GridRequest { kind, params: p, base, axis: a.axis, from: a.from, to: a.to, steps: a.steps, tol: a.common.tol };
    let rows: Vec<TableRow> = grid_scan(&req)?
        .into_iter()
        .map(|r| TableRow { x: r.x, re: r.value.re, im: r.value.im, abs: r.value.norm(), error_estimate: r.error_estimate })
        .collect();
    let text = render_table(&rows, a.n, a.common.format);
    match a.out {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| Failure::Eval(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

/// One line of an evaluation table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub x: Vec<f64>,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub error_estimate: f64,
}

fn table_header(n: usize) -> Vec<String> {
    let mut h: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    h.extend(["re", "im", "abs", "error_estimate"].map(String::from));
    h
}

pub fn render_table(rows: &[TableRow], n: usize, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(table_header(n)).expect("in-memory write");
            for r in rows {
                let mut rec: Vec<String> = r.x.iter().map(|v| format_f64(*v)).collect();
                rec.extend([r.re, r.im, r.abs, r.error_estimate].map(format_f64));
                w.write_record(rec).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| json!({"x": r.x, "re": r.re, "im": r.im, "abs": r.abs, "error_estimate": r.error_estimate}))
                .collect();
            to_canonical_json(&Value::Array(v)) + "\n"
        }
    }
}

/// Inverse of the CSV branch of `render_table`.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>, String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let n = r.headers().map_err(|e| e.to_string())?.len().checked_sub(4).ok_or("short header")?;
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            let v: Vec<f64> = rec.iter().map(f64::from_str).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            Ok(TableRow { x: v[..n].to_vec(), re: v[n], im: v[n + 1], abs: v[n + 2], error_estimate: v[n + 3] })
        })
        .collect()
}

fn complex_json(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn cfunction(a: CfunctionArgs) -> Run<Outcome> {
    let lambda: Vec<Complex64> = a
        .lambda
        .iter()
        .map(|s| Complex64::from_str(s.trim()).map_err(|_| Failure::Usage(format!("cannot parse λ entry {s:?}"))))
        .collect::<Run<_>>()?;
    if lambda.len() != a.n {
        return Err(Failure::Usage(format!("--lambda has {} entries, expected {}", lambda.len(), a.n)));
    }
    let s = match a.weyl {
        Some(images) => {
            if images.len() != a.n || images.contains(&0) {
                return Err(Failure::Usage("--weyl must list the images 1..=N".into()));
            }
            WeylPermutation::new(images.iter().map(|i| i - 1).collect()).map_err(|e| Failure::Usage(e.to_string()))?
        }
        None => WeylPermutation::longest(a.n),
    };
    let f = Character::unit(a.n);
    let (big_s, s0) = scattering_matrices(&lambda, &f)?;
    let out = json!({
        "c_s": complex_json(c_s(&lambda, &s)?),
        "c": complex_json(c_function(&lambda)?),
        "M": complex_json(m_function(&s, &lambda, &f)?),
        "S": complex_json(big_s),
        "S0": complex_json(s0),
        "b": complex_json(b_denominator(&lambda)?),
        "plancherel": plancherel_density(&lambda)?,
    });
    Ok(Outcome::ok(to_canonical_json(&out) + "\n"))
}

fn parse_grid(spec: &str, n: usize) -> Run<EigenGrid> {
    let axes: Vec<(f64, f64, usize)> = spec
        .split(';')
        .map(|part| {
            let f: Vec<&str> = part.trim().split(':').collect();
            let bad = || Failure::Usage(format!("grid axis {part:?} is not origin:step:count"));
            if f.len() != 3 {
                return Err(bad());
            }
            Ok((
                f[0].parse().map_err(|_| bad())?,
                f[1].parse().map_err(|_| bad())?,
                f[2].parse().map_err(|_| bad())?,
            ))
        })
        .collect::<Run<_>>()?;
    let axes = if axes.len() == 1 { vec![axes[0]; n] } else { axes };
    if axes.len() != n {
        return Err(Failure::Usage(format!("--grid has {} axes, expected {n}", axes.len())));
    }
    let (step, count) = (axes[0].1, axes[0].2);
    if axes.iter().any(|a| a.1 != step || a.2 != count) {
        return Err(Failure::Usage("all grid axes must share step and count".into()));
    }
    if !(step > 0.0) || count == 0 {
        return Err(Failure::Usage("grid step and count must be positive".into()));
    }
    Ok(EigenGrid { origin: axes.iter().map(|a| a.0).collect(), step, count })
}

fn verify(cmd: VerifyCommand) -> Run<Outcome> {
    let (reports, format) = match cmd {
        VerifyCommand::Qism(a) => {
            check_common(&a.common)?;
            (qism::qism_suite(a.n)?, a.common.format)
        }
        VerifyCommand::Separation(a) => {
            check_common(&a.common)?;
            let t = a.trials.unwrap_or(50);
            (separation::separation_suite(a.n, t, a.common.seed, a.common.tol)?, a.common.format)
        }
        VerifyCommand::Gz(a) => {
            check_common(&a.common)?;
            let (seed, tol) = (a.common.seed, a.common.tol);
            let mut r = gz::check_gl_relations(a.n, a.trials.unwrap_or(20), seed)?;
            r.extend(gz::check_serre(a.n, a.trials.unwrap_or(20), seed)?);
            if a.n >= 2 {
                r.extend(gz::vector_suite(a.n, a.trials.unwrap_or(50), seed, tol)?);
            }
            (r, a.common.format)
        }
        VerifyCommand::Hc(a) => {
            check_common(&a.common)?;
            (hc_suite(a.n, a.trials.unwrap_or(50), a.common.seed)?, a.common.format)
        }
        VerifyCommand::Eigen(a) => {
            if a.alpha.len() != a.n {
                return Err(Failure::Usage(format!("--alpha has {} entries, expected {}", a.alpha.len(), a.n)));
            }
            let grid = parse_grid(&a.grid, a.n)?;
            (vec![check_eigen(&a.alpha, &grid, a.tol)?.with_seed(a.seed)], a.format)
        }
    };
    let code = if reports.iter().all(VerificationReport::passed) { EXIT_OK } else { EXIT_FAILURE };
    Ok(Outcome { code, stdout: render_reports(&reports, format), stderr: String::new() })
}

const REPORT_KEYS: [&str; 8] = ["suite", "n", "relation", "status", "residual", "tolerance", "seed", "witness"];

pub fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => {
            let v = serde_json::to_value(reports).expect("reports serialize");
            to_canonical_json(&v) + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(REPORT_KEYS).expect("in-memory write");
            for r in reports {
                let opt = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
                let status = if r.passed() { "PASS" } else { "FAIL" };
                w.write_record([
                    r.suite.clone(),
                    r.n.to_string(),
                    r.relation.clone(),
                    status.to_string(),
                    opt(r.residual),
                    opt(r.tolerance),
                    r.seed.map(|s| s.to_string()).unwrap_or_default(),
                    r.witness.clone().unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
            let mut s = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output");
            if !s.ends_with('\n') {
                let _ = writeln!(s);
            }
            s
        }
    }
}

/// JSON schema of `VerificationReport`.
pub fn report_schema() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "VerificationReport",
        "type": "object",
        "required": REPORT_KEYS,
        "additionalProperties": false,
        "properties": {
            "suite": {"type": "string", "enum": ["qism", "separation", "gz", "eigen", "hc"]},
            "n": {"type": "integer", "minimum": 0},
            "relation": {"type": "string"},
            "status": {"type": "string", "enum": ["PASS", "FAIL"]},
            "residual": {"type": ["number", "null"], "minimum": 0},
            "tolerance": {"type": ["number", "null"], "minimum": 0},
            "seed": {"type": ["integer", "null"], "minimum": 0},
            "witness": {"type": ["string", "null"]}
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("toda".to_string()).chain(s.split_whitespace().map(String::from)).collect()
    }

    #[test]
    fn plane_wave_eval() {
        let o = run(argv("whittaker eval --n 1 --alpha 1 --x 0"));
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        let rows = parse_table(&o.stdout).unwrap();
        assert_eq!(rows[0].re, 1.0);
        assert_eq!(rows[0].im, 0.0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(argv("whittaker eval --n 1 --alpha 1 --x 0 --bogus")).code, EXIT_USAGE);
        assert_eq!(run(argv("frobnicate")).code, EXIT_USAGE);
        assert_eq!(run(argv("whittaker eval --n 2 --alpha 1 --x 0,0")).code, EXIT_USAGE);
        assert_eq!(run(argv("verify eigen --n 2 --alpha 1,-1 --grid 0:0.1")).code, EXIT_USAGE);
        assert_eq!(run(argv("whittaker eval --n 1 --alpha 1 --x 0 --tol 2")).code, EXIT_USAGE);
    }

    #[test]
    fn evaluation_error_exit_code() {
        let o = run(argv("whittaker eval --n 4 --alpha 0,0,0,0 --x 0,0,0,0"));
        assert_eq!(o.code, EXIT_FAILURE);
        assert!(o.stderr.contains("N <= 3"));
    }

    #[test]
    fn help_exits_cleanly() {
        let o = run(argv("--help"));
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("verify"));
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("-1:0.1:8", 3).ok().unwrap();
        assert_eq!(g.origin, vec![-1.0; 3]);
        let g = parse_grid("-1:0.1:8;0:0.1:8", 2).ok().unwrap();
        assert_eq!(g.origin, vec![-1.0, 0.0]);
        assert!(parse_grid("-1:0.1:8;0:0.2:8", 2).is_err());
        assert!(parse_grid("a:b:c", 1).is_err());
    }

    #[test]
    fn schema_lists_report_keys() {
        let s = report_schema();
        let req: Vec<&str> = s["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        assert_eq!(req, REPORT_KEYS);
        let r = VerificationReport::numeric("qism", 2, "x", 0.0, 1.0);
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), REPORT_KEYS.len());
        assert!(REPORT_KEYS.iter().all(|k| v.get(*k).is_some()));
    }

    #[test]
    fn cfunction_output_keys() {
        let o = run(argv("cfunction --n 2 --lambda 0.3+0.1i,-0.2"));
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        for k in ["c_s", "c", "M", "S", "S0", "b", "plancherel"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(run(argv("cfunction --n 2 --lambda 0.3,0.1 --weyl 1,1")).code, EXIT_USAGE);
    }
}
