//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
//! error (pole, convergence). JSON goes to stdout, diagnostics to stderr.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::series::EvalResult;
use crate::triple::TripleCase;
use crate::{oracles, quasiperiods, series, triple, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

fn parse_float(s: &[u8], start: usize) -> Result<(f64, usize)> {
    let err = |position: usize, message: &str| Error::Parse { position, message: message.to_string() };
    let mut pos = start;
    if pos < s.len() && (s[pos] == b'+' || s[pos] == b'-') {
        pos += 1;
    }
    let int_start = pos;
    while pos < s.len() && s[pos].is_ascii_digit() {
        pos += 1;
    }
    let mut digits = pos - int_start;
    if pos < s.len() && s[pos] == b'.' {
        pos += 1;
        let frac_start = pos;
        while pos < s.len() && s[pos].is_ascii_digit() {
            pos += 1;
        }
        digits += pos - frac_start;
    }
    if digits == 0 {
        return Err(err(start, "expected a decimal number"));
    }
    if pos < s.len() && (s[pos] == b'e' || s[pos] == b'E') {
        let exp_at = pos;
        pos += 1;
        if pos < s.len() && (s[pos] == b'+' || s[pos] == b'-') {
            pos += 1;
        }
        let exp_digits = pos;
        while pos < s.len() && s[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == exp_digits {
            return Err(err(exp_at, "exponent needs digits"));
        }
    }
    let text = std::str::from_utf8(&s[start..pos]).expect("ascii slice");
    let value = text.parse::<f64>().map_err(|e| err(start, &e.to_string()))?;
    Ok((value, pos))
}

/// Parses `a`, `bi`, or `a+bi` / `a-bi` with decimal literals. No whitespace;
/// the imaginary unit needs an explicit coefficient (`1i`, not `i`).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s = text.as_bytes();
    let err = |position: usize, message: &str| Error::Parse { position, message: message.to_string() };
    let (first, pos) = parse_float(s, 0)?;
    if pos == s.len() {
        return Ok(Complex64::new(first, 0.0));
    }
    match s[pos] {
        b'i' if pos + 1 == s.len() => Ok(Complex64::new(0.0, first)),
        b'+' | b'-' => {
            let (second, pos) = parse_float(s, pos)?;
            if pos < s.len() && s[pos] == b'i' && pos + 1 == s.len() {
                Ok(Complex64::new(first, second))
            } else {
                Err(err(pos, "expected 'i' at the end of the imaginary part"))
            }
        }
        _ => Err(err(pos, "unexpected character")),
    }
}

/// Formats as `a+bi` so that [`parse_complex`] reads it back exactly.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?}{}{:?}i", z.re, sign, z.im.abs())
}

#[derive(Debug, Parser)]
#[command(
    name = "ellzeta",
    version,
    about = "Weierstrass zeta, Hecke Z, p, p' and the Kronecker function via Gaussian lattice series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Run the identity verification suite.
    Verify(VerifyArgs),
    /// Convergence benchmark: Gaussian series against classical sums (CSV).
    Bench(BenchArgs),
    /// Triple-product coefficient and its reference value.
    Triple(TripleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    #[value(name = "zeta")]
    Zeta,
    #[value(name = "Z")]
    Z,
    #[value(name = "wp")]
    Wp,
    #[value(name = "wp_prime")]
    WpPrime,
    #[value(name = "F")]
    F,
    #[value(name = "theta11")]
    Theta11,
    #[value(name = "theta00")]
    Theta00,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::Zeta => "zeta",
            Function::Z => "Z",
            Function::Wp => "wp",
            Function::WpPrime => "wp_prime",
            Function::F => "F",
            Function::Theta11 => "theta11",
            Function::Theta00 => "theta00",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Modular parameter; the lattice is Z + Z*tau.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub omega1: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub omega2: Option<Complex64>,
}

impl LatticeArgs {
    fn resolve(&self) -> std::result::Result<(Complex64, Complex64), String> {
        match (self.tau, self.omega1, self.omega2) {
            (Some(tau), None, None) => Ok((Complex64::new(1.0, 0.0), tau)),
            (None, Some(w1), Some(w2)) => Ok((w1, w2)),
            _ => Err("give exactly one lattice: --tau, or both --omega1 and --omega2".into()),
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: Function,
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub x: Complex64,
    /// Second argument of F.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub y: Option<Complex64>,
    /// z-derivative order for theta11.
    #[arg(long, default_value_t = 0)]
    pub order: u32,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub timestamps: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Grid points per lattice direction.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Custom lattice instead of the three defaults.
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub timestamps: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFunction {
    #[value(name = "zeta")]
    Zeta,
    #[value(name = "F")]
    F,
    #[value(name = "all")]
    All,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchFunction::All)]
    pub function: BenchFunction,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1i")]
    pub tau: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.3+0.2i")]
    pub x: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.1+0.4i")]
    pub y: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseName {
    A,
    B,
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    #[arg(long, value_enum)]
    pub case: CaseName,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub u: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub v: Complex64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

fn cjson(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DegenerateLattice | Error::WrongOrientation { .. } | Error::InvalidArgument(_) | Error::Parse { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_NUMERICAL,
    }
}

struct Evaluated {
    lattice: (Complex64, Complex64),
    result: EvalResult,
}

fn evaluate(args: &EvalArgs, lattice: (Complex64, Complex64)) -> Result<Evaluated> {
    let need_tau = |lattice: (Complex64, Complex64)| -> Result<Complex64> {
        if lattice.0 != Complex64::new(1.0, 0.0) {
            return Err(Error::InvalidArgument(format!("{} takes --tau", args.function.name())));
        }
        Ok(lattice.1)
    };
    let result = match args.function {
        Function::Zeta => quasiperiods::zeta(&Lattice::new(lattice.0, lattice.1)?, args.x, args.tol)?,
        Function::Z => series::zee(&Lattice::new(lattice.0, lattice.1)?, args.x, args.tol)?,
        Function::Wp => series::wp(&Lattice::new(lattice.0, lattice.1)?, args.x, args.tol)?,
        Function::WpPrime => series::wp_prime(&Lattice::new(lattice.0, lattice.1)?, args.x, args.tol)?,
        Function::F => {
            let y = args.y.ok_or_else(|| Error::InvalidArgument("F needs --y".into()))?;
            series::kronecker_f(need_tau(lattice)?, args.x, y, args.tol)?
        }
        Function::Theta11 | Function::Theta00 => {
            let tau = need_tau(lattice)?;
            let (value, terms) = if args.function == Function::Theta11 {
                oracles::theta11_counted(tau, args.x, args.order)?
            } else {
                oracles::theta00_counted(tau, args.x)?
            };
            EvalResult {
                value,
                abs_error_estimate: 4.0 * f64::EPSILON * value.norm(),
                terms_used: terms,
                radius: terms as f64 / 2.0,
            }
        }
    };
    Ok(Evaluated { lattice, result })
}

fn eval_json(args: &EvalArgs, ev: &Evaluated, elapsed: Option<f64>) -> Value {
    let mut input = json!({ "x": cjson(args.x), "tol": args.tol });
    if let Some(y) = args.y {
        input["y"] = cjson(y);
    }
    if args.function == Function::Theta11 {
        input["order"] = json!(args.order);
    }
    let mut v = json!({
        "function": args.function.name(),
        "lattice": { "omega1": cjson(ev.lattice.0), "omega2": cjson(ev.lattice.1) },
        "input": input,
        "value": cjson(ev.result.value),
        "abs_error_estimate": ev.result.abs_error_estimate,
        "terms_used": ev.result.terms_used,
        "radius": ev.result.radius,
    });
    if let Some(t) = elapsed {
        v["wall_time_s"] = json!(t);
    }
    v
}

fn run_eval(args: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let lattice = match args.lattice.resolve() {
        Ok(l) => l,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let ev = match evaluate(args, lattice) {
        Ok(ev) => ev,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let elapsed = args.timestamps.then(|| start.elapsed().as_secs_f64());
    let r = &ev.result;
    let _ = match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&eval_json(args, &ev, elapsed)).unwrap()),
        Format::Csv => writeln!(
            out,
            "function,re,im,abs_error_estimate,terms_used,radius\n{},{:?},{:?},{:?},{},{:?}",
            args.function.name(),
            r.value.re,
            r.value.im,
            r.abs_error_estimate,
            r.terms_used,
            r.radius
        ),
        Format::Plain => writeln!(
            out,
            "{} = {}  (error <= {:e}, {} terms, radius {:.4})",
            args.function.name(),
            format_complex(r.value),
            r.abs_error_estimate,
            r.terms_used,
            r.radius
        ),
    };
    EXIT_OK
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let lattices = match (args.lattice.tau, args.lattice.omega1, args.lattice.omega2) {
        (None, None, None) => verify::default_lattices(),
        _ => match args.lattice.resolve() {
            Ok(l) => vec![l],
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                return EXIT_USAGE;
            }
        },
    };
    if args.n < 2 {
        let _ = writeln!(err, "error: --n must be at least 2");
        return EXIT_USAGE;
    }
    let grid = verify::GridSpec::with_n(args.n);
    let report = if args.timestamps {
        verify::run_suite_timed(&lattices, &grid, args.tol)
    } else {
        verify::run_suite(&lattices, &grid, args.tol)
    };
    let _ = match args.format {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Csv => {
            let _ = writeln!(out, "check,lattice,point,residual,threshold,pass");
            for r in &report.records {
                let _ = writeln!(
                    out,
                    "{},\"{}\",\"{}\",{},{:?},{}",
                    r.check,
                    r.lattice,
                    r.point,
                    r.residual.map(|x| format!("{x:?}")).unwrap_or_default(),
                    r.threshold,
                    r.pass
                );
            }
            Ok(())
        }
        Format::Plain => {
            for r in &report.records {
                let _ = writeln!(
                    out,
                    "{} {} [{}] {} residual={} threshold={:e}{}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check,
                    r.lattice,
                    r.point,
                    r.residual.map(|x| format!("{x:e}")).unwrap_or_else(|| "-".into()),
                    r.threshold,
                    r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default()
                );
            }
            writeln!(out, "overall: {}", if report.pass { "PASS" } else { "FAIL" })
        }
    };
    if report.pass {
        EXIT_OK
    } else {
        let _ = writeln!(err, "verification failed: {} records", report.failures().count());
        EXIT_CHECK_FAILED
    }
}

/// One row of the convergence benchmark.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub function: String,
    pub tau: Complex64,
    pub x: String,
    pub tol: Option<f64>,
    pub method: String,
    pub terms_used: usize,
    pub achieved_error: f64,
    pub wall_time_ns: u128,
}

pub const BENCH_TOLS: [f64; 5] = [1e-4, 1e-6, 1e-8, 1e-10, 1e-12];
pub const BENCH_CLASSICAL_RADII: [f64; 4] = [10.0, 20.0, 50.0, 100.0];

fn timed<T>(f: impl Fn() -> Result<T>) -> Result<(T, u128)> {
    let mut best = u128::MAX;
    let mut value = None;
    for _ in 0..3 {
        let start = Instant::now();
        let v = f()?;
        best = best.min(start.elapsed().as_nanos());
        value = Some(v);
    }
    Ok((value.unwrap(), best))
}

/// Gaussian vs classical convergence for zeta at `(tau, x)`.
pub fn bench_zeta(tau: Complex64, x: Complex64) -> Result<Vec<BenchRow>> {
    let lattice = Lattice::from_tau(tau)?;
    let oracle = oracles::zeta_theta_oracle(tau, x)?;
    let qp = quasiperiods::quasi_periods(&lattice)?;
    let mut rows = Vec::new();
    for tol in BENCH_TOLS {
        let (r, ns) = timed(|| quasiperiods::zeta_with(&lattice, &qp, x, tol))?;
        rows.push(BenchRow {
            function: "zeta".into(),
            tau,
            x: format_complex(x),
            tol: Some(tol),
            method: "gaussian".into(),
            terms_used: r.terms_used,
            achieved_error: (r.value - oracle).norm(),
            wall_time_ns: ns,
        });
    }
    for radius in BENCH_CLASSICAL_RADII {
        let ((value, terms), ns) = timed(|| oracles::zeta_classical_counted(&lattice, x, radius))?;
        rows.push(BenchRow {
            function: "zeta".into(),
            tau,
            x: format_complex(x),
            tol: None,
            method: "classical".into(),
            terms_used: terms,
            achieved_error: (value - oracle).norm(),
            wall_time_ns: ns,
        });
    }
    Ok(rows)
}

/// Gaussian vs q-series for the Kronecker function, both against the theta quotient.
pub fn bench_kronecker(tau: Complex64, x: Complex64, y: Complex64) -> Result<Vec<BenchRow>> {
    let oracle = oracles::f_theta(tau, x, y)?;
    let point = format!("{};{}", format_complex(x), format_complex(y));
    let mut rows = Vec::new();
    for tol in BENCH_TOLS {
        let (r, ns) = timed(|| series::kronecker_f(tau, x, y, tol))?;
        rows.push(BenchRow {
            function: "F".into(),
            tau,
            x: point.clone(),
            tol: Some(tol),
            method: "gaussian".into(),
            terms_used: r.terms_used,
            achieved_error: (r.value - oracle).norm(),
            wall_time_ns: ns,
        });
    }
    let ((value, terms), ns) = timed(|| oracles::f_qseries_counted(tau, x, y))?;
    rows.push(BenchRow {
        function: "F".into(),
        tau,
        x: point,
        tol: None,
        method: "qseries".into(),
        terms_used: terms,
        achieved_error: (value - oracle).norm(),
        wall_time_ns: ns,
    });
    Ok(rows)
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("function,tau,x,tol,method,terms_used,achieved_error,wall_time_ns\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{:e},{}\n",
            r.function,
            format_complex(r.tau),
            r.x,
            r.tol.map(|t| format!("{t:e}")).unwrap_or_default(),
            r.method,
            r.terms_used,
            r.achieved_error,
            r.wall_time_ns
        ));
    }
    s
}

fn run_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut rows = Vec::new();
    if matches!(args.function, BenchFunction::Zeta | BenchFunction::All) {
        match bench_zeta(args.tau, args.x) {
            Ok(r) => rows.extend(r),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return exit_code(&e);
            }
        }
    }
    if matches!(args.function, BenchFunction::F | BenchFunction::All) {
        match bench_kronecker(args.tau, args.x, args.y) {
            Ok(r) => rows.extend(r),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return exit_code(&e);
            }
        }
    }
    let _ = write!(out, "{}", bench_csv(&rows));
    EXIT_OK
}

fn run_triple(args: &TripleArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = (|| -> Result<Value> {
        let (case, reference, kind) = match args.case {
            CaseName::A => {
                let u = args.u.ok_or_else(|| Error::InvalidArgument("case a needs --u".into()))?;
                let f = series::kronecker_f(args.tau, u, -args.v, args.tol)?.value;
                (TripleCase::CaseA { u, v: args.v }, Complex64::new(0.0, 2.0 * PI) * f, "2*pi*i*F(u,-v)")
            }
            CaseName::B => {
                let l = Lattice::from_tau(args.tau)?;
                let z = series::zee(&l, args.v, args.tol)?.value;
                (TripleCase::CaseB { v: args.v }, -z, "-Z(v)")
            }
        };
        let coefficient = triple::triple_coefficient(case, args.tau, args.tol)?;
        Ok(json!({
            "case": match args.case { CaseName::A => "a", CaseName::B => "b" },
            "tau": cjson(args.tau),
            "u": cjson(case.u()),
            "v": cjson(case.v()),
            "coefficient": cjson(coefficient),
            "reference": cjson(reference),
            "reference_kind": kind,
            "residual": (coefficient - reference).norm(),
        }))
    })();
    match outcome {
        Ok(v) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match &cli.command {
        Command::Eval(a) => run_eval(a, out, err),
        Command::Verify(a) => run_verify(a, out, err),
        Command::Bench(a) => run_bench(a, out, err),
        Command::Triple(a) => run_triple(a, out, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_complex_literals() {
        assert_eq!(parse_complex("0.25+0.5i").unwrap(), Complex64::new(0.25, 0.5));
        assert_eq!(parse_complex("1e-3-2.5i").unwrap(), Complex64::new(0.001, -2.5));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("1i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-0.2-0.3i").unwrap(), Complex64::new(-0.2, -0.3));
        assert_eq!(parse_complex("1E+2+.5i").unwrap(), Complex64::new(100.0, 0.5));
    }

    #[test]
    fn rejects_bad_literals() {
        for (text, pos) in
            [("i", 0), ("1+i", 1), ("1 +2i", 1), ("1+2", 3), ("1e+i", 1), ("", 0), ("2ii", 1), ("nan", 0)]
        {
            match parse_complex(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn format_round_trips() {
        for z in [Complex64::new(0.1, -0.2), Complex64::new(-1e-300, 3.5e20), Complex64::new(1.0 / 3.0, 0.0)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn bench_terms_monotone() {
        let rows = bench_zeta(Complex64::new(0.0, 1.0), Complex64::new(0.3, 0.2)).unwrap();
        let gauss: Vec<_> = rows.iter().filter(|r| r.method == "gaussian").collect();
        assert_eq!(gauss.len(), BENCH_TOLS.len());
        for w in gauss.windows(2) {
            assert!(w[0].terms_used <= w[1].terms_used);
        }
    }
}
