//! `pi-prover` command line: derive series parameters from Weber polynomials,
//! verify series against pi, and validate polynomial data files.
//!
//! Exit codes: 0 all checks passed, 2 a check was proved false,
//! 3 inconclusive at the working precision, 64 usage or input error.

pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use pi_prover_core::modeq::validate_modular_polynomial;
use pi_prover_core::numcore::pi_oracle;
use pi_prover_core::polyring::PolyFile;
use pi_prover_core::prover::{prove, Proof, SeriesParams, Surd};
use pi_prover_core::series::{verify_against_pi, VerificationReport};
use pi_prover_core::{data, Error, Precision, Rational};
use sha2::{Digest, Sha256};

use report::{
    to_json, AllReport, ConstantReport, ParamsInput, ParamsJson, PolySource, ProofReport, SeriesJson,
    SeriesReport, ValidationJson, TOOL_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable naming the polynomial data directory.
pub const DATA_ENV: &str = "PI_PROVER_DATA";

#[derive(Parser, Debug)]
#[command(name = "pi-prover", version, about = "Derive and verify Ramanujan-type series for 1/pi")]
struct Cli {
    /// Directory holding phi<d>.txt files (overrides PI_PROVER_DATA)
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,

    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive (z, a, b) for one degree and run every check
    Prove {
        #[arg(long)]
        degree: u32,
        /// Working precision in decimal digits
        #[arg(long, default_value_t = 200)]
        precision: u32,
        /// Digits for the series check against pi
        #[arg(long, default_value_t = 1000)]
        verify_digits: u32,
        #[arg(long)]
        poly_file: Option<PathBuf>,
    },
    /// Sum a series and compare it with 1/pi
    VerifySeries(VerifyArgs),
    /// Check a polynomial file against q-expansions of the Weber function
    ValidateModeq {
        #[arg(long)]
        degree: u32,
        /// Evaluation point tau = i * T, given as "n/d" or a decimal
        #[arg(long, default_value = "1")]
        tau: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long)]
        poly_file: Option<PathBuf>,
    },
    /// Print a reference constant
    Constants {
        #[arg(value_parser = ["pi"])]
        name: String,
        #[arg(long, default_value_t = 100)]
        digits: u32,
    },
    /// Prove and verify every shipped degree
    All {
        #[arg(long, default_value_t = 1000)]
        digits: u32,
        #[arg(long, default_value_t = 200)]
        precision: u32,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "params", conflicts_with = "params")]
    degree: Option<u32>,
    /// JSON file with s, z, a, b
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    digits: u32,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError { code: exit_code(&e), message: e.to_string() }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_inconclusive() => EXIT_INCONCLUSIVE,
        Error::InvalidPrecision(_)
        | Error::UnsupportedDegree(_)
        | Error::InvalidArgument(_)
        | Error::Parse { .. }
        | Error::DuplicateMonomial { .. }
        | Error::ExponentOverflow { .. }
        | Error::MixedParity(..) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

type CliResult = Result<i32, CliError>;

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
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
    let data_dir = cli.data_dir.clone().or_else(|| std::env::var_os(DATA_ENV).map(PathBuf::from));
    let ctx = Ctx { data_dir, json: cli.json };
    let result = match cli.command {
        Command::Prove { degree, precision, verify_digits, poly_file } => {
            ctx.prove(out, degree, precision, verify_digits, poly_file.as_deref())
        }
        Command::VerifySeries(args) => ctx.verify_series(out, args),
        Command::ValidateModeq { degree, tau, digits, poly_file } => {
            ctx.validate(out, degree, &tau, digits, poly_file.as_deref())
        }
        Command::Constants { digits, .. } => ctx.pi(out, digits),
        Command::All { digits, precision } => ctx.all(out, digits, precision),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

struct Ctx {
    data_dir: Option<PathBuf>,
    json: bool,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn precision(digits: u32) -> Result<Precision, CliError> {
    Precision::new(digits).map_err(CliError::from)
}

fn check_degree(d: u32) -> Result<(), CliError> {
    if data::DEGREES.contains(&d) {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree(d).into())
    }
}

/// `"n/d"`, an integer, or a plain decimal such as `1.25`.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let bad = || CliError::usage(format!("not a rational number: {s:?}"));
    if s.contains('/') {
        let r = Rational::from_str(s).map_err(|_| bad())?;
        return Ok(r);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(&digits).map_err(|_| bad())?;
    let r = Rational::new(num, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -r } else { r })
}

impl Ctx {
    fn emit(&self, out: &mut dyn Write, json: impl FnOnce() -> String, text: impl FnOnce() -> String) -> Result<(), CliError> {
        let s = if self.json { json() } else { text() };
        writeln!(out, "{s}").map_err(|e| CliError::usage(format!("write failed: {e}")))
    }

    fn load(&self, d: u32, explicit: Option<&Path>) -> Result<(PolyFile, PolySource), CliError> {
        let path = match (explicit, &self.data_dir) {
            (Some(p), _) => Some(p.to_path_buf()),
            (None, Some(dir)) => Some(dir.join(data::file_name(d))),
            (None, None) => None,
        };
        let (text, label) = match path {
            Some(p) => {
                let text = std::fs::read_to_string(&p)
                    .map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display())))?;
                (text, p.display().to_string())
            }
            None => (data::bundled_text(d)?.to_string(), format!("bundled:{}", data::file_name(d))),
        };
        let file = PolyFile::parse(&text).map_err(|e| CliError { code: EXIT_USAGE, message: format!("{label}: {e}") })?;
        Ok((file, PolySource { path: label, sha256: sha256_hex(text.as_bytes()) }))
    }

    fn proof_report(&self, d: u32, digits: u32, verify_digits: u32, poly_file: Option<&Path>) -> Result<ProofReport, CliError> {
        check_degree(d)?;
        let p = precision(digits)?;
        let start = Instant::now();
        let (file, source) = self.load(d, poly_file)?;
        let proof = prove(d, &file, p)?;
        let verification = verify_against_pi(&proof.primary.derived.params, verify_digits)?;
        Ok(ProofReport::new(&proof, file.form.as_str(), source, &verification, start.elapsed().as_secs_f64()))
    }

    fn prove(&self, out: &mut dyn Write, d: u32, digits: u32, verify_digits: u32, poly_file: Option<&Path>) -> CliResult {
        let rep = self.proof_report(d, digits, verify_digits, poly_file)?;
        self.emit(out, || to_json(&rep), || proof_text(&rep))?;
        Ok(if rep.passed { EXIT_OK } else { EXIT_FAILED })
    }

    fn verify_series(&self, out: &mut dyn Write, args: VerifyArgs) -> CliResult {
        let start = Instant::now();
        let (params, source) = match (args.degree, &args.params) {
            (Some(d), _) => {
                check_degree(d)?;
                let (file, src) = self.load(d, None)?;
                let proof: Proof = prove(d, &file, Precision::DERIVATION)?;
                (proof.primary.derived.params, format!("degree {d} from {} (sha256 {})", src.path, src.sha256))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
                let params = params_from_json(&text)?;
                (params, format!("{} (sha256 {})", path.display(), sha256_hex(text.as_bytes())))
            }
            (None, None) => return Err(CliError::usage("one of --degree or --params is required")),
        };
        let rep: VerificationReport = verify_against_pi(&params, args.digits)?;
        let report = SeriesReport {
            kind: "series".into(),
            tool_version: TOOL_VERSION.into(),
            source,
            params: ParamsJson::new(&params),
            verification: SeriesJson::new(&rep),
            wall_time_s: start.elapsed().as_secs_f64(),
        };
        self.emit(out, || to_json(&report), || series_text(&report))?;
        Ok(if rep.passed() { EXIT_OK } else { EXIT_FAILED })
    }

    fn validate(&self, out: &mut dyn Write, d: u32, tau: &str, digits: u32, poly_file: Option<&Path>) -> CliResult {
        let t = parse_rational(tau)?;
        if t <= Rational::from_integer(0.into()) {
            return Err(CliError::usage("--tau must be positive"));
        }
        let p = precision(digits)?;
        let start = Instant::now();
        let (file, source) = self.load(d, poly_file)?;
        let rep = validate_modular_polynomial(&file.poly, d, &t, p);
        let json = ValidationJson::new(&rep, source, start.elapsed().as_secs_f64());
        self.emit(out, || to_json(&json), || validation_text(&json))?;
        Ok(match (rep.passed, rep.degenerate) {
            (true, false) => EXIT_OK,
            (true, true) => EXIT_INCONCLUSIVE,
            (false, _) => EXIT_FAILED,
        })
    }

    fn pi(&self, out: &mut dyn Write, digits: u32) -> CliResult {
        if digits == 0 {
            return Err(CliError::usage("--digits must be positive"));
        }
        let start = Instant::now();
        let value = pi_digits(digits)?;
        let rep = ConstantReport {
            kind: "constant".into(),
            tool_version: TOOL_VERSION.into(),
            name: "pi".into(),
            digits,
            value,
            wall_time_s: start.elapsed().as_secs_f64(),
        };
        self.emit(out, || to_json(&rep), || rep.value.clone())?;
        Ok(EXIT_OK)
    }

    fn all(&self, out: &mut dyn Write, digits: u32, precision_digits: u32) -> CliResult {
        let start = Instant::now();
        let mut proofs = Vec::new();
        for d in data::DEGREES {
            proofs.push(self.proof_report(d, precision_digits, digits, None)?);
        }
        let passed = proofs.iter().all(|p| p.passed);
        let rep = AllReport {
            kind: "all".into(),
            tool_version: TOOL_VERSION.into(),
            digits,
            proofs,
            passed,
            wall_time_s: start.elapsed().as_secs_f64(),
        };
        self.emit(out, || to_json(&rep), || all_text(&rep))?;
        Ok(if passed { EXIT_OK } else { EXIT_FAILED })
    }
}

/// Parse a `verify-series --params` file.
pub fn params_from_json(text: &str) -> Result<SeriesParams, CliError> {
    let input: ParamsInput = serde_json::from_str(text).map_err(|e| CliError::usage(format!("bad params file: {e}")))?;
    let surd = |s: &report::SurdInput| -> Result<Surd, CliError> {
        Ok(Surd::new(parse_rational(&s.coefficient)?, s.radicand)?)
    };
    Ok(SeriesParams::new(input.s, input.d, parse_rational(&input.z)?, surd(&input.a)?, surd(&input.b)?)?)
}

/// First `digits` decimals of pi, certified by an enclosure whose ends
/// agree on every printed digit.
pub fn pi_digits(digits: u32) -> Result<String, CliError> {
    let scale = Rational::from_integer(BigInt::from(10).pow(digits));
    let mut guard = 10;
    loop {
        let p = precision(digits + guard)?;
        let pi = pi_oracle(p).real_part();
        let lo = (pi.lower().to_rational() * &scale).floor().to_integer();
        let hi = (pi.upper().to_rational() * &scale).floor().to_integer();
        if lo == hi {
            let s = lo.to_string();
            let (int, frac) = s.split_at(1);
            return Ok(format!("{int}.{frac}"));
        }
        guard *= 2;
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn proof_text(r: &ProofReport) -> String {
    let c = &r.checks;
    let v = &r.verification;
    let mut lines = vec![
        format!("degree {} ({} polynomial, u^{} map)", r.degree, r.form, r.w_map_exponent),
        format!("polynomial: {} sha256 {}", r.polynomial.path, r.polynomial.sha256),
        format!("precision: {} digits, confirmed at {}", r.precision_digits, r.confirmation_digits),
        format!("u0 = {}", r.solution.u0_expr),
        format!("v0 = {}", r.solution.v0_expr),
        format!("residuals: w-map 1e{}, polynomial 1e{}", r.residuals.w_map.rad_exp, r.residuals.polynomial.rad_exp),
        format!("m0 = {} + {}i", short(&r.chain.m0.re), short(&r.chain.m0.im)),
        format!("z = {}", r.params.z.trim_end_matches("/1")),
        format!("a = {}", r.params.a.text),
        format!("b = {}", r.params.b.text),
        "checks:".into(),
        format!("  beta0 = 1 - alpha0            {}", mark(c.beta_complement)),
        format!("  |m0|^2 = 1/d                  {}", mark(c.multiplier_norm)),
        format!("  beta'0/alpha'0 = 1/(d m0^2)   {}", mark(c.multiplier_ratio)),
        format!("  b^2 = (1 - z)(4d - 1)         {}", mark(c.b_squared)),
        format!("  J(q) = 1728/z                 {}", mark(c.heegner)),
        format!("  constants stable at 2x digits {}", mark(c.confirmed)),
        format!(
            "series: {} of {} digits of 1/pi in {} terms {}",
            v.digits_matched,
            v.digits_requested,
            v.terms_used,
            mark(v.passed)
        ),
    ];
    lines.push(format!("time: {:.2} s", r.wall_time_s));
    lines.join("\n")
}

fn short(s: &str) -> String {
    match s.split_once('e') {
        Some((m, e)) if m.len() > 22 => format!("{}e{e}", &m[..22]),
        _ => s.to_string(),
    }
}

fn series_text(r: &SeriesReport) -> String {
    let v = &r.verification;
    [
        format!("source: {}", r.source),
        format!("z = {}", r.params.z),
        format!("a = {}", r.params.a.text),
        format!("b = {}", r.params.b.text),
        format!("digits matched: {} of {}", v.digits_matched, v.digits_requested),
        format!("terms used: {}", v.terms_used),
        format!("residual: |sum - 1/pi| <= 1e{}", v.residual.rad_exp.max(residual_exp(&v.residual))),
        format!("{} ({:.3} s)", if v.passed { "PASS" } else { "FAIL" }, r.wall_time_s),
    ]
    .join("\n")
}

/// Decimal exponent of the midpoint, for a rough magnitude.
fn residual_exp(b: &report::Ball) -> i64 {
    b.re.split_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(i64::MIN) + 1
}

fn validation_text(r: &ValidationJson) -> String {
    let mut lines = vec![
        format!("degree {} from {} sha256 {}", r.degree, r.polynomial.path, r.polynomial.sha256),
        format!("tau = i * {}, {} digits (working {})", rational_short(&r.tau), r.digits, r.working_digits),
    ];
    for o in &r.orderings {
        lines.push(format!(
            "  {:<24} residual {} +/- 1e{} {}",
            o.label,
            short(&o.residual.re),
            o.residual.rad_exp,
            if o.contains_zero { "contains 0" } else { "" }
        ));
    }
    let verdict = match (r.passed, r.degenerate) {
        (true, false) => "PASS",
        (true, true) => "DEGENERATE",
        _ => "FAIL",
    };
    lines.push(verdict.into());
    lines.join("\n")
}

fn rational_short(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}

fn all_text(r: &AllReport) -> String {
    let mut lines: Vec<String> = r
        .proofs
        .iter()
        .map(|p| {
            format!(
                "d={:<3} z = {:<22} a = {:<36} {} digits {}",
                p.degree,
                rational_short(&p.params.z),
                p.params.a.text,
                p.verification.digits_matched,
                if p.passed { "PASS" } else { "FAIL" }
            )
        })
        .collect();
    lines.push(format!("{} ({:.2} s)", if r.passed { "all degrees pass" } else { "FAILURES" }, r.wall_time_s));
    lines.join("\n")
}
