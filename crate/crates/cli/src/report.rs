//! JSON reports. Balls are written as a truncated decimal midpoint plus a
//! radius exponent `r` such that the exact value lies within `10^r` of the
//! printed midpoint. Exact rationals are written as `"num/den"`.

use num_bigint::BigInt;
use pi_prover_core::modeq::ValidationReport;
use pi_prover_core::numcore::{Float, Mag};
use pi_prover_core::prover::{Derivation, Proof, SeriesParams, Surd};
use pi_prover_core::series::VerificationReport;
use pi_prover_core::{ComplexBall, Rational};
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = concat!("pi-prover ", env!("CARGO_PKG_VERSION"));

/// Significant digits printed for exact (zero-radius) midpoints.
const EXACT_DIGITS: i64 = 60;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub re: String,
    pub im: String,
    pub rad_exp: i64,
}

fn decimal_exponent(x: &Float) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let (m, e2) = x.to_f64_exp();
    Some((m.abs().log10() + e2 as f64 * std::f64::consts::LOG10_2).floor() as i64)
}

/// `x` truncated toward zero at the digit `10^place`.
fn truncated(x: &Float, place: i64) -> String {
    let r = x.to_rational();
    let scale = Rational::from_integer(BigInt::from(10).pow(place.unsigned_abs() as u32));
    let scaled = if place <= 0 { r * scale } else { r / scale };
    let n = scaled.trunc().to_integer();
    if n == BigInt::from(0) {
        return "0".into();
    }
    let s = n.magnitude().to_string();
    let sign = if n < BigInt::from(0) { "-" } else { "" };
    let exp = place + s.len() as i64 - 1;
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

impl Ball {
    pub fn from_complex(x: &ComplexBall) -> Ball {
        let rad = x.rad();
        let top = [decimal_exponent(x.re_mid()), decimal_exponent(x.im_mid())].into_iter().flatten().max();
        let place = if rad.is_zero() {
            top.unwrap_or(0) - EXACT_DIGITS
        } else {
            rad.log10().floor() as i64 - 2
        };
        let slack = Mag::pow10_neg_up(-place).mul_2exp(1);
        let rad_exp = rad.add(slack).log10_upper().ceil() as i64;
        Ball { re: truncated(x.re_mid(), place), im: truncated(x.im_mid(), place), rad_exp }
    }
}

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurdJson {
    pub coefficient: String,
    pub radicand: u64,
    pub text: String,
}

impl SurdJson {
    pub fn new(s: &Surd) -> SurdJson {
        SurdJson { coefficient: rational(s.coefficient()), radicand: s.radicand(), text: s.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub s: u32,
    pub level: u32,
    pub d: u32,
    pub z: String,
    pub a: SurdJson,
    pub b: SurdJson,
}

impl ParamsJson {
    pub fn new(p: &SeriesParams) -> ParamsJson {
        ParamsJson { s: p.s, level: p.level, d: p.d, z: rational(&p.z), a: SurdJson::new(&p.a), b: SurdJson::new(&p.b) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolySource {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub u0_expr: String,
    pub v0_expr: String,
    pub u0: Ball,
    pub v0: Ball,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualsJson {
    pub w_map: Ball,
    pub polynomial: Ball,
    pub certified_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainJson {
    pub vp: Ball,
    pub vpp: Ball,
    pub alpha0: Ball,
    pub alphap: Ball,
    pub alphapp: Ball,
    pub beta0: Ball,
    pub betap: Ball,
    pub betapp: Ball,
    pub m0: Ball,
    pub m0_norm_sq: Ball,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub beta_complement: bool,
    pub multiplier_norm: bool,
    pub multiplier_ratio: bool,
    pub b_squared: bool,
    pub heegner: bool,
    pub heegner_difference: Ball,
    pub confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub digits_requested: u32,
    pub digits_matched: u32,
    pub terms_used: u64,
    pub residual: Ball,
    pub passed: bool,
}

impl SeriesJson {
    pub fn new(r: &VerificationReport) -> SeriesJson {
        SeriesJson {
            digits_requested: r.digits_requested,
            digits_matched: r.digits_matched,
            terms_used: r.terms_used,
            residual: Ball::from_complex(&r.residual),
            passed: r.passed(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofReport {
    pub kind: String,
    pub tool_version: String,
    pub degree: u32,
    pub form: String,
    pub w_map_exponent: u32,
    pub polynomial: PolySource,
    pub precision_digits: u32,
    pub confirmation_digits: u32,
    pub solution: SolutionJson,
    pub residuals: ResidualsJson,
    pub chain: ChainJson,
    pub params: ParamsJson,
    pub z_ball: Ball,
    pub a_ball: Ball,
    pub b_ball: Ball,
    pub checks: ChecksJson,
    pub verification: SeriesJson,
    pub passed: bool,
    pub wall_time_s: f64,
}

impl ProofReport {
    pub fn new(proof: &Proof, form: &str, polynomial: PolySource, verification: &VerificationReport, wall_time_s: f64) -> ProofReport {
        let d: &Derivation = &proof.primary;
        let c = &d.chain;
        let b = Ball::from_complex;
        let checks = ChecksJson {
            beta_complement: d.checks.beta_complement,
            multiplier_norm: d.checks.multiplier_norm,
            multiplier_ratio: d.checks.multiplier_ratio,
            b_squared: d.checks.b_squared,
            heegner: d.checks.heegner,
            heegner_difference: b(&d.checks.heegner_difference),
            confirmed: proof.confirmed(),
        };
        let passed = d.checks.all_pass() && proof.confirmed() && verification.passed();
        ProofReport {
            kind: "proof".into(),
            tool_version: TOOL_VERSION.into(),
            degree: proof.degree,
            form: form.into(),
            w_map_exponent: proof.form.exponent(),
            polynomial,
            precision_digits: d.precision.digits(),
            confirmation_digits: proof.confirmation.precision.digits(),
            solution: SolutionJson {
                u0_expr: d.solution.u0.to_string(),
                v0_expr: d.solution.v0.to_string(),
                u0: b(&c.u0),
                v0: b(&c.v0),
            },
            residuals: ResidualsJson {
                w_map: b(&d.residuals.w_residual),
                polynomial: b(&d.residuals.p_residual),
                certified_zero: d.residuals.certified_zero,
            },
            chain: ChainJson {
                vp: b(&c.vp),
                vpp: b(&c.vpp),
                alpha0: b(&c.alpha0),
                alphap: b(&c.alphap),
                alphapp: b(&c.alphapp),
                beta0: b(&c.beta0),
                betap: b(&c.betap),
                betapp: b(&c.betapp),
                m0: b(&c.m0),
                m0_norm_sq: b(&c.multiplier_norm_sq()),
            },
            params: ParamsJson::new(&d.derived.params),
            z_ball: b(&d.derived.z_ball),
            a_ball: b(&d.derived.a_ball),
            b_ball: b(&d.derived.b_ball),
            checks,
            verification: SeriesJson::new(verification),
            passed,
            wall_time_s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub kind: String,
    pub tool_version: String,
    pub source: String,
    pub params: ParamsJson,
    pub verification: SeriesJson,
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingJson {
    pub label: String,
    pub residual: Ball,
    pub contains_zero: bool,
    pub certified_small: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationJson {
    pub kind: String,
    pub tool_version: String,
    pub degree: u32,
    pub polynomial: PolySource,
    pub tau: String,
    pub digits: u32,
    pub working_digits: u32,
    pub orderings: Vec<OrderingJson>,
    pub passed: bool,
    pub degenerate: bool,
    pub wall_time_s: f64,
}

impl ValidationJson {
    pub fn new(r: &ValidationReport, polynomial: PolySource, wall_time_s: f64) -> ValidationJson {
        ValidationJson {
            kind: "validation".into(),
            tool_version: TOOL_VERSION.into(),
            degree: r.degree,
            polynomial,
            tau: rational(&r.t),
            digits: r.digits,
            working_digits: r.working_digits,
            orderings: r
                .orderings
                .iter()
                .map(|o| OrderingJson {
                    label: o.label.clone(),
                    residual: Ball::from_complex(&o.residual),
                    contains_zero: o.contains_zero,
                    certified_small: o.certified_small,
                })
                .collect(),
            passed: r.passed,
            degenerate: r.degenerate,
            wall_time_s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub kind: String,
    pub tool_version: String,
    pub name: String,
    pub digits: u32,
    pub value: String,
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AllReport {
    pub kind: String,
    pub tool_version: String,
    pub digits: u32,
    pub proofs: Vec<ProofReport>,
    pub passed: bool,
    pub wall_time_s: f64,
}

/// Input format of `verify-series --params`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsInput {
    #[serde(default = "default_s")]
    pub s: u32,
    #[serde(default)]
    pub d: u32,
    pub z: String,
    pub a: SurdInput,
    pub b: SurdInput,
}

fn default_s() -> u32 {
    6
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurdInput {
    pub coefficient: String,
    #[serde(default = "default_radicand")]
    pub radicand: u64,
}

fn default_radicand() -> u64 {
    1
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use pi_prover_core::numcore::ratio;
    use pi_prover_core::RealBall;

    #[test]
    fn ball_encloses_value() {
        let x = ComplexBall::from(RealBall::from_int(2).sqrt(400).unwrap());
        let b = Ball::from_complex(&x);
        assert!(b.re.starts_with("1.41421356237309504880"));
        assert_eq!(b.im, "0");
        assert!(b.rad_exp <= -115 && b.rad_exp >= -122, "{}", b.rad_exp);
    }

    #[test]
    fn exact_ball() {
        let b = Ball::from_complex(&ComplexBall::from_rational(&ratio(-3, 4), 64));
        assert_eq!(b.re, "-7.5e-1");
        assert!(b.rad_exp < -55);
        assert_eq!(Ball::from_complex(&ComplexBall::zero()).re, "0");
    }

    #[test]
    fn rational_format() {
        assert_eq!(rational(&ratio(-1, 85184000)), "-1/85184000");
        assert_eq!(rational(&ratio(6, 1)), "6/1");
    }
}
