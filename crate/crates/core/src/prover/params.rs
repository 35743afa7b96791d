//! Series parameters `(z, a, b)` from a derivative chain.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numcore::{ratio, ComplexBall, Precision, Rational, RealBall};

use super::chain::DerivativeChain;
use super::surd::{radicand_hint, recognize_surd, Surd};

/// `sum_n (1/2)_n (1/s)_n (1-1/s)_n / n!^3 * (a + b n) z^n = 1/pi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesParams {
    pub s: u32,
    pub level: u32,
    /// Degree of the modular equation it came from (0 if not derived).
    pub d: u32,
    pub z: Rational,
    pub a: Surd,
    pub b: Surd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesSign {
    Positive,
    Alternating,
}

/// `4 sin^2(pi/s)` for the four admissible `s`.
pub fn level_for(s: u32) -> Result<u32> {
    match s {
        2 => Ok(4),
        3 => Ok(3),
        4 => Ok(2),
        6 => Ok(1),
        _ => Err(Error::InvalidArgument(format!("s must be 2, 3, 4 or 6, got {s}"))),
    }
}

impl SeriesParams {
    pub fn new(s: u32, d: u32, z: Rational, a: Surd, b: Surd) -> Result<SeriesParams> {
        let level = level_for(s)?;
        if z.is_zero() {
            return Err(Error::InvalidArgument("z must be nonzero".into()));
        }
        Ok(SeriesParams { s, level, d, z, a, b })
    }

    pub fn sign(&self) -> SeriesSign {
        if self.z.is_negative() {
            SeriesSign::Alternating
        } else {
            SeriesSign::Positive
        }
    }
}

impl fmt::Display for SeriesParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} z={} a={} b={}", self.s, self.z, self.a, self.b)
    }
}

/// Recognized parameters with the balls they came from.
#[derive(Clone, Debug)]
pub struct DerivedParams {
    pub params: SeriesParams,
    pub z_ball: ComplexBall,
    pub a_ball: ComplexBall,
    pub b_ball: ComplexBall,
    /// `m'0 / alpha'0`.
    pub mprime_over_alphap: ComplexBall,
}

/// Largest denominator accepted during recognition.
pub fn default_denom_bound() -> BigInt {
    BigInt::from(10).pow(30)
}

/// `z = 4 alpha0 beta0`.
pub fn z_formula(alpha0: &ComplexBall, beta0: &ComplexBall, prec: u64) -> ComplexBall {
    alpha0.mul(beta0, prec).mul_int(4, prec)
}

/// `b = (1 - 2 alpha0) sqrt(k)`.
pub fn b_formula(alpha0: &ComplexBall, k: u64, prec: u64) -> Result<ComplexBall> {
    let root = RealBall::from_int(k).sqrt(prec)?;
    Ok(ComplexBall::one().sub(&alpha0.mul_int(2, prec), prec).mul_real(&root, prec))
}

/// `m'0/alpha'0 = (m0 + 1/(d m0))/2 * (alpha0 - beta0)/(alpha0 beta0)
///               + m0/(2 alpha'0) * (alpha''0/alpha'0 - beta''0/beta'0)`.
pub fn mprime_over_alphap(c: &DerivativeChain, prec: u64) -> Result<ComplexBall> {
    let d = c.d as i64;
    let ab = c.alpha0.mul(&c.beta0, prec);
    let first = c
        .m0
        .add(&c.m0.mul_int(d, prec).inv(prec)?, prec)
        .mul_2exp(-1)
        .mul(&c.alpha0.sub(&c.beta0, prec), prec)
        .div(&ab, prec)?;
    let curv = c.alphapp.div(&c.alphap, prec)?.sub(&c.betapp.div(&c.betap, prec)?, prec);
    let second = c.m0.div(&c.alphap.mul_int(2, prec), prec)?.mul(&curv, prec);
    Ok(first.add(&second, prec))
}

fn raw_balls(c: &DerivativeChain, k: u64) -> Result<(ComplexBall, ComplexBall, ComplexBall, ComplexBall)> {
    let prec = c.precision.bits();
    let z = z_formula(&c.alpha0, &c.beta0, prec);
    let b = b_formula(&c.alpha0, k, prec)?;
    let mq = mprime_over_alphap(c, prec)?;
    // level one: d / sqrt(l) = d
    let a = c.alpha0.mul(&c.beta0, prec).mul(&mq, prec).mul_int(-2 * c.d as i64, prec);
    for (name, x) in [("z", &z), ("a", &a), ("b", &b)] {
        if !x.imag_part().contains_zero() {
            return Err(Error::NonRealResult(name));
        }
    }
    Ok((z, a, b, mq))
}

fn recognize(
    d: u32,
    k: u64,
    balls: (ComplexBall, ComplexBall, ComplexBall, ComplexBall),
    p: Precision,
) -> Result<DerivedParams> {
    let (z_ball, a_ball, b_ball, mq) = balls;
    let bound = default_denom_bound();
    let z = recognize_surd(&z_ball, 1, &bound, p)?.coefficient().clone();
    let mut candidates: Vec<u64> = radicand_hint(&z, k).into_iter().collect();
    candidates.extend((1..=1000u64).filter(|&m| is_squarefree(m)));
    let mut last_err = None;
    for m in candidates {
        let b = match recognize_surd(&b_ball, m, &bound, p) {
            Ok(b) => b,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        match recognize_surd(&a_ball, m, &bound, p) {
            Ok(a) => {
                let params = SeriesParams::new(6, d, z, a, b)?;
                return Ok(DerivedParams { params, z_ball, a_ball, b_ball, mprime_over_alphap: mq });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::RecognitionFailed { what: "a, b".into() }))
}

fn is_squarefree(m: u64) -> bool {
    (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
}

/// Alternating branch at level one: `b = (1 - 2 alpha0) sqrt(4d - 1)`.
pub fn series_params_alternating(d: u32, chain: &DerivativeChain, p: Precision) -> Result<DerivedParams> {
    let k = 4 * d as u64 - 1;
    let balls = raw_balls(chain, k)?;
    recognize(d, k, balls, p)
}

/// Positive branch at level one: `b = (1 - 2 alpha0) sqrt(4d)`.
///
/// Requires `alpha0, beta0` certified real and inside `(0, 1)`.
pub fn series_params_positive(d: u32, chain: &DerivativeChain, p: Precision) -> Result<DerivedParams> {
    for x in [&chain.alpha0, &chain.beta0] {
        let re = x.real_part();
        let inside = re.is_positive() && ComplexBall::from(re).sub(&ComplexBall::one(), 64).real_part().is_negative();
        if !x.imag_part().contains_zero() || !inside {
            return Err(Error::SignContract("alpha0 and beta0 must lie in (0, 1)"));
        }
    }
    let k = 4 * d as u64;
    let b = b_formula(&chain.alpha0, k, chain.precision.bits())?;
    if b.contains_zero() {
        return Err(Error::DegenerateSeries("b = 0 at alpha0 = 1/2"));
    }
    let balls = raw_balls(chain, k)?;
    if !balls.0.real_part().is_positive() {
        return Err(Error::SignContract("z must be positive"));
    }
    recognize(d, k, balls, p)
}

/// `b^2 = (1 - z) k` holds exactly.
pub fn b_squared_identity(params: &SeriesParams, k: u64) -> bool {
    params.b.square() == (ratio(1, 1) - &params.z) * Rational::from_integer(k.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels() {
        assert_eq!(level_for(6).unwrap(), 1);
        assert_eq!(level_for(2).unwrap(), 4);
        assert!(level_for(5).is_err());
    }

    #[test]
    fn squarefree_candidates() {
        assert!(is_squarefree(330) && is_squarefree(1) && !is_squarefree(12));
    }
}
