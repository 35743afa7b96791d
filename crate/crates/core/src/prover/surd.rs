//! Exact constants of the form `r sqrt(M)` and their recovery from balls.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numcore::{pow10_neg, ComplexBall, Mag, Precision, Rational, RealBall};

/// `coefficient * sqrt(radicand)` with a square-free radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    coefficient: Rational,
    radicand: u64,
}

impl Surd {
    /// Normalizes by moving square factors of `radicand` into the coefficient.
    pub fn new(coefficient: Rational, radicand: u64) -> Result<Surd> {
        if radicand == 0 {
            return Err(Error::InvalidArgument("radicand must be positive".into()));
        }
        let (sq, free) = square_split(radicand);
        Ok(Surd { coefficient: coefficient * Rational::from_integer(sq.into()), radicand: free })
    }

    pub fn rational(r: Rational) -> Surd {
        Surd { coefficient: r, radicand: 1 }
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// Exact square `r^2 M`.
    pub fn square(&self) -> Rational {
        &self.coefficient * &self.coefficient * Rational::from_integer(self.radicand.into())
    }

    /// Exact quotient when both radicands agree.
    pub fn ratio(&self, other: &Surd) -> Option<Rational> {
        (self.radicand == other.radicand && !other.coefficient.is_zero())
            .then(|| &self.coefficient / &other.coefficient)
    }

    pub fn to_ball(&self, prec: u64) -> Result<RealBall> {
        let c = RealBall::from_rational(&self.coefficient, prec);
        if self.radicand == 1 {
            return Ok(c);
        }
        Ok(c.mul(&RealBall::from_int(self.radicand).sqrt(prec)?, prec))
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.coefficient)
        } else {
            write!(f, "{} * sqrt({})", self.coefficient, self.radicand)
        }
    }
}

/// `n = sq^2 * free` with `free` square-free.
fn square_split(mut n: u64) -> (u64, u64) {
    let (mut sq, mut free) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        sq *= p.pow(k / 2);
        if k % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (sq, free * n)
}

/// Square-free part of a positive integer, or `None` if it cannot be
/// certified cheaply (a cofactor above the trial-division limit cubed).
pub fn squarefree_part(n: &BigInt) -> Option<BigInt> {
    const LIMIT: u64 = 200_000;
    let mut n = n.abs();
    if n.is_zero() {
        return None;
    }
    let mut free = BigInt::one();
    let mut p = 2u64;
    while p <= LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        let mut k = 0;
        loop {
            let (qq, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            n = qq;
            k += 1;
        }
        if k % 2 == 1 {
            free *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Some(free);
    }
    // the cofactor has no prime factor <= LIMIT
    let limit = BigInt::from(LIMIT);
    if n > &limit * &limit * &limit {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == n {
        Some(free)
    } else {
        Some(free * n)
    }
}

/// Radicand suggested by `b^2 = (1 - z)(4d - 1)` at level one, where
/// `k = 4d - 1` (alternating) or `4d` (positive).
pub fn radicand_hint(z: &Rational, k: u64) -> Option<u64> {
    let sq = (Rational::one() - z) * Rational::from_integer(k.into());
    let prod = sq.numer() * sq.denom();
    squarefree_part(&prod)?.to_u64()
}

/// Recover `x = r sqrt(radicand)` with `den(r) <= denom_bound`.
///
/// Candidates are the continued-fraction convergents of
/// `mid(x) / sqrt(radicand)`; a candidate is accepted when
/// `|x - r sqrt(radicand)|` certifies below `10^(-digits/2)`.
pub fn recognize_surd(x: &ComplexBall, radicand: u64, denom_bound: &BigInt, p: Precision) -> Result<Surd> {
    let what = || format!("value near {} with radicand {radicand}", x.re_mid().to_sci_string(12));
    if !x.imag_part().contains_zero() {
        return Err(Error::NonRealResult("surd recognition input"));
    }
    if x.rad() > Mag::pow10_neg_up(p.digits() as i64 - 10) {
        return Err(Error::ResidualNotCertified { what: format!("{} (radius too large)", what()) });
    }
    let prec = p.bits() + 32;
    let root = RealBall::from_int(radicand).sqrt(prec)?;
    let y = RealBall::exact(x.re_mid().clone()).div(&root, prec)?;
    let target = y.mid().to_rational();
    let tol = pow10_neg(p.digits() / 2);
    let xr = x.real_part();
    let mut hits: Vec<Rational> = Vec::new();
    for r in convergents(&target, denom_bound) {
        let approx = RealBall::from_rational(&r, prec).mul(&root, prec);
        let diff = ComplexBall::from(xr.sub(&approx, prec));
        if diff.is_certified_below(&tol) && !hits.contains(&r) {
            hits.push(r);
        }
    }
    match hits.len() {
        0 => Err(Error::RecognitionFailed { what: what() }),
        1 => Surd::new(hits.pop().unwrap(), radicand),
        _ => Err(Error::AmbiguousRecognition { what: what() }),
    }
}

/// Convergents of `x` with denominator at most `bound`.
fn convergents(x: &Rational, bound: &BigInt) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > bound {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        num = std::mem::replace(&mut den, r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::ratio;

    fn p(d: u32) -> Precision {
        Precision::new(d).unwrap()
    }

    #[test]
    fn normalization() {
        let s = Surd::new(ratio(1, 2), 12).unwrap();
        assert_eq!(s.coefficient(), &ratio(1, 1));
        assert_eq!(s.radicand(), 3);
        assert_eq!(s.to_string(), "1 * sqrt(3)");
        assert_eq!(Surd::rational(ratio(-1, 8)).to_string(), "-1/8");
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(72)), Some(BigInt::from(2)));
        assert_eq!(squarefree_part(&BigInt::from(330)), Some(BigInt::from(330)));
        // 1000003 is prime: its square is recognized
        let big = BigInt::from(1000003u64) * BigInt::from(1000003u64) * 6;
        assert_eq!(squarefree_part(&big), Some(BigInt::from(6)));
    }

    #[test]
    fn hint_for_degree_17() {
        let z = ratio(-1, 85184000);
        assert_eq!(radicand_hint(&z, 67), Some(330));
    }

    #[test]
    fn recognize_half() {
        let x = ComplexBall::from_rational(&ratio(1, 2), 400).add_error(Mag::pow10_neg_up(50));
        let s = recognize_surd(&x, 1, &BigInt::from(1000), p(50)).unwrap();
        assert_eq!(s, Surd::rational(ratio(1, 2)));
    }

    #[test]
    fn sqrt_two_is_not_rational() {
        let x: ComplexBall = RealBall::from_int(2).sqrt(400).unwrap().into();
        let r = recognize_surd(&x, 1, &BigInt::from(1_000_000), p(50));
        assert!(matches!(r, Err(Error::RecognitionFailed { .. })));
        // but it is 1 * sqrt(2)
        assert_eq!(recognize_surd(&x, 2, &BigInt::from(10), p(50)).unwrap(), Surd::new(ratio(1, 1), 2).unwrap());
    }

    #[test]
    fn convergents_of_355_over_113() {
        let c = convergents(&ratio(355, 113), &BigInt::from(1000));
        assert_eq!(c, vec![ratio(3, 1), ratio(22, 7), ratio(355, 113)]);
    }
}
