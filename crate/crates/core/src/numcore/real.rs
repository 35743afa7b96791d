//! Real midpoint-radius balls.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::float::Float;
use super::mag::Mag;
use crate::error::{Error, Result};

/// Closed interval `[mid - rad, mid + rad]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBall {
    mid: Float,
    rad: Mag,
}

impl RealBall {
    pub fn new(mid: Float, rad: Mag) -> RealBall {
        RealBall { mid, rad }
    }

    pub fn exact(mid: Float) -> RealBall {
        RealBall { mid, rad: Mag::ZERO }
    }

    pub fn zero() -> RealBall {
        RealBall::exact(Float::zero())
    }

    pub fn one() -> RealBall {
        RealBall::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> RealBall {
        RealBall::exact(Float::from_int(v))
    }

    pub fn from_rational(r: &BigRational, prec: u64) -> RealBall {
        let (mid, rad) = Float::from_rational(r, prec);
        RealBall { mid, rad }
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn add_error(&self, e: Mag) -> RealBall {
        RealBall { mid: self.mid.clone(), rad: self.rad.add(e) }
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid.mag_upper().add(self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball contains 0).
    pub fn abs_lower(&self) -> Mag {
        self.mid.mag_lower().sub_down(self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.mag_lower() <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        !self.mid.is_negative() && !self.mid.is_zero() && self.mid.mag_lower() > self.rad
    }

    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && self.mid.mag_lower() > self.rad
    }

    /// Exact lower endpoint.
    pub fn lower(&self) -> Float {
        self.mid.sub_exact(&Float::from_mag(self.rad))
    }

    /// Exact upper endpoint.
    pub fn upper(&self) -> Float {
        self.mid.add_exact(&Float::from_mag(self.rad))
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        let d = (r - self.mid.to_rational()).abs();
        d <= Float::from_mag(self.rad).to_rational()
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        self.contains_rational(&x.to_rational())
    }

    /// True when the two balls share a point.
    pub fn overlaps(&self, other: &RealBall) -> bool {
        let d = self.mid.sub_exact(&other.mid).abs();
        d <= Float::from_mag(self.rad.add(other.rad))
    }

    /// True when `other` lies inside `self`.
    pub fn contains(&self, other: &RealBall) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn neg(&self) -> RealBall {
        RealBall { mid: self.mid.neg(), rad: self.rad }
    }

    pub fn abs(&self) -> RealBall {
        RealBall { mid: self.mid.abs(), rad: self.rad }
    }

    pub fn mul_2exp(&self, e: i64) -> RealBall {
        RealBall { mid: self.mid.mul_2exp(e), rad: self.rad.mul_2exp(e) }
    }

    pub fn add(&self, other: &RealBall, prec: u64) -> RealBall {
        let (mid, err) = self.mid.add_round(&other.mid, prec);
        RealBall { mid, rad: self.rad.add(other.rad).add(err) }
    }

    pub fn sub(&self, other: &RealBall, prec: u64) -> RealBall {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &RealBall, prec: u64) -> RealBall {
        let (mid, err) = self.mid.mul_exact(&other.mid).round(prec);
        let rad = self
            .mid
            .mag_upper()
            .mul(other.rad)
            .add(other.mid.mag_upper().mul(self.rad))
            .add(self.rad.mul(other.rad))
            .add(err);
        RealBall { mid, rad }
    }

    pub fn sqr(&self, prec: u64) -> RealBall {
        self.mul(self, prec)
    }

    pub fn mul_int(&self, k: i64, prec: u64) -> RealBall {
        self.mul(&RealBall::from_int(k), prec)
    }

    pub fn div(&self, other: &RealBall, prec: u64) -> Result<RealBall> {
        let b_low = other.mid.mag_lower();
        let denom_low = b_low.sub_down(other.rad);
        if other.mid.is_zero() || denom_low.is_zero() {
            return Err(Error::DomainStraddle { op: "div" });
        }
        let (mid, err) = self.mid.div(&other.mid, prec);
        let num = self.rad.mul(other.mid.mag_upper()).add(self.mid.mag_upper().mul(other.rad));
        let rad = if num.is_zero() { err } else { num.div(b_low.mul_down(denom_low)).add(err) };
        Ok(RealBall { mid, rad })
    }

    pub fn inv(&self, prec: u64) -> Result<RealBall> {
        RealBall::one().div(self, prec)
    }

    pub fn pow_int(&self, n: i64, prec: u64) -> Result<RealBall> {
        if n < 0 {
            return self.pow_int(-n, prec)?.inv(prec);
        }
        let mut base = self.clone();
        let mut acc = RealBall::one();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr(prec);
            }
        }
        Ok(acc)
    }

    /// Square root; the ball must be certified positive (or exactly zero).
    pub fn sqrt(&self, prec: u64) -> Result<RealBall> {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(RealBall::zero());
        }
        if !self.is_positive() {
            return Err(Error::DomainStraddle { op: "sqrt" });
        }
        let (mid, err) = self.mid.sqrt(prec);
        // |sqrt(x) - sqrt(m)| <= |x - m| / sqrt(m)
        let rad = if self.rad.is_zero() {
            err
        } else {
            self.rad.div(self.mid.mag_lower().sqrt_down()).add(err)
        };
        Ok(RealBall { mid, rad })
    }

    /// Real cube root of a certified positive (or exactly zero) ball.
    pub fn cbrt(&self, prec: u64) -> Result<RealBall> {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(RealBall::zero());
        }
        if !self.is_positive() {
            return Err(Error::DomainStraddle { op: "cbrt" });
        }
        let (mid, err) = self.mid.cbrt(prec);
        // |cbrt(x) - cbrt(m)| <= |x - m| / cbrt(m)^2
        let rad = if self.rad.is_zero() {
            err
        } else {
            let c = self.mid.mag_lower().cbrt_down();
            self.rad.div(c.mul_down(c)).add(err)
        };
        Ok(RealBall { mid, rad })
    }

    pub fn exp(&self, prec: u64) -> RealBall {
        let upper = self.abs_upper();
        if upper.is_zero() {
            return RealBall::one();
        }
        let reduce = ((prec as f64).sqrt() / 2.0).clamp(4.0, 48.0) as i64;
        let top = upper.top_bit().unwrap_or(0);
        let s = (top + 1 + reduce).max(0);
        let wprec = prec + s as u64 + 24;
        let t = self.mul_2exp(-s);
        let stop = Mag::pow2(-(wprec as i64) - 4);
        let mut sum = RealBall::one();
        let mut term = RealBall::one();
        let mut k = 1i64;
        loop {
            term = term.mul(&t, wprec).div(&RealBall::from_int(k), wprec).expect("nonzero k");
            if term.abs_upper() < stop {
                break;
            }
            sum = sum.add(&term, wprec);
            k += 1;
        }
        // |t| <= 1/2 so the remaining tail is at most twice the first omitted term
        sum = sum.add_error(term.abs_upper().mul_2exp(1));
        for _ in 0..s {
            sum = sum.sqr(wprec);
        }
        let (mid, err) = sum.mid.round(prec);
        RealBall { mid, rad: sum.rad.add(err) }
    }

    /// Natural logarithm of a certified positive ball.
    pub fn log(&self, prec: u64) -> Result<RealBall> {
        if !self.is_positive() {
            return Err(Error::DomainStraddle { op: "log" });
        }
        let (m, e2) = self.mid.to_f64_exp();
        let mut y = RealBall::exact(f64_to_float(m.ln() + e2 as f64 * std::f64::consts::LN_2));
        let x_mid = RealBall::exact(self.mid.clone());
        for p in newton_schedule(prec + 32, 48) {
            // y <- y + x e^{-y} - 1
            let t = x_mid.mul(&y.neg().exp(p), p).sub(&RealBall::one(), p);
            y = RealBall::exact(y.add(&t, p).mid);
        }
        let wprec = prec + 32;
        let t = self.mul(&y.neg().exp(wprec), wprec).sub(&RealBall::one(), wprec);
        let tu = t.abs_upper();
        let one = Mag::from_u64(1);
        if tu >= Mag::pow2(-1) {
            return Err(Error::DomainStraddle { op: "log" });
        }
        // |log(1 + t)| <= |t| / (1 - |t|)
        let bound = tu.div(one.sub_down(tu));
        let (mid, err) = y.mid.round(prec);
        Ok(RealBall { mid, rad: bound.add(err) })
    }
}

/// Precisions for a Newton iteration that doubles correct bits each step.
pub(crate) fn newton_schedule(prec: u64, start: u64) -> Vec<u64> {
    let mut out = vec![prec, prec];
    let mut p = prec;
    while p > start {
        p = p / 2 + 8;
        out.push(p);
    }
    out.reverse();
    out
}

/// Exact dyadic value of a finite `f64`.
pub(crate) fn f64_to_float(x: f64) -> Float {
    if x == 0.0 || !x.is_finite() {
        return Float::zero();
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (man, exp) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1i64 << 52), raw_exp - 1075) };
    Float::new(BigInt::from(sign * man), exp)
}

impl From<Float> for RealBall {
    fn from(f: Float) -> Self {
        RealBall::exact(f)
    }
}

/// Exact rational `n / d` helper for tests and constants.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `10^-digits` as an exact rational.
pub fn pow10_neg(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 256;

    #[test]
    fn sqrt_of_four_is_two() {
        let r = RealBall::from_int(4).sqrt(P).unwrap();
        assert!(r.contains_rational(&ratio(2, 1)));
        assert!(r.rad().is_zero());
    }

    #[test]
    fn sqrt_rejects_straddling_ball() {
        let x = RealBall::new(Float::zero(), Mag::from_u64(1));
        assert!(matches!(x.sqrt(P), Err(Error::DomainStraddle { .. })));
    }

    #[test]
    fn division_by_ball_containing_zero() {
        let z = RealBall::new(Float::from_int(1).mul_2exp(-60), Mag::pow2(-50));
        assert!(matches!(RealBall::one().div(&z, P), Err(Error::DomainStraddle { .. })));
    }

    #[test]
    fn exp_log_roundtrip() {
        let x = RealBall::from_rational(&ratio(-40, 3), P);
        let back = x.exp(P).log(P).unwrap();
        assert!(back.overlaps(&x));
        assert!(back.rad().log10() < -70.0);
    }

    #[test]
    fn exp_one_matches_known_digits() {
        let e = RealBall::one().exp(P);
        assert!(e.mid().to_sci_string(30).starts_with("2.71828182845904523536028747135"));
    }

    #[test]
    fn cube_root_of_cube() {
        let c = RealBall::from_int(343).cbrt(P).unwrap();
        assert!(c.contains_rational(&ratio(7, 1)));
    }
}
