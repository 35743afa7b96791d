//! Complex midpoint-radius balls (disks).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::float::Float;
use super::mag::Mag;
use super::pi::pi_bits;
use super::real::{f64_to_float, newton_schedule, RealBall};
use crate::error::{Error, Result};

/// Disk `{ z : |z - (re + i im)| <= rad }`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    re: Float,
    im: Float,
    rad: Mag,
}

impl ComplexBall {
    pub fn new(re: Float, im: Float, rad: Mag) -> ComplexBall {
        ComplexBall { re, im, rad }
    }

    pub fn zero() -> ComplexBall {
        ComplexBall::new(Float::zero(), Float::zero(), Mag::ZERO)
    }

    pub fn one() -> ComplexBall {
        ComplexBall::from_int(1)
    }

    pub fn i() -> ComplexBall {
        ComplexBall::new(Float::zero(), Float::from_int(1), Mag::ZERO)
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> ComplexBall {
        ComplexBall::new(Float::from_int(v), Float::zero(), Mag::ZERO)
    }

    pub fn from_rational(r: &BigRational, prec: u64) -> ComplexBall {
        RealBall::from_rational(r, prec).into()
    }

    pub fn from_parts(re: &RealBall, im: &RealBall) -> ComplexBall {
        ComplexBall::new(re.mid().clone(), im.mid().clone(), re.rad().add(im.rad()))
    }

    pub fn re_mid(&self) -> &Float {
        &self.re
    }

    pub fn im_mid(&self) -> &Float {
        &self.im
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn real_part(&self) -> RealBall {
        RealBall::new(self.re.clone(), self.rad)
    }

    pub fn imag_part(&self) -> RealBall {
        RealBall::new(self.im.clone(), self.rad)
    }

    pub fn add_error(&self, e: Mag) -> ComplexBall {
        ComplexBall::new(self.re.clone(), self.im.clone(), self.rad.add(e))
    }

    /// True when the imaginary part of the midpoint is exactly zero.
    pub fn is_real_mid(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the disk touches the real axis, i.e. the value may be real.
    pub fn is_certified_real(&self) -> bool {
        self.im.mag_lower() <= self.rad
    }

    /// Upper bound of `|mid|`.
    pub fn mid_abs_upper(&self) -> Mag {
        let a = self.re.mag_upper();
        let b = self.im.mag_upper();
        a.mul(a).add(b.mul(b)).sqrt()
    }

    /// Lower bound of `|mid|`.
    pub fn mid_abs_lower(&self) -> Mag {
        let a = self.re.mag_lower();
        let b = self.im.mag_lower();
        a.mul_down(a).add_down(b.mul_down(b)).sqrt_down()
    }

    /// Upper bound of `|z|` over the disk.
    pub fn abs_upper(&self) -> Mag {
        self.mid_abs_upper().add(self.rad)
    }

    /// Lower bound of `|z|` over the disk.
    pub fn abs_lower(&self) -> Mag {
        self.mid_abs_lower().sub_down(self.rad)
    }

    /// `|z|` as a real ball.
    pub fn abs(&self, prec: u64) -> RealBall {
        let n = RealBall::exact(self.re.mul_exact(&self.re).add_exact(&self.im.mul_exact(&self.im)));
        n.sqrt(prec).expect("non-negative").add_error(self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid_abs_lower() <= self.rad
    }

    /// True when `|mid| + rad < bound`.
    pub fn is_certified_below(&self, bound: &BigRational) -> bool {
        let b = Float::from_mag(self.abs_upper()).to_rational();
        &b < bound
    }

    /// Exact membership test for a rational point.
    pub fn contains_point(&self, re: &BigRational, im: &BigRational) -> bool {
        let dr = re - self.re.to_rational();
        let di = im - self.im.to_rational();
        let r = Float::from_mag(self.rad).to_rational();
        &dr * &dr + &di * &di <= &r * &r
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        let dr = self.re.sub_exact(&other.re).to_rational();
        let di = self.im.sub_exact(&other.im).to_rational();
        let r = Float::from_mag(self.rad.add(other.rad)).to_rational();
        &dr * &dr + &di * &di <= &r * &r
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall::new(self.re.neg(), self.im.neg(), self.rad)
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall::new(self.re.clone(), self.im.neg(), self.rad)
    }

    pub fn mul_2exp(&self, e: i64) -> ComplexBall {
        ComplexBall::new(self.re.mul_2exp(e), self.im.mul_2exp(e), self.rad.mul_2exp(e))
    }

    pub fn add(&self, other: &ComplexBall, prec: u64) -> ComplexBall {
        let (re, e1) = self.re.add_round(&other.re, prec);
        let (im, e2) = self.im.add_round(&other.im, prec);
        ComplexBall::new(re, im, self.rad.add(other.rad).add(e1).add(e2))
    }

    pub fn sub(&self, other: &ComplexBall, prec: u64) -> ComplexBall {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &ComplexBall, prec: u64) -> ComplexBall {
        let (a, b, c, d) = (&self.re, &self.im, &other.re, &other.im);
        let (re, e1) = a.mul_exact(c).sub_exact(&b.mul_exact(d)).round(prec);
        let (im, e2) = a.mul_exact(d).add_exact(&b.mul_exact(c)).round(prec);
        let rad = self
            .mid_abs_upper()
            .mul(other.rad)
            .add(other.mid_abs_upper().mul(self.rad))
            .add(self.rad.mul(other.rad))
            .add(e1)
            .add(e2);
        ComplexBall::new(re, im, rad)
    }

    pub fn sqr(&self, prec: u64) -> ComplexBall {
        self.mul(self, prec)
    }

    pub fn mul_real(&self, x: &RealBall, prec: u64) -> ComplexBall {
        self.mul(&ComplexBall::from(x.clone()), prec)
    }

    pub fn mul_int(&self, k: i64, prec: u64) -> ComplexBall {
        self.mul(&ComplexBall::from_int(k), prec)
    }

    pub fn inv(&self, prec: u64) -> Result<ComplexBall> {
        let low = self.mid_abs_lower();
        let gap = low.sub_down(self.rad);
        if gap.is_zero() {
            return Err(Error::DomainStraddle { op: "inv" });
        }
        let n = self.re.mul_exact(&self.re).add_exact(&self.im.mul_exact(&self.im));
        let (re, e1) = self.re.div(&n, prec);
        let (im, e2) = self.im.neg().div(&n, prec);
        // |1/z - 1/z0| <= r / (|z0| (|z0| - r))
        let rad = if self.rad.is_zero() {
            Mag::ZERO
        } else {
            self.rad.div(low.mul_down(gap))
        };
        Ok(ComplexBall::new(re, im, rad.add(e1).add(e2)))
    }

    pub fn div(&self, other: &ComplexBall, prec: u64) -> Result<ComplexBall> {
        if other.is_real_mid() && self.is_real_mid() {
            // keeps purely real quotients tight
            let q = self.real_part().div(&other.real_part(), prec)?;
            return Ok(q.into());
        }
        Ok(self.mul(&other.inv(prec + 8)?, prec))
    }

    pub fn pow_int(&self, n: i64, prec: u64) -> Result<ComplexBall> {
        if n < 0 {
            return self.pow_int(-n, prec)?.inv(prec);
        }
        let mut base = self.clone();
        let mut acc = ComplexBall::one();
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

    /// Distance test against the branch cut `(-inf, 0]`: true when the
    /// whole disk avoids it.
    fn avoids_cut(&self) -> bool {
        if !self.re.is_negative() && !self.re.is_zero() {
            self.mid_abs_lower() > self.rad
        } else {
            self.im.mag_lower() > self.rad
        }
    }

    fn is_exact_nonpositive_real(&self) -> bool {
        self.rad.is_zero() && self.im.is_zero() && (self.re.is_negative() || self.re.is_zero())
    }

    fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.real_part().is_positive()
    }

    /// Principal square root.
    pub fn sqrt(&self, prec: u64) -> Result<ComplexBall> {
        if self.is_positive_real() {
            return Ok(self.real_part().sqrt(prec)?.into());
        }
        if self.is_exact_nonpositive_real() {
            let s = RealBall::exact(self.re.neg()).sqrt(prec)?;
            return Ok(ComplexBall::new(Float::zero(), s.mid().clone(), s.rad()));
        }
        if !self.avoids_cut() {
            return Err(Error::DomainStraddle { op: "sqrt" });
        }
        let wp = prec + 16;
        let x = RealBall::exact(self.re.clone());
        let y = RealBall::exact(self.im.clone());
        let modulus = x.sqr(wp).add(&y.sqr(wp), wp).sqrt(wp)?;
        let (re, im) = if !x.mid().is_negative() {
            let t = modulus.add(&x, wp).mul_2exp(-1).sqrt(wp)?;
            let im = y.div(&t.mul_2exp(1), wp)?;
            (t, im)
        } else {
            let t = modulus.sub(&x, wp).mul_2exp(-1).sqrt(wp)?;
            let re = y.abs().div(&t.mul_2exp(1), wp)?;
            let im = if y.mid().is_negative() { t.neg() } else { t };
            (re, im)
        };
        let center = ComplexBall::from_parts(&re, &im);
        // |sqrt(z) - sqrt(z0)| <= |z - z0| / sqrt(|z0|) off the cut
        let infl = if self.rad.is_zero() {
            Mag::ZERO
        } else {
            self.rad.div(self.mid_abs_lower().sqrt_down())
        };
        Ok(center.add_error(infl).round(prec))
    }

    /// Principal cube root.
    pub fn cbrt(&self, prec: u64) -> Result<ComplexBall> {
        if self.is_positive_real() {
            return Ok(self.real_part().cbrt(prec)?.into());
        }
        if self.rad.is_zero() && self.re.is_zero() && self.im.is_zero() {
            return Ok(ComplexBall::zero());
        }
        let l = self.log(prec + 16)?;
        let third = l.div(&ComplexBall::from_int(3), prec + 16)?;
        Ok(third.exp(prec + 8).round(prec))
    }

    pub fn exp(&self, prec: u64) -> ComplexBall {
        if self.is_real_mid() {
            return self.real_part().exp(prec).into();
        }
        let upper = self.abs_upper();
        let reduce = ((prec as f64).sqrt() / 2.0).clamp(4.0, 48.0) as i64;
        let top = upper.top_bit().unwrap_or(0);
        let s = (top + 1 + reduce).max(0);
        let wprec = prec + s as u64 + 24;
        let t = self.mul_2exp(-s);
        let stop = Mag::pow2(-(wprec as i64) - 4);
        let mut sum = ComplexBall::one();
        let mut term = ComplexBall::one();
        let mut k = 1i64;
        loop {
            term = term.mul(&t, wprec).div(&ComplexBall::from_int(k), wprec).expect("nonzero k");
            if term.abs_upper() < stop {
                break;
            }
            sum = sum.add(&term, wprec);
            k += 1;
        }
        sum = sum.add_error(term.abs_upper().mul_2exp(1));
        for _ in 0..s {
            sum = sum.sqr(wprec);
        }
        sum.round(prec)
    }

    /// Principal logarithm, imaginary part in `(-pi, pi]`.
    pub fn log(&self, prec: u64) -> Result<ComplexBall> {
        if self.is_positive_real() {
            return Ok(self.real_part().log(prec)?.into());
        }
        if self.is_exact_nonpositive_real() {
            if self.re.is_zero() {
                return Err(Error::DomainStraddle { op: "log" });
            }
            let l = RealBall::exact(self.re.neg()).log(prec)?;
            return Ok(ComplexBall::from_parts(&l, &pi_bits(prec)));
        }
        if !self.avoids_cut() {
            return Err(Error::DomainStraddle { op: "log" });
        }
        // f64 starting point from scaled parts
        let top = self.re.top_bit().into_iter().chain(self.im.top_bit()).max().unwrap_or(0);
        let xr = self.re.mul_2exp(-top).to_f64();
        let xi = self.im.mul_2exp(-top).to_f64();
        let y0_re = xr.hypot(xi).ln() + top as f64 * std::f64::consts::LN_2;
        let y0_im = xi.atan2(xr);
        let mut y = ComplexBall::new(f64_to_float(y0_re), f64_to_float(y0_im), Mag::ZERO);
        let z_mid = ComplexBall::new(self.re.clone(), self.im.clone(), Mag::ZERO);
        for p in newton_schedule(prec + 32, 48) {
            let t = z_mid.mul(&y.neg().exp(p), p).sub(&ComplexBall::one(), p);
            y = y.add(&t, p).mid_only();
        }
        let wprec = prec + 32;
        let t = self.mul(&y.neg().exp(wprec), wprec).sub(&ComplexBall::one(), wprec);
        let tu = t.abs_upper();
        if tu >= Mag::pow2(-1) {
            return Err(Error::DomainStraddle { op: "log" });
        }
        let bound = tu.div(Mag::from_u64(1).sub_down(tu));
        let out = y.add_error(bound).round(prec);
        // y + log(1 + t) is a logarithm of z; it is the principal one when its
        // imaginary part stays strictly inside (-pi, pi)
        let pi = pi_bits(64);
        let im = out.imag_part();
        let limit = pi.lower();
        if im.upper() >= limit || im.lower() <= limit.neg() {
            return Err(Error::DomainStraddle { op: "log" });
        }
        Ok(out)
    }

    /// Drop the radius.
    pub fn mid_only(&self) -> ComplexBall {
        ComplexBall::new(self.re.clone(), self.im.clone(), Mag::ZERO)
    }

    /// Round both midpoint parts to `prec` bits.
    pub fn round(&self, prec: u64) -> ComplexBall {
        let (re, e1) = self.re.clone().round(prec);
        let (im, e2) = self.im.clone().round(prec);
        ComplexBall::new(re, im, self.rad.add(e1).add(e2))
    }

    /// Midpoint as `f64` pair; for diagnostics only.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl From<RealBall> for ComplexBall {
    fn from(r: RealBall) -> Self {
        ComplexBall::new(r.mid().clone(), Float::zero(), r.rad())
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i) +/- {:?}", self.re.to_sci_string(25), self.im.to_sci_string(25), self.rad)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        if self.im.is_zero() {
            write!(f, "{} +/- {:.1e}", self.re.to_sci_string(digits), self.rad.to_f64())
        } else {
            write!(
                f,
                "{} + {}i +/- {:.1e}",
                self.re.to_sci_string(digits),
                self.im.to_sci_string(digits),
                self.rad.to_f64()
            )
        }
    }
}

impl Zero for ComplexBall {
    fn zero() -> Self {
        ComplexBall::zero()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero()
    }
}

impl std::ops::Add for ComplexBall {
    type Output = ComplexBall;

    /// Exact midpoint addition; only for the `Zero` trait bound.
    fn add(self, rhs: ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.add_exact(&rhs.re), self.im.add_exact(&rhs.im), self.rad.add(rhs.rad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::real::ratio;

    const P: u64 = 300;

    fn c(re: i64, im: i64) -> ComplexBall {
        ComplexBall::new(Float::from_int(re), Float::from_int(im), Mag::ZERO)
    }

    #[test]
    fn product_and_quotient_are_exact_enclosures() {
        let a = c(3, -4);
        let b = c(1, 2);
        let p = a.mul(&b, P);
        assert!(p.contains_point(&ratio(11, 1), &ratio(2, 1)));
        let q = a.div(&b, P).unwrap();
        // (3 - 4i)/(1 + 2i) = -1 - 2i
        assert!(q.contains_point(&ratio(-1, 1), &ratio(-2, 1)));
    }

    #[test]
    fn principal_sqrt_of_negative_one() {
        let s = c(-1, 0).sqrt(P).unwrap();
        assert!(s.contains_point(&ratio(0, 1), &ratio(1, 1)));
    }

    #[test]
    fn sqrt_across_cut_is_rejected() {
        let z = ComplexBall::new(Float::from_int(-1), Float::zero(), Mag::pow2(-10));
        assert!(matches!(z.sqrt(P), Err(Error::DomainStraddle { .. })));
    }

    #[test]
    fn complex_sqrt_squares_back() {
        let z = c(-5, 12);
        let s = z.sqrt(P).unwrap();
        // sqrt(-5 + 12i) = 2 + 3i
        assert!(s.contains_point(&ratio(2, 1), &ratio(3, 1)));
        let z = c(7, -24);
        let s = z.sqrt(P).unwrap();
        assert!(s.contains_point(&ratio(4, 1), &ratio(-3, 1)));
    }

    #[test]
    fn cbrt_principal_branch() {
        // principal cube root of -8 is 1 + i sqrt(3)
        let r = c(-8, 0).cbrt(P).unwrap();
        let expect = ComplexBall::new(Float::from_int(1), Float::zero(), Mag::ZERO)
            .add(&ComplexBall::i().mul_real(&RealBall::from_int(3).sqrt(P).unwrap(), P), P);
        assert!(r.overlaps(&expect));
        // (2 + i)^3 = 2 + 11i
        let r = c(2, 11).cbrt(P).unwrap();
        assert!(r.contains_point(&ratio(2, 1), &ratio(1, 1)));
        assert!(r.rad().log10() < -80.0);
    }

    #[test]
    fn exp_log_inverse() {
        let z = c(-3, 2);
        let w = z.log(P).unwrap().exp(P);
        assert!(w.contains_point(&ratio(-3, 1), &ratio(2, 1)));
    }

    #[test]
    fn log_of_negative_real_is_i_pi() {
        let l = c(-1, 0).log(P).unwrap();
        let pi = pi_bits(P);
        assert!(l.imag_part().overlaps(&pi));
        assert!(l.real_part().contains_zero());
    }
}
