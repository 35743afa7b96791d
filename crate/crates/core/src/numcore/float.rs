//! Exact dyadic numbers `man * 2^exp` used as ball midpoints.
//!
//! Arithmetic here is either exact or returns the rounded value together
//! with a [`Mag`] bound on the rounding error. Rounding is always toward
//! zero on the magnitude, so the error bound is one unit in the last place.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Float {
    man: BigInt,
    exp: i64,
}

/// Top bits of a magnitude as `(v, shift, inexact)` with `n = v * 2^shift + rest`.
fn top_u128(n: &BigUint) -> (u128, i64, bool) {
    let bits = n.bits();
    if bits <= 128 {
        return (n.to_u128().unwrap_or(0), 0, false);
    }
    let sh = bits - 96;
    let v = (n >> sh).to_u128().unwrap_or(0);
    let inexact = n.trailing_zeros().map_or(false, |tz| tz < sh);
    (v, sh as i64, inexact)
}

impl Float {
    pub fn zero() -> Float {
        Float { man: BigInt::zero(), exp: 0 }
    }

    pub fn new(man: BigInt, exp: i64) -> Float {
        if man.is_zero() {
            Float::zero()
        } else {
            Float { man, exp }
        }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Float {
        Float::new(v.into(), 0)
    }

    pub fn from_mag(m: Mag) -> Float {
        Float::new(BigInt::from(m.mantissa()), m.exponent())
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn neg(&self) -> Float {
        Float { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Float {
        Float { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, e: i64) -> Float {
        if self.is_zero() {
            Float::zero()
        } else {
            Float { man: self.man.clone(), exp: self.exp + e }
        }
    }

    /// Number of mantissa bits.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Position of the leading bit: `2^top <= |self| < 2^(top+1)`.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.man.bits() as i64 - 1)
        }
    }

    pub fn mag_upper(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let (v, sh, inexact) = top_u128(self.man.magnitude());
        Mag::from_u128_up(v + inexact as u128, self.exp + sh)
    }

    pub fn mag_lower(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let (v, sh, _) = top_u128(self.man.magnitude());
        Mag::from_u128_down(v, self.exp + sh)
    }

    /// Truncate to `prec` mantissa bits; returns the error bound.
    pub fn round(self, prec: u64) -> (Float, Mag) {
        let bits = self.man.bits();
        if bits <= prec {
            return (self, Mag::ZERO);
        }
        let k = bits - prec;
        let inexact = self.man.magnitude().trailing_zeros().map_or(false, |tz| tz < k);
        let mag = self.man.magnitude() >> k;
        let man = BigInt::from_biguint(self.man.sign(), mag);
        let exp = self.exp + k as i64;
        let err = if inexact { Mag::pow2(exp) } else { Mag::ZERO };
        (Float::new(man, exp), err)
    }

    pub fn add_exact(&self, other: &Float) -> Float {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        Float::new(a + b, e)
    }

    pub fn sub_exact(&self, other: &Float) -> Float {
        self.add_exact(&other.neg())
    }

    /// Sum rounded to `prec` bits. Operands far below the other's precision
    /// are absorbed into the error term instead of being aligned.
    pub fn add_round(&self, other: &Float, prec: u64) -> (Float, Mag) {
        match (self.top_bit(), other.top_bit()) {
            (None, _) => other.clone().round(prec),
            (_, None) => self.clone().round(prec),
            (Some(ta), Some(tb)) => {
                let limit = prec as i64 + 64;
                if ta - tb > limit && other.exp < self.exp {
                    let (r, e) = self.clone().round(prec);
                    (r, e.add(other.mag_upper()))
                } else if tb - ta > limit && self.exp < other.exp {
                    let (r, e) = other.clone().round(prec);
                    (r, e.add(self.mag_upper()))
                } else {
                    self.add_exact(other).round(prec)
                }
            }
        }
    }

    pub fn mul_exact(&self, other: &Float) -> Float {
        Float::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// `self / other` to `prec` bits.
    pub fn div(&self, other: &Float, prec: u64) -> (Float, Mag) {
        assert!(!other.is_zero(), "Float division by zero");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        // quotient mantissa gets at least prec + 1 bits
        let shift = (prec as i64 + 1 + other.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << shift as usize;
        let (q, r) = num.div_rem(&other.man);
        let exp = self.exp - shift - other.exp;
        let err = if r.is_zero() { Mag::ZERO } else { Mag::pow2(exp) };
        let (f, e2) = Float::new(q, exp).round(prec);
        (f, err.add(e2))
    }

    /// Square root of a non-negative value to `prec` bits.
    pub fn sqrt(&self, prec: u64) -> (Float, Mag) {
        assert!(!self.is_negative(), "Float sqrt of negative value");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let mut shift = (2 * prec as i64 + 2 - self.man.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let n = self.man.magnitude() << shift as usize;
        let s = n.sqrt();
        let exact = &s * &s == n;
        let exp = (self.exp - shift) / 2;
        let err = if exact { Mag::ZERO } else { Mag::pow2(exp) };
        let (f, e2) = Float::new(BigInt::from(s), exp).round(prec);
        (f, err.add(e2))
    }

    /// Real cube root of a non-negative value to `prec` bits.
    pub fn cbrt(&self, prec: u64) -> (Float, Mag) {
        assert!(!self.is_negative(), "Float cbrt of negative value");
        if self.is_zero() {
            return (Float::zero(), Mag::ZERO);
        }
        let mut shift = (3 * prec as i64 + 3 - self.man.bits() as i64).max(0);
        while (self.exp - shift).rem_euclid(3) != 0 {
            shift += 1;
        }
        let n = self.man.magnitude() << shift as usize;
        let c = n.cbrt();
        let exact = &c * &c * &c == n;
        let exp = (self.exp - shift) / 3;
        let err = if exact { Mag::ZERO } else { Mag::pow2(exp) };
        let (f, e2) = Float::new(BigInt::from(c), exp).round(prec);
        (f, err.add(e2))
    }

    pub fn from_rational(r: &BigRational, prec: u64) -> (Float, Mag) {
        Float::from_int(r.numer().clone()).div(&Float::from_int(r.denom().clone()), prec)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Approximate value (saturates for huge exponents).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (v, sh, _) = top_u128(self.man.magnitude());
        let m = v as f64;
        let e = (self.exp + sh).clamp(-5000, 5000) as i32;
        let x = m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if self.is_negative() {
            -x
        } else {
            x
        }
    }

    /// `(mantissa as f64, binary exponent)` with the mantissa scaled into `[1, 2)`.
    pub fn to_f64_exp(&self) -> (f64, i64) {
        match self.top_bit() {
            None => (0.0, 0),
            Some(t) => {
                let scaled = self.mul_2exp(-t);
                (scaled.to_f64(), t)
            }
        }
    }

    /// Decimal scientific notation with `digits` significant digits, truncated.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let (m, e2) = self.to_f64_exp();
        let approx = m.abs().log10() + e2 as f64 * std::f64::consts::LOG10_2;
        let mut e10 = approx.floor() as i64;
        let r = self.abs().to_rational();
        let mut n;
        loop {
            let k = digits as i64 - 1 - e10;
            let scaled = if k >= 0 {
                &r * BigRational::from_integer(BigInt::from(10).pow(k as u32))
            } else {
                &r / BigRational::from_integer(BigInt::from(10).pow((-k) as u32))
            };
            n = scaled.floor().to_integer();
            let len = n.to_string().len();
            if len > digits {
                e10 += 1;
            } else if len < digits {
                e10 -= 1;
            } else {
                break;
            }
        }
        let s = n.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.sub_exact(other);
        match d.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}
