//! Low-precision non-negative magnitudes used as ball radii.
//!
//! A [`Mag`] is `man * 2^exp` with a mantissa of at most [`MAG_BITS`] bits.
//! Every operation states its rounding direction in its name; the default
//! (`add`, `mul`, ...) rounds up so results are valid upper bounds.

use std::cmp::Ordering;
use std::fmt;

/// Mantissa width of a normalized magnitude.
pub const MAG_BITS: u32 = 30;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

fn bit_len(v: u128) -> u32 {
    128 - v.leading_zeros()
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    /// `v * 2^exp`, rounded up.
    pub fn from_u128_up(v: u128, exp: i64) -> Mag {
        if v == 0 {
            return Mag::ZERO;
        }
        let bl = bit_len(v);
        if bl <= MAG_BITS {
            let sh = MAG_BITS - bl;
            return Mag { man: (v << sh) as u64, exp: exp - sh as i64 };
        }
        let sh = bl - MAG_BITS;
        let mut man = v >> sh;
        let mut e = exp + sh as i64;
        if v & ((1u128 << sh) - 1) != 0 {
            man += 1;
            if man >> MAG_BITS != 0 {
                man >>= 1;
                e += 1;
            }
        }
        Mag { man: man as u64, exp: e }
    }

    /// `v * 2^exp`, rounded down.
    pub fn from_u128_down(v: u128, exp: i64) -> Mag {
        if v == 0 {
            return Mag::ZERO;
        }
        let bl = bit_len(v);
        if bl <= MAG_BITS {
            let sh = MAG_BITS - bl;
            return Mag { man: (v << sh) as u64, exp: exp - sh as i64 };
        }
        let sh = bl - MAG_BITS;
        Mag { man: (v >> sh) as u64, exp: exp + sh as i64 }
    }

    pub fn from_u64(v: u64) -> Mag {
        Mag::from_u128_up(v as u128, 0)
    }

    /// The exact power of two `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1 << (MAG_BITS - 1), exp: e - (MAG_BITS as i64 - 1) }
    }

    /// Smallest power of two that is at least `10^(-digits)`.
    pub fn pow10_neg_up(digits: i64) -> Mag {
        // 10^-k <= 2^floor(-k*log2(10)) + 1
        let e = -((digits as f64) * std::f64::consts::LOG2_10).floor() as i64 + 1;
        Mag::pow2(e)
    }

    /// Largest power of two not exceeding `10^(-digits)`.
    pub fn pow10_neg_down(digits: i64) -> Mag {
        let e = -((digits as f64) * std::f64::consts::LOG2_10).ceil() as i64 - 1;
        Mag::pow2(e)
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn mantissa(&self) -> u64 {
        self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Exponent of the leading bit: `2^top <= self < 2^(top+1)`.
    pub fn top_bit(&self) -> Option<i64> {
        if self.man == 0 {
            None
        } else {
            Some(self.exp + (64 - self.man.leading_zeros()) as i64 - 1)
        }
    }

    pub fn add(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let gap = hi.exp - lo.exp;
        if gap > 64 {
            // lo < 2^(lo.exp + 30) <= one unit of hi
            return Mag::from_u128_up(hi.man as u128 + 1, hi.exp);
        }
        let v = ((hi.man as u128) << gap) + lo.man as u128;
        Mag::from_u128_up(v, lo.exp)
    }

    pub fn add_down(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let gap = hi.exp - lo.exp;
        if gap > 64 {
            return hi;
        }
        let v = ((hi.man as u128) << gap) + lo.man as u128;
        Mag::from_u128_down(v, lo.exp)
    }

    /// `max(self - other, 0)`, rounded down.
    pub fn sub_down(self, other: Mag) -> Mag {
        if other.is_zero() {
            return self;
        }
        if self <= other {
            return Mag::ZERO;
        }
        let gap = self.exp - other.exp;
        if gap > 64 {
            // other is below one unit of self
            return Mag::from_u128_down(self.man as u128 - 1, self.exp);
        }
        if gap >= 0 {
            let v = ((self.man as u128) << gap) - other.man as u128;
            Mag::from_u128_down(v, other.exp)
        } else {
            let v = self.man as u128 - ((other.man as u128) << (-gap));
            Mag::from_u128_down(v, self.exp)
        }
    }

    pub fn mul(self, other: Mag) -> Mag {
        Mag::from_u128_up(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    pub fn mul_down(self, other: Mag) -> Mag {
        Mag::from_u128_down(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    pub fn mul_2exp(self, e: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { man: self.man, exp: self.exp + e }
        }
    }

    /// `self / other`, rounded up. `other` must be nonzero.
    pub fn div(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        let num = (self.man as u128) << 64;
        let q = num / other.man as u128;
        let r = num % other.man as u128;
        Mag::from_u128_up(q + (r != 0) as u128, self.exp - 64 - other.exp)
    }

    pub fn div_down(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        let num = (self.man as u128) << 64;
        Mag::from_u128_down(num / other.man as u128, self.exp - 64 - other.exp)
    }

    fn sqrt_parts(self) -> (u128, i64) {
        // shift so the exponent is even and the radicand has ~90 bits
        let mut sh = 60i64;
        if (self.exp - sh).rem_euclid(2) != 0 {
            sh += 1;
        }
        ((self.man as u128) << sh, (self.exp - sh) / 2)
    }

    pub fn sqrt(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (v, e) = self.sqrt_parts();
        let s = v.isqrt();
        Mag::from_u128_up(s + (s * s != v) as u128, e)
    }

    pub fn sqrt_down(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (v, e) = self.sqrt_parts();
        Mag::from_u128_down(v.isqrt(), e)
    }

    /// Cube root rounded down.
    pub fn cbrt_down(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        let mut sh = 60i64;
        while (self.exp - sh).rem_euclid(3) != 0 {
            sh += 1;
        }
        let v = (self.man as u128) << sh;
        let mut c = (v as f64).cbrt() as u128;
        while c * c * c > v {
            c -= 1;
        }
        while (c + 1) * (c + 1) * (c + 1) <= v {
            c += 1;
        }
        Mag::from_u128_down(c, (self.exp - sh) / 3)
    }

    /// Approximate value; not a rigorous bound.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-4000, 4000) as i32;
        self.man as f64 * 2f64.powi(e)
    }

    /// Approximate base-10 logarithm; `-inf` for zero.
    pub fn log10(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        ((self.man as f64).log2() + self.exp as f64) / std::f64::consts::LOG2_10
    }

    /// Upper bound for `log10(self)` with a small safety margin.
    pub fn log10_upper(self) -> f64 {
        self.log10() + 1e-9
    }

    /// Upper bound for a non-negative finite `f64` (e.g. a hand-computed slack term).
    pub fn from_f64_up(x: f64) -> Mag {
        assert!(x.is_finite() && x >= 0.0);
        if x == 0.0 {
            return Mag::ZERO;
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Mag::from_u128_up(man as u128, exp)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        // both normalized to MAG_BITS bits
        self.exp.cmp(&other.exp).then(self.man.cmp(&other.man))
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}*2^{} (~1e{:.1})", self.man, self.exp, self.log10())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_directions() {
        let a = Mag::from_u128_up((1u128 << 40) + 1, 0);
        let b = Mag::from_u128_down((1u128 << 40) + 1, 0);
        assert!(a > b);
        assert_eq!(b, Mag::pow2(40));
    }

    #[test]
    fn arithmetic_brackets_f64() {
        let x = Mag::from_u64(3);
        let y = Mag::from_u64(7);
        assert!(x.div(y).to_f64() >= 3.0 / 7.0);
        assert!(x.div_down(y).to_f64() <= 3.0 / 7.0);
        assert!(x.sqrt().to_f64() >= 3f64.sqrt() * (1.0 - 1e-15));
        assert!(x.sqrt_down().to_f64() <= 3f64.sqrt() * (1.0 + 1e-15));
        assert_eq!(Mag::from_u64(27).cbrt_down(), Mag::from_u64(3));
        assert_eq!(y.sub_down(x), Mag::from_u64(4));
        assert_eq!(x.sub_down(y), Mag::ZERO);
        assert_eq!(x.add(y), Mag::from_u64(10));
    }

    #[test]
    fn pow10_bounds() {
        let up = Mag::pow10_neg_up(20).to_f64();
        let down = Mag::pow10_neg_down(20).to_f64();
        assert!(up >= 1e-20 && down <= 1e-20);
    }

    #[test]
    fn huge_gap_addition_stays_upper() {
        let big = Mag::pow2(100);
        let tiny = Mag::pow2(-100);
        assert!(big.add(tiny) > big);
        assert_eq!(big.add_down(tiny), big);
    }
}
