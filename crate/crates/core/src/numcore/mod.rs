//! Arbitrary-precision rational and ball arithmetic.
//!
//! Ball midpoints are exact dyadics ([`Float`]) and radii are low-precision
//! upper bounds ([`Mag`]). Every radius formula bounds the modulus of the
//! perturbation, so [`RealBall`] results also enclose complex perturbations
//! of the same size; [`ComplexBall`] delegates to the real routines for
//! inputs on the positive real axis.

mod complex;
mod float;
mod mag;
mod pi;
mod real;

pub use complex::ComplexBall;
pub use float::Float;
pub use mag::Mag;
pub use pi::{arctan_inv, pi_bits, pi_gauss, pi_machin, pi_oracle};
pub use real::{pow10_neg, ratio, RealBall};

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact fraction in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub const MIN_DIGITS: u32 = 10;
    /// Default for derivations.
    pub const DERIVATION: Precision = Precision { digits: 200 };
    /// Default for series verification.
    pub const VERIFICATION: Precision = Precision { digits: 1100 };

    pub fn new(digits: u32) -> Result<Precision> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidPrecision(digits));
        }
        Ok(Precision { digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Mantissa bits: the decimal digits plus 64 guard bits.
    pub fn bits(&self) -> u64 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 64
    }

    pub fn doubled(&self) -> Precision {
        Precision { digits: self.digits * 2 }
    }

    pub fn plus(&self, extra: u32) -> Precision {
        Precision { digits: self.digits + extra }
    }
}

/// Operations accepted by [`eval_elementary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Cbrt,
    Exp,
    Log,
    PowInt(i64),
}

impl Elementary {
    fn arity(&self) -> usize {
        match self {
            Elementary::Add | Elementary::Sub | Elementary::Mul | Elementary::Div => 2,
            _ => 1,
        }
    }
}

/// Evaluate one elementary operation on balls at working precision `p`.
///
/// Roots and the logarithm use the principal branch; inputs whose ball
/// meets a pole or the branch cut `(-inf, 0]` yield
/// [`Error::DomainStraddle`].
pub fn eval_elementary(op: Elementary, args: &[ComplexBall], p: Precision) -> Result<ComplexBall> {
    if args.len() != op.arity() {
        return Err(Error::InvalidArgument(format!("{op:?} expects {} arguments, got {}", op.arity(), args.len())));
    }
    let prec = p.bits();
    let x = &args[0];
    match op {
        Elementary::Add => Ok(x.add(&args[1], prec)),
        Elementary::Sub => Ok(x.sub(&args[1], prec)),
        Elementary::Mul => Ok(x.mul(&args[1], prec)),
        Elementary::Div => x.div(&args[1], prec),
        Elementary::Sqrt => x.sqrt(prec),
        Elementary::Cbrt => x.cbrt(prec),
        Elementary::Exp => Ok(x.exp(prec)),
        Elementary::Log => x.log(prec),
        Elementary::PowInt(n) => x.pow_int(n, prec),
    }
}

/// True iff `|mid| <= radius`.
pub fn contains_zero(x: &ComplexBall) -> bool {
    x.contains_zero()
}

/// True iff `|mid| + radius < bound`.
pub fn is_certified_below(x: &ComplexBall, bound: &Rational) -> bool {
    x.is_certified_below(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(d: u32) -> Precision {
        Precision::new(d).unwrap()
    }

    #[test]
    fn precision_floor() {
        assert_eq!(Precision::new(9), Err(Error::InvalidPrecision(9)));
        assert!(Precision::new(10).is_ok());
    }

    #[test]
    fn sqrt_of_exact_four() {
        let r = eval_elementary(Elementary::Sqrt, &[ComplexBall::from_int(4)], p(50)).unwrap();
        assert!(r.contains_point(&ratio(2, 1), &ratio(0, 1)));
        assert!(is_certified_below(&r.sub(&ComplexBall::from_int(2), 400), &pow10_neg(50)));
    }

    #[test]
    fn division_by_ball_containing_zero() {
        let z = ComplexBall::new(Float::zero(), Float::zero(), Mag::pow2(-20));
        let r = eval_elementary(Elementary::Div, &[ComplexBall::one(), z], p(30));
        assert!(matches!(r, Err(Error::DomainStraddle { .. })));
    }

    #[test]
    fn cbrt_of_91_plus_9_sqrt_201_matches_bisection() {
        let prec = p(60);
        let s = eval_elementary(Elementary::Sqrt, &[ComplexBall::from_int(201)], prec).unwrap();
        let x = ComplexBall::from_int(91).add(&s.mul_int(9, prec.bits()), prec.bits());
        let h = eval_elementary(Elementary::Cbrt, &[x], prec).unwrap();
        // exact-rational bisection on t^3 = 91 + 9 sqrt(201), with sqrt(201)
        // itself bracketed by integer square roots
        let s_lo = sqrt_lower(201, 80);
        let s_hi = &s_lo + pow10_neg(80);
        let lo = bisect_cube_root(&(ratio(91, 1) + ratio(9, 1) * s_lo), true);
        let hi = bisect_cube_root(&(ratio(91, 1) + ratio(9, 1) * s_hi), false);
        assert!(lo > ratio(60239, 10000) && hi < ratio(60240, 10000));
        let mid = (&lo + &hi) / ratio(2, 1);
        let half = (&hi - &lo) / ratio(2, 1);
        let oracle = RealBall::new(
            Float::from_rational(&mid, 400).0,
            Mag::from_u64(1).mul(Float::from_rational(&half, 400).0.mag_upper()).add(Mag::pow2(-390)),
        );
        assert!(h.real_part().overlaps(&oracle));
        assert!(h.rad() <= Mag::pow10_neg_up(58));
    }

    fn bisect_cube_root(target: &Rational, lower: bool) -> Rational {
        let (mut lo, mut hi) = (ratio(0, 1), ratio(10, 1));
        for _ in 0..300 {
            let m = (&lo + &hi) / ratio(2, 1);
            if &(&m * &m * &m) < target {
                lo = m;
            } else {
                hi = m;
            }
        }
        if lower {
            lo
        } else {
            hi
        }
    }

    fn sqrt_lower(n: i64, digits: u32) -> Rational {
        let scale = BigInt::from(10).pow(digits);
        let v = BigInt::from(n) * &scale * &scale;
        Rational::new(num_integer::Roots::sqrt(&v), scale)
    }

    #[test]
    fn certified_below_examples() {
        let x = ComplexBall::new(
            Float::from_rational(&pow10_neg(3), 200).0,
            Float::zero(),
            Mag::pow10_neg_up(9),
        );
        assert!(is_certified_below(&x, &pow10_neg(2)));
        let y = ComplexBall::new(
            Float::from_rational(&pow10_neg(3), 200).0,
            Float::zero(),
            Mag::pow10_neg_up(2),
        );
        assert!(!is_certified_below(&y, &pow10_neg(2)));
        let z = ComplexBall::new(Float::zero(), Float::zero(), Mag::pow10_neg_up(50));
        assert!(contains_zero(&z));
    }
}
