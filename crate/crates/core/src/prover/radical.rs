//! Closed-form algebraic numbers built from rationals, `i`, field operations,
//! and principal square and cube roots.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::Result;
use crate::numcore::{ratio, ComplexBall, Precision, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalExpr {
    Literal(Rational),
    ImaginaryUnit,
    Add(Box<RadicalExpr>, Box<RadicalExpr>),
    Sub(Box<RadicalExpr>, Box<RadicalExpr>),
    Mul(Box<RadicalExpr>, Box<RadicalExpr>),
    Div(Box<RadicalExpr>, Box<RadicalExpr>),
    Sqrt(Box<RadicalExpr>),
    Cbrt(Box<RadicalExpr>),
}

impl RadicalExpr {
    pub fn int(n: i64) -> RadicalExpr {
        RadicalExpr::Literal(ratio(n, 1))
    }

    pub fn frac(n: i64, d: i64) -> RadicalExpr {
        RadicalExpr::Literal(ratio(n, d))
    }

    pub fn i() -> RadicalExpr {
        RadicalExpr::ImaginaryUnit
    }

    pub fn sqrt(self) -> RadicalExpr {
        RadicalExpr::Sqrt(Box::new(self))
    }

    pub fn cbrt(self) -> RadicalExpr {
        RadicalExpr::Cbrt(Box::new(self))
    }

    /// `sqrt(n)` for an integer `n`.
    pub fn sqrt_int(n: i64) -> RadicalExpr {
        RadicalExpr::int(n).sqrt()
    }

    pub fn square(self) -> RadicalExpr {
        self.clone() * self
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            RadicalExpr::Literal(_) | RadicalExpr::ImaginaryUnit => 1,
            RadicalExpr::Sqrt(a) | RadicalExpr::Cbrt(a) => 1 + a.size(),
            RadicalExpr::Add(a, b) | RadicalExpr::Sub(a, b) | RadicalExpr::Mul(a, b) | RadicalExpr::Div(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    fn eval_bits(&self, prec: u64) -> Result<ComplexBall> {
        Ok(match self {
            RadicalExpr::Literal(r) => ComplexBall::from_rational(r, prec),
            RadicalExpr::ImaginaryUnit => ComplexBall::i(),
            RadicalExpr::Add(a, b) => ComplexBall::add(&a.eval_bits(prec)?, &b.eval_bits(prec)?, prec),
            RadicalExpr::Sub(a, b) => a.eval_bits(prec)?.sub(&b.eval_bits(prec)?, prec),
            RadicalExpr::Mul(a, b) => a.eval_bits(prec)?.mul(&b.eval_bits(prec)?, prec),
            RadicalExpr::Div(a, b) => a.eval_bits(prec)?.div(&b.eval_bits(prec)?, prec)?,
            RadicalExpr::Sqrt(a) => a.eval_bits(prec)?.sqrt(prec)?,
            RadicalExpr::Cbrt(a) => a.eval_bits(prec)?.cbrt(prec)?,
        })
    }
}

/// Certified enclosure of `e` with radius well below `10^-p`.
pub fn eval_radical(e: &RadicalExpr, p: Precision) -> Result<ComplexBall> {
    // guard bits grow with tree depth; 64 covers the catalog expressions
    e.eval_bits(p.bits() + 64)
}

macro_rules! binop {
    ($tr:ident, $f:ident, $v:ident) => {
        impl $tr for RadicalExpr {
            type Output = RadicalExpr;
            fn $f(self, rhs: RadicalExpr) -> RadicalExpr {
                RadicalExpr::$v(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for RadicalExpr {
    type Output = RadicalExpr;
    fn neg(self) -> RadicalExpr {
        RadicalExpr::int(0) - self
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadicalExpr::Literal(r) => {
                if r.is_integer() && *r >= ratio(0, 1) {
                    write!(f, "{r}")
                } else {
                    write!(f, "({r})")
                }
            }
            RadicalExpr::ImaginaryUnit => write!(f, "i"),
            RadicalExpr::Add(a, b) => write!(f, "({a} + {b})"),
            RadicalExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            RadicalExpr::Mul(a, b) => write!(f, "{a}*{b}"),
            RadicalExpr::Div(a, b) => write!(f, "{a}/{b}"),
            RadicalExpr::Sqrt(a) => write!(f, "sqrt({a})"),
            RadicalExpr::Cbrt(a) => write!(f, "cbrt({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::{pow10_neg, Mag};

    fn p(d: u32) -> Precision {
        Precision::new(d).unwrap()
    }

    #[test]
    fn literal_one_is_exact() {
        let b = eval_radical(&RadicalExpr::int(1), p(30)).unwrap();
        assert!(b.contains_point(&ratio(1, 1), &ratio(0, 1)));
        assert!(b.rad().is_zero());
    }

    #[test]
    fn i_squared() {
        let b = eval_radical(&RadicalExpr::i().square(), p(30)).unwrap();
        assert!(b.contains_point(&ratio(-1, 1), &ratio(0, 1)));
    }

    #[test]
    fn doubled_precision_nests() {
        let e = (RadicalExpr::int(91) + RadicalExpr::int(9) * RadicalExpr::sqrt_int(201)).cbrt();
        let lo = eval_radical(&e, p(50)).unwrap();
        let hi = eval_radical(&e, p(100)).unwrap();
        assert!(lo.overlaps(&hi));
        assert!(hi.rad() < lo.rad());
        assert!(lo.rad() < Mag::pow10_neg_up(50));
        let (re, im) = lo.to_f64();
        assert!((re - 6.0239).abs() < 1e-3 && im == 0.0);
        let cube = lo.pow_int(3, 400).unwrap().sub(&eval_radical(&(RadicalExpr::int(91) + RadicalExpr::int(9) * RadicalExpr::sqrt_int(201)), p(50)).unwrap(), 400);
        assert!(cube.is_certified_below(&pow10_neg(45)));
    }

    #[test]
    fn division_by_zero_straddles() {
        let e = RadicalExpr::int(1) / (RadicalExpr::sqrt_int(4) - RadicalExpr::int(2));
        assert!(eval_radical(&e, p(30)).is_err());
    }

    #[test]
    fn display() {
        let e = RadicalExpr::frac(-1, 3) * RadicalExpr::sqrt_int(2);
        assert_eq!(e.to_string(), "(-1/3)*sqrt(2)");
    }
}
