//! Level-1 modular equations: the rational maps `w(u)` linking Weber
//! variables to `alpha(1 - alpha)`, plus q-series for the modular invariant,
//! the level 2/3/4 hauptmoduln and the Weber function `f`.

mod jinv;
mod products;
mod validate;

pub use jinv::{j_coefficients, j_from_x, j_invariant, j_invariant_with_order, J_DEFAULT_ORDER};
pub use products::{weber_f, x_level};
pub use validate::{validate_modular_polynomial, OrderingCheck, ValidationReport};

use crate::error::{Error, Result};
use crate::numcore::{pi_bits, ratio, ComplexBall, Mag, Precision, RealBall};

/// Exponent `e` of the map `432 x^e / (x^e - 16)^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WMapForm {
    /// `e = 12`, used with transformed polynomials.
    E12,
    /// `e = 24`, used with untransformed polynomials.
    E24,
}

impl WMapForm {
    pub fn exponent(&self) -> u32 {
        match self {
            WMapForm::E12 => 12,
            WMapForm::E24 => 24,
        }
    }

    pub fn from_exponent(e: u32) -> Result<WMapForm> {
        match e {
            12 => Ok(WMapForm::E12),
            24 => Ok(WMapForm::E24),
            _ => Err(Error::InvalidArgument(format!("w-map exponent must be 12 or 24, got {e}"))),
        }
    }
}

/// A nome `q` with certified `|q| < 1`.
#[derive(Clone, Debug)]
pub struct QPoint {
    value: ComplexBall,
    description: String,
}

impl QPoint {
    pub fn new(value: ComplexBall, description: impl Into<String>) -> Result<QPoint> {
        if !value.is_certified_below(&ratio(1, 1)) {
            return Err(Error::NomeTooLarge { bound: "1" });
        }
        Ok(QPoint { value, description: description.into() })
    }

    pub fn from_rational(q: &crate::numcore::Rational, p: Precision) -> Result<QPoint> {
        QPoint::new(ComplexBall::from_rational(q, p.bits()), format!("{q}"))
    }

    /// `-exp(-pi sqrt(4d - 1))`, the nome of the alternating series of degree `d`.
    pub fn alternating(d: u32, p: Precision) -> Result<QPoint> {
        let v = exp_neg_pi_sqrt(4 * d as u64 - 1, p.bits() + 32)?.neg();
        QPoint::new(v.into(), format!("-exp(-pi*sqrt({}))", 4 * d - 1))
    }

    /// `exp(-pi sqrt(4d))`.
    pub fn positive(d: u32, p: Precision) -> Result<QPoint> {
        let v = exp_neg_pi_sqrt(4 * d as u64, p.bits() + 32)?;
        QPoint::new(v.into(), format!("exp(-pi*sqrt({}))", 4 * d))
    }

    pub fn value(&self) -> &ComplexBall {
        &self.value
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

fn exp_neg_pi_sqrt(n: u64, prec: u64) -> Result<RealBall> {
    let s = RealBall::from_int(n).sqrt(prec)?;
    Ok(pi_bits(prec).mul(&s, prec).neg().exp(prec))
}

/// `(x^e, x^e - 16)` with the pole check.
fn w_parts(x: &ComplexBall, form: WMapForm, prec: u64) -> Result<(ComplexBall, ComplexBall)> {
    let y = x.pow_int(form.exponent() as i64, prec)?;
    let den = y.sub(&ComplexBall::from_int(16), prec);
    if den.contains_zero() {
        return Err(Error::PoleStraddle("x^e - 16"));
    }
    Ok((y, den))
}

/// `432 x^e / (x^e - 16)^3`.
pub fn w_map(x: &ComplexBall, form: WMapForm, p: Precision) -> Result<ComplexBall> {
    let prec = p.bits();
    let (y, den) = w_parts(x, form, prec)?;
    y.mul_int(432, prec).div(&den.pow_int(3, prec)?, prec)
}

/// `[w(x), w'(x), w''(x)]` with derivatives taken in `x`.
pub fn w_map_jet(x: &ComplexBall, form: WMapForm, p: Precision) -> Result<[ComplexBall; 3]> {
    let prec = p.bits();
    let e = form.exponent() as i64;
    let (y, den) = w_parts(x, form, prec)?;
    let den3 = den.pow_int(3, prec)?;
    let den4 = den3.mul(&den, prec);
    let den5 = den4.mul(&den, prec);
    let w = y.mul_int(432, prec).div(&den3, prec)?;
    // dw/dy = -864 (y + 8) / (y - 16)^4, d2w/dy2 = 2592 (y + 16) / (y - 16)^5
    let w_y = y.add(&ComplexBall::from_int(8), prec).mul_int(-864, prec).div(&den4, prec)?;
    let w_yy = y.add(&ComplexBall::from_int(16), prec).mul_int(2592, prec).div(&den5, prec)?;
    let y1 = x.pow_int(e - 1, prec)?.mul_int(e, prec);
    let y2 = x.pow_int(e - 2, prec)?.mul_int(e * (e - 1), prec);
    let w1 = w_y.mul(&y1, prec);
    let w2 = w_yy.mul(&y1.sqr(prec), prec).add(&w_y.mul(&y2, prec), prec);
    Ok([w, w1, w2])
}

/// Root branch of `alpha (1 - alpha) = w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `(1 - sqrt(1 - 4w)) / 2`, so that `1 - 2 alpha` is the principal root.
    Minus,
    /// `(1 + sqrt(1 - 4w)) / 2`.
    Plus,
}

pub fn alpha_from_w(w: &ComplexBall, branch: Branch, p: Precision) -> Result<ComplexBall> {
    let prec = p.bits();
    let disc = ComplexBall::one().sub(&w.mul_int(4, prec), prec);
    let s = disc.sqrt(prec)?;
    let s = match branch {
        Branch::Minus => s.neg(),
        Branch::Plus => s,
    };
    Ok(ComplexBall::one().add(&s, prec).mul_2exp(-1))
}

/// Certified `|q| <= 1/10`.
pub(crate) fn check_small_nome(q: &QPoint) -> Result<()> {
    if q.value.abs_upper() > Mag::from_f64_up(0.1) {
        return Err(Error::NomeTooLarge { bound: "1/10" });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: u32) -> Precision {
        Precision::new(d).unwrap()
    }

    #[test]
    fn w_map_at_zero() {
        let w = w_map(&ComplexBall::zero(), WMapForm::E12, p(30)).unwrap();
        assert!(w.contains_zero());
        assert!(w.rad().is_zero());
    }

    #[test]
    fn w_map_pole() {
        // 16^(1/12) is the pole for e = 12
        let x = ComplexBall::new(
            crate::numcore::Float::from_rational(&ratio(2, 1), 100).0,
            crate::numcore::Float::zero(),
            Mag::from_u64(1),
        );
        assert!(matches!(w_map(&x, WMapForm::E12, p(30)), Err(Error::PoleStraddle(_))));
    }

    #[test]
    fn alpha_double_root_and_zero() {
        let quarter = ComplexBall::from_rational(&ratio(1, 4), 200);
        for b in [Branch::Minus, Branch::Plus] {
            let a = alpha_from_w(&quarter, b, p(40)).unwrap();
            assert!(a.contains_point(&ratio(1, 2), &ratio(0, 1)));
        }
        let a = alpha_from_w(&ComplexBall::zero(), Branch::Minus, p(40)).unwrap();
        assert!(a.contains_zero());
    }

    #[test]
    fn jet_matches_difference_quotient() {
        let prec = p(60);
        let x = ComplexBall::from_rational(&ratio(7, 10), 300).add(&ComplexBall::i().mul_2exp(-3), 300);
        for form in [WMapForm::E12, WMapForm::E24] {
            let [_, w1, w2] = w_map_jet(&x, form, prec).unwrap();
            let h = ComplexBall::from_rational(&crate::numcore::pow10_neg(15), 300);
            let f = |t: &ComplexBall| w_map(t, form, prec).unwrap();
            let plus = f(&x.add(&h, 300));
            let minus = f(&x.sub(&h, 300));
            let d1 = plus.sub(&minus, 300).div(&h.mul_int(2, 300), 300).unwrap();
            let d2 = plus.add(&minus, 300).sub(&f(&x).mul_int(2, 300), 300).div(&h.sqr(300), 300).unwrap();
            let rel = |a: &ComplexBall, b: &ComplexBall| a.sub(b, 300).abs_upper().to_f64() / b.abs_lower().to_f64();
            assert!(rel(&d1, &w1) < 1e-20);
            assert!(rel(&d2, &w2) < 1e-12);
        }
    }

    #[test]
    fn nome_constructors() {
        let q = QPoint::alternating(41, p(50)).unwrap();
        let (re, _) = q.value().to_f64();
        assert!(re < 0.0 && re > -1e-17);
        assert!(QPoint::new(ComplexBall::from_int(1), "one").is_err());
    }
}
