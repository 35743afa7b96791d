//! Truncated infinite products with certified tails.
//!
//! For factors `1 + e_n` with `sum_{n>N} |e_n| = S <= 1/2` the omitted part
//! of the product lies within `e^S - 1 <= 2S` of 1.

use crate::error::{Error, Result};
use crate::numcore::{pi_bits, ratio, ComplexBall, Mag, Precision, Rational, RealBall};

use super::{check_small_nome, QPoint};

fn mag_pow(m: Mag, mut k: u64) -> Mag {
    let mut base = m;
    let mut acc = Mag::from_u64(1);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(base);
        }
        base = base.mul(base);
        k >>= 1;
    }
    acc
}

/// Number of factors so that `|q|^N < 10^-(digits + 10)`.
fn factor_count(q_abs: Mag, digits: u32) -> u64 {
    let lq = q_abs.log10_upper().min(-1e-3);
    ((digits as f64 + 10.0) / -lq).ceil() as u64 + 1
}

/// Ball `1 +- 2S` for `S <= mult * |q|^first / (1 - |q|)` with `|q| <= 1/10`.
fn tail_ball(q_abs: Mag, first: u64, mult: u64) -> ComplexBall {
    // 2 / (1 - 1/10) < 3
    let s = mag_pow(q_abs, first).mul(Mag::from_u64(3 * mult));
    ComplexBall::one().add_error(s)
}

/// The level-`level` hauptmodul `x_level(q)` for `level` in {2, 3, 4}.
pub fn x_level(q: &QPoint, level: u32, p: Precision) -> Result<ComplexBall> {
    check_small_nome(q)?;
    let prec = p.bits() + 32;
    let x = q.value();
    let q_abs = x.abs_upper();
    let n = factor_count(q_abs, p.digits());
    let one = ComplexBall::one();
    match level {
        4 => {
            // 16 q prod ((1 + q^(2k)) / (1 + q^(2k-1)))^8
            let mut num = one.clone();
            let mut den = one.clone();
            let mut odd = x.clone();
            for _ in 0..n {
                let even = odd.mul(x, prec);
                num = num.mul(&one.add(&even, prec), prec);
                den = den.mul(&one.add(&odd, prec), prec);
                odd = even.mul(x, prec);
            }
            num = num.mul(&tail_ball(q_abs, 2 * n + 2, 1), prec);
            den = den.mul(&tail_ball(q_abs, 2 * n + 1, 1), prec);
            let r = num.div(&den, prec)?.pow_int(8, prec)?;
            Ok(r.mul(x, prec).mul_int(16, prec))
        }
        2 | 3 => {
            let mut prod = one.clone();
            let mut qk = one.clone();
            for _ in 0..n {
                qk = qk.mul(x, prec);
                let f = if level == 2 { one.add(&qk, prec) } else { one.add(&qk, prec).add(&qk.sqr(prec), prec) };
                prod = prod.mul(&f, prec);
            }
            let (mult, c, e) = if level == 2 { (1, 64, -24) } else { (2, 27, -12) };
            prod = prod.mul(&tail_ball(q_abs, n + 1, mult), prec);
            let cq = x.mul_int(c, prec);
            let den = cq.add(&prod.pow_int(e, prec)?, prec);
            cq.div(&den, prec)
        }
        _ => Err(Error::InvalidArgument(format!("x_level supports levels 2, 3, 4; got {level}"))),
    }
}

/// Weber's `f(i t) = q^(-1/48) prod_{n>=1} (1 + q^(n - 1/2))` with
/// `q = exp(-2 pi t)`, for rational `t >= 1/2`.
pub fn weber_f(t: &Rational, p: Precision) -> Result<ComplexBall> {
    if *t < ratio(1, 2) {
        return Err(Error::InvalidArgument(format!("weber_f needs t >= 1/2, got {t}")));
    }
    let prec = p.bits() + 32;
    let pit = pi_bits(prec).mul(&RealBall::from_rational(t, prec), prec);
    let r = pit.neg().exp(prec);
    let x = r.sqr(prec);
    let r_abs = r.abs_upper();
    let n = factor_count(r_abs.mul(r_abs), p.digits());
    let one = RealBall::one();
    let mut prod = one.clone();
    let mut term = r.clone();
    for _ in 0..n {
        prod = prod.mul(&one.add(&term, prec), prec);
        term = term.mul(&x, prec);
    }
    // omitted sum <= r^(2N+1) / (1 - r^2) with r <= exp(-pi/2)
    let tail = mag_pow(r_abs, 2 * n + 1).mul(Mag::from_u64(3));
    let lead = pit.mul(&RealBall::from_rational(&ratio(1, 24), prec), prec).exp(prec);
    Ok(prod.add_error(tail).mul(&lead, prec).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modeq::{j_from_x, j_invariant};
    use crate::numcore::pow10_neg;

    fn p(d: u32) -> Precision {
        Precision::new(d).unwrap()
    }

    #[test]
    fn x4_leading_order() {
        let q = QPoint::from_rational(&pow10_neg(40), p(60)).unwrap();
        let x4 = x_level(&q, 4, p(60)).unwrap();
        let r = x4.div(&q.value().mul_int(16, 400), 400).unwrap();
        assert!(r.sub(&ComplexBall::one(), 400).is_certified_below(&pow10_neg(30)));
    }

    #[test]
    fn levels_two_three_four_agree_with_j() {
        let prec = p(60);
        let q = QPoint::from_rational(&ratio(1, 100), prec).unwrap();
        let j = j_invariant(&q, prec).unwrap();
        for level in [2, 3, 4] {
            let x = x_level(&q, level, prec).unwrap();
            let jl = j_from_x(&x, level, prec).unwrap();
            assert!(jl.overlaps(&j), "level {level}");
            assert!(jl.rad() < Mag::pow10_neg_up(40));
        }
    }

    #[test]
    fn weber_f_leading_factor() {
        let t = ratio(20, 1);
        let f = weber_f(&t, p(40)).unwrap();
        let lead = pi_bits(300).mul_int(20, 300).mul(&RealBall::from_rational(&ratio(-1, 24), 300), 300).exp(300);
        let r = f.mul_real(&lead, 300).sub(&ComplexBall::one(), 300);
        assert!(r.is_certified_below(&pow10_neg(20)));
    }

    #[test]
    fn weber_f_gives_j() {
        for t in [ratio(1, 1), ratio(13, 10)] {
            let prec = p(50);
            let f24 = weber_f(&t, prec).unwrap().pow_int(24, 400).unwrap();
            let lhs = f24.sub(&ComplexBall::from_int(16), 400).pow_int(3, 400).unwrap().div(&f24, 400).unwrap();
            let q = pi_bits(400).mul(&RealBall::from_rational(&t, 400), 400).mul_int(-2, 400).exp(400);
            let j = j_invariant(&QPoint::new(q.into(), "exp(-2 pi t)").unwrap(), prec).unwrap();
            assert!(lhs.overlaps(&j));
            assert!(lhs.rad() < Mag::pow10_neg_up(30));
        }
    }

    #[test]
    fn weber_f_domain() {
        assert!(weber_f(&ratio(1, 3), p(20)).is_err());
    }
}
