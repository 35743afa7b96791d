//! The modular invariant from its q-expansion.
//!
//! Coefficients come from `E4^3 / (q prod (1 - q^n)^24)` in exact integer
//! arithmetic. For the tail we use `c(n) < exp(4 pi sqrt(n))` for `n >= 1`
//! (Brisebarre and Philibert give a sharper bound) and the ratio estimate
//! `exp(4 pi (sqrt(n+1) - sqrt(n))) <= exp(2 pi / sqrt(n))`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numcore::{ComplexBall, Mag, Precision};

use super::{check_small_nome, QPoint};

/// Minimum number of coefficients used by [`j_invariant`].
pub const J_DEFAULT_ORDER: usize = 40;

const MAX_ORDER: usize = 4000;

fn cache() -> &'static Mutex<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

fn compute_coefficients(n: usize) -> Vec<BigInt> {
    // E4 = 1 + 240 sum sigma_3(k) q^k
    let mut e4 = vec![BigInt::zero(); n];
    e4[0] = BigInt::one();
    for d in 1..n {
        let d3 = BigInt::from(d as u64).pow(3) * 240;
        for k in (d..n).step_by(d) {
            e4[k] += &d3;
        }
    }
    let e4_2 = mul_trunc(&e4, &e4, n);
    let e4_3 = mul_trunc(&e4_2, &e4, n);
    // F = prod (1 - q^k)^-24 satisfies k f_k = 24 sum_{i=1..k} sigma(i) f_{k-i}
    let mut sigma = vec![BigInt::zero(); n];
    for d in 1..n {
        for k in (d..n).step_by(d) {
            sigma[k] += d as u64;
        }
    }
    let mut f = vec![BigInt::zero(); n];
    f[0] = BigInt::one();
    for k in 1..n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc += &sigma[i] * &f[k - i];
        }
        f[k] = acc * 24 / k as u64;
    }
    mul_trunc(&e4_3, &f, n)
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// The first `n` coefficients of `J(q) = sum_{k>=0} c_k q^(k-1)`:
/// `1, 744, 196884, 21493760, ...`.
pub fn j_coefficients(n: usize) -> Vec<BigInt> {
    let mut c = cache().lock().expect("coefficient cache");
    if c.len() < n {
        *c = compute_coefficients(n.max(2 * c.len()));
    }
    c[..n].to_vec()
}

/// Upper bound for `sum_{n>=order} exp(4 pi sqrt(n)) |q|^n`, as a log10.
fn tail_log10(order: usize, q_abs: Mag) -> Option<f64> {
    let n = order as f64;
    let lq = q_abs.log10_upper();
    let rho = (2.0 * std::f64::consts::PI / n.sqrt()).exp() * 10f64.powf(lq);
    if !(rho < 0.9) {
        return None;
    }
    let log_e = std::f64::consts::LOG10_E;
    Some(4.0 * std::f64::consts::PI * n.sqrt() * log_e + n * lq - (1.0 - rho).log10())
}

/// `J(q)` for certified `|q| <= 1/10`, with enough terms that the tail is
/// below `10^-digits` (at least [`J_DEFAULT_ORDER`]).
pub fn j_invariant(q: &QPoint, p: Precision) -> Result<ComplexBall> {
    check_small_nome(q)?;
    let q_abs = q.value().abs_upper();
    let target = -(p.digits() as f64) - 5.0;
    let mut order = J_DEFAULT_ORDER;
    while order < MAX_ORDER {
        match tail_log10(order, q_abs) {
            Some(t) if t < target => break,
            _ => order += order / 4,
        }
    }
    j_invariant_with_order(q, order.min(MAX_ORDER), p)
}

/// `J(q)` summing exactly `order` coefficients plus a certified tail.
pub fn j_invariant_with_order(q: &QPoint, order: usize, p: Precision) -> Result<ComplexBall> {
    check_small_nome(q)?;
    let order = order.max(2);
    let tail = tail_log10(order - 1, q.value().abs_upper()).ok_or(Error::NomeTooLarge { bound: "1/10" })?;
    let prec = p.bits() + 32;
    let c = j_coefficients(order);
    let x = q.value();
    // Horner on c_1 + c_2 q + ... + c_{order-1} q^(order-2)
    let mut acc = ComplexBall::zero();
    for k in (1..order).rev() {
        acc = acc.mul(x, prec).add(&ComplexBall::from_int(c[k].clone()), prec);
    }
    let inv = x.inv(prec)?;
    let tail_mag = Mag::pow10_neg_up((-tail).floor() as i64 - 1);
    Ok(acc.add(&inv, prec).add_error(tail_mag))
}

/// `J` from a level-`level` hauptmodul value `x`:
/// level 1: `1728 / (4x(1-x))`, 2: `64(1+3x)^3 / (x(1-x)^2)`,
/// 3: `27(1+8x)^3 / (x(1-x)^3)`, 4: `16(1+14x+x^2)^3 / (x(1-x)^4)`.
pub fn j_from_x(x: &ComplexBall, level: u32, p: Precision) -> Result<ComplexBall> {
    let prec = p.bits();
    let one = ComplexBall::one();
    let omx = one.sub(x, prec);
    let (num, den) = match level {
        1 => (ComplexBall::from_int(432), x.mul(&omx, prec)),
        2 => {
            let t = one.add(&x.mul_int(3, prec), prec);
            (t.pow_int(3, prec)?.mul_int(64, prec), x.mul(&omx.sqr(prec), prec))
        }
        3 => {
            let t = one.add(&x.mul_int(8, prec), prec);
            (t.pow_int(3, prec)?.mul_int(27, prec), x.mul(&omx.pow_int(3, prec)?, prec))
        }
        4 => {
            let t = one.add(&x.mul_int(14, prec), prec).add(&x.sqr(prec), prec);
            (t.pow_int(3, prec)?.mul_int(16, prec), x.mul(&omx.pow_int(4, prec)?, prec))
        }
        _ => return Err(Error::InvalidArgument(format!("level must be 1..=4, got {level}"))),
    };
    if den.contains_zero() {
        return Err(Error::PoleStraddle("hauptmodul denominator"));
    }
    num.div(&den, prec)
}
