//! Reference value of pi from arctangent identities.
//!
//! The arctangent series are summed exactly with rational binary splitting
//! and only the final quotient is rounded, so the enclosure radius is the
//! truncation tail plus one rounding error per arctangent.

use num_bigint::BigInt;
use num_traits::One;

use super::float::Float;
use super::mag::Mag;
use super::real::RealBall;
use super::{ComplexBall, Precision};

/// Split state for `sum a(n)/b(n) * prod_{j<=n} p(j)/q(j)` over a range.
struct ArctanSplit {
    p: BigInt,
    q: BigInt,
    b: BigInt,
    t: BigInt,
}

/// Terms of `atan(1/k) = sum (-1)^n / ((2n+1) k^(2n+1))`.
fn arctan_split(k: &BigInt, k2: &BigInt, lo: u64, hi: u64) -> ArctanSplit {
    if hi - lo == 1 {
        let n = lo;
        let (p, q) = if n == 0 { (BigInt::one(), k.clone()) } else { (BigInt::from(-1), k2.clone()) };
        let b = BigInt::from(2 * n + 1);
        return ArctanSplit { t: p.clone(), p, q, b };
    }
    let mid = lo + (hi - lo) / 2;
    let l = arctan_split(k, k2, lo, mid);
    let r = arctan_split(k, k2, mid, hi);
    ArctanSplit {
        t: &r.b * &r.q * &l.t + &l.b * &l.p * &r.t,
        p: l.p * r.p,
        q: l.q * r.q,
        b: l.b * r.b,
    }
}

/// Enclosure of `atan(1/k)` for an integer `k >= 2`.
pub fn arctan_inv(k: u64, prec: u64) -> RealBall {
    assert!(k >= 2);
    let log2k = (k as f64).log2();
    let n_terms = ((prec as f64 + 8.0) / (2.0 * log2k)).ceil() as u64 + 1;
    let kb = BigInt::from(k);
    let k2 = &kb * &kb;
    let s = arctan_split(&kb, &k2, 0, n_terms);
    let (mid, err) = Float::from_int(s.t).div(&Float::from_int(s.b * s.q), prec);
    // alternating with decreasing terms: tail <= first omitted term < 2^-(2N+1)log2(k)
    let tail_exp = -((2 * n_terms + 1) as f64 * log2k).floor() as i64 + 1;
    RealBall::new(mid, err.add(Mag::pow2(tail_exp)))
}

fn combine(terms: &[(i64, u64)], prec: u64) -> RealBall {
    let wp = prec + 16;
    let mut acc = RealBall::zero();
    for &(c, k) in terms {
        acc = acc.add(&arctan_inv(k, wp).mul_int(c, wp), wp);
    }
    acc
}

/// Machin: `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_machin(prec: u64) -> RealBall {
    combine(&[(16, 5), (-4, 239)], prec)
}

/// Gauss: `pi = 48 atan(1/18) + 32 atan(1/57) - 20 atan(1/239)`.
pub fn pi_gauss(prec: u64) -> RealBall {
    combine(&[(48, 18), (32, 57), (-20, 239)], prec)
}

/// Pi to `prec` bits (Machin formula).
pub fn pi_bits(prec: u64) -> RealBall {
    pi_machin(prec)
}

/// Ball containing pi with radius at most `10^-digits`.
pub fn pi_oracle(p: Precision) -> ComplexBall {
    pi_machin(p.bits()).into()
}
