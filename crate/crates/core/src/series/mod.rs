//! Binary-splitting evaluation of hypergeometric series for `1/pi` and
//! certified comparison against an independent value of pi.
//!
//! The series is `sum_n T_n (a + b n) z^n` with
//! `T_n = (1/2)_n (1/s)_n (1 - 1/s)_n / n!^3`.

#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numcore::{pi_oracle, ComplexBall, Mag, Precision, Rational, RealBall};
use crate::prover::{level_for, SeriesParams, Surd};

/// Extra decimal digits carried through the final divisions.
pub const GUARD_DIGITS: u32 = 25;

/// Ranges shorter than this are split sequentially.
#[cfg(feature = "parallel")]
const PARALLEL_CUTOFF: u64 = 48;

/// `T_{n+1} / T_n` without the `z` factor:
/// `(n + 1/2)(n + 1/s)(n + 1 - 1/s) / (n + 1)^3`.
pub fn term_ratio(s: u32, n: u64) -> Result<Rational> {
    level_for(s)?;
    let (s, m) = (BigInt::from(s), BigInt::from(n));
    let num = (BigInt::from(2) * &m + 1) * (&s * &m + 1) * (&s * (&m + 1) - 1);
    let den = BigInt::from(2) * &s * &s * BigInt::from(n + 1u64).pow(3);
    Ok(Rational::new(num, den))
}

/// Partial product and weighted sum over a term range `[n1, n2)`.
///
/// With `p(n)/q(n) = T_n z^n / (T_{n-1} z^{n-1})` and `p(0) = q(0) = 1`,
/// `P = prod p`, `Q = prod q` and
/// `T = sum_n w(n) p(n1)..p(n) q(n+1)..q(n2-1)` for an integer weight `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitNode {
    pub p: BigInt,
    pub q: BigInt,
    pub t: BigInt,
}

impl SplitNode {
    /// Node for the adjacent ranges `self` then `right`.
    pub fn combine(&self, right: &SplitNode) -> SplitNode {
        SplitNode {
            p: &self.p * &right.p,
            q: &self.q * &right.q,
            t: &self.t * &right.q + &self.p * &right.t,
        }
    }
}

/// Exact integer data of one series: `z = zn/zd` and weight `wa + wb n`.
#[derive(Clone, Debug)]
pub struct SplitSeries {
    s: BigInt,
    zn: BigInt,
    zd: BigInt,
    wa: BigInt,
    wb: BigInt,
}

impl SplitSeries {
    pub fn new(s: u32, z: &Rational, wa: BigInt, wb: BigInt) -> Result<SplitSeries> {
        level_for(s)?;
        Ok(SplitSeries { s: s.into(), zn: z.numer().clone(), zd: z.denom().clone(), wa, wb })
    }

    fn p(&self, n: u64) -> BigInt {
        if n == 0 {
            return BigInt::one();
        }
        let n = BigInt::from(n);
        (BigInt::from(2) * &n - 1) * (&self.s * (&n - 1) + 1) * (&self.s * &n - 1) * &self.zn
    }

    fn q(&self, n: u64) -> BigInt {
        if n == 0 {
            return BigInt::one();
        }
        BigInt::from(2) * &self.s * &self.s * BigInt::from(n).pow(3) * &self.zd
    }

    pub fn leaf(&self, n: u64) -> SplitNode {
        let p = self.p(n);
        let t = (&self.wa + &self.wb * BigInt::from(n)) * &p;
        SplitNode { p, q: self.q(n), t }
    }

    /// Node for `[n1, n2)`, `n1 < n2`, split at midpoints.
    pub fn split(&self, n1: u64, n2: u64) -> SplitNode {
        assert!(n1 < n2, "empty range");
        if n2 - n1 == 1 {
            return self.leaf(n1);
        }
        let m = n1 + (n2 - n1) / 2;
        let (l, r) = self.halves(n1, m, n2);
        l.combine(&r)
    }

    #[cfg(feature = "parallel")]
    fn halves(&self, n1: u64, m: u64, n2: u64) -> (SplitNode, SplitNode) {
        if n2 - n1 >= PARALLEL_CUTOFF {
            rayon::join(|| self.split(n1, m), || self.split(m, n2))
        } else {
            (self.split(n1, m), self.split(m, n2))
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn halves(&self, n1: u64, m: u64, n2: u64) -> (SplitNode, SplitNode) {
        (self.split(n1, m), self.split(m, n2))
    }

    /// Node for `[n1, n2)` split at the given interior points (ascending).
    pub fn split_at(&self, n1: u64, n2: u64, cuts: &[u64]) -> SplitNode {
        let mut bounds = vec![n1];
        bounds.extend(cuts.iter().copied().filter(|&c| c > n1 && c < n2));
        bounds.push(n2);
        bounds.windows(2).map(|w| self.split(w[0], w[1])).reduce(|a, b| a.combine(&b)).expect("nonempty range")
    }

    /// `sum_{n < n_terms} T_n (wa + wb n) z^n` as an exact fraction.
    pub fn exact_sum(&self, n_terms: u64) -> Rational {
        let node = self.split(0, n_terms);
        Rational::new(node.t, node.q)
    }
}

/// Partial sum of a series plus a bound on the omitted tail.
#[derive(Clone, Debug)]
pub struct SeriesSum {
    /// Encloses the partial sum over `n < terms`; excludes the tail.
    pub sum: ComplexBall,
    /// Upper bound for `|sum_{n >= terms} ...|`.
    pub tail: Mag,
    pub terms: u64,
}

impl SeriesSum {
    /// Ball enclosing the full infinite sum.
    pub fn total(&self) -> ComplexBall {
        self.sum.add_error(self.tail)
    }
}

fn check_convergent(z: &Rational) -> Result<()> {
    if z.abs() >= Rational::one() {
        return Err(Error::DivergentParameters);
    }
    Ok(())
}

/// `(lcm of denominators, integer weights)` for `a` and `b` over one radicand.
fn common_weights(a: &Rational, b: &Rational) -> (BigInt, BigInt, BigInt) {
    let l = a.denom().lcm(b.denom());
    let wa = a.numer() * (&l / a.denom());
    let wb = b.numer() * (&l / b.denom());
    (l, wa, wb)
}

fn sqrt_ball(m: u64, prec: u64) -> Result<RealBall> {
    if m == 1 {
        Ok(RealBall::one())
    } else {
        RealBall::from_int(m).sqrt(prec)
    }
}

/// Ball for `sqrt(m) * t / (l q)`.
fn scaled_quotient(t: &BigInt, q: &BigInt, l: &BigInt, m: u64, prec: u64) -> Result<RealBall> {
    let frac = RealBall::from_int(t.clone()).div(&RealBall::from_int(q * l), prec)?;
    Ok(frac.mul(&sqrt_ball(m, prec)?, prec))
}

/// Upper bound for `|a| + |b| n`.
fn weight_upper(a: &Surd, b: &Surd, n: u64) -> Mag {
    let up = |x: &Surd| Mag::from_f64_up(x.to_f64().abs() * (1.0 + 1e-9));
    up(a).add(up(b).mul(Mag::from_u64(n)))
}

/// Upper bound for `|T_n z^n|` from the node over `[0, n)`.
fn term_magnitude(series: &SplitSeries, prefix: &SplitNode, n: u64) -> Mag {
    let num = RealBall::from_int(&prefix.p * series.p(n));
    let den = RealBall::from_int(&prefix.q * series.q(n));
    num.abs_upper().div(den.abs_lower())
}

/// Sum of the first `n_terms` terms and a geometric bound on the rest.
pub fn eval_series(params: &SeriesParams, n_terms: u64, p: Precision) -> Result<SeriesSum> {
    check_convergent(&params.z)?;
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be at least 1".into()));
    }
    let prec = p.bits();
    let (a, b) = (&params.a, &params.b);
    let (sum, prefix, series) = if a.radicand() == b.radicand() || a.is_zero() || b.is_zero() {
        let m = if a.is_zero() { b.radicand() } else { a.radicand() };
        let (l, wa, wb) = common_weights(a.coefficient(), b.coefficient());
        let series = SplitSeries::new(params.s, &params.z, wa, wb)?;
        let node = series.split(0, n_terms);
        let sum = scaled_quotient(&node.t, &node.q, &l, m, prec)?;
        (sum, node, series)
    } else {
        // different radicands: sum the two weights separately
        let s0 = SplitSeries::new(params.s, &params.z, BigInt::one(), BigInt::zero())?;
        let s1 = SplitSeries::new(params.s, &params.z, BigInt::zero(), BigInt::one())?;
        let n0 = s0.split(0, n_terms);
        let n1 = s1.split(0, n_terms);
        let x0 = scaled_quotient(&n0.t, &n0.q, a.coefficient().denom(), a.radicand(), prec)?
            .mul(&RealBall::from_int(a.coefficient().numer().clone()), prec);
        let x1 = scaled_quotient(&n1.t, &n1.q, b.coefficient().denom(), b.radicand(), prec)?
            .mul(&RealBall::from_int(b.coefficient().numer().clone()), prec);
        (x0.add(&x1, prec), n0, s0)
    };
    // |T_{n+1} z^{n+1}| <= |z| |T_n z^n| and the weight ratio decreases in n
    let zmag = RealBall::from_rational(&params.z.abs(), 64).abs_upper();
    let w_n = weight_upper(a, b, n_terms);
    let w_next = weight_upper(a, b, n_terms + 1);
    let rho = zmag.mul(w_next).div(w_n);
    let tail = if w_n.is_zero() {
        Mag::ZERO
    } else if rho >= Mag::from_u64(1) {
        Mag::from_u64(u64::MAX)
    } else {
        term_magnitude(&series, &prefix, n_terms).mul(w_n).div(Mag::from_u64(1).sub_down(rho))
    };
    Ok(SeriesSum { sum: sum.into(), tail, terms: n_terms })
}

/// Asymptotic decimal digits gained per term: `-log10 |z|`.
pub fn digits_per_term(params: &SeriesParams) -> f64 {
    rational_log10(&params.z.abs()).map_or(f64::INFINITY, |l| -l)
}

fn rational_log10(x: &Rational) -> Option<f64> {
    if x.is_zero() {
        return None;
    }
    let l = |n: &BigInt| {
        let bits = n.bits();
        if bits <= 1000 {
            n.to_f64().map(f64::log10).unwrap_or(f64::NAN)
        } else {
            let sh = bits - 64;
            (n >> sh).to_f64().unwrap_or(f64::NAN).log10() + sh as f64 * std::f64::consts::LOG10_2
        }
    };
    Some(l(x.numer()) - l(x.denom()))
}

/// Outcome of comparing a series with `1/pi`.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub digits_requested: u32,
    pub digits_matched: u32,
    /// Encloses the infinite series sum minus `1/pi`.
    pub residual: ComplexBall,
    pub terms_used: u64,
    /// Wall time in seconds.
    pub elapsed: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.digits_matched >= self.digits_requested
    }
}

/// Number of terms planned for `digits` correct digits.
pub fn planned_terms(params: &SeriesParams, digits: u32) -> Result<u64> {
    check_convergent(&params.z)?;
    let dpt = digits_per_term(params);
    Ok(((1.1 * digits as f64 / dpt).ceil() as u64).max(1))
}

/// Seconds since the call; always 0 on wasm32, which has no clock in std.
fn stopwatch() -> impl Fn() -> f64 {
    #[cfg(not(target_arch = "wasm32"))]
    {
        let start = Instant::now();
        move || start.elapsed().as_secs_f64()
    }
    #[cfg(target_arch = "wasm32")]
    {
        || 0.0
    }
}

/// Sum the series to `digits` digits and compare with `1/pi`.
///
/// Terms follow [`planned_terms`], extended while the tail bound exceeds
/// `10^-(digits + 5)`.
pub fn verify_against_pi(params: &SeriesParams, digits: u32) -> Result<VerificationReport> {
    if digits < 50 {
        return Err(Error::InvalidArgument(format!("digits must be at least 50, got {digits}")));
    }
    let elapsed = stopwatch();
    let p = Precision::new(digits + GUARD_DIGITS)?;
    let target = Mag::pow10_neg_down(digits as i64 + 5);
    let mut n = planned_terms(params, digits)?;
    let mut sum = eval_series(params, n, p)?;
    while sum.tail > target {
        let step = (n / 10).max(1);
        n += step;
        sum = eval_series(params, n, p)?;
    }
    let mut report = compare_with_pi(&sum, digits, p)?;
    report.elapsed = elapsed();
    Ok(report)
}

/// Compare a fixed number of terms with `1/pi` (no adaptive extension).
pub fn verify_with_terms(params: &SeriesParams, digits: u32, n_terms: u64) -> Result<VerificationReport> {
    let elapsed = stopwatch();
    let p = Precision::new(digits.max(Precision::MIN_DIGITS) + GUARD_DIGITS)?;
    let sum = eval_series(params, n_terms, p)?;
    let mut report = compare_with_pi(&sum, digits, p)?;
    report.elapsed = elapsed();
    Ok(report)
}

fn compare_with_pi(sum: &SeriesSum, digits: u32, p: Precision) -> Result<VerificationReport> {
    let prec = p.bits();
    let inv_pi = pi_oracle(p).inv(prec)?;
    let residual = sum.total().sub(&inv_pi, prec);
    let err = residual.abs_upper();
    let matched = if err.is_zero() { f64::INFINITY } else { -err.log10_upper() };
    let digits_matched = if matched.is_finite() { (matched.floor().max(0.0) as u64).min(digits as u64) as u32 } else { digits };
    Ok(VerificationReport { digits_requested: digits, digits_matched, residual, terms_used: sum.terms, elapsed: 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::ratio;

    #[test]
    fn ratios_at_zero() {
        assert_eq!(term_ratio(6, 0).unwrap(), ratio(5, 72));
        assert_eq!(term_ratio(2, 0).unwrap(), ratio(1, 8));
        assert!(term_ratio(5, 0).is_err());
    }

    #[test]
    fn combine_matches_direct_split() {
        let s = SplitSeries::new(6, &ratio(-1, 512), 3.into(), 7.into()).unwrap();
        assert_eq!(s.split(0, 10), s.split(0, 4).combine(&s.split(4, 10)));
    }

    #[test]
    fn log10_of_large_rationals() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(3));
        assert!((rational_log10(&big).unwrap() - (400.0 - 3f64.log10())).abs() < 1e-9);
    }
}
