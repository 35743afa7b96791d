mod common;

use common::{chudnovsky, degree_17, positive_a, positive_b, surd};
use num_bigint::BigInt;
use pi_prover_core::numcore::{pi_oracle, ratio, Precision, Rational};
use pi_prover_core::prover::{SeriesParams, SeriesSign, Surd};
use pi_prover_core::series::{
    digits_per_term, eval_series, planned_terms, term_ratio, verify_against_pi, verify_with_terms, SplitSeries,
};
use pi_prover_core::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn pochhammer(c: &Rational, n: u64) -> Rational {
    (0..n).fold(ratio(1, 1), |acc, j| acc * (c + Rational::from_integer(j.into())))
}

fn body(s: u32, n: u64) -> Rational {
    let s = s as i64;
    let fact = (1..=n).fold(ratio(1, 1), |acc, j| acc * Rational::from_integer(j.into()));
    pochhammer(&ratio(1, 2), n) * pochhammer(&ratio(1, s), n) * pochhammer(&ratio(s - 1, s), n) / (fact.clone() * &fact * &fact)
}

#[test]
fn term_ratio_examples() {
    assert_eq!(term_ratio(6, 0).unwrap(), ratio(5, 72));
    assert_eq!(term_ratio(2, 0).unwrap(), ratio(1, 8));
    for s in [2, 3, 4, 6] {
        assert_eq!(term_ratio(s, 10).unwrap(), body(s, 11) / body(s, 10));
    }
    // closed form for s = 6
    let n = 10i64;
    assert_eq!(term_ratio(6, 10).unwrap(), ratio((2 * n + 1) * (6 * n + 1) * (6 * n + 5), 72 * (n + 1).pow(3)));
}

#[test]
fn first_term_is_a() {
    let params = degree_17();
    let pp = Precision::new(50).unwrap();
    let sum = eval_series(&params, 1, pp).unwrap();
    let a = params.a.to_ball(pp.bits() + 20).unwrap();
    assert!(sum.sum.overlaps(&a.into()));
    assert!(sum.sum.rad() < pi_prover_core::numcore::Mag::pow10_neg_up(50));
}

#[test]
fn positive_series_at_one_hundred_digits() {
    let a = verify_with_terms(&positive_a(), 100, 200).unwrap();
    assert!(a.digits_matched >= 100, "{a:?}");
    let b = verify_with_terms(&positive_b(), 100, 100).unwrap();
    assert!(b.digits_matched >= 100, "{b:?}");
    assert_eq!(positive_a().sign(), SeriesSign::Positive);
}

#[test]
fn chudnovsky_thousand_digits() {
    let rep = verify_against_pi(&chudnovsky(), 1000).unwrap();
    assert!(rep.digits_matched >= 1000);
    assert!(rep.terms_used <= 78, "{}", rep.terms_used);
    assert!(rep.passed());
    assert_eq!(chudnovsky().sign(), SeriesSign::Alternating);
}

#[test]
fn degree_17_thousand_digits() {
    let rep = verify_against_pi(&degree_17(), 1000).unwrap();
    assert!(rep.digits_matched >= 1000);
}

#[test]
fn residual_encloses_the_difference() {
    let rep = verify_against_pi(&degree_17(), 200).unwrap();
    assert!(rep.residual.contains_zero());
    assert!(rep.digits_matched <= rep.digits_requested);
}

#[test]
fn perturbed_a_is_detected() {
    let good = degree_17();
    // a + ~1e-20: the coefficient shifts by 10^-20 / 18 and sqrt(330) ~ 18.17
    let shift = Rational::new(1.into(), BigInt::from(10).pow(20) * 18);
    let a = Surd::new(good.a.coefficient() + shift, 330).unwrap();
    let bad = SeriesParams::new(6, 17, good.z.clone(), a, good.b.clone()).unwrap();
    let rep = verify_against_pi(&bad, 200).unwrap();
    assert!((19..=21).contains(&rep.digits_matched), "{}", rep.digits_matched);
}

#[test]
fn digits_per_term_examples() {
    assert!((digits_per_term(&chudnovsky()) - 14.18).abs() < 0.01);
    let tenth = SeriesParams::new(6, 0, ratio(1, 10), surd(1, 1, 1), surd(1, 1, 1)).unwrap();
    assert!((digits_per_term(&tenth) - 1.0).abs() < 1e-12);
    assert_eq!(planned_terms(&chudnovsky(), 1000).unwrap(), 78);
}

/// `-log10 |S_n - 1/pi|`.
fn error_digits(params: &SeriesParams, n: u64, pp: Precision) -> f64 {
    let sum = eval_series(params, n, pp).unwrap().sum;
    let inv = pi_oracle(pp).inv(pp.bits()).unwrap();
    let diff = sum.sub(&inv, pp.bits());
    assert!(!diff.contains_zero());
    -diff.mid_abs_upper().log10()
}

#[test]
fn truncation_error_drops_by_ten_terms() {
    let pp = Precision::new(800).unwrap();
    let params = chudnovsky();
    for n in [10, 20, 30] {
        let gap = error_digits(&params, n + 10, pp) - error_digits(&params, n, pp);
        assert!((gap - 141.8).abs() <= 1.0, "n = {n}: {gap}");
    }
}

#[test]
fn divergent_parameters() {
    let p = SeriesParams::new(6, 0, ratio(-1, 1), surd(1, 1, 1), surd(1, 1, 1)).unwrap();
    assert_eq!(eval_series(&p, 5, Precision::new(20).unwrap()).unwrap_err(), Error::DivergentParameters);
    assert_eq!(verify_against_pi(&p, 100).unwrap_err(), Error::DivergentParameters);
    assert!(matches!(verify_against_pi(&degree_17(), 49), Err(Error::InvalidArgument(_))));
    assert!(matches!(eval_series(&degree_17(), 0, Precision::new(20).unwrap()), Err(Error::InvalidArgument(_))));
}

#[test]
fn different_radicands_are_summed_separately() {
    let mixed = SeriesParams::new(6, 0, ratio(-1, 512), surd(1, 3, 2), surd(2, 5, 3)).unwrap();
    let pp = Precision::new(60).unwrap();
    let got = eval_series(&mixed, 9, pp).unwrap().sum;
    let bits = pp.bits() + 20;
    let s0 = SplitSeries::new(6, &mixed.z, 1.into(), 0.into()).unwrap().exact_sum(9);
    let s1 = SplitSeries::new(6, &mixed.z, 0.into(), 1.into()).unwrap().exact_sum(9);
    let want = mixed.a.to_ball(bits).unwrap().mul(&pi_prover_core::RealBall::from_rational(&s0, bits), bits).add(
        &mixed.b.to_ball(bits).unwrap().mul(&pi_prover_core::RealBall::from_rational(&s1, bits), bits),
        bits,
    );
    assert!(got.overlaps(&want.into()));
}

fn naive_sum(s: u32, z: &Rational, wa: i64, wb: i64, n_terms: u64) -> Rational {
    (0..n_terms)
        .map(|n| {
            let zn = (0..n).fold(ratio(1, 1), |acc, _| acc * z);
            body(s, n) * zn * Rational::from_integer((wa + wb * n as i64).into())
        })
        .fold(ratio(0, 1), |acc, t| acc + t)
}

#[test]
fn binary_splitting_equals_naive_summation() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let s = [2u32, 3, 4, 6][rng.gen_range(0..4)];
        let z = ratio(rng.gen_range(-9..=9), rng.gen_range(10..200));
        let (wa, wb) = (rng.gen_range(-50..50), rng.gen_range(-50..50));
        let series = SplitSeries::new(s, &z, wa.into(), wb.into()).unwrap();
        for n in [1u64, 7, 64] {
            assert_eq!(series.exact_sum(n), naive_sum(s, &z, wa, wb, n), "s={s} z={z} n={n}");
        }
    }
}

#[test]
fn matched_digits_do_not_decrease_with_more_terms() {
    let params = degree_17();
    let mut last = 0;
    for n in (1..=40).step_by(3) {
        let rep = verify_with_terms(&params, 250, n).unwrap();
        assert!(rep.digits_matched >= last, "n = {n}");
        last = rep.digits_matched;
    }
    assert_eq!(last, 250);
}
