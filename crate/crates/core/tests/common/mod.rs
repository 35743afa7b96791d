//! Oracles and fixtures shared by several test targets.
#![allow(dead_code)]

use pi_prover_core::data;
use pi_prover_core::modeq::{alpha_from_w, w_map, Branch};
use num_bigint::BigInt;
use pi_prover_core::numcore::{pow10_neg, ratio, ComplexBall, Precision, Rational};
use pi_prover_core::polyring::{BivariatePoly, Var};
use pi_prover_core::prover::{derivative_chain, eval_radical, solution_catalog, working_polynomial, SeriesParams, Surd};

/// Newton solve of `P(u, v) = 0` for `v` near `start`.
fn solve_v(poly: &BivariatePoly, pv: &BivariatePoly, u: &ComplexBall, start: &ComplexBall, pp: Precision) -> ComplexBall {
    let bits = pp.bits();
    let mut v = start.clone();
    for _ in 0..12 {
        let step = poly.eval(u, &v, pp).div(&pv.eval(u, &v, pp), bits).unwrap();
        v = v.sub(&step, bits).mid_only().round(bits);
    }
    v
}

/// Root of `x (1 - x) = w` nearest to `near`.
fn nearest_root(w: &ComplexBall, near: &ComplexBall, pp: Precision) -> ComplexBall {
    let a = alpha_from_w(w, Branch::Minus, pp).unwrap().mid_only();
    let b = alpha_from_w(w, Branch::Plus, pp).unwrap().mid_only();
    if a.sub(near, 600).abs_upper() <= b.sub(near, 600).abs_upper() {
        a
    } else {
        b
    }
}

/// `log10` of the relative gap between each chain derivative at degree `d`
/// (computed at `digits`) and central finite differences with step
/// `10^-step_digits` along the curve.
pub fn finite_difference_gaps(d: u32, digits: u32, step_digits: u32) -> Vec<(&'static str, f64)> {
    let (poly, form) = working_polynomial(&data::bundled(d).unwrap()).unwrap();
    let sp = solution_catalog(d).unwrap();
    let chain = derivative_chain(&sp, &poly, Precision::new(digits).unwrap()).unwrap();

    let wp = Precision::new(digits + 3 * step_digits).unwrap();
    let bits = wp.bits();
    let pv = poly.partial_derivative(Var::V);
    let u0 = eval_radical(&sp.u0, wp).unwrap().mid_only();
    let v0 = eval_radical(&sp.v0, wp).unwrap().mid_only();
    let h = ComplexBall::from_rational(&pow10_neg(step_digits), bits);

    let us = [u0.sub(&h, bits), u0.clone(), u0.add(&h, bits)];
    let vs: Vec<ComplexBall> = us.iter().map(|u| solve_v(&poly, &pv, u, &v0, wp)).collect();
    let alphas: Vec<ComplexBall> =
        us.iter().map(|u| nearest_root(&w_map(u, form, wp).unwrap(), &chain.alpha0, wp)).collect();
    let betas: Vec<ComplexBall> =
        vs.iter().map(|v| nearest_root(&w_map(v, form, wp).unwrap(), &chain.beta0, wp)).collect();

    let d1 = |f: &[ComplexBall]| f[2].sub(&f[0], bits).div(&h.mul_int(2, bits), bits).unwrap();
    let d2 = |f: &[ComplexBall]| f[2].sub(&f[1].mul_int(2, bits), bits).add(&f[0], bits).div(&h.sqr(bits), bits).unwrap();
    let gap = |fd: ComplexBall, exact: &ComplexBall| {
        fd.sub(exact, bits).abs_upper().log10_upper() - exact.abs_lower().log10()
    };
    vec![
        ("v'", gap(d1(&vs), &chain.vp)),
        ("v''", gap(d2(&vs), &chain.vpp)),
        ("alpha'", gap(d1(&alphas), &chain.alphap)),
        ("alpha''", gap(d2(&alphas), &chain.alphapp)),
        ("beta'", gap(d1(&betas), &chain.betap)),
        ("beta''", gap(d2(&betas), &chain.betapp)),
    ]
}

pub fn surd(n: i64, d: i64, m: u64) -> Surd {
    Surd::new(ratio(n, d), m).unwrap()
}

pub fn chudnovsky() -> SeriesParams {
    let z = Rational::new((-1).into(), BigInt::from(53360).pow(3));
    SeriesParams::new(6, 41, z, surd(13591409, 4270934400, 10005), surd(90856689, 711822400, 10005)).unwrap()
}

pub fn degree_17() -> SeriesParams {
    SeriesParams::new(6, 17, ratio(-1, 85184000), surd(10177, 580800, 330), surd(43617, 96800, 330)).unwrap()
}

/// `(11n + 1)(4/125)^n` normalized to sum to `1/pi`.
pub fn positive_a() -> SeriesParams {
    SeriesParams::new(6, 0, ratio(4, 125), surd(2, 25, 15), surd(22, 25, 15)).unwrap()
}

/// `(133n + 8)(4/85)^(3n)` normalized to sum to `1/pi`.
pub fn positive_b() -> SeriesParams {
    SeriesParams::new(6, 0, ratio(64, 614125), surd(144, 7225, 255), surd(2394, 7225, 255)).unwrap()
}
