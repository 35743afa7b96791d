use crate::numcore::{pow10_neg, ratio, ComplexBall, Precision, Rational};
use crate::polyring::BivariatePoly;

use super::weber_f;

/// Residual of the polynomial at one argument arrangement.
#[derive(Clone, Debug)]
pub struct OrderingCheck {
    /// e.g. `"(f(t), f(dt))"` or `"(-f(t), f(dt))"`.
    pub label: String,
    pub residual: ComplexBall,
    pub contains_zero: bool,
    /// `|residual| + radius < 10^(-digits/2)`.
    pub certified_small: bool,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub degree: u32,
    pub t: Rational,
    pub digits: u32,
    /// Precision actually used for the evaluation.
    pub working_digits: u32,
    pub orderings: Vec<OrderingCheck>,
    pub passed: bool,
    /// The polynomial was identically zero.
    pub degenerate: bool,
}

impl ValidationReport {
    /// Label of the first passing ordering.
    pub fn passing_ordering(&self) -> Option<&str> {
        self.orderings.iter().find(|o| o.certified_small).map(|o| o.label.as_str())
    }
}

/// Evaluate `phi` at Weber-function values `(f(i t), f(i d t))`, the swapped
/// pair, and the same two with the first argument negated (files that use
/// the `u -> -u` convention vanish there). Passes if any arrangement
/// certifies below `10^(-digits/2)`.
pub fn validate_modular_polynomial(phi: &BivariatePoly, d: u32, t: &Rational, p: Precision) -> ValidationReport {
    let mut report = ValidationReport {
        degree: d,
        t: t.clone(),
        digits: p.digits(),
        working_digits: p.digits(),
        orderings: Vec::new(),
        passed: false,
        degenerate: phi.is_zero(),
    };
    if report.degenerate {
        report.passed = true;
        return report;
    }
    if *t < ratio(1, 2) || d == 0 {
        return report;
    }
    let wp = working_precision(phi, d, t, p);
    report.working_digits = wp.digits();
    let dt = t * Rational::from_integer(d.into());
    let (Ok(a), Ok(b)) = (weber_f(t, wp), weber_f(&dt, wp)) else {
        return report;
    };
    let bound = pow10_neg(p.digits() / 2);
    let cases = [
        ("(f(t), f(dt))", a.clone(), b.clone()),
        ("(f(dt), f(t))", b.clone(), a.clone()),
        ("(-f(t), f(dt))", a.neg(), b.clone()),
        ("(-f(dt), f(t))", b.neg(), a.clone()),
    ];
    for (label, u, v) in cases {
        let residual = phi.eval(&u, &v, wp);
        let certified_small = residual.is_certified_below(&bound);
        report.orderings.push(OrderingCheck {
            label: label.to_string(),
            contains_zero: residual.contains_zero(),
            certified_small,
            residual,
        });
    }
    report.passed = report.orderings.iter().any(|o| o.certified_small);
    report
}

/// Enough digits to resolve cancellation among the largest terms.
fn working_precision(phi: &BivariatePoly, d: u32, t: &Rational, p: Precision) -> Precision {
    let tf = num_traits::ToPrimitive::to_f64(t).unwrap_or(1.0);
    // log10 f(i t) ~ pi t / (24 ln 10)
    let lf = |x: f64| std::f64::consts::PI * x / 24.0 * std::f64::consts::LOG10_E;
    let (la, lb) = (lf(tf), lf(tf * d as f64));
    let lc = phi.max_abs_coeff().bits() as f64 * std::f64::consts::LOG10_2;
    let big = phi
        .terms()
        .map(|(m, _)| m.i as f64 * la.max(lb) + m.j as f64 * la.max(lb))
        .fold(0.0, f64::max);
    p.plus((lc + big).ceil() as u32 + 20)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn zero_polynomial_is_degenerate_pass() {
        let r = validate_modular_polynomial(&BivariatePoly::zero(), 17, &ratio(1, 1), Precision::new(40).unwrap());
        assert!(r.passed && r.degenerate);
    }

    #[test]
    fn degree_five_file_validates() {
        let f = data::bundled(5).unwrap();
        let r = validate_modular_polynomial(&f.poly, 5, &ratio(1, 1), Precision::new(60).unwrap());
        assert!(r.passed, "{r:?}");
        assert_eq!(r.passing_ordering(), Some("(f(t), f(dt))"));
    }
}
