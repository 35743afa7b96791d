//! Residual certification at a solution point and the implicit
//! differentiation chain along `P(u, v(u)) = 0`.

use crate::error::{Error, Result};
use crate::modeq::{alpha_from_w, w_map, w_map_jet, Branch, WMapForm};
use crate::numcore::{ratio, ComplexBall, Mag, Precision};
use crate::polyring::{BivariatePoly, Var};

use super::catalog::SolutionPoint;
use super::radical::eval_radical;

/// Extra digits carried internally so that results meet the caller's
/// precision after cancellation in high-degree evaluations.
pub const GUARD_DIGITS: u32 = 40;

/// Residuals must have radius below `10^(-digits + RESIDUAL_SLACK)`.
pub const RESIDUAL_SLACK: u32 = 30;

#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub u0: ComplexBall,
    pub v0: ComplexBall,
    /// `w(u0) - w(v0)`.
    pub w_residual: ComplexBall,
    /// `P(u0, v0)`.
    pub p_residual: ComplexBall,
    /// Both residual balls contain zero.
    pub certified_zero: bool,
    /// `P` was the zero polynomial.
    pub degenerate: bool,
}

/// Evaluate the point and certify both equations of the system.
///
/// A residual whose ball excludes zero is reported with
/// `certified_zero == false`; a ball containing zero but wider than
/// `10^(-digits + 30)` is [`Error::ResidualNotCertified`].
pub fn check_solution(sp: &SolutionPoint, poly: &BivariatePoly, p: Precision) -> Result<ResidualReport> {
    let wp = p.plus(GUARD_DIGITS);
    let u0 = eval_radical(&sp.u0, wp)?;
    let v0 = eval_radical(&sp.v0, wp)?;
    check_point(&u0, &v0, sp.form, poly, p)
}

/// [`check_solution`] for an already evaluated point.
pub fn check_point(u0: &ComplexBall, v0: &ComplexBall, form: WMapForm, poly: &BivariatePoly, p: Precision) -> Result<ResidualReport> {
    let wp = p.plus(GUARD_DIGITS);
    let w_residual = w_map(u0, form, wp)?.sub(&w_map(v0, form, wp)?, wp.bits());
    let p_residual = poly.eval(u0, v0, wp);
    let limit = Mag::pow10_neg_up(p.digits() as i64 - RESIDUAL_SLACK as i64);
    for (name, r) in [("w(u0) - w(v0)", &w_residual), ("P(u0, v0)", &p_residual)] {
        if r.contains_zero() && r.rad() >= limit {
            return Err(Error::ResidualNotCertified { what: name.to_string() });
        }
    }
    Ok(ResidualReport {
        certified_zero: w_residual.contains_zero() && p_residual.contains_zero(),
        degenerate: poly.is_zero(),
        u0: u0.clone(),
        v0: v0.clone(),
        w_residual,
        p_residual,
    })
}

/// Values and derivatives (in `u`) at the solution point.
#[derive(Clone, Debug)]
pub struct DerivativeChain {
    pub d: u32,
    pub u0: ComplexBall,
    pub v0: ComplexBall,
    pub vp: ComplexBall,
    pub vpp: ComplexBall,
    pub alpha0: ComplexBall,
    pub alphap: ComplexBall,
    pub alphapp: ComplexBall,
    pub beta0: ComplexBall,
    pub betap: ComplexBall,
    pub betapp: ComplexBall,
    pub m0: ComplexBall,
    /// Working precision of the balls.
    pub precision: Precision,
}

/// First and second derivative of the implicit function `v(u)` defined by
/// `P(u, v) = 0` at `(u0, v0)`.
pub fn implicit_derivatives(poly: &BivariatePoly, u0: &ComplexBall, v0: &ComplexBall, p: Precision) -> Result<(ComplexBall, ComplexBall)> {
    let prec = p.bits();
    let pu = poly.partial_derivative(Var::U);
    let pv = poly.partial_derivative(Var::V);
    let puu = pu.partial_derivative(Var::U);
    let puv = pu.partial_derivative(Var::V);
    let pvv = pv.partial_derivative(Var::V);
    let e = |q: &BivariatePoly| q.eval(u0, v0, p);
    let pv0 = e(&pv);
    if pv0.contains_zero() {
        return Err(Error::SingularDenominator("dP/dv"));
    }
    let vp = e(&pu).div(&pv0, prec)?.neg();
    let num = e(&puu)
        .add(&e(&puv).mul(&vp, prec).mul_int(2, prec), prec)
        .add(&e(&pvv).mul(&vp.sqr(prec), prec), prec);
    let vpp = num.div(&pv0, prec)?.neg();
    Ok((vp, vpp))
}

/// Run the chain at the catalog point of `sp`.
pub fn derivative_chain(sp: &SolutionPoint, poly: &BivariatePoly, p: Precision) -> Result<DerivativeChain> {
    let wp = p.plus(GUARD_DIGITS);
    let u0 = eval_radical(&sp.u0, wp)?;
    let v0 = eval_radical(&sp.v0, wp)?;
    derivative_chain_at(sp.d, sp.form, &u0, &v0, poly, p)
}

/// Chain at an explicit point.
pub fn derivative_chain_at(d: u32, form: WMapForm, u0: &ComplexBall, v0: &ComplexBall, poly: &BivariatePoly, p: Precision) -> Result<DerivativeChain> {
    let wp = p.plus(GUARD_DIGITS);
    let prec = wp.bits();
    let (vp, vpp) = implicit_derivatives(poly, u0, v0, wp)?;
    let [wu, wu1, wu2] = w_map_jet(u0, form, wp)?;
    let [_, wv1, wv2] = w_map_jet(v0, form, wp)?;

    let mut alpha0 = alpha_from_w(&wu, Branch::Minus, wp)?;
    let one = ComplexBall::one();
    let mut da = one.sub(&alpha0.mul_int(2, prec), prec);
    if da.contains_zero() {
        return Err(Error::SingularDenominator("1 - 2 alpha0"));
    }
    if da.real_part().is_negative() {
        alpha0 = one.sub(&alpha0, prec);
        da = da.neg();
    }
    let alphap = wu1.div(&da, prec)?;
    let alphapp = wu2.add(&alphap.sqr(prec).mul_int(2, prec), prec).div(&da, prec)?;

    let beta0 = one.sub(&alpha0, prec);
    let db = da.neg();
    let betap = wv1.mul(&vp, prec).div(&db, prec)?;
    let betapp = wv2
        .mul(&vp.sqr(prec), prec)
        .add(&wv1.mul(&vpp, prec), prec)
        .add(&betap.sqr(prec).mul_int(2, prec), prec)
        .div(&db, prec)?;

    let dbeta = betap.mul_int(d as i64, prec);
    if dbeta.contains_zero() {
        return Err(Error::SingularDenominator("beta'0"));
    }
    let mut m0 = alphap.div(&dbeta, prec)?.sqrt(prec)?;
    if m0.real_part().is_negative() {
        m0 = m0.neg();
    }
    Ok(DerivativeChain {
        d,
        u0: u0.clone(),
        v0: v0.clone(),
        vp,
        vpp,
        alpha0,
        alphap,
        alphapp,
        beta0,
        betap,
        betapp,
        m0,
        precision: wp,
    })
}

impl DerivativeChain {
    fn prec(&self) -> u64 {
        self.precision.bits()
    }

    /// `beta0 = 1 - alpha0` within radii.
    pub fn beta_complement_holds(&self) -> bool {
        let s = self.alpha0.add(&self.beta0, self.prec());
        s.contains_point(&ratio(1, 1), &ratio(0, 1))
    }

    /// `|m0|^2` as a ball.
    pub fn multiplier_norm_sq(&self) -> ComplexBall {
        self.m0.mul(&self.m0.conj(), self.prec())
    }

    /// `|m0|^2 = 1/d` within radii.
    pub fn multiplier_norm_holds(&self) -> bool {
        self.multiplier_norm_sq().contains_point(&ratio(1, self.d as i64), &ratio(0, 1))
    }

    /// `beta'0 / alpha'0 = 1 / (d m0^2)` within radii.
    pub fn multiplier_ratio_holds(&self) -> bool {
        let prec = self.prec();
        let lhs = self.betap.div(&self.alphap, prec);
        let rhs = self.m0.sqr(prec).mul_int(self.d as i64, prec).inv(prec);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => l.overlaps(&r),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    #[test]
    fn u_minus_v_has_unit_slope() {
        let p = Precision::new(30).unwrap();
        let poly = parse_poly("1 1 0\n-1 0 1").unwrap();
        let x = ComplexBall::from_rational(&ratio(3, 7), 200);
        let (vp, vpp) = implicit_derivatives(&poly, &x, &x, p).unwrap();
        assert!(vp.contains_point(&ratio(1, 1), &ratio(0, 1)));
        assert!(vpp.contains_zero());
    }

    #[test]
    fn singular_dp_dv() {
        let p = Precision::new(30).unwrap();
        let poly = parse_poly("1 2 0\n-1 0 2").unwrap();
        let z = ComplexBall::zero();
        assert_eq!(implicit_derivatives(&poly, &z, &z, p).unwrap_err(), Error::SingularDenominator("dP/dv"));
    }
}
