//! End-to-end derivation for one degree.

use crate::error::{Error, Result};
use crate::modeq::{j_invariant, QPoint, WMapForm};
use crate::numcore::{pow10_neg, ComplexBall, Precision, Rational};
use crate::polyring::{BivariatePoly, PolyFile, PolyForm};

use super::catalog::{solution_catalog, SolutionPoint};
use super::chain::{check_solution, derivative_chain, DerivativeChain, ResidualReport};
use super::params::{b_squared_identity, series_params_alternating, DerivedParams};

/// The polynomial to use with the catalog point, and its w-map form.
///
/// `raw24` files are transformed unless the degree uses the untransformed
/// equation (degree 7); `mod12` files are used as given.
pub fn working_polynomial(file: &PolyFile) -> Result<(BivariatePoly, WMapForm)> {
    match file.form {
        PolyForm::Raw24 if file.degree == 7 => Ok((file.poly.clone(), WMapForm::E24)),
        PolyForm::Raw24 => Ok((file.poly.weber_transform()?, WMapForm::E12)),
        PolyForm::Mod12 => Ok((file.poly.clone(), WMapForm::E12)),
    }
}

/// Independent consistency checks on a finished derivation.
#[derive(Clone, Debug)]
pub struct ProofChecks {
    pub beta_complement: bool,
    pub multiplier_norm: bool,
    pub multiplier_ratio: bool,
    pub b_squared: bool,
    /// `J(-exp(-pi sqrt(4d-1))) - 1728/z`.
    pub heegner_difference: ComplexBall,
    pub heegner: bool,
}

impl ProofChecks {
    pub fn all_pass(&self) -> bool {
        self.beta_complement && self.multiplier_norm && self.multiplier_ratio && self.b_squared && self.heegner
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.beta_complement, "beta0 = 1 - alpha0"),
            (self.multiplier_norm, "|m0|^2 = 1/d"),
            (self.multiplier_ratio, "beta'0/alpha'0 = 1/(d m0^2)"),
            (self.b_squared, "b^2 = (1 - z)(4d - 1)"),
            (self.heegner, "J(q) = 1728/z"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// Everything computed for one degree at one precision.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub precision: Precision,
    pub solution: SolutionPoint,
    pub residuals: ResidualReport,
    pub chain: DerivativeChain,
    pub derived: DerivedParams,
    pub checks: ProofChecks,
}

#[derive(Clone, Debug)]
pub struct Proof {
    pub degree: u32,
    pub form: WMapForm,
    pub primary: Derivation,
    /// The same pipeline at doubled precision.
    pub confirmation: Derivation,
}

impl Proof {
    /// Recognized constants agree at both precisions.
    pub fn confirmed(&self) -> bool {
        self.primary.derived.params == self.confirmation.derived.params
    }
}

/// Run one derivation without the doubled-precision confirmation.
pub fn derive(d: u32, poly: &BivariatePoly, form: WMapForm, p: Precision) -> Result<Derivation> {
    let solution = solution_catalog(d)?;
    if solution.form != form {
        return Err(Error::InvalidArgument(format!(
            "degree {d} needs the u^{} map, the polynomial file gives u^{}",
            solution.form.exponent(),
            form.exponent()
        )));
    }
    let residuals = check_solution(&solution, poly, p)?;
    if !residuals.certified_zero {
        return Err(Error::CheckFailed { what: format!("catalog point is not a root of the degree {d} system") });
    }
    let chain = derivative_chain(&solution, poly, p)?;
    let derived = series_params_alternating(d, &chain, p)?;
    let checks = run_checks(&chain, &derived, p)?;
    Ok(Derivation { precision: p, solution, residuals, chain, derived, checks })
}

fn run_checks(chain: &DerivativeChain, derived: &DerivedParams, p: Precision) -> Result<ProofChecks> {
    let d = chain.d;
    let jp = Precision::new(p.digits().min(60))?;
    let q = QPoint::alternating(d, jp)?;
    let j = j_invariant(&q, jp)?;
    let target = ComplexBall::from_rational(&(Rational::from_integer(1728.into()) / &derived.params.z), jp.bits());
    let heegner_difference = j.sub(&target, jp.bits());
    Ok(ProofChecks {
        beta_complement: chain.beta_complement_holds(),
        multiplier_norm: chain.multiplier_norm_holds(),
        multiplier_ratio: chain.multiplier_ratio_holds(),
        b_squared: b_squared_identity(&derived.params, 4 * d as u64 - 1),
        heegner: heegner_difference.is_certified_below(&pow10_neg(6)),
        heegner_difference,
    })
}

/// Full proof for degree `d` from a polynomial file: derivation at `p`,
/// confirmation at `2p`, and all consistency checks.
pub fn prove(d: u32, file: &PolyFile, p: Precision) -> Result<Proof> {
    if file.degree != d {
        return Err(Error::InvalidArgument(format!("polynomial file has degree {}, expected {d}", file.degree)));
    }
    let (poly, form) = working_polynomial(file)?;
    let primary = derive(d, &poly, form, p)?;
    let confirmation = derive(d, &poly, form, p.doubled())?;
    let proof = Proof { degree: d, form, primary, confirmation };
    if !proof.confirmed() {
        return Err(Error::AmbiguousRecognition {
            what: format!("degree {d} constants differ between {} and {} digits", p.digits(), p.doubled().digits()),
        });
    }
    let failures = proof.primary.checks.failures();
    if !failures.is_empty() {
        return Err(Error::CheckFailed { what: failures.join(", ") });
    }
    Ok(proof)
}
