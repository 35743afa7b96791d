//! wasm-bindgen bindings for the browser demo in `www/`.

use pi_prover_core::numcore::pi_oracle;
use pi_prover_core::prover::prove;
use pi_prover_core::series::verify_against_pi;
use pi_prover_core::{data, Precision};
use wasm_bindgen::prelude::*;

/// Largest digit count the page accepts; keeps the tab responsive.
pub const MAX_DIGITS: u32 = 5000;

fn check_digits(digits: u32, min: u32) -> Result<(), String> {
    if (min..=MAX_DIGITS).contains(&digits) {
        Ok(())
    } else {
        Err(format!("digits must be between {min} and {MAX_DIGITS}"))
    }
}

pub fn prove_text(degree: u32, digits: u32) -> Result<String, String> {
    check_digits(digits, Precision::MIN_DIGITS)?;
    let file = data::bundled(degree).map_err(|e| e.to_string())?;
    let p = Precision::new(digits).map_err(|e| e.to_string())?;
    let proof = prove(degree, &file, p).map_err(|e| e.to_string())?;
    let d = &proof.primary;
    let c = &d.checks;
    let params = &d.derived.params;
    let ok = |b: bool| if b { "ok" } else { "FAILED" };
    Ok([
        format!("degree {degree}, {digits} digits (confirmed at {})", proof.confirmation.precision.digits()),
        format!("m0 = {:.25}", d.chain.m0),
        format!("z = {}", params.z),
        format!("a = {}", params.a),
        format!("b = {}", params.b),
        format!("beta0 = 1 - alpha0 {}", ok(c.beta_complement)),
        format!("|m0|^2 = 1/{degree} {}", ok(c.multiplier_norm)),
        format!("b^2 = (1 - z)(4d - 1) {}", ok(c.b_squared)),
        format!("J(q) = 1728/z {}", ok(c.heegner)),
    ]
    .join("\n"))
}

pub fn verify_text(degree: u32, digits: u32) -> Result<String, String> {
    check_digits(digits, 50)?;
    let file = data::bundled(degree).map_err(|e| e.to_string())?;
    let proof = prove(degree, &file, Precision::DERIVATION).map_err(|e| e.to_string())?;
    let rep = verify_against_pi(&proof.primary.derived.params, digits).map_err(|e| e.to_string())?;
    Ok(format!(
        "degree {degree}: {} of {} digits of 1/pi from {} terms {}",
        rep.digits_matched,
        rep.digits_requested,
        rep.terms_used,
        if rep.passed() { "PASS" } else { "FAIL" }
    ))
}

/// Decimal expansion of pi; the last digit may be off by one.
pub fn pi_text(digits: u32) -> Result<String, String> {
    check_digits(digits, Precision::MIN_DIGITS)?;
    let p = Precision::new(digits + 5).map_err(|e| e.to_string())?;
    let s = format!("{:.*}", digits as usize + 1, pi_oracle(p));
    let mant = s.split('e').next().unwrap_or(&s);
    Ok(mant.to_string())
}

#[wasm_bindgen]
pub fn prove_degree(degree: u32, digits: u32) -> Result<String, JsValue> {
    prove_text(degree, digits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify_series(degree: u32, digits: u32) -> Result<String, JsValue> {
    verify_text(degree, digits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn pi_digits(digits: u32) -> Result<String, JsValue> {
    pi_text(digits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn degrees() -> Vec<u32> {
    data::DEGREES.to_vec()
}
