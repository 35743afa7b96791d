use pi_prover_web::{pi_text, prove_text, verify_text};

#[test]
fn prove_17() {
    let text = prove_text(17, 200).unwrap();
    assert!(text.contains("z = -1/85184000"), "{text}");
    assert!(text.contains("a = 10177/580800 * sqrt(330)"));
    assert!(!text.contains("FAILED"));
}

#[test]
fn verify_41() {
    let text = verify_text(41, 1000).unwrap();
    assert!(text.contains("1000 of 1000 digits"), "{text}");
    assert!(text.ends_with("PASS"));
}

#[test]
fn pi_prefix() {
    assert!(pi_text(40).unwrap().starts_with("3.141592653589793238462643383279502884197"));
}

#[test]
fn rejected_inputs() {
    assert!(prove_text(9, 200).is_err());
    assert!(verify_text(17, 10).is_err());
    assert!(pi_text(1_000_000).is_err());
}
