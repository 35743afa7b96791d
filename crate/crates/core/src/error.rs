use thiserror::Error;

/// Errors raised anywhere in the derivation and verification pipeline.
///
/// Variants that signal insufficient working precision (`DomainStraddle`,
/// `PoleStraddle`, `ResidualNotCertified`, `SingularDenominator`,
/// `AmbiguousRecognition`) are "inconclusive": retrying at a higher
/// precision may succeed. See [`Error::is_inconclusive`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision must be at least 10 digits, got {0}")]
    InvalidPrecision(u32),
    #[error("{op}: input ball straddles a pole or branch cut; raise precision upstream")]
    DomainStraddle { op: &'static str },
    #[error("{0}: denominator ball may vanish")]
    PoleStraddle(&'static str),
    #[error("nome not certified inside the admissible disk |q| <= {bound}")]
    NomeTooLarge { bound: &'static str },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate monomial u^{i} v^{j}")]
    DuplicateMonomial { line: usize, i: u32, j: u32 },
    #[error("line {line}: exponent {exp} exceeds the configured maximum {max}")]
    ExponentOverflow { line: usize, exp: u64, max: u32 },
    #[error("monomial u^{0} v^{1} has mixed parity")]
    MixedParity(u32, u32),
    #[error("unsupported degree {0}; supported degrees are 5, 7, 11, 17, 41")]
    UnsupportedDegree(u32),
    #[error("{what}: residual not certified at the current precision")]
    ResidualNotCertified { what: String },
    #[error("singular denominator: {0} may vanish")]
    SingularDenominator(&'static str),
    #[error("no continued-fraction convergent certifies {what}")]
    RecognitionFailed { what: String },
    #[error("two distinct convergents certify {what}; raise precision")]
    AmbiguousRecognition { what: String },
    #[error("{0} is not certified real")]
    NonRealResult(&'static str),
    #[error("series parameters violate the sign contract: {0}")]
    SignContract(&'static str),
    #[error("degenerate series: {0}")]
    DegenerateSeries(&'static str),
    #[error("divergent series parameters: |z| >= 1")]
    DivergentParameters,
    #[error("check failed: {what}")]
    CheckFailed { what: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True when the failure is a precision shortfall rather than a disproof.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::DomainStraddle { .. }
                | Error::PoleStraddle(_)
                | Error::ResidualNotCertified { .. }
                | Error::SingularDenominator(_)
                | Error::AmbiguousRecognition { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
