//! Unified error type for the whole crate.
//!
//! Mathematical verdicts ("not mild", "turning") are *not* errors; they are
//! returned as values. Errors signal either a violated precondition, an
//! exhausted precision budget, or an input outside a routine's contract.

use thiserror::Error;

/// Every fallible operation in the crate returns this error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A candidate minimal polynomial factored over the base tower.
    #[error("reducible minimal polynomial: {0}")]
    ReducibleMinimalPolynomial(String),

    /// An element was used with a field it does not belong to.
    #[error("element belongs to a different field: {0}")]
    WrongField(String),

    /// A characteristic-p operation was invoked over characteristic 0.
    #[error("operation requires positive characteristic")]
    CharZero,

    /// The characteristic is too small for the requested computation.
    #[error("characteristic too small: {0}")]
    CharacteristicTooSmall(String),

    /// The inputs do not carry enough certified terms to decide the result.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    /// `I_t` was applied to a term it cannot integrate.
    #[error("non-integrable term at exponent {0}")]
    NonIntegrableTerm(String),

    /// Division by a series that is provably zero.
    #[error("division by zero series")]
    DivisionByZeroSeries,

    /// Division by a zero scalar.
    #[error("division by zero")]
    DivisionByZero,

    /// Substitution routed a variable into a series of non-positive order.
    #[error("substitution into a pole: image of {0} has non-positive order")]
    NonPositiveOrder(String),

    /// Hensel splitting requires coprime residue factors.
    #[error("residue factors are not coprime")]
    NotCoprime,

    /// The residue specialization of the polynomial does not match the
    /// supplied factorization.
    #[error("specialization mismatch: {0}")]
    SpecializationMismatch(String),

    /// The Newton-Puiseux / reduction loop exceeded its iteration cap.
    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),

    /// A gauge matrix is not invertible.
    #[error("singular gauge: {0}")]
    SingularGauge(String),

    /// The deterministic cyclic-vector candidate list was exhausted.
    #[error("cyclic vector search exhausted after {0} candidates")]
    SearchExhausted(usize),

    /// Residue adjustment requires a logarithmic connection.
    #[error("connection is not logarithmic: {0}")]
    NonLogarithmic(String),

    /// Block splitting requires eigenvalue separation at the divisor.
    #[error("eigenvalue collision at s=0: {0}")]
    EigenvalueCollision(String),

    /// A hypothesis of the good-structure reduction fails.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// Specialization of irregular values requires a mild connection.
    #[error("connection is not mildly ramified: {0}")]
    NotMild(String),

    /// The pull-back exponent is divisible by the characteristic.
    #[error("bad ramification: exponent {0} is divisible by p")]
    BadRamification(String),

    /// A polynomial claimed to be a Frobenius image is not one.
    #[error("not a Frobenius image: {0}")]
    NotAFrobeniusImage(String),

    /// The leading behavior in the second variable cannot be decided.
    #[error("indeterminate leading form: {0}")]
    IndeterminateLeadingForm(String),

    /// A blow-up center does not lie on the configuration.
    #[error("center off configuration: {0}")]
    CenterOffConfiguration(String),

    /// The resolution driver ran out of its step budget.
    #[error("step budget exceeded after {0} blow-ups")]
    StepBudgetExceeded(usize),

    /// Malformed input (CLI / JSON schema).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ReducibleMinimalPolynomial(_) => "reducible_minimal_polynomial",
            Error::WrongField(_) => "wrong_field",
            Error::CharZero => "char_zero",
            Error::CharacteristicTooSmall(_) => "characteristic_too_small",
            Error::InsufficientPrecision(_) => "insufficient_precision",
            Error::NonIntegrableTerm(_) => "non_integrable_term",
            Error::DivisionByZeroSeries => "division_by_zero_series",
            Error::DivisionByZero => "division_by_zero",
            Error::NonPositiveOrder(_) => "non_positive_order",
            Error::NotCoprime => "not_coprime",
            Error::SpecializationMismatch(_) => "specialization_mismatch",
            Error::IterationCap(_) => "iteration_cap",
            Error::SingularGauge(_) => "singular_gauge",
            Error::SearchExhausted(_) => "search_exhausted",
            Error::NonLogarithmic(_) => "non_logarithmic",
            Error::EigenvalueCollision(_) => "eigenvalue_collision",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::NotMild(_) => "not_mild",
            Error::BadRamification(_) => "bad_ramification",
            Error::NotAFrobeniusImage(_) => "not_a_frobenius_image",
            Error::IndeterminateLeadingForm(_) => "indeterminate_leading_form",
            Error::CenterOffConfiguration(_) => "center_off_configuration",
            Error::StepBudgetExceeded(_) => "step_budget_exceeded",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
