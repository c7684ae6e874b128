use thiserror::Error;

/// Errors surfaced by field construction, parameter validation and the
/// closed-form predictor.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("p must be an odd prime (got {0})")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field too large: p^e does not fit the supported range")]
    FieldTooLarge,
    #[error("a must be a nonzero field element")]
    ZeroA,
    #[error("e must be even (e = {0})")]
    OddE(u32),
    #[error("outside construction hypothesis: e/d must be even (e = {e}, k = {k}, d = {d})")]
    OddEOverD { e: u32, k: u32, d: u32 },
    #[error("defining set is empty for these parameters")]
    EmptyDefiningSet,
    #[error("case tag does not match the supplied parameters")]
    CaseMismatch,
    #[error("no closed form is stated for this parameter case; enumerate instead")]
    NoClosedForm,
    #[error("code has no nonzero weight")]
    DegenerateCode,
    #[error("element has wrong coefficient count for this field (expected {expected})")]
    WrongField { expected: u32 },
    #[error("division by zero in the field")]
    DivisionByZero,
}
