//! Exact construction and analysis of p-ary linear codes built from trace
//! defining sets of the form `D_c = { x in F_q^* : Tr(a x^{p^k+1}) = c }`,
//! together with the character-sum machinery (quadratic Gauss sums and Weil
//! sums over `F_{p^e}`) needed to predict their weight enumerators and
//! complete weight enumerators in closed form.
//!
//! Everything is computed exactly: field arithmetic is carried out in a
//! polynomial basis over `F_p`, character sums live in the cyclotomic
//! integer ring `Z[zeta_p]`, and enumerators are integer-valued maps. No
//! floating point is used anywhere in the computational path.
//!
//! The crate is organised around a brute-force enumeration oracle
//! ([`codes::build_code`]) and a closed-form predictor
//! ([`closedform::predict_summary`]); the [`verify`] module cross-checks
//! one against the other and reports structured results.

pub mod charsums;
pub mod closedform;
pub mod codes;
pub mod cyclotomic;
pub mod galois;
pub mod verify;

mod error;

pub use charsums::WeilParams;
pub use closedform::{classify, CaseClass, Degeneracy, Prediction};
pub use codes::{
    CodeParams, CodeSummary, CompleteWeightEnumerator, DefiningSet, ParamsDescriptor,
    WeightEnumerator,
};
pub use cyclotomic::CycInt;
pub use error::Error;
pub use galois::{build_field, eta_p, prime_generator, FieldCtx, FpElem, FqElem};
pub use verify::{sweep, verify_point, CheckStatus, PlanPoint, RatioResult, VerifyReport};
