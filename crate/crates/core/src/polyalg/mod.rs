//! Exact polynomial arithmetic over `QQ` and `F_p`, formal jets, and a
//! Gröbner engine for dimension checks.

pub mod field;
pub mod format;
pub mod groebner;
pub mod jet;
pub mod parse;
pub mod poly;

use thiserror::Error;

pub use field::{Coefficient, Field, Prime};
pub use format::{PolynomialRecord, TermRecord};
pub use groebner::{groebner_basis, ideal_dimension, BudgetExceeded, GroebnerBasis, GroebnerBudget, GroebnerOutcome, IdealDimension};
pub use jet::{formal_inverse_compose, JetOrder};
pub use poly::{Exponents, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("substitution needs {expected} images, got {found}")]
    SubstitutionArity { expected: usize, found: usize },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("denominator divisible by {prime}")]
    DenominatorDivisible { prime: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("component {component} does not have identity linear part")]
    LinearPartNotIdentity { component: usize },
    #[error("map has {components} components in {variables} variables")]
    NotSquare { components: usize, variables: usize },
    #[error("jet order must be at least 2, got {0}")]
    InvalidJetOrder(u32),
    #[error("ideal needs at least one generator")]
    NoGenerators,
    #[error("too many variables ({0}) for the Gröbner engine")]
    TooManyVariables(usize),
    #[error("symmetric forms need a field of odd characteristic")]
    EvenCharacteristic,
    #[error("not a homogeneous quadratic form")]
    NotQuadratic,
    #[error("exponent {0} too large")]
    ExponentOverflow(u32),
}
