//! Truncated bosonic Fock space for the circle field, ladder and field
//! operators, and the two ordering maps into operators.

mod fields;
mod operator;
mod ordering;
mod space;
mod wick;

use thiserror::Error;

use crate::kleingordon::KgError;
use crate::symalg::AlgebraError;

pub use fields::{a_minus, a_minus_star, annihilator, creator, field_ops, ladder, FockRep};
pub use operator::FockOperator;
pub use ordering::{
    ordering_form, theta, theta_wick, verify_ordering_theorem, verify_with, Ordering, OrderingReport, Quantizer,
};
pub use space::FockSpace;
pub use wick::{wick_normal_form, FieldKind, OperatorWord};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("expected {expected} mode coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("element has {got} modes, quantizer has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field operator input is not a real function")]
    NotReal,
    #[error("operator word is not normal ordered")]
    NotNormalOrdered,
    #[error("total degree {degree} exceeds occupation cap {ncap}")]
    GuardViolation { degree: u32, ncap: u32 },
    #[error("mode `{0}` is not resolved by the Fock truncation")]
    UnresolvableMode(String),
    #[error(transparent)]
    Kg(#[from] KgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
