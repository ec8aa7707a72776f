//! The graded polynomial algebra `SV[hbar]` over a finite mode basis:
//! symmetric product, coordinate contractions, contraction star products,
//! the commutator, the hbar = 0 projection and the Poisson bracket.

mod element;
mod hpoly;
mod pairing;
mod scalar;
mod star;
mod text;

use thiserror::Error;

pub use element::{contract, is_label, project_pi, sym_mul, AlgebraElement, ModeId, ModeSpace, Monomial};
pub use hpoly::HPoly;
pub use pairing::PairingForm;
pub use scalar::{abs_diff, GaussRational, Scalar};
pub use star::{
    commutator, lemma1_check, poisson, poisson_correspondence, star, star_iterated, star_monomials,
};
pub use text::{format_element, parse_element, Pretty};

pub use num_complex::Complex64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("mode index {mode} out of range for {dim} modes")]
    ModeOutOfRange { mode: usize, dim: usize },
    #[error("invalid mode label `{0}`")]
    BadLabel(String),
    #[error("duplicate mode label `{0}`")]
    DuplicateLabel(String),
    #[error("element is not divisible by hbar")]
    NotDivisibleByHbar,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}
