//! Expression language over named modes.
//!
//! Precedence from loosest to tightest: `+` and binary `-`, `*` (star
//! product), `.` (symmetric product), unary `-`, postfix `^n`. Binary
//! operators associate to the left.

mod eval;
mod parser;
mod print;

use num_rational::BigRational;
use thiserror::Error;

use crate::fock::FockError;
use crate::symalg::AlgebraError;

pub use eval::{eval, Env, FockEnv, Value};
pub use parser::parse;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ast {
    ModeRef(String),
    Num(BigRational),
    Hbar,
    Add(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    SymMul(Box<Ast>, Box<Ast>),
    /// Star product with whichever form the environment supplies.
    Star(Box<Ast>, Box<Ast>),
    Poisson(Box<Ast>, Box<Ast>),
    Commutator(Box<Ast>, Box<Ast>),
    Theta(Box<Ast>),
    ThetaW(Box<Ast>),
    Pi0(Box<Ast>),
    /// Symmetric power.
    Pow(Box<Ast>, u32),
}

impl Ast {
    pub fn add(a: Ast, b: Ast) -> Ast {
        Ast::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Ast, b: Ast) -> Ast {
        Ast::add(a, Ast::neg(b))
    }

    pub fn neg(a: Ast) -> Ast {
        Ast::Neg(Box::new(a))
    }

    pub fn sym(a: Ast, b: Ast) -> Ast {
        Ast::SymMul(Box::new(a), Box::new(b))
    }

    pub fn star(a: Ast, b: Ast) -> Ast {
        Ast::Star(Box::new(a), Box::new(b))
    }

    pub fn mode(label: &str) -> Ast {
        Ast::ModeRef(label.to_string())
    }

    pub fn int(n: i64) -> Ast {
        Ast::Num(BigRational::from_integer(n.into()))
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn children(&self) -> Vec<&Ast> {
        match self {
            Ast::ModeRef(_) | Ast::Num(_) | Ast::Hbar => vec![],
            Ast::Neg(a) | Ast::Theta(a) | Ast::ThetaW(a) | Ast::Pi0(a) | Ast::Pow(a, _) => vec![a],
            Ast::Add(a, b)
            | Ast::SymMul(a, b)
            | Ast::Star(a, b)
            | Ast::Poisson(a, b)
            | Ast::Commutator(a, b) => vec![a, b],
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", .expected.join(" | "))]
    Syntax { offset: usize, expected: Vec<&'static str>, found: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { offset: usize, name: String },
    #[error("invalid number at byte {offset}: {message}")]
    Number { offset: usize, message: String },
    #[error("unbound mode label `{0}`")]
    UnboundLabel(String),
    #[error("`{op}` expects {expected} operands")]
    KindMismatch { op: &'static str, expected: &'static str },
    #[error("no Fock representation is configured")]
    NoFock,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fock(#[from] FockError),
}

impl ExprError {
    /// Byte offset for syntax-level errors.
    pub fn offset(&self) -> Option<usize> {
        match self {
            ExprError::Syntax { offset, .. }
            | ExprError::UnknownFunction { offset, .. }
            | ExprError::Number { offset, .. } => Some(*offset),
            _ => None,
        }
    }
}
