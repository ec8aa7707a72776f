use std::fmt;

use super::Ast;

fn level(ast: &Ast) -> u8 {
    match ast {
        Ast::Add(..) => 1,
        Ast::Star(..) => 2,
        Ast::SymMul(..) => 3,
        Ast::Neg(_) => 4,
        Ast::Pow(..) => 5,
        _ => 6,
    }
}

struct Wrapped<'a>(&'a Ast, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn left(a: &Ast, lvl: u8) -> Wrapped<'_> {
    Wrapped(a, level(a) < lvl)
}

fn right(a: &Ast, lvl: u8) -> Wrapped<'_> {
    Wrapped(a, level(a) <= lvl)
}

/// Minimal-parenthesis source form; parsing it gives back the same tree
/// (negative `Num` literals come back as `Neg` of a positive one).
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::ModeRef(s) => f.write_str(s),
            Ast::Num(q) => write!(f, "{q}"),
            Ast::Hbar => f.write_str("hbar"),
            Ast::Add(a, b) => match b.as_ref() {
                Ast::Neg(x) => write!(f, "{} - {}", left(a, 1), right(x, 1)),
                _ => write!(f, "{} + {}", left(a, 1), right(b, 1)),
            },
            Ast::Star(a, b) => write!(f, "{} * {}", left(a, 2), right(b, 2)),
            Ast::SymMul(a, b) => write!(f, "{} . {}", left(a, 3), right(b, 3)),
            Ast::Neg(a) => write!(f, "-{}", left(a, 4)),
            Ast::Pow(a, n) => write!(f, "{}^{n}", left(a, 5)),
            Ast::Poisson(a, b) => write!(f, "poisson({a}, {b})"),
            Ast::Commutator(a, b) => write!(f, "comm({a}, {b})"),
            Ast::Theta(a) => write!(f, "theta({a})"),
            Ast::ThetaW(a) => write!(f, "thetaW({a})"),
            Ast::Pi0(a) => write!(f, "pi0({a})"),
        }
    }
}
