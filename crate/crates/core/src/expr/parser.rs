use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Ast, ExprError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Dot,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'.' => Tok::Dot,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                    return Err(ExprError::Number {
                        offset: start,
                        message: "decimal literals are not supported; write p/q".into(),
                    });
                }
                let n: BigInt = src[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().expect("in bounds");
                return Err(ExprError::Syntax {
                    offset: start,
                    expected: ATOM.to_vec(),
                    found: format!("`{ch}`"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

const ATOM: &[&str] = &["mode label", "number", "`hbar`", "function call", "`(`", "`-`"];
const AFTER_OPERAND: &[&str] = &["`+`", "`-`", "`*`", "`.`", "`^`"];

const FUNCTIONS: &[&str] = &["poisson", "comm", "theta", "thetaW", "pi0"];

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ExprError {
        ExprError::Syntax { offset: self.offset(), expected: expected.to_vec(), found: self.peek().describe() }
    }

    fn expect(&mut self, tok: Tok, closers: &[&'static str]) -> Result<(), ExprError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            let mut expected = AFTER_OPERAND.to_vec();
            expected.extend_from_slice(closers);
            Err(self.error(&expected))
        }
    }

    fn sum(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Ast::add(lhs, self.product()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Ast::sub(lhs, self.product()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.symmetric()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Ast::star(lhs, self.symmetric()?);
        }
        Ok(lhs)
    }

    fn symmetric(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            lhs = Ast::sym(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Ast::neg(self.unary()?));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Ast, ExprError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            let Tok::Int(n) = self.peek().clone() else {
                return Err(self.error(&["exponent"]));
            };
            self.bump();
            let e = n.to_u32().ok_or_else(|| ExprError::Number {
                offset: at,
                message: "exponent does not fit in 32 bits".into(),
            })?;
            base = Ast::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ExprError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(p) => {
                self.bump();
                if *self.peek() != Tok::Slash {
                    return Ok(Ast::Num(BigRational::from_integer(p)));
                }
                self.bump();
                match self.peek().clone() {
                    Tok::Int(q) if q.is_zero() => {
                        Err(ExprError::Number { offset: at, message: "zero denominator".into() })
                    }
                    Tok::Int(q) => {
                        self.bump();
                        Ok(Ast::Num(BigRational::new(p, q)))
                    }
                    _ => Err(self.error(&["denominator"])),
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "hbar" {
                    return Ok(Ast::Hbar);
                }
                if *self.peek() != Tok::LParen {
                    return Ok(Ast::ModeRef(name));
                }
                if !FUNCTIONS.contains(&name.as_str()) {
                    return Err(ExprError::UnknownFunction { offset: at, name });
                }
                self.bump();
                let first = self.sum()?;
                let node = match name.as_str() {
                    "poisson" | "comm" => {
                        self.expect(Tok::Comma, &["`,`"])?;
                        let second = self.sum()?;
                        let (a, b) = (Box::new(first), Box::new(second));
                        if name == "poisson" {
                            Ast::Poisson(a, b)
                        } else {
                            Ast::Commutator(a, b)
                        }
                    }
                    "theta" => Ast::Theta(Box::new(first)),
                    "thetaW" => Ast::ThetaW(Box::new(first)),
                    _ => Ast::Pi0(Box::new(first)),
                };
                self.expect(Tok::RParen, &["`)`"])?;
                Ok(node)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.sum()?;
                self.expect(Tok::RParen, &["`)`"])?;
                Ok(inner)
            }
            _ => Err(self.error(ATOM)),
        }
    }
}

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Ast, ExprError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let ast = p.sum()?;
    if *p.peek() != Tok::End {
        let mut expected = AFTER_OPERAND.to_vec();
        expected.push("end of input");
        return Err(p.error(&expected));
    }
    Ok(ast)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Ast {
        Ast::mode(s)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("u . v + hbar").unwrap(), Ast::add(Ast::sym(m("u"), m("v")), Ast::Hbar));
        assert_eq!(parse("poisson(u, v)").unwrap(), Ast::Poisson(Box::new(m("u")), Box::new(m("v"))));
        assert_eq!(parse("a * b . c").unwrap(), Ast::star(m("a"), Ast::sym(m("b"), m("c"))));
    }

    #[test]
    fn incomplete_input_offset() {
        let err = parse("u *").unwrap_err();
        assert_eq!(err.offset(), Some(3));
        assert!(matches!(err, ExprError::Syntax { ref found, .. } if found == "end of input"));
    }

    #[test]
    fn unknown_function() {
        assert_eq!(parse("  foo(u)").unwrap_err(), ExprError::UnknownFunction { offset: 2, name: "foo".into() });
    }

    #[test]
    fn numbers() {
        assert_eq!(parse("3/4").unwrap(), Ast::Num(BigRational::new(3.into(), 4.into())));
        assert_eq!(parse("6 / 8").unwrap(), Ast::Num(BigRational::new(3.into(), 4.into())));
        assert!(matches!(parse("1/0"), Err(ExprError::Number { offset: 0, .. })));
        assert!(matches!(parse("1.5"), Err(ExprError::Number { .. })));
        assert_eq!(parse("-2").unwrap(), Ast::neg(Ast::int(2)));
    }

    #[test]
    fn stray_tokens() {
        assert_eq!(parse("u v").unwrap_err().offset(), Some(2));
        assert_eq!(parse("(u").unwrap_err().offset(), Some(2));
        assert_eq!(parse("u $").unwrap_err().offset(), Some(2));
        assert_eq!(parse("comm(u)").unwrap_err().offset(), Some(6));
        assert_eq!(parse("u^").unwrap_err().offset(), Some(2));
    }
}
