//! Text form of algebra elements.
//!
//! `coeff * hbar^p * label1^e1*label2^e2 + ...`, terms in descending
//! graded-lex order, hbar powers ascending within a monomial. The
//! coefficient is always present; `hbar^1` prints as `hbar` and unit
//! exponents are omitted. The zero element prints as `0`.

use std::fmt;

use super::element::{AlgebraElement, ModeSpace, Monomial};
use super::hpoly::HPoly;
use super::scalar::Scalar;
use super::AlgebraError;

/// Display adapter binding an element to its mode labels.
pub struct Pretty<'a, S: Scalar> {
    pub element: &'a AlgebraElement<S>,
    pub modes: &'a ModeSpace,
}

struct Coeff<'a, S: Scalar>(&'a S);

impl<S: Scalar> fmt::Display for Coeff<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_coeff(f)
    }
}

impl<S: Scalar> fmt::Display for Pretty<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.element.terms().rev() {
            for (p, x) in c.iter() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}", Coeff(x))?;
                match p {
                    0 => {}
                    1 => write!(f, " * hbar")?,
                    _ => write!(f, " * hbar^{p}")?,
                }
                if !m.is_one() {
                    write!(f, " * ")?;
                    let mut sep = "";
                    for mode in m.support() {
                        write!(f, "{sep}{}", self.modes.label(mode))?;
                        let e = m.exponent(mode);
                        if e > 1 {
                            write!(f, "^{e}")?;
                        }
                        sep = "*";
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn format_element<S: Scalar>(element: &AlgebraElement<S>, modes: &ModeSpace) -> String {
    Pretty { element, modes }.to_string()
}

/// Splits at `sep` outside parentheses. A `+` directly after an exponent
/// marker (`1e+5`) is not a separator.
fn split_top(src: &str, sep: u8) -> Vec<(usize, &str)> {
    let bytes = src.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                let after_exp = sep == b'+'
                    && i > 0
                    && matches!(bytes[i - 1], b'e' | b'E')
                    && i >= 2
                    && bytes[i - 2].is_ascii_digit();
                if !after_exp {
                    out.push((start, &src[start..i]));
                    start = i + 1;
                }
            }
            _ => {}
        }
    }
    out.push((start, &src[start..]));
    out
}

fn parse_power(src: &str, offset: usize) -> Result<(&str, u32), AlgebraError> {
    match src.split_once('^') {
        Some((base, e)) => {
            let e: u32 = e.trim().parse().map_err(|_| AlgebraError::Parse {
                offset,
                message: format!("bad exponent in `{src}`"),
            })?;
            Ok((base.trim(), e))
        }
        None => Ok((src.trim(), 1)),
    }
}

/// Parses the text form produced by [`format_element`].
pub fn parse_element<S: Scalar>(src: &str, modes: &ModeSpace) -> Result<AlgebraElement<S>, AlgebraError> {
    let dim = modes.dim();
    let mut out = AlgebraElement::zero(dim);
    if src.trim() == "0" {
        return Ok(out);
    }
    for (term_start, term) in split_top(src, b'+') {
        if term.trim().is_empty() {
            return Err(AlgebraError::Parse { offset: term_start, message: "empty term".into() });
        }
        let pieces = split_top(term, b'*');
        let mut coeff = S::one();
        let mut hbar = 0u32;
        let mut exps = vec![0u32; dim];
        for (idx, (piece_start, piece)) in pieces.into_iter().enumerate() {
            let offset = term_start + piece_start + (piece.len() - piece.trim_start().len());
            let piece = piece.trim();
            if idx == 0 {
                if let Some(c) = S::parse_coeff(piece) {
                    coeff = c;
                    continue;
                }
            }
            let (base, e) = parse_power(piece, offset)?;
            if base == "hbar" {
                hbar += e;
            } else if let Some(mode) = modes.index_of(base) {
                exps[mode] += e;
            } else {
                return Err(AlgebraError::Parse {
                    offset,
                    message: format!("unknown factor `{base}`"),
                });
            }
        }
        out.add_term(Monomial::from_exponents(exps), &HPoly::monomial(hbar, coeff));
    }
    Ok(out)
}
