use num_complex::Complex64;

use super::{Ast, ExprError};
use crate::fock::{FockOperator, FockRep, Ordering, Quantizer};
use crate::kleingordon::KgModeSet;
use crate::symalg::{commutator, poisson, project_pi, star, sym_mul, AlgebraElement, ModeSpace, PairingForm, Scalar};

/// Mode set and Fock representation used by `theta` and `thetaW`.
#[derive(Clone, Copy, Debug)]
pub struct FockEnv<'a> {
    pub set: &'a KgModeSet,
    pub rep: &'a FockRep,
}

/// Bindings for evaluation: labels, the form behind `*`, `comm` and
/// `poisson`, and optionally a Fock representation.
#[derive(Clone, Copy, Debug)]
pub struct Env<'a, S: Scalar> {
    pub modes: &'a ModeSpace,
    pub form: &'a PairingForm<S>,
    pub fock: Option<FockEnv<'a>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value<S: Scalar> {
    Algebra(AlgebraElement<S>),
    Operator(FockOperator),
}

impl<S: Scalar> Value<S> {
    pub fn algebra(self) -> Option<AlgebraElement<S>> {
        match self {
            Value::Algebra(a) => Some(a),
            Value::Operator(_) => None,
        }
    }

    pub fn operator(self) -> Option<FockOperator> {
        match self {
            Value::Operator(o) => Some(o),
            Value::Algebra(_) => None,
        }
    }
}

fn mismatch(op: &'static str, expected: &'static str) -> ExprError {
    ExprError::KindMismatch { op, expected }
}

fn algebra<S: Scalar>(v: Value<S>, op: &'static str) -> Result<AlgebraElement<S>, ExprError> {
    v.algebra().ok_or_else(|| mismatch(op, "algebra"))
}

fn quantize<S: Scalar>(a: Value<S>, env: &Env<'_, S>, which: Ordering, op: &'static str) -> Result<Value<S>, ExprError> {
    let a = algebra(a, op)?;
    let fock = env.fock.ok_or(ExprError::NoFock)?;
    Ok(Value::Operator(Quantizer::new(fock.set, fock.rep, which)?.apply(&a)?))
}

/// Evaluates `ast`. Operator values support `+`, unary `-`, `*`
/// (composition) and `comm`; every other node needs algebra operands.
pub fn eval<S: Scalar>(ast: &Ast, env: &Env<'_, S>) -> Result<Value<S>, ExprError> {
    let dim = env.modes.dim();
    let both = |a: &Ast, b: &Ast| -> Result<(Value<S>, Value<S>), ExprError> { Ok((eval(a, env)?, eval(b, env)?)) };
    Ok(match ast {
        Ast::ModeRef(label) => {
            let r = env.modes.index_of(label).ok_or_else(|| ExprError::UnboundLabel(label.clone()))?;
            Value::Algebra(AlgebraElement::generator(dim, r))
        }
        Ast::Num(q) => Value::Algebra(AlgebraElement::constant(dim, S::from_rational(q))),
        Ast::Hbar => Value::Algebra(AlgebraElement::hbar(dim)),
        Ast::Add(a, b) => match both(a, b)? {
            (Value::Algebra(x), Value::Algebra(y)) => Value::Algebra(x.add(&y)?),
            (Value::Operator(x), Value::Operator(y)) => Value::Operator(x.add(&y)),
            _ => return Err(mismatch("+", "two algebra or two operator")),
        },
        Ast::Neg(a) => match eval(a, env)? {
            Value::Algebra(x) => Value::Algebra(x.neg()),
            Value::Operator(x) => Value::Operator(x.scale(Complex64::new(-1.0, 0.0))),
        },
        Ast::Star(a, b) => match both(a, b)? {
            (Value::Algebra(x), Value::Algebra(y)) => Value::Algebra(star(env.form, &x, &y)?),
            (Value::Operator(x), Value::Operator(y)) => Value::Operator(x.compose(&y)),
            _ => return Err(mismatch("*", "two algebra or two operator")),
        },
        Ast::Commutator(a, b) => match both(a, b)? {
            (Value::Algebra(x), Value::Algebra(y)) => Value::Algebra(commutator(env.form, &x, &y)?),
            (Value::Operator(x), Value::Operator(y)) => Value::Operator(x.commutator(&y)),
            _ => return Err(mismatch("comm", "two algebra or two operator")),
        },
        Ast::SymMul(a, b) => {
            let (x, y) = both(a, b)?;
            Value::Algebra(sym_mul(&algebra(x, ".")?, &algebra(y, ".")?)?)
        }
        Ast::Poisson(a, b) => {
            let (x, y) = both(a, b)?;
            Value::Algebra(poisson(env.form, &algebra(x, "poisson")?, &algebra(y, "poisson")?)?)
        }
        Ast::Pi0(a) => Value::Algebra(project_pi(&algebra(eval(a, env)?, "pi0")?)),
        Ast::Pow(a, n) => Value::Algebra(algebra(eval(a, env)?, "^")?.pow(*n)),
        Ast::Theta(a) => quantize(eval(a, env)?, env, Ordering::Hbar, "theta")?,
        Ast::ThetaW(a) => quantize(eval(a, env)?, env, Ordering::Wick, "thetaW")?,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::super::parse;
    use super::*;
    use crate::fock::theta;
    use crate::kleingordon::{sigma_form, KGConfig};
    use crate::symalg::{GaussRational, HPoly, Monomial};

    fn q(n: i64, d: i64) -> GaussRational {
        GaussRational::ratio(n, d)
    }

    fn exact_env() -> (ModeSpace, PairingForm<GaussRational>) {
        let modes = ModeSpace::new(["u", "v"]).unwrap();
        let form = PairingForm::new("b", vec![vec![q(2, 1), q(3, 2)], vec![q(-1, 3), q(5, 7)]]).unwrap();
        (modes, form)
    }

    fn run(src: &str, env: &Env<'_, GaussRational>) -> Result<Value<GaussRational>, ExprError> {
        eval(&parse(src)?, env)
    }

    #[test]
    fn star_delegates_to_form() {
        let (modes, form) = exact_env();
        let env = Env { modes: &modes, form: &form, fock: None };
        let got = run("u * v", &env).unwrap().algebra().unwrap();
        let mut want = AlgebraElement::term(Monomial::from_exponents(vec![1, 1]), HPoly::constant(q(1, 1)));
        want.add_term(Monomial::one(2), &HPoly::monomial(1, q(3, 2)));
        assert_eq!(got, want);
        assert!(run("pi0(comm(u, v))", &env).unwrap().algebra().unwrap().is_zero());
        assert_eq!(
            run("u^2 - u.u", &env).unwrap(),
            Value::Algebra(AlgebraElement::zero(2))
        );
    }

    #[test]
    fn errors() {
        let (modes, form) = exact_env();
        let env = Env { modes: &modes, form: &form, fock: None };
        assert_eq!(run("w", &env).unwrap_err(), ExprError::UnboundLabel("w".into()));
        assert_eq!(run("theta(u)", &env).unwrap_err(), ExprError::NoFock);
    }

    #[test]
    fn theta_matches_direct_call() {
        let cfg = KGConfig::new(1.0, 2.0 * PI, 1).unwrap();
        let set = KgModeSet::full(&cfg);
        let rep = FockRep::new(&cfg, 4).unwrap();
        let form = sigma_form(&set, &cfg).unwrap();
        let env = Env { modes: set.space(), form: &form, fock: Some(FockEnv { set: &set, rep: &rep }) };
        let labels = set.space().labels();
        let src = format!("theta({} . {})", labels[0], labels[3]);
        let got = eval(&parse(&src).unwrap(), &env).unwrap().operator().unwrap();
        let elem: AlgebraElement<Complex64> =
            sym_mul(&AlgebraElement::generator(set.len(), 0), &AlgebraElement::generator(set.len(), 3)).unwrap();
        let direct = theta(&elem, &set, &rep).unwrap();
        assert_eq!(got.max_abs_diff_on(&direct, rep.dim()), 0.0);
        assert!(matches!(
            eval(&parse("theta(1) + 1").unwrap(), &env),
            Err(ExprError::KindMismatch { op: "+", .. })
        ));
        let one = eval(&parse("theta(1)").unwrap(), &env).unwrap().operator().unwrap();
        assert_eq!(one, rep.identity());
    }
}
