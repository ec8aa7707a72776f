use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use super::hpoly::HPoly;
use super::scalar::Scalar;
use super::AlgebraError;

/// Index of a generator in a [`ModeSpace`].
pub type ModeId = usize;

/// Finite, labeled generator basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeSpace {
    labels: Vec<String>,
}

impl ModeSpace {
    pub fn new<I, T>(labels: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !is_label(l) {
                return Err(AlgebraError::BadLabel(l.clone()));
            }
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        Ok(ModeSpace { labels })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: ModeId) -> &str {
        &self.labels[id]
    }

    pub fn index_of(&self, label: &str) -> Option<ModeId> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Labels are identifiers (`[A-Za-z_][A-Za-z0-9_]*`) other than `hbar`.
pub fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && s != "hbar"
}

/// Exponent vector of a product of generators.
///
/// Ordered graded-lexicographically: by total degree, then
/// lexicographically by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn generator(dim: usize, mode: ModeId) -> Self {
        let mut e = vec![0; dim];
        e[mode] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, mode: ModeId) -> u32 {
        self.0[mode]
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Lowers the exponent of `mode` by one, returning the old exponent.
    pub fn lower(&self, mode: ModeId) -> Option<(u32, Monomial)> {
        let e = self.0[mode];
        if e == 0 {
            return None;
        }
        let mut out = self.0.clone();
        out[mode] -= 1;
        Some((e, Monomial(out)))
    }

    /// Modes with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = ModeId> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Expands into a list of labeled factors: mode `r` repeated `e_r` times.
    pub fn factors(&self) -> Vec<ModeId> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(m, &e)| std::iter::repeat_n(m, e as usize))
            .collect()
    }

    pub fn from_factors(dim: usize, factors: impl IntoIterator<Item = ModeId>) -> Monomial {
        let mut e = vec![0; dim];
        for f in factors {
            e[f] += 1;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the polynomial algebra `SV[hbar]` over a finite mode basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S: Scalar> {
    dim: usize,
    terms: BTreeMap<Monomial, HPoly<S>>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, S::one())
    }

    pub fn constant(dim: usize, c: S) -> Self {
        Self::term(Monomial::one(dim), HPoly::constant(c))
    }

    pub fn hbar(dim: usize) -> Self {
        Self::term(Monomial::one(dim), HPoly::monomial(1, S::one()))
    }

    pub fn generator(dim: usize, mode: ModeId) -> Self {
        Self::term(Monomial::generator(dim, mode), HPoly::constant(S::one()))
    }

    pub fn term(m: Monomial, c: HPoly<S>) -> Self {
        let mut out = Self::zero(m.dim());
        out.add_term(m, &c);
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &HPoly<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> HPoly<S> {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest monomial degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn hbar_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(HPoly::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: &HPoly<S>) {
        debug_assert_eq!(m.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(mut old) => {
                old.add_assign(c);
                if !old.is_zero() {
                    self.terms.insert(m, old);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub(crate) fn check_dim(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub(crate) fn check_mode(&self, mode: ModeId) -> Result<(), AlgebraError> {
        if mode >= self.dim {
            return Err(AlgebraError::ModeOutOfRange { mode, dim: self.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn scale_hpoly(&self, c: &HPoly<S>) -> Self {
        self.map_coeffs(|p| p.mul(c))
    }

    /// Multiplies by `hbar^k`.
    pub fn shift_hbar(&self, k: u32) -> Self {
        self.map_coeffs(|p| p.shift(k))
    }

    /// Divides by `hbar`; `None` if some coefficient has a nonzero constant term.
    pub fn unshift_hbar(&self) -> Option<Self> {
        let mut out = Self::zero(self.dim);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), &c.unshift()?);
        }
        Some(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&HPoly<S>) -> HPoly<S>) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// The coefficient of `hbar^p`, as an hbar-free element.
    pub fn hbar_coeff(&self, p: u32) -> Self {
        self.map_coeffs(|c| HPoly::constant(c.coeff(p)))
    }

    /// Converts the coefficient backend.
    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgebraElement<T> {
        let mut out = AlgebraElement::zero(self.dim);
        for (m, c) in self.terms() {
            let mut h = HPoly::zero();
            for (p, x) in c.iter() {
                h.add_term(p, f(x));
            }
            out.add_term(m.clone(), &h);
        }
        out
    }

    /// Largest coefficient deviation from `other` (complex modulus).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        let keys: std::collections::BTreeSet<&Monomial> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for m in keys {
            let a = self.coeff(m);
            let b = other.coeff(m);
            let top = a.degree().max(b.degree()).unwrap_or(0);
            for p in 0..=top {
                worst = worst.max(super::scalar::abs_diff(&a.coeff(p), &b.coeff(p)));
            }
        }
        worst
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..n {
            acc = sym_mul(&acc, self).expect("same dimension");
        }
        acc
    }
}

/// Free commutative product `a ⊙ b`.
pub fn sym_mul<S: Scalar>(
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>, AlgebraError> {
    a.check_dim(b)?;
    let mut out = AlgebraElement::zero(a.dim);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            out.add_term(ma.mul(mb), &ca.mul(cb));
        }
    }
    Ok(out)
}

/// Coordinate contraction along `mode`: the derivation
/// `m ↦ e_mode · m / x_mode`, zero on constants.
pub fn contract<S: Scalar>(
    mode: ModeId,
    a: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>, AlgebraError> {
    a.check_mode(mode)?;
    let mut out = AlgebraElement::zero(a.dim);
    for (m, c) in a.terms() {
        if let Some((e, lowered)) = m.lower(mode) {
            out.add_term(lowered, &c.scale(&S::from_i64(e as i64)));
        }
    }
    Ok(out)
}

/// Sets hbar to zero.
pub fn project_pi<S: Scalar>(a: &AlgebraElement<S>) -> AlgebraElement<S> {
    a.hbar_coeff(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::scalar::GaussRational as Q;

    fn gen(dim: usize, m: ModeId) -> AlgebraElement<Q> {
        AlgebraElement::generator(dim, m)
    }

    #[test]
    fn mode_space_rejects_duplicates_and_bad_labels() {
        assert!(ModeSpace::new(["u", "v"]).is_ok());
        assert!(matches!(ModeSpace::new(["u", "u"]), Err(AlgebraError::DuplicateLabel(_))));
        assert!(matches!(ModeSpace::new(["hbar"]), Err(AlgebraError::BadLabel(_))));
        assert!(matches!(ModeSpace::new(["1x"]), Err(AlgebraError::BadLabel(_))));
        assert_eq!(ModeSpace::new(Vec::<String>::new()).unwrap().dim(), 0);
    }

    #[test]
    fn sym_mul_examples() {
        let (u, v) = (gen(2, 0), gen(2, 1));
        let uv = sym_mul(&u, &v).unwrap();
        assert_eq!(uv, AlgebraElement::term(Monomial::from_exponents(vec![1, 1]), HPoly::constant(Q::one())));
        let uu = sym_mul(&u, &u).unwrap();
        assert_eq!(uu.coeff(&Monomial::from_exponents(vec![2, 0])), HPoly::constant(Q::one()));
        let lhs = sym_mul(&u.add(&AlgebraElement::hbar(2)).unwrap(), &v).unwrap();
        let rhs = uv.add(&v.shift_hbar(1)).unwrap();
        assert_eq!(lhs, rhs);
        assert!(matches!(sym_mul(&u, &gen(3, 0)), Err(AlgebraError::DimensionMismatch { .. })));
    }

    #[test]
    fn contract_examples() {
        let (u, v) = (gen(2, 0), gen(2, 1));
        let u2v = sym_mul(&u.pow(2), &v).unwrap();
        let expected = sym_mul(&u, &v).unwrap().scale(&Q::from_i64(2));
        assert_eq!(contract(0, &u2v).unwrap(), expected);
        assert!(contract(0, &AlgebraElement::<Q>::one(2)).unwrap().is_zero());
        assert!(contract(0, &v.pow(3)).unwrap().is_zero());
        assert!(matches!(contract(5, &u), Err(AlgebraError::ModeOutOfRange { .. })));
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(vec![0, 2]);
        let b = Monomial::from_exponents(vec![1, 0]);
        let c = Monomial::from_exponents(vec![1, 1]);
        assert!(b < a);
        assert!(a < c);
        assert!(Monomial::from_exponents(vec![0, 2]) < Monomial::from_exponents(vec![2, 0]));
    }

    #[test]
    fn project_pi_examples() {
        let (u, v) = (gen(2, 0), gen(2, 1));
        let uv = sym_mul(&u, &v).unwrap();
        let x = uv.add(&AlgebraElement::constant(2, Q::ratio(3, 2)).shift_hbar(1)).unwrap();
        assert_eq!(project_pi(&x), uv);
        assert!(project_pi(&AlgebraElement::<Q>::zero(2)).is_zero());
    }

    #[test]
    fn empty_mode_space_is_hbar_polynomials() {
        let h = AlgebraElement::<Q>::hbar(0);
        let one = AlgebraElement::<Q>::one(0);
        let s = sym_mul(&h.add(&one).unwrap(), &h).unwrap();
        assert_eq!(s.degree(), Some(0));
        assert_eq!(s.hbar_degree(), Some(2));
    }
}
