use std::collections::BTreeMap;

use super::scalar::Scalar;

/// Polynomial in the formal parameter hbar, stored sparsely by exponent.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct HPoly<S: Scalar> {
    coeffs: BTreeMap<u32, S>,
}

impl<S: Scalar> Default for HPoly<S> {
    fn default() -> Self {
        HPoly { coeffs: BTreeMap::new() }
    }
}

impl<S: Scalar> HPoly<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(0, c)
    }

    /// `c * hbar^power`
    pub fn monomial(power: u32, c: S) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(power, c);
        }
        HPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, power: u32) -> S {
        self.coeffs.get(&power).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &S)> {
        self.coeffs.iter().map(|(&p, c)| (p, c))
    }

    /// Adds `c * hbar^power` in place.
    pub fn add_term(&mut self, power: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&power) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(power, sum);
                }
            }
            None => {
                self.coeffs.insert(power, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &HPoly<S>) {
        for (p, c) in other.iter() {
            self.add_term(p, c.clone());
        }
    }

    pub fn add(&self, other: &HPoly<S>) -> HPoly<S> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> HPoly<S> {
        self.map(|c| -c.clone())
    }

    pub fn mul(&self, other: &HPoly<S>) -> HPoly<S> {
        let mut out = HPoly::zero();
        for (p, a) in self.iter() {
            for (q, b) in other.iter() {
                out.add_term(p + q, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &S) -> HPoly<S> {
        self.map(|x| x.clone() * c.clone())
    }

    /// Multiplies by `hbar^k`.
    pub fn shift(&self, k: u32) -> HPoly<S> {
        HPoly { coeffs: self.coeffs.iter().map(|(&p, c)| (p + k, c.clone())).collect() }
    }

    /// Divides by `hbar`; `None` when the constant term is nonzero.
    pub fn unshift(&self) -> Option<HPoly<S>> {
        if self.coeffs.contains_key(&0) {
            return None;
        }
        Some(HPoly { coeffs: self.coeffs.iter().map(|(&p, c)| (p - 1, c.clone())).collect() })
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> HPoly<S> {
        let mut out = HPoly::zero();
        for (p, c) in self.iter() {
            out.add_term(p, f(c));
        }
        out
    }

    /// Substitutes a numerical value for hbar.
    pub fn evaluate(&self, hbar: &S) -> S {
        // Horner over the sparse exponents
        let mut total = S::zero();
        let mut last = self.degree().unwrap_or(0);
        for (p, c) in self.coeffs.iter().rev() {
            for _ in *p..last {
                total = total * hbar.clone();
            }
            total = total + c.clone();
            last = *p;
        }
        for _ in 0..last {
            total = total * hbar.clone();
        }
        total
    }
}
