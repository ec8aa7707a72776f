//! Contraction star products and the brackets derived from them.
//!
//! Two independent routes to `a ⋆ b` live here:
//!
//! * [`star`] sums over contraction-multiplicity matrices `K[r][s]` (how
//!   many factors of mode `r` on the left are paired with factors of mode
//!   `s` on the right), weighting each by the number of labeled
//!   subset/injection pairs that realize it.
//! * [`star_iterated`] applies the single-contraction bilinear map
//!   `M(a, b) = Σ B[r][s] ∂_r a ⊗ ∂_s b` `p` times on a tensor of
//!   monomial pairs, multiplies out and divides by `p!`.
//!
//! Both are exact on the [`GaussRational`](super::GaussRational) backend and
//! are required to agree bit for bit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::element::{contract, project_pi, sym_mul, AlgebraElement, ModeId, Monomial};
use super::hpoly::HPoly;
use super::pairing::PairingForm;
use super::scalar::Scalar;
use super::AlgebraError;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn int_scalar<S: Scalar>(n: BigInt) -> S {
    S::from_rational(&BigRational::from_integer(n))
}

fn check_inputs<S: Scalar>(
    form: &PairingForm<S>,
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
) -> Result<(), AlgebraError> {
    a.check_dim(b)?;
    form.check_dim(a.dim())
}

struct ContractionSearch<'a, S: Scalar> {
    form: &'a PairingForm<S>,
    left: &'a Monomial,
    right: &'a Monomial,
    pairs: Vec<(ModeId, ModeId)>,
    row_left: Vec<u32>,
    col_left: Vec<u32>,
    counts: Vec<u32>,
}

impl<S: Scalar> ContractionSearch<'_, S> {
    /// Walks every multiplicity assignment over `pairs[idx..]`.
    fn walk(&mut self, idx: usize, out: &mut Vec<(u32, S, Monomial)>) {
        if idx == self.pairs.len() {
            out.push(self.emit());
            return;
        }
        let (r, s) = self.pairs[idx];
        let cap = self.row_left[r].min(self.col_left[s]);
        for k in 0..=cap {
            self.counts[idx] = k;
            self.row_left[r] -= k;
            self.col_left[s] -= k;
            self.walk(idx + 1, out);
            self.row_left[r] += k;
            self.col_left[s] += k;
        }
        self.counts[idx] = 0;
    }

    fn emit(&self) -> (u32, S, Monomial) {
        let dim = self.left.dim();
        let mut weight = S::one();
        let mut order = 0;
        let mut denom = BigInt::one();
        for (&(r, s), &k) in self.pairs.iter().zip(&self.counts) {
            for _ in 0..k {
                weight = weight * self.form.get(r, s).clone();
            }
            order += k;
            denom *= factorial(k);
        }
        // Left side: choose which labeled factors of each mode are used and
        // partition them by partner mode. Right side: inject into labeled
        // factors of each partner mode.
        let mut numer = BigInt::one();
        let mut rest = Vec::with_capacity(dim);
        for r in 0..dim {
            let e = self.left.exponent(r);
            numer *= factorial(e) / factorial(self.row_left[r]);
            rest.push(self.row_left[r]);
        }
        for s in 0..dim {
            let f = self.right.exponent(s);
            numer *= factorial(f) / factorial(self.col_left[s]);
            rest[s] += self.col_left[s];
        }
        let count = numer / denom;
        (order, weight * int_scalar(count), Monomial::from_exponents(rest))
    }
}

/// Star product of two monomials with unit coefficients.
pub fn star_monomials<S: Scalar>(
    form: &PairingForm<S>,
    left: &Monomial,
    right: &Monomial,
) -> AlgebraElement<S> {
    let pairs: Vec<(ModeId, ModeId)> = left
        .support()
        .flat_map(|r| right.support().map(move |s| (r, s)))
        .filter(|&(r, s)| !form.get(r, s).is_zero())
        .collect();
    let mut search = ContractionSearch {
        form,
        left,
        right,
        counts: vec![0; pairs.len()],
        pairs,
        row_left: left.exponents().to_vec(),
        col_left: right.exponents().to_vec(),
    };
    let mut found = Vec::new();
    search.walk(0, &mut found);
    let mut out = AlgebraElement::zero(left.dim());
    for (order, weight, rest) in found {
        out.add_term(rest, &HPoly::monomial(order, weight));
    }
    out
}

/// Closed-form contraction star product `a ⋆ b` for the pairing `form`.
pub fn star<S: Scalar>(
    form: &PairingForm<S>,
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>, AlgebraError> {
    check_inputs(form, a, b)?;
    let mut out = AlgebraElement::zero(a.dim());
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let coeff = ca.mul(cb);
            for (m, c) in star_monomials(form, ma, mb).terms() {
                out.add_term(m.clone(), &c.mul(&coeff));
            }
        }
    }
    Ok(out)
}

type Tensor<S> = BTreeMap<(Monomial, Monomial), HPoly<S>>;

fn tensor_add<S: Scalar>(t: &mut Tensor<S>, key: (Monomial, Monomial), c: HPoly<S>) {
    if c.is_zero() {
        return;
    }
    match t.remove(&key) {
        Some(mut old) => {
            old.add_assign(&c);
            if !old.is_zero() {
                t.insert(key, old);
            }
        }
        None => {
            t.insert(key, c);
        }
    }
}

/// One application of `Σ_{r,s} B[r][s] ∂_r ⊗ ∂_s`.
fn contract_once<S: Scalar>(form: &PairingForm<S>, t: &Tensor<S>) -> Tensor<S> {
    let mut out = Tensor::new();
    for ((l, r), c) in t {
        for x in l.support() {
            let (ex, l2) = l.lower(x).expect("in support");
            for y in r.support() {
                let b = form.get(x, y);
                if b.is_zero() {
                    continue;
                }
                let (ey, r2) = r.lower(y).expect("in support");
                let w = b.clone() * S::from_i64(ex as i64 * ey as i64);
                tensor_add(&mut out, (l2.clone(), r2), c.scale(&w));
            }
        }
    }
    out
}

/// Star product built by iterating single contractions, `Σ_p hbar^p / p! [a ⋆ b]_p`.
pub fn star_iterated<S: Scalar>(
    form: &PairingForm<S>,
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>, AlgebraError> {
    check_inputs(form, a, b)?;
    let dim = a.dim();
    let mut tensor = Tensor::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            tensor_add(&mut tensor, (ma.clone(), mb.clone()), ca.mul(cb));
        }
    }
    let mut out = AlgebraElement::zero(dim);
    let mut p = 0u32;
    while !tensor.is_empty() {
        let inv_fact = int_scalar::<S>(factorial(p)).inv().expect("p! is nonzero");
        for ((l, r), c) in &tensor {
            out.add_term(l.mul(r), &c.shift(p).scale(&inv_fact));
        }
        tensor = contract_once(form, &tensor);
        p += 1;
    }
    Ok(out)
}

/// `a ⋆ b - b ⋆ a`.
pub fn commutator<S: Scalar>(
    form: &PairingForm<S>,
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>, AlgebraError> {
    star(form, a, b)?.sub(&star(form, b, a)?)
}

/// Poisson bracket: the biderivation `Σ (B[r][s] - B[s][r]) ∂_r a ⊙ ∂_s b`,
/// extended hbar-bilinearly.
pub fn poisson<S: Scalar>(
    form: &PairingForm<S>,
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>, AlgebraError> {
    check_inputs(form, a, b)?;
    let dim = a.dim();
    let anti = form.antisymmetrized();
    let mut out = AlgebraElement::zero(dim);
    for r in 0..dim {
        let da = contract(r, a)?;
        if da.is_zero() {
            continue;
        }
        for s in 0..dim {
            let w = anti.get(r, s);
            if w.is_zero() {
                continue;
            }
            let db = contract(s, b)?;
            if db.is_zero() {
                continue;
            }
            out = out.add(&sym_mul(&da, &db)?.scale(w))?;
        }
    }
    Ok(out)
}

/// `π((1/hbar)[a, b]_⋆)`, cross-checked against `π({a, b})`.
///
/// Fails with [`AlgebraError::NotDivisibleByHbar`] if the commutator has an
/// hbar-free part and with [`AlgebraError::Inconsistent`] if the two
/// routes disagree.
pub fn poisson_correspondence<S: Scalar>(
    form: &PairingForm<S>,
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>, AlgebraError> {
    let comm = commutator(form, a, b)?;
    let stripped = comm.unshift_hbar().ok_or(AlgebraError::NotDivisibleByHbar)?;
    let from_commutator = project_pi(&stripped);
    let bracket = project_pi(&poisson(form, a, b)?);
    if from_commutator != bracket {
        return Err(AlgebraError::Inconsistent(
            "hbar^1 coefficient of the commutator differs from the Poisson bracket".into(),
        ));
    }
    Ok(bracket)
}

/// Checks the contraction-distribution identity
/// `∂_{z_k}⋯∂_{z_1}(a ⊙ b) = Σ_J ∂_{z_J} a ⊙ ∂_{z_∖J} b`
/// together with pairwise commutativity of the contractions.
///
/// `z_modes` must hold exactly `k` in-range modes; anything else is a
/// failed check.
pub fn lemma1_check<S: Scalar>(
    k: usize,
    z_modes: &[ModeId],
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
) -> bool {
    if z_modes.len() != k || a.dim() != b.dim() || z_modes.iter().any(|&z| z >= a.dim()) || k >= 32 {
        return false;
    }
    let apply = |modes: &mut dyn Iterator<Item = ModeId>, x: &AlgebraElement<S>| {
        modes.fold(x.clone(), |acc, z| contract(z, &acc).expect("checked range"))
    };

    for (i, &zi) in z_modes.iter().enumerate() {
        for &zj in &z_modes[i + 1..] {
            for x in [a, b] {
                let ij = apply(&mut [zi, zj].into_iter(), x);
                let ji = apply(&mut [zj, zi].into_iter(), x);
                if ij != ji {
                    return false;
                }
            }
        }
    }

    let Ok(ab) = sym_mul(a, b) else { return false };
    let lhs = apply(&mut z_modes.iter().copied(), &ab);
    let mut rhs = AlgebraElement::zero(a.dim());
    for mask in 0u32..(1 << k) {
        let chosen = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| z_modes[i]);
        let rest = (0..k).filter(|i| mask & (1 << i) == 0).map(|i| z_modes[i]);
        let left = apply(&mut chosen.into_iter(), a);
        let right = apply(&mut rest.into_iter(), b);
        rhs = rhs.add(&sym_mul(&left, &right).expect("same dim")).expect("same dim");
    }
    lhs == rhs
}
