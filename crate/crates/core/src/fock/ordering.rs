//! The ordering maps Θ (π left of φ, `Θ(hbar) = −i`) and Θ_W (normal
//! order, `Θ_W(hbar) = 1`), and the matrix-level morphism checks.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_complex::Complex64;

use super::fields::{annihilator, creator, field_ops, FockRep};
use super::operator::FockOperator;
use super::FockError;
use crate::kleingordon::{sigma_form, wick_coefficients, wick_form, KgModeSet};
use crate::symalg::{star, AlgebraElement, Monomial, PairingForm, Scalar};

/// Which ordering prescription, and with it which star product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ordering {
    /// Θ with the covariant pairing.
    Hbar,
    /// Θ_W with the Wick pairing.
    Wick,
}

impl Ordering {
    pub fn theorem(self) -> &'static str {
        match self {
            Ordering::Hbar => "ordre",
            Ordering::Wick => "quantification",
        }
    }

    /// Scalar that hbar is sent to.
    pub fn hbar_image(self) -> Complex64 {
        match self {
            Ordering::Hbar => Complex64::new(0.0, -1.0),
            Ordering::Wick => Complex64::new(1.0, 0.0),
        }
    }
}

/// Per-mode linear operators and a monomial cache for one ordering map.
///
/// For Θ the "left" operator of mode `ψ` is `−π_m(ψ(0,·))` and the
/// "right" one `φ_m(∂_tψ(0,·))`; for Θ_W they are `a†(Gψ)` and `a(Fψ)`.
/// A monomial maps to `Σ_I Π_{i∈I} left_i Π_{j∉I} right_j`.
pub struct Quantizer<'a> {
    rep: &'a FockRep,
    ordering: Ordering,
    left: Vec<FockOperator>,
    right: Vec<FockOperator>,
    cache: Mutex<HashMap<Monomial, FockOperator>>,
}

impl<'a> Quantizer<'a> {
    pub fn new(set: &KgModeSet, rep: &'a FockRep, ordering: Ordering) -> Result<Self, FockError> {
        let cfg = rep.config();
        let mut left = Vec::with_capacity(set.len());
        let mut right = Vec::with_capacity(set.len());
        for m in set.modes() {
            if m.k_index.abs() > cfg.kmax {
                return Err(FockError::UnresolvableMode(m.label()));
            }
            match ordering {
                Ordering::Hbar => {
                    let data = m.cauchy(cfg);
                    let (_, pi) = field_ops(&data.value, rep)?;
                    let (phi, _) = field_ops(&data.tderiv, rep)?;
                    left.push(pi.scale(Complex64::new(-1.0, 0.0)));
                    right.push(phi);
                }
                Ordering::Wick => {
                    let w = wick_coefficients(m, cfg);
                    left.push(creator(&w.g, rep)?);
                    right.push(annihilator(&w.f, rep)?);
                }
            }
        }
        Ok(Quantizer { rep, ordering, left, right, cache: Mutex::new(HashMap::new()) })
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn rep(&self) -> &FockRep {
        self.rep
    }

    /// Image of a unit-coefficient monomial. Repeated modes are grouped:
    /// choosing `j_r` of the `e_r` copies of mode `r` for the left block
    /// happens `C(e_r, j_r)` ways.
    pub fn monomial(&self, m: &Monomial) -> FockOperator {
        if let Some(op) = self.cache.lock().expect("cache lock").get(m) {
            return op.clone();
        }
        let support: Vec<usize> = m.support().collect();
        let exps: Vec<u32> = support.iter().map(|&r| m.exponent(r)).collect();
        let mut split = vec![0u32; support.len()];
        let mut total = FockOperator::zero(self.rep.dim()).with_formal_degree(m.degree());
        loop {
            let mut weight = 1.0;
            let mut op = self.rep.identity();
            for (idx, &r) in support.iter().enumerate() {
                weight *= binomial(exps[idx], split[idx]);
                for _ in 0..split[idx] {
                    op = op.compose(&self.left[r]);
                }
            }
            for (idx, &r) in support.iter().enumerate() {
                for _ in split[idx]..exps[idx] {
                    op = op.compose(&self.right[r]);
                }
            }
            total = total.add_scaled(&op, Complex64::new(weight, 0.0));
            // odometer over split[idx] in 0..=exps[idx]
            let mut idx = 0;
            loop {
                if idx == split.len() {
                    self.cache.lock().expect("cache lock").insert(m.clone(), total.clone());
                    return total;
                }
                if split[idx] < exps[idx] {
                    split[idx] += 1;
                    break;
                }
                split[idx] = 0;
                idx += 1;
            }
        }
    }

    /// Image of an element; hbar is replaced by [`Ordering::hbar_image`].
    pub fn apply<S: Scalar>(&self, a: &AlgebraElement<S>) -> Result<FockOperator, FockError> {
        if a.dim() != self.left.len() {
            return Err(FockError::DimensionMismatch { expected: self.left.len(), got: a.dim() });
        }
        let hbar = self.ordering.hbar_image();
        let mut out = FockOperator::zero(self.rep.dim());
        for (m, c) in a.terms() {
            let c64: Complex64 = c.iter().map(|(p, x)| x.to_c64() * hbar.powu(p)).sum();
            out = out.add_scaled(&self.monomial(m), c64);
        }
        Ok(out)
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Θ(A).
pub fn theta<S: Scalar>(a: &AlgebraElement<S>, set: &KgModeSet, rep: &FockRep) -> Result<FockOperator, FockError> {
    Quantizer::new(set, rep, Ordering::Hbar)?.apply(a)
}

/// Θ_W(A).
pub fn theta_wick<S: Scalar>(
    a: &AlgebraElement<S>,
    set: &KgModeSet,
    rep: &FockRep,
) -> Result<FockOperator, FockError> {
    Quantizer::new(set, rep, Ordering::Wick)?.apply(a)
}

/// The pairing whose star product the ordering represents.
pub fn ordering_form(set: &KgModeSet, rep: &FockRep, ordering: Ordering) -> Result<PairingForm<Complex64>, FockError> {
    Ok(match ordering {
        Ordering::Hbar => sigma_form(set, rep.config())?,
        Ordering::Wick => wick_form(set, rep.config()),
    })
}

/// One line of a morphism check.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderingReport {
    pub theorem: &'static str,
    pub deg_a: u32,
    pub deg_b: u32,
    pub ncap: u32,
    pub max_abs_dev: f64,
    pub guard_dim: usize,
}

impl OrderingReport {
    pub const HEADER: &'static str = "theorem\tdegA\tdegB\tNcap\tmax_abs_dev\tguard_dim";
}

impl fmt::Display for OrderingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{:.3e}\t{}",
            self.theorem, self.deg_a, self.deg_b, self.ncap, self.max_abs_dev, self.guard_dim
        )
    }
}

/// Compares `Q(A) Q(B)` with `Q(A ⋆ B)` on states of occupation
/// `≤ ncap − (deg A + deg B)`.
pub fn verify_with<S: Scalar>(
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
    quantizer: &Quantizer<'_>,
    form: &PairingForm<Complex64>,
) -> Result<OrderingReport, FockError> {
    let space = quantizer.rep().space();
    let deg_a = a.degree().unwrap_or(0);
    let deg_b = b.degree().unwrap_or(0);
    let total = deg_a + deg_b;
    if total > space.ncap() {
        return Err(FockError::GuardViolation { degree: total, ncap: space.ncap() });
    }
    let a64 = a.convert(Scalar::to_c64);
    let b64 = b.convert(Scalar::to_c64);
    let lhs = quantizer.apply(&a64)?.compose(&quantizer.apply(&b64)?);
    let product = star(form, &a64, &b64)?;
    let rhs = quantizer.apply(&product)?;
    let guard_dim = space.guard_dim(space.ncap() - total);
    Ok(OrderingReport {
        theorem: quantizer.ordering().theorem(),
        deg_a,
        deg_b,
        ncap: space.ncap(),
        max_abs_dev: lhs.max_abs_diff_on(&rhs, guard_dim),
        guard_dim,
    })
}

pub fn verify_ordering_theorem<S: Scalar>(
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
    set: &KgModeSet,
    rep: &FockRep,
    which: Ordering,
) -> Result<OrderingReport, FockError> {
    let quantizer = Quantizer::new(set, rep, which)?;
    let form = ordering_form(set, rep, which)?;
    verify_with(a, b, &quantizer, &form)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::kleingordon::KGConfig;
    use crate::symalg::{sym_mul, GaussRational, HPoly};

    fn q(n: i64, d: i64) -> GaussRational {
        GaussRational::ratio(n, d)
    }

    fn setup(ncap: u32) -> (KgModeSet, FockRep) {
        let cfg = KGConfig::new(1.0, 2.0 * PI, 1).unwrap();
        let set = KgModeSet::full(&cfg);
        let rep = FockRep::new(&cfg, ncap).unwrap();
        (set, rep)
    }

    fn gen(dim: usize, r: usize) -> AlgebraElement<GaussRational> {
        AlgebraElement::generator(dim, r)
    }

    #[test]
    fn generator_products_both_orderings() {
        let (set, rep) = setup(4);
        let dim = set.len();
        for which in [Ordering::Hbar, Ordering::Wick] {
            let quant = Quantizer::new(&set, &rep, which).unwrap();
            let form = ordering_form(&set, &rep, which).unwrap();
            for r in 0..dim {
                for s in 0..dim {
                    let report = verify_with(&gen(dim, r), &gen(dim, s), &quant, &form).unwrap();
                    assert!(report.max_abs_dev < 1e-9, "{which:?} {r} {s}: {report}");
                }
            }
        }
    }

    #[test]
    fn quadratic_elements_with_hbar() {
        let (set, rep) = setup(6);
        let dim = set.len();
        let a = sym_mul(&gen(dim, 0), &gen(dim, 3))
            .unwrap()
            .add(&AlgebraElement::term(Monomial::one(dim), HPoly::monomial(1, q(2, 3))))
            .unwrap();
        let b = gen(dim, 3).pow(2).scale(&q(-1, 2)).add(&gen(dim, 7)).unwrap();
        for which in [Ordering::Hbar, Ordering::Wick] {
            let report = verify_ordering_theorem(&a, &b, &set, &rep, which).unwrap();
            assert_eq!((report.deg_a, report.deg_b), (2, 2));
            assert!(report.max_abs_dev < 1e-9, "{report}");
        }
    }

    #[test]
    fn hbar_images() {
        let (set, rep) = setup(2);
        let h = AlgebraElement::<GaussRational>::hbar(set.len());
        let t = theta(&h, &set, &rep).unwrap();
        assert!(t.max_abs_diff_on(&rep.identity().scale(Complex64::new(0.0, -1.0)), rep.dim()) < 1e-15);
        let w = theta_wick(&h, &set, &rep).unwrap();
        assert!(w.max_abs_diff_on(&rep.identity(), rep.dim()) < 1e-15);
    }

    #[test]
    fn guard_violation() {
        let (set, rep) = setup(3);
        let a = gen(set.len(), 0).pow(2);
        let err = verify_ordering_theorem(&a, &a, &set, &rep, Ordering::Wick).unwrap_err();
        assert_eq!(err, FockError::GuardViolation { degree: 4, ncap: 3 });
    }
}
