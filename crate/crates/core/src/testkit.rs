//! Seeded generators for algebra elements, pairings, Cauchy data and
//! operator words, the naive injection oracle for the star product, and
//! tolerance helpers.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256StarStar};

use crate::expr::Ast;
use crate::fock::{FieldKind, OperatorWord};
use crate::kleingordon::{CauchyData, Fourier, KGConfig};
use crate::symalg::{AlgebraElement, AlgebraError, GaussRational, HPoly, Monomial, PairingForm, Scalar};

/// Deterministic random source: Xoshiro256** seeded through SplitMix64.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    position: u64,
    rng: Xoshiro256StarStar,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream { seed, position: 0, rng: Xoshiro256StarStar::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 64-bit words drawn so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    /// Substream `index`; depends only on the seed, not on how much of
    /// this stream has been consumed.
    pub fn split(&self, index: u64) -> RandomStream {
        let mut mix = SplitMix64::seed_from_u64(self.seed ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03));
        RandomStream::new(mix.next_u64())
    }

    /// Nonzero integer in `[-9, 9]`.
    pub fn small_nonzero(&mut self) -> i64 {
        let v = self.gen_range(1..=9);
        if self.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    /// `p/q` with `p, q ∈ [-9, 9] ∖ {0}`.
    pub fn small_rational(&mut self) -> GaussRational {
        let p = self.small_nonzero();
        let q = self.small_nonzero();
        GaussRational::ratio(p, q)
    }

    /// `(p/q) + (r/s) i` with all parts drawn as in [`Self::small_rational`].
    pub fn small_gaussian(&mut self) -> GaussRational {
        let re = self.small_rational();
        let im = self.small_rational();
        re + im * GaussRational::i()
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.position += 1;
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for chunk in dest.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

/// Bounds for [`random_element_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementShape {
    pub mode_count: usize,
    pub max_degree: u32,
    pub max_hbar_degree: u32,
    /// Cap on each individual mode exponent.
    pub max_exponent: Option<u32>,
    pub max_terms: usize,
    pub complex: bool,
}

impl ElementShape {
    pub fn new(mode_count: usize, max_degree: u32, max_hbar_degree: u32) -> Self {
        ElementShape { mode_count, max_degree, max_hbar_degree, max_exponent: None, max_terms: 5, complex: false }
    }

    pub fn max_exponent(mut self, cap: u32) -> Self {
        self.max_exponent = Some(cap);
        self
    }

    pub fn complex(mut self) -> Self {
        self.complex = true;
        self
    }
}

/// Monomial with `degree ≤ max_degree`, drawn by first picking the degree
/// uniformly, then placing factors one by one on modes that still have room.
pub fn random_monomial(stream: &mut RandomStream, mode_count: usize, max_degree: u32, max_exponent: Option<u32>) -> Monomial {
    let mut exps = vec![0u32; mode_count];
    if mode_count == 0 {
        return Monomial::from_exponents(exps);
    }
    let room = max_exponent.map_or(u32::MAX, |c| c.saturating_mul(mode_count as u32));
    let degree = stream.gen_range(0..=max_degree.min(room));
    for _ in 0..degree {
        let open: Vec<usize> = (0..mode_count).filter(|&r| max_exponent.is_none_or(|c| exps[r] < c)).collect();
        let r = open[stream.gen_range(0..open.len())];
        exps[r] += 1;
    }
    Monomial::from_exponents(exps)
}

/// Up to five terms with coefficients `p/q`, `p, q ∈ [-9, 9] ∖ {0}`.
pub fn random_element(
    stream: &mut RandomStream,
    mode_count: usize,
    max_degree: u32,
    max_hbar_degree: u32,
) -> AlgebraElement<GaussRational> {
    random_element_with(stream, &ElementShape::new(mode_count, max_degree, max_hbar_degree))
}

pub fn random_element_with(stream: &mut RandomStream, shape: &ElementShape) -> AlgebraElement<GaussRational> {
    let mut out = AlgebraElement::zero(shape.mode_count);
    let count = stream.gen_range(1..=shape.max_terms.max(1));
    for _ in 0..count {
        let m = random_monomial(stream, shape.mode_count, shape.max_degree, shape.max_exponent);
        let p = stream.gen_range(0..=shape.max_hbar_degree);
        let c = if shape.complex { stream.small_gaussian() } else { stream.small_rational() };
        out.add_term(m, &HPoly::monomial(p, c));
    }
    out
}

/// Square form with every entry `p/q`, `p, q ∈ [-9, 9] ∖ {0}`.
pub fn random_pairing(stream: &mut RandomStream, dim: usize) -> PairingForm<GaussRational> {
    let rows = (0..dim).map(|_| (0..dim).map(|_| stream.small_rational()).collect()).collect();
    PairingForm::new("random", rows).expect("square by construction")
}

/// As [`random_pairing`] with complex entries.
pub fn random_complex_pairing(stream: &mut RandomStream, dim: usize) -> PairingForm<GaussRational> {
    let rows = (0..dim).map(|_| (0..dim).map(|_| stream.small_gaussian()).collect()).collect();
    PairingForm::new("random", rows).expect("square by construction")
}

/// Real trigonometric polynomial on the circle: coefficients satisfy
/// `c(−n) = conj c(n)` with parts drawn from `[-1, 1]`.
pub fn random_real_fourier(stream: &mut RandomStream, cfg: &KGConfig) -> Fourier {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); cfg.mode_count()];
    let k = cfg.kmax;
    coeffs[k as usize] = Complex64::new(stream.gen_range(-1.0..=1.0), 0.0);
    for n in 1..=k {
        let c = Complex64::new(stream.gen_range(-1.0..=1.0), stream.gen_range(-1.0..=1.0));
        coeffs[(k + n) as usize] = c;
        coeffs[(k - n) as usize] = c.conj();
    }
    Fourier::from_coeffs(cfg, coeffs).expect("length matches the configuration")
}

pub fn random_cauchy(stream: &mut RandomStream, cfg: &KGConfig) -> CauchyData {
    let value = random_real_fourier(stream, cfg);
    let tderiv = random_real_fourier(stream, cfg);
    CauchyData { value, tderiv }
}

/// Normal-ordered word with `n_pi` factors `π` followed by `n_phi` factors
/// `φ`, and a coefficient of modulus at most `√2`.
pub fn random_operator_word(stream: &mut RandomStream, cfg: &KGConfig, n_pi: usize, n_phi: usize) -> OperatorWord {
    let coefficient = Complex64::new(stream.gen_range(-1.0..=1.0), stream.gen_range(-1.0..=1.0));
    let mut factors = Vec::with_capacity(n_pi + n_phi);
    for _ in 0..n_pi {
        factors.push((FieldKind::Pi, random_real_fourier(stream, cfg)));
    }
    for _ in 0..n_phi {
        factors.push((FieldKind::Phi, random_real_fourier(stream, cfg)));
    }
    OperatorWord::new(coefficient, factors)
}

/// Random expression tree of depth at most `max_depth` over `labels`.
/// Number literals are nonnegative.
pub fn random_ast(stream: &mut RandomStream, labels: &[&str], max_depth: usize) -> Ast {
    let leaf = max_depth <= 1 || stream.gen_bool(0.25);
    if leaf {
        return match stream.gen_range(0..3) {
            0 if !labels.is_empty() => Ast::mode(labels[stream.gen_range(0..labels.len())]),
            1 => {
                let p: i64 = stream.gen_range(0..=9);
                let q: i64 = stream.gen_range(1..=9);
                Ast::Num(BigRational::new(p.into(), q.into()))
            }
            _ => Ast::Hbar,
        };
    }
    let d = max_depth - 1;
    let sub = |s: &mut RandomStream| Box::new(random_ast(s, labels, d));
    match stream.gen_range(0..10) {
        0 => Ast::Add(sub(stream), sub(stream)),
        1 => Ast::Neg(sub(stream)),
        2 => Ast::SymMul(sub(stream), sub(stream)),
        3 => Ast::Star(sub(stream), sub(stream)),
        4 => Ast::Poisson(sub(stream), sub(stream)),
        5 => Ast::Commutator(sub(stream), sub(stream)),
        6 => Ast::Theta(sub(stream)),
        7 => Ast::ThetaW(sub(stream)),
        8 => Ast::Pi0(sub(stream)),
        _ => {
            let base = sub(stream);
            Ast::Pow(base, stream.gen_range(0..=4))
        }
    }
}

/// Largest total degree the oracle accepts.
pub const ORACLE_DEGREE_CAP: u32 = 8;

/// `a ⋆ b` for monomials by brute force: both are expanded into labeled
/// factor lists, and every subset `J` of the left factors together with
/// every injection `σ : J → factors(b)` contributes
/// `hbar^|J| Π_{j∈J} B[a_j][b_σ(j)]` times the product of the unused factors.
pub fn injection_oracle<S: Scalar>(
    form: &PairingForm<S>,
    a: &Monomial,
    b: &Monomial,
) -> Result<AlgebraElement<S>, AlgebraError> {
    let dim = form.dim();
    for m in [a, b] {
        if m.dim() != dim {
            return Err(AlgebraError::DimensionMismatch { left: dim, right: m.dim() });
        }
    }
    if a.degree() + b.degree() > ORACLE_DEGREE_CAP {
        return Err(AlgebraError::Inconsistent(format!(
            "injection oracle is capped at total degree {ORACLE_DEGREE_CAP}"
        )));
    }
    let left = a.factors();
    let right = b.factors();
    let mut out = AlgebraElement::zero(dim);
    for mask in 0u32..(1 << left.len()) {
        let chosen: Vec<usize> = (0..left.len()).filter(|&j| mask & (1 << j) != 0).collect();
        let mut image = Vec::with_capacity(chosen.len());
        let mut taken = vec![false; right.len()];
        injections(&chosen, &mut image, &mut taken, &mut |image, taken| {
            let mut weight = S::one();
            for (&j, &t) in chosen.iter().zip(image) {
                weight = weight * form.get(left[j], right[t]).clone();
            }
            let rest = (0..left.len())
                .filter(|j| mask & (1 << j) == 0)
                .map(|j| left[j])
                .chain((0..right.len()).filter(|&t| !taken[t]).map(|t| right[t]));
            out.add_term(Monomial::from_factors(dim, rest), &HPoly::monomial(chosen.len() as u32, weight));
        });
    }
    Ok(out)
}

fn injections(
    chosen: &[usize],
    image: &mut Vec<usize>,
    taken: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[usize], &[bool]),
) {
    if image.len() == chosen.len() {
        emit(image, taken);
        return;
    }
    for t in 0..taken.len() {
        if taken[t] {
            continue;
        }
        taken[t] = true;
        image.push(t);
        injections(chosen, image, taken, emit);
        image.pop();
        taken[t] = false;
    }
}

/// Tolerances used by the suites.
pub mod tolerance {
    /// Float-backend algebra identities.
    pub const ALGEBRA: f64 = 1e-10;
    /// Commutation relations and Wick rewrites.
    pub const OPERATOR: f64 = 1e-10;
    /// Ordering morphisms.
    pub const ORDERING: f64 = 1e-9;
}

/// `max |a − b|` over all coefficients is at most `tol`.
pub fn approx_eq<S: Scalar>(a: &AlgebraElement<S>, b: &AlgebraElement<S>, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

/// Converts exact data to the float backend.
pub fn to_float(a: &AlgebraElement<GaussRational>) -> AlgebraElement<Complex64> {
    a.convert(Scalar::to_c64)
}

pub fn form_to_float(form: &PairingForm<GaussRational>) -> PairingForm<Complex64> {
    PairingForm::from_fn(form.name(), form.dim(), |r, s| form.get(r, s).to_c64())
}
