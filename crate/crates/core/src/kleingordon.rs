//! Klein–Gordon modes on a spatial circle of circumference `L`.
//!
//! A mode is `ψ(t, x) = S(k x) · T(μ(k) t)` with `S, T ∈ {cos, sin}`,
//! `k = 2π n / L` and `μ(k) = sqrt(k² + m²)`; it solves
//! `∂²_t ψ − ∂²_x ψ + m² ψ = 0`. Everything the algebra needs from a mode
//! is its Cauchy data on `t = 0`, which lives in the span of
//! `e^{i k_n x}`, `|n| ≤ kmax`, so every integral below is a finite sum.
//!
//! Fourier convention: `f̂(n) = L^{-1/2} ∫₀ᴸ e^{-i k_n x} f(x) dx`, so that
//! `∫ f g = Σ_n f̂(n) ĝ(−n)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::symalg::{AlgebraElement, ModeSpace, PairingForm, Scalar};

/// Global sign of the observable functional `I(ψ)(φ) = ∫ (∂_tψ φ − ψ ∂_tφ)`.
pub const OBSERVABLE_SIGN: f64 = 1.0;

/// Agreement required between closed-form and quadrature integrals.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KgError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("k index {index} outside [-{kmax}, {kmax}]")]
    IndexOutOfRange { index: i32, kmax: i32 },
    #[error("sin spatial profile with k index 0 vanishes identically")]
    ZeroMode,
    #[error("analytic integral {analytic} and quadrature {quadrature} disagree")]
    QuadratureMismatch { analytic: f64, quadrature: f64 },
    #[error("observable input depends on hbar")]
    HbarDependent,
    #[error("unknown mode label `{0}`")]
    UnknownLabel(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct KGConfig {
    pub mass: f64,
    pub length: f64,
    pub kmax: i32,
    pub quadrature_points: usize,
}

impl KGConfig {
    /// Validated configuration with the default quadrature density
    /// `4 (2 kmax + 1)`.
    pub fn new(mass: f64, length: f64, kmax: i32) -> Result<Self, KgError> {
        let cfg = KGConfig {
            mass,
            length,
            kmax,
            quadrature_points: Self::min_quadrature(kmax.max(0)),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn min_quadrature(kmax: i32) -> usize {
        4 * (2 * kmax as usize + 1)
    }

    pub fn validate(&self) -> Result<(), KgError> {
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(KgError::Config(format!("mass must be positive, got {}", self.mass)));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(KgError::Config(format!("L must be positive, got {}", self.length)));
        }
        if self.kmax < 0 {
            return Err(KgError::Config(format!("kmax must be >= 0, got {}", self.kmax)));
        }
        if self.quadrature_points < Self::min_quadrature(self.kmax) {
            return Err(KgError::Config(format!(
                "quadrature_points must be >= {}, got {}",
                Self::min_quadrature(self.kmax),
                self.quadrature_points
            )));
        }
        Ok(())
    }

    /// Number of Fourier indices `2 kmax + 1`.
    pub fn mode_count(&self) -> usize {
        2 * self.kmax as usize + 1
    }

    pub fn wavenumber(&self, k_index: i32) -> f64 {
        2.0 * PI * k_index as f64 / self.length
    }

    fn check_index(&self, k_index: i32) -> Result<(), KgError> {
        if k_index.abs() > self.kmax {
            return Err(KgError::IndexOutOfRange { index: k_index, kmax: self.kmax });
        }
        Ok(())
    }
}

/// Dispersion relation `μ(k) = sqrt(k² + m²)`.
pub fn mu(k_index: i32, cfg: &KGConfig) -> Result<f64, KgError> {
    cfg.check_index(k_index)?;
    Ok(mu_unchecked(k_index, cfg))
}

fn mu_unchecked(k_index: i32, cfg: &KGConfig) -> f64 {
    cfg.wavenumber(k_index).hypot(cfg.mass)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trig {
    Cos,
    Sin,
}

impl Trig {
    fn eval(self, x: f64) -> f64 {
        match self {
            Trig::Cos => x.cos(),
            Trig::Sin => x.sin(),
        }
    }

    /// d/dx of `trig(x)`.
    fn deriv(self, x: f64) -> f64 {
        match self {
            Trig::Cos => -x.sin(),
            Trig::Sin => x.cos(),
        }
    }

    fn second_deriv(self, x: f64) -> f64 {
        match self {
            Trig::Cos => -x.cos(),
            Trig::Sin => -x.sin(),
        }
    }

    fn letter(self) -> char {
        match self {
            Trig::Cos => 'c',
            Trig::Sin => 's',
        }
    }
}

impl fmt::Display for Trig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trig::Cos => "cos",
            Trig::Sin => "sin",
        })
    }
}

/// `ψ(t, x) = spatial(k x) · temporal(μ t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KGMode {
    pub k_index: i32,
    pub spatial: Trig,
    pub temporal: Trig,
}

impl KGMode {
    pub fn new(k_index: i32, spatial: Trig, temporal: Trig, cfg: &KGConfig) -> Result<Self, KgError> {
        cfg.check_index(k_index)?;
        if k_index == 0 && spatial == Trig::Sin {
            return Err(KgError::ZeroMode);
        }
        Ok(KGMode { k_index, spatial, temporal })
    }

    /// `c0`/`s0` for the spatially constant modes (temporal letter), and
    /// `<temporal><spatial><n>` otherwise, with negative `n` written `m<|n|>`.
    pub fn label(&self) -> String {
        if self.k_index == 0 {
            return format!("{}0", self.temporal.letter());
        }
        let n = if self.k_index < 0 { format!("m{}", -self.k_index) } else { self.k_index.to_string() };
        format!("{}{}{}", self.temporal.letter(), self.spatial.letter(), n)
    }

    pub fn mu(&self, cfg: &KGConfig) -> f64 {
        mu_unchecked(self.k_index, cfg)
    }

    pub fn value(&self, t: f64, x: f64, cfg: &KGConfig) -> f64 {
        let k = cfg.wavenumber(self.k_index);
        self.spatial.eval(k * x) * self.temporal.eval(self.mu(cfg) * t)
    }

    /// `∂ψ/∂t`.
    pub fn dt(&self, t: f64, x: f64, cfg: &KGConfig) -> f64 {
        let k = cfg.wavenumber(self.k_index);
        let w = self.mu(cfg);
        self.spatial.eval(k * x) * w * self.temporal.deriv(w * t)
    }

    /// `∂²ψ/∂t² − ∂²ψ/∂x² + m² ψ`.
    pub fn residual(&self, t: f64, x: f64, cfg: &KGConfig) -> f64 {
        let k = cfg.wavenumber(self.k_index);
        let w = self.mu(cfg);
        let dtt = self.spatial.eval(k * x) * w * w * self.temporal.second_deriv(w * t);
        let dxx = k * k * self.spatial.second_deriv(k * x) * self.temporal.eval(w * t);
        dtt - dxx + cfg.mass * cfg.mass * self.value(t, x, cfg)
    }

    /// Value of `temporal` at `t = 0` and of its `t`-derivative there.
    fn temporal_at_zero(&self, cfg: &KGConfig) -> (f64, f64) {
        match self.temporal {
            Trig::Cos => (1.0, 0.0),
            Trig::Sin => (0.0, self.mu(cfg)),
        }
    }

    /// Fourier data of `ψ(0, ·)` and `∂_tψ(0, ·)`.
    pub fn cauchy(&self, cfg: &KGConfig) -> CauchyData {
        let profile = Fourier::trig(self.spatial, self.k_index, cfg);
        let (v, d) = self.temporal_at_zero(cfg);
        CauchyData { value: profile.scale(Complex64::new(v, 0.0)), tderiv: profile.scale(Complex64::new(d, 0.0)) }
    }
}

/// Trigonometric polynomial on the circle, stored as its Fourier
/// coefficients for `n = -kmax..=kmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fourier {
    kmax: i32,
    length: f64,
    coeffs: Vec<Complex64>,
}

impl Fourier {
    pub fn zero(cfg: &KGConfig) -> Self {
        Fourier { kmax: cfg.kmax, length: cfg.length, coeffs: vec![Complex64::new(0.0, 0.0); cfg.mode_count()] }
    }

    /// Coefficients listed from `n = -kmax` upward.
    pub fn from_coeffs(cfg: &KGConfig, coeffs: Vec<Complex64>) -> Result<Self, KgError> {
        if coeffs.len() != cfg.mode_count() {
            return Err(KgError::Config(format!(
                "expected {} Fourier coefficients, got {}",
                cfg.mode_count(),
                coeffs.len()
            )));
        }
        Ok(Fourier { kmax: cfg.kmax, length: cfg.length, coeffs })
    }

    /// `cos(k_n x)` or `sin(k_n x)`.
    pub fn trig(kind: Trig, k_index: i32, cfg: &KGConfig) -> Self {
        let mut f = Self::zero(cfg);
        let root = cfg.length.sqrt();
        match (kind, k_index) {
            (Trig::Cos, 0) => f.set(0, Complex64::new(root, 0.0)),
            (Trig::Sin, 0) => {}
            (Trig::Cos, n) => {
                f.set(n, Complex64::new(root / 2.0, 0.0));
                f.set(-n, Complex64::new(root / 2.0, 0.0));
            }
            (Trig::Sin, n) => {
                f.set(n, Complex64::new(0.0, -root / 2.0));
                f.set(-n, Complex64::new(0.0, root / 2.0));
            }
        }
        f
    }

    pub fn kmax(&self) -> i32 {
        self.kmax
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, n: i32) -> Complex64 {
        if n.abs() > self.kmax {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[(n + self.kmax) as usize]
    }

    fn set(&mut self, n: i32, c: Complex64) {
        self.coeffs[(n + self.kmax) as usize] = c;
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> {
        -self.kmax..=self.kmax
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Fourier { coeffs: self.coeffs.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn add(&self, other: &Fourier) -> Self {
        Fourier { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    /// Coefficientwise map with access to the index.
    pub fn map(&self, f: impl Fn(i32, Complex64) -> Complex64) -> Self {
        let coeffs = self.indices().map(|n| f(n, self.get(n))).collect();
        Fourier { coeffs, ..self.clone() }
    }

    /// `f̂(−n) = conj f̂(n)` within `tol`, i.e. the function is real.
    pub fn is_real(&self, tol: f64) -> bool {
        self.indices().all(|n| (self.get(-n) - self.get(n).conj()).norm() <= tol)
    }

    /// `∫₀ᴸ f g dx = Σ f̂(n) ĝ(−n)`.
    pub fn integral_product(&self, other: &Fourier) -> Complex64 {
        self.indices().map(|n| self.get(n) * other.get(-n)).sum()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let norm = 1.0 / self.length.sqrt();
        self.indices()
            .map(|n| self.get(n) * Complex64::from_polar(1.0, 2.0 * PI * n as f64 * x / self.length))
            .sum::<Complex64>()
            * norm
    }
}

/// `ψ(0, ·)` and `∂ψ/∂t(0, ·)` in Fourier form.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyData {
    pub value: Fourier,
    pub tderiv: Fourier,
}

/// Pairwise (cascade) summation; the order of additions depends only on
/// the slice length.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// `∫₀ᴸ S₁(k_a x) S₂(k_b x) dx` by product-to-sum on integer indices.
fn trig_integral(s1: Trig, a: i32, s2: Trig, b: i32, length: f64) -> f64 {
    let delta = |n: i32| if n == 0 { length } else { 0.0 };
    match (s1, s2) {
        (Trig::Cos, Trig::Cos) => 0.5 * (delta(a - b) + delta(a + b)),
        (Trig::Sin, Trig::Sin) => 0.5 * (delta(a - b) - delta(a + b)),
        _ => 0.0,
    }
}

fn sigma_analytic(psi: &KGMode, phi: &KGMode, cfg: &KGConfig) -> f64 {
    let (_, dpsi) = psi.temporal_at_zero(cfg);
    let (vphi, _) = phi.temporal_at_zero(cfg);
    if dpsi == 0.0 || vphi == 0.0 {
        return 0.0;
    }
    dpsi * vphi * trig_integral(psi.spatial, psi.k_index, phi.spatial, phi.k_index, cfg.length)
}

fn sigma_quadrature(psi: &KGMode, phi: &KGMode, cfg: &KGConfig) -> f64 {
    let n = cfg.quadrature_points;
    let h = cfg.length / n as f64;
    let samples: Vec<f64> = (0..n)
        .map(|j| {
            let x = j as f64 * h;
            psi.dt(0.0, x, cfg) * phi.value(0.0, x, cfg)
        })
        .collect();
    h * pairwise_sum(&samples)
}

/// `B[ψ][φ] = ∫₀ᴸ ∂_tψ(0, x) φ(0, x) dx`, computed in closed form and by
/// the trapezoidal rule; the two must agree.
pub fn sigma_pairing(psi: &KGMode, phi: &KGMode, cfg: &KGConfig) -> Result<f64, KgError> {
    cfg.check_index(psi.k_index)?;
    cfg.check_index(phi.k_index)?;
    let analytic = sigma_analytic(psi, phi, cfg);
    let quadrature = sigma_quadrature(psi, phi, cfg);
    let scale = analytic.abs().max(quadrature.abs()).max(cfg.length);
    if (analytic - quadrature).abs() > QUADRATURE_TOLERANCE * scale {
        return Err(KgError::QuadratureMismatch { analytic, quadrature });
    }
    Ok(analytic)
}

/// `{ψ, φ} = B[ψ][φ] − B[φ][ψ]`.
pub fn poisson_pairing(psi: &KGMode, phi: &KGMode, cfg: &KGConfig) -> Result<f64, KgError> {
    Ok(sigma_pairing(psi, phi, cfg)? - sigma_pairing(phi, psi, cfg)?)
}

/// A list of modes bound to generator labels.
#[derive(Clone, Debug, PartialEq)]
pub struct KgModeSet {
    space: ModeSpace,
    modes: Vec<KGMode>,
}

impl KgModeSet {
    pub fn new(modes: Vec<KGMode>) -> Result<Self, KgError> {
        let space = ModeSpace::new(modes.iter().map(KGMode::label))
            .map_err(|e| KgError::Config(e.to_string()))?;
        Ok(KgModeSet { space, modes })
    }

    /// Every mode with `|k_index| ≤ kmax`, ordered by index, then
    /// temporal, then spatial profile.
    pub fn full(cfg: &KGConfig) -> Self {
        let mut modes = Vec::new();
        for n in -cfg.kmax..=cfg.kmax {
            for temporal in [Trig::Cos, Trig::Sin] {
                for spatial in [Trig::Cos, Trig::Sin] {
                    if let Ok(m) = KGMode::new(n, spatial, temporal, cfg) {
                        modes.push(m);
                    }
                }
            }
        }
        Self::new(modes).expect("labels are distinct")
    }

    /// Sub-selection by labels, in the given order.
    pub fn select(&self, labels: &[&str]) -> Result<Self, KgError> {
        let modes = labels
            .iter()
            .map(|l| {
                self.space
                    .index_of(l)
                    .map(|i| self.modes[i])
                    .ok_or_else(|| KgError::UnknownLabel(l.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(modes)
    }

    pub fn space(&self) -> &ModeSpace {
        &self.space
    }

    pub fn modes(&self) -> &[KGMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Tab-separated table `label  k_index  spatial  temporal  mu`.
    pub fn table(&self, cfg: &KGConfig) -> String {
        let mut out = String::from("label\tk_index\tspatial\ttemporal\tmu\n");
        for m in &self.modes {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{:.12}\n",
                m.label(),
                m.k_index,
                m.spatial,
                m.temporal,
                m.mu(cfg)
            ));
        }
        out
    }
}

/// The covariant pairing `B` over a mode set.
pub fn sigma_form(set: &KgModeSet, cfg: &KGConfig) -> Result<PairingForm<Complex64>, KgError> {
    let mut rows = Vec::with_capacity(set.len());
    for psi in set.modes() {
        let row = set
            .modes()
            .iter()
            .map(|phi| sigma_pairing(psi, phi, cfg).map(|v| Complex64::new(v, 0.0)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(PairingForm::new("sigma", rows).expect("square"))
}

/// The Wick pairing `W` over a mode set.
pub fn wick_form(set: &KgModeSet, cfg: &KGConfig) -> PairingForm<Complex64> {
    let data: Vec<_> = set.modes().iter().map(|m| wick_coefficients(m, cfg)).collect();
    PairingForm::from_fn("wick", set.len(), |r, s| wick_kernel(&data[r], &data[s], cfg))
}

/// `I(Ψ)(φ)`: for each monomial `ψ₁⊙⋯⊙ψ_k`,
/// `Σ_{I} (−1)^{|I|} Π_{i∈I} ∫ψ_i ∂_tφ · Π_{j∉I} ∫∂_tψ_j φ`.
pub fn eval_observable<S: Scalar>(
    psi: &AlgebraElement<S>,
    set: &KgModeSet,
    phi: &KGMode,
    cfg: &KGConfig,
) -> Result<Complex64, KgError> {
    if psi.dim() != set.len() {
        return Err(KgError::Config(format!(
            "element has {} modes, mode set has {}",
            psi.dim(),
            set.len()
        )));
    }
    if psi.hbar_degree().unwrap_or(0) > 0 {
        return Err(KgError::HbarDependent);
    }
    let forward: Vec<f64> = set.modes().iter().map(|m| sigma_pairing(m, phi, cfg)).collect::<Result<_, _>>()?;
    let backward: Vec<f64> = set.modes().iter().map(|m| sigma_pairing(phi, m, cfg)).collect::<Result<_, _>>()?;
    let mut total = Complex64::new(0.0, 0.0);
    for (m, c) in psi.terms() {
        let factors = m.factors();
        let k = factors.len();
        let mut sum = 0.0;
        for mask in 0u64..(1u64 << k) {
            let mut prod = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            for (pos, &f) in factors.iter().enumerate() {
                prod *= if mask & (1 << pos) != 0 { backward[f] } else { forward[f] };
            }
            sum += prod;
        }
        total += c.coeff(0).to_c64() * sum * OBSERVABLE_SIGN.powi(k as i32);
    }
    Ok(total)
}

/// Normal-ordering coefficient functions of a mode.
#[derive(Clone, Debug, PartialEq)]
pub struct WickCoefficients {
    /// `F = (∂_tψ̂ / μ − i ψ̂) / √2`, fed to the annihilation part.
    pub f: Fourier,
    /// `G = (∂_tψ̂ / μ + i ψ̂) / √2`, fed to the creation part.
    pub g: Fourier,
}

pub fn wick_coefficients(psi: &KGMode, cfg: &KGConfig) -> WickCoefficients {
    wick_coefficients_of(&psi.cauchy(cfg), cfg)
}

pub fn wick_coefficients_of(data: &CauchyData, cfg: &KGConfig) -> WickCoefficients {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::new(0.0, 1.0);
    let build = |sign: f64| {
        data.tderiv.map(|n, d| {
            let v = data.value.get(n);
            (d / mu_unchecked(n, cfg) + sign * i * v) * s
        })
    };
    WickCoefficients { f: build(-1.0), g: build(1.0) }
}

/// `Σ_n μ(n) F_ψ(−n) G_φ(n)`, the scalar `[a(Fψ), a†(Gφ)]`.
fn wick_kernel(psi: &WickCoefficients, phi: &WickCoefficients, cfg: &KGConfig) -> Complex64 {
    psi.f
        .indices()
        .map(|n| mu_unchecked(n, cfg) * psi.f.get(-n) * phi.g.get(n))
        .sum()
}

/// `W[ψ][φ]`, the contraction weight of the Wick-ordered star product.
pub fn wick_pairing(psi: &KGMode, phi: &KGMode, cfg: &KGConfig) -> Result<Complex64, KgError> {
    cfg.check_index(psi.k_index)?;
    cfg.check_index(phi.k_index)?;
    Ok(wick_kernel(&wick_coefficients(psi, cfg), &wick_coefficients(phi, cfg), cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::{sym_mul, GaussRational};

    fn cfg() -> KGConfig {
        KGConfig::new(1.0, 2.0 * PI, 2).unwrap()
    }

    fn mode(n: i32, s: Trig, t: Trig) -> KGMode {
        KGMode::new(n, s, t, &cfg()).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(KGConfig::new(0.0, 1.0, 1).is_err());
        assert!(KGConfig::new(1.0, -1.0, 1).is_err());
        assert!(KGConfig::new(1.0, 1.0, -1).is_err());
        let mut c = cfg();
        c.quadrature_points = 19;
        assert!(c.validate().is_err());
        c.quadrature_points = 20;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(0, &cfg()).unwrap(), 1.0);
        assert!((mu(1, &cfg()).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let heavy = KGConfig::new(2.0, 2.0 * PI, 1).unwrap();
        assert_eq!(mu(0, &heavy).unwrap(), 2.0);
        assert!(matches!(mu(3, &cfg()), Err(KgError::IndexOutOfRange { .. })));
    }

    #[test]
    fn rejects_vanishing_mode() {
        assert_eq!(KGMode::new(0, Trig::Sin, Trig::Cos, &cfg()), Err(KgError::ZeroMode));
    }

    #[test]
    fn labels() {
        assert_eq!(mode(0, Trig::Cos, Trig::Sin).label(), "s0");
        assert_eq!(mode(0, Trig::Cos, Trig::Cos).label(), "c0");
        assert_eq!(mode(-2, Trig::Sin, Trig::Cos).label(), "csm2");
        assert_eq!(KgModeSet::full(&cfg()).len(), 2 + 4 * 4);
    }

    #[test]
    fn sigma_pairing_examples() {
        let c = cfg();
        let s0 = mode(0, Trig::Cos, Trig::Sin);
        let c0 = mode(0, Trig::Cos, Trig::Cos);
        assert!((sigma_pairing(&s0, &c0, &c).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert_eq!(sigma_pairing(&c0, &s0, &c).unwrap(), 0.0);
        let a = mode(1, Trig::Cos, Trig::Sin);
        let b = mode(2, Trig::Cos, Trig::Cos);
        assert_eq!(sigma_pairing(&a, &b, &c).unwrap(), 0.0);
        // sin(-x) sin(x) integrates to -L/2, times mu(1)
        let sp = mode(1, Trig::Sin, Trig::Sin);
        let sm = mode(-1, Trig::Sin, Trig::Cos);
        let expected = -PI * 2f64.sqrt();
        assert!((sigma_pairing(&sp, &sm, &c).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn poisson_pairing_examples() {
        let c = cfg();
        let s0 = mode(0, Trig::Cos, Trig::Sin);
        let c0 = mode(0, Trig::Cos, Trig::Cos);
        assert!((poisson_pairing(&s0, &c0, &c).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert_eq!(poisson_pairing(&s0, &s0, &c).unwrap(), 0.0);
        let cc = mode(1, Trig::Cos, Trig::Cos);
        let cs = mode(1, Trig::Sin, Trig::Cos);
        assert_eq!(poisson_pairing(&cc, &cs, &c).unwrap(), 0.0);
    }

    #[test]
    fn observable_examples() {
        let c = cfg();
        let set = KgModeSet::full(&c).select(&["s0", "c0", "ss1"]).unwrap();
        let phi = mode(0, Trig::Cos, Trig::Cos);
        let one = AlgebraElement::<GaussRational>::one(3);
        assert_eq!(eval_observable(&one, &set, &phi, &c).unwrap(), Complex64::new(1.0, 0.0));
        let s0 = AlgebraElement::<GaussRational>::generator(3, 0);
        let i1 = eval_observable(&s0, &set, &phi, &c).unwrap();
        assert!((i1.re - poisson_pairing(&set.modes()[0], &phi, &c).unwrap()).abs() < 1e-12);
        let ss1 = AlgebraElement::<GaussRational>::generator(3, 2);
        let prod = sym_mul(&s0, &ss1).unwrap();
        let lhs = eval_observable(&prod, &set, &phi, &c).unwrap();
        let rhs = i1 * eval_observable(&ss1, &set, &phi, &c).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
        assert_eq!(
            eval_observable(&AlgebraElement::<GaussRational>::hbar(3), &set, &phi, &c),
            Err(KgError::HbarDependent)
        );
    }

    #[test]
    fn wick_coefficient_examples() {
        let c = cfg();
        let r = (c.length / 2.0).sqrt();
        let w = wick_coefficients(&mode(0, Trig::Cos, Trig::Cos), &c);
        assert!((w.f.get(0) - Complex64::new(0.0, -r)).norm() < 1e-14);
        assert!((w.g.get(0) - Complex64::new(0.0, r)).norm() < 1e-14);
        assert!(w.f.indices().filter(|&n| n != 0).all(|n| w.f.get(n).norm() == 0.0));
        let w = wick_coefficients(&mode(0, Trig::Cos, Trig::Sin), &c);
        assert!((w.f.get(0) - Complex64::new(r, 0.0)).norm() < 1e-14);
        assert!((w.g.get(0) - Complex64::new(r, 0.0)).norm() < 1e-14);
        for m in KgModeSet::full(&c).modes() {
            let w = wick_coefficients(m, &c);
            for n in w.f.indices() {
                assert!((w.g.get(n) - w.f.get(-n).conj()).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn wick_pairing_examples() {
        let c = cfg();
        let set = KgModeSet::full(&c);
        for m in set.modes() {
            let w = wick_pairing(m, m, &c).unwrap();
            assert!(w.re >= 0.0 && w.im.abs() < 1e-12, "{} {w}", m.label());
        }
        let a = mode(1, Trig::Cos, Trig::Sin);
        let b = mode(2, Trig::Sin, Trig::Cos);
        assert_eq!(wick_pairing(&a, &b, &c).unwrap().norm(), 0.0);
        // W[s0][c0] = conj(G_s0(0)) G_c0(0) = i L / 2
        let w = wick_pairing(&mode(0, Trig::Cos, Trig::Sin), &mode(0, Trig::Cos, Trig::Cos), &c).unwrap();
        assert!((w - Complex64::new(0.0, PI)).norm() < 1e-12);
    }

    #[test]
    fn fourier_integral_matches_pointwise_quadrature() {
        let c = cfg();
        let f = Fourier::trig(Trig::Cos, 1, &c).add(&Fourier::trig(Trig::Sin, 2, &c).scale(Complex64::new(0.5, 0.0)));
        let g = Fourier::trig(Trig::Cos, 1, &c).add(&Fourier::trig(Trig::Cos, 0, &c));
        let n = 64;
        let h = c.length / n as f64;
        let quad: Complex64 = (0..n).map(|j| f.eval(j as f64 * h) * g.eval(j as f64 * h) * h).sum();
        assert!((quad - f.integral_product(&g)).norm() < 1e-12);
        assert!((f.integral_product(&g).re - PI).abs() < 1e-12);
        assert!(f.is_real(1e-14));
    }
}
