//! Ladder and field operators on the truncated Fock space.
//!
//! Fock mode `i` carries Fourier index `n = i − kmax`. With `b_n` the
//! standard mode lowering operator:
//!
//! * `a⁻(f) = Σ conj(f_n) b_n`, `a⁻(f)* = Σ f_n b_n†`
//! * `a(f) = a⁻(√μ Cf)`, `a†(f) = a⁻(√μ f)*`, with `Cf(n) = conj f(−n)`
//! * `φ_m(f) = (a(f̂/μ) + a†(f̂/μ)) / √2`, `π_m(f) = i (a†(f̂) − a(f̂)) / √2`

use num_complex::Complex64;

use super::operator::FockOperator;
use super::space::FockSpace;
use super::FockError;
use crate::kleingordon::{mu, Fourier, KGConfig};

/// Fock space together with the dispersion data of its modes.
#[derive(Clone, Debug)]
pub struct FockRep {
    space: FockSpace,
    cfg: KGConfig,
    mu: Vec<f64>,
}

impl FockRep {
    pub fn new(cfg: &KGConfig, ncap: u32) -> Result<Self, FockError> {
        cfg.validate()?;
        let mu = (-cfg.kmax..=cfg.kmax).map(|n| mu(n, cfg)).collect::<Result<Vec<_>, _>>()?;
        Ok(FockRep { space: FockSpace::new(cfg.mode_count(), ncap), cfg: cfg.clone(), mu })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn config(&self) -> &KGConfig {
        &self.cfg
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn kmax(&self) -> i32 {
        self.cfg.kmax
    }

    pub fn mu(&self, n: i32) -> f64 {
        self.mu[(n + self.cfg.kmax) as usize]
    }

    pub fn identity(&self) -> FockOperator {
        FockOperator::identity(self.dim())
    }

    fn check_len(&self, f: &[Complex64]) -> Result<(), FockError> {
        if f.len() != self.space.mode_count() {
            return Err(FockError::LengthMismatch { expected: self.space.mode_count(), got: f.len() });
        }
        Ok(())
    }

    fn check_fourier(&self, f: &Fourier) -> Result<(), FockError> {
        if f.kmax() != self.cfg.kmax {
            return Err(FockError::LengthMismatch {
                expected: self.space.mode_count(),
                got: f.coeffs().len(),
            });
        }
        Ok(())
    }
}

/// `a⁻(f) = Σ_i conj(f_i) b_i`.
pub fn a_minus(f: &[Complex64], space: &FockSpace) -> Result<FockOperator, FockError> {
    if f.len() != space.mode_count() {
        return Err(FockError::LengthMismatch { expected: space.mode_count(), got: f.len() });
    }
    let mut triplets = Vec::new();
    for col in 0..space.dim() {
        let state = space.state(col);
        for (i, &fi) in f.iter().enumerate() {
            let o = state[i];
            if o == 0 || fi == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut lowered = state.to_vec();
            lowered[i] -= 1;
            let row = space.index_of(&lowered).expect("lowered state is in the basis");
            triplets.push((row, col, fi.conj() * (o as f64).sqrt()));
        }
    }
    Ok(FockOperator::from_triplets(space.dim(), 1, triplets))
}

/// `a⁻(f)* = Σ_i f_i b_i†`; states pushed above the cap are dropped.
pub fn a_minus_star(f: &[Complex64], space: &FockSpace) -> Result<FockOperator, FockError> {
    if f.len() != space.mode_count() {
        return Err(FockError::LengthMismatch { expected: space.mode_count(), got: f.len() });
    }
    let mut triplets = Vec::new();
    for col in 0..space.dim() {
        let state = space.state(col);
        if space.occupation(col) >= space.ncap() {
            continue;
        }
        for (i, &fi) in f.iter().enumerate() {
            if fi == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut raised = state.to_vec();
            raised[i] += 1;
            let row = space.index_of(&raised).expect("raised state is under the cap");
            triplets.push((row, col, fi * ((state[i] + 1) as f64).sqrt()));
        }
    }
    Ok(FockOperator::from_triplets(space.dim(), 1, triplets))
}

/// `(a(f), a†(f))` for a mode-space function given by its values at
/// `n = −kmax..=kmax`.
pub fn ladder(f: &[Complex64], rep: &FockRep) -> Result<(FockOperator, FockOperator), FockError> {
    rep.check_len(f)?;
    let kmax = rep.kmax();
    let at = |n: i32| f[(n + kmax) as usize];
    let lower: Vec<Complex64> = (-kmax..=kmax).map(|n| at(-n).conj() * rep.mu(n).sqrt()).collect();
    let raise: Vec<Complex64> = (-kmax..=kmax).map(|n| at(n) * rep.mu(n).sqrt()).collect();
    Ok((a_minus(&lower, rep.space())?, a_minus_star(&raise, rep.space())?))
}

/// `a(f)` alone.
pub fn annihilator(f: &Fourier, rep: &FockRep) -> Result<FockOperator, FockError> {
    rep.check_fourier(f)?;
    Ok(ladder(f.coeffs(), rep)?.0)
}

/// `a†(f)` alone.
pub fn creator(f: &Fourier, rep: &FockRep) -> Result<FockOperator, FockError> {
    rep.check_fourier(f)?;
    Ok(ladder(f.coeffs(), rep)?.1)
}

/// Tolerance for the conjugate-symmetry check on field operator inputs.
const REALITY_TOLERANCE: f64 = 1e-12;

/// `(φ_m(f), π_m(f))` for a real function `f` on the circle.
pub fn field_ops(f: &Fourier, rep: &FockRep) -> Result<(FockOperator, FockOperator), FockError> {
    rep.check_fourier(f)?;
    if !f.is_real(REALITY_TOLERANCE * f.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max)) {
        return Err(FockError::NotReal);
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let over_mu = f.map(|n, c| c / rep.mu(n));
    let (a1, ad1) = ladder(over_mu.coeffs(), rep)?;
    let phi = a1.add(&ad1).scale(Complex64::new(s, 0.0));
    let (a2, ad2) = ladder(f.coeffs(), rep)?;
    let pi = ad2.sub(&a2).scale(Complex64::new(0.0, s));
    Ok((phi, pi))
}
