use num_complex::Complex64;

use super::fields::{field_ops, FockRep};
use super::operator::FockOperator;
use super::FockError;
use crate::kleingordon::Fourier;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Pi,
    Phi,
}

/// Formal product `c · X₁(f₁) X₂(f₂) ⋯` of field operators.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorWord {
    pub coefficient: Complex64,
    pub factors: Vec<(FieldKind, Fourier)>,
}

impl OperatorWord {
    pub fn identity() -> Self {
        OperatorWord { coefficient: Complex64::new(1.0, 0.0), factors: Vec::new() }
    }

    pub fn new(coefficient: Complex64, factors: Vec<(FieldKind, Fourier)>) -> Self {
        OperatorWord { coefficient, factors }
    }

    /// All `π` factors precede all `φ` factors.
    pub fn is_normal_ordered(&self) -> bool {
        let first_phi = self.factors.iter().position(|(k, _)| *k == FieldKind::Phi);
        match first_phi {
            Some(p) => self.factors[p..].iter().all(|(k, _)| *k == FieldKind::Phi),
            None => true,
        }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    fn of_kind(&self, kind: FieldKind) -> Vec<&Fourier> {
        self.factors.iter().filter(|(k, _)| *k == kind).map(|(_, f)| f).collect()
    }

    pub fn matrix(&self, rep: &FockRep) -> Result<FockOperator, FockError> {
        let mut out = rep.identity();
        for (kind, f) in &self.factors {
            let (phi, pi) = field_ops(f, rep)?;
            out = out.compose(match kind {
                FieldKind::Phi => &phi,
                FieldKind::Pi => &pi,
            });
        }
        Ok(out.scale(self.coefficient))
    }
}

/// Expands `(π^a φ^b) · (π^c φ^d)` into normal-ordered words: every
/// partial injection `σ` from the left `φ` factors into the right `π`
/// factors contributes `i^{|σ|} Π ∫ f_j g_σ(j)` times
/// `π(a, c ∖ σ) φ(b ∖ dom σ, d)`.
pub fn wick_normal_form(left: &OperatorWord, right: &OperatorWord) -> Result<Vec<OperatorWord>, FockError> {
    if !left.is_normal_ordered() || !right.is_normal_ordered() {
        return Err(FockError::NotNormalOrdered);
    }
    let left_pi = left.of_kind(FieldKind::Pi);
    let left_phi = left.of_kind(FieldKind::Phi);
    let right_pi = right.of_kind(FieldKind::Pi);
    let right_phi = right.of_kind(FieldKind::Phi);

    let mut out = Vec::new();
    let mut used = vec![false; right_pi.len()];
    let mut unpaired = Vec::new();
    let base = left.coefficient * right.coefficient;
    expand(&left_phi, &right_pi, 0, base, &mut used, &mut unpaired, &mut |coeff, used, unpaired| {
        let mut factors = Vec::with_capacity(left.degree() + right.degree());
        factors.extend(left_pi.iter().map(|f| (FieldKind::Pi, (*f).clone())));
        factors.extend(
            right_pi.iter().zip(used).filter(|(_, u)| !**u).map(|(f, _)| (FieldKind::Pi, (*f).clone())),
        );
        factors.extend(unpaired.iter().map(|&j: &usize| (FieldKind::Phi, left_phi[j].clone())));
        factors.extend(right_phi.iter().map(|f| (FieldKind::Phi, (*f).clone())));
        out.push(OperatorWord { coefficient: coeff, factors });
    });
    Ok(out)
}

fn expand(
    phis: &[&Fourier],
    pis: &[&Fourier],
    idx: usize,
    coeff: Complex64,
    used: &mut Vec<bool>,
    unpaired: &mut Vec<usize>,
    emit: &mut dyn FnMut(Complex64, &[bool], &[usize]),
) {
    if idx == phis.len() {
        emit(coeff, used, unpaired);
        return;
    }
    unpaired.push(idx);
    expand(phis, pis, idx + 1, coeff, used, unpaired, emit);
    unpaired.pop();
    let i = Complex64::new(0.0, 1.0);
    for t in 0..pis.len() {
        if used[t] {
            continue;
        }
        used[t] = true;
        let w = i * phis[idx].integral_product(pis[t]);
        expand(phis, pis, idx + 1, coeff * w, used, unpaired, emit);
        used[t] = false;
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::kleingordon::{KGConfig, Trig};

    fn setup() -> (KGConfig, FockRep) {
        let cfg = KGConfig::new(1.0, 2.0 * PI, 1).unwrap();
        let rep = FockRep::new(&cfg, 6).unwrap();
        (cfg, rep)
    }

    fn sum_matrix(words: &[OperatorWord], rep: &FockRep) -> FockOperator {
        words.iter().fold(FockOperator::zero(rep.dim()), |acc, w| acc.add(&w.matrix(rep).unwrap()))
    }

    #[test]
    fn phi_times_pi() {
        let (cfg, rep) = setup();
        let f = Fourier::trig(Trig::Cos, 1, &cfg);
        let g = Fourier::trig(Trig::Cos, 1, &cfg).add(&Fourier::trig(Trig::Cos, 0, &cfg));
        let left = OperatorWord::new(Complex64::new(1.0, 0.0), vec![(FieldKind::Phi, f.clone())]);
        let right = OperatorWord::new(Complex64::new(1.0, 0.0), vec![(FieldKind::Pi, g.clone())]);
        let words = wick_normal_form(&left, &right).unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(words[0].factors, vec![(FieldKind::Pi, g.clone()), (FieldKind::Phi, f.clone())]);
        assert!(words[1].factors.is_empty());
        assert!((words[1].coefficient - Complex64::new(0.0, PI)).norm() < 1e-12);

        let direct = left.matrix(&rep).unwrap().compose(&right.matrix(&rep).unwrap());
        let guard = rep.space().guard_dim(4);
        assert!(direct.max_abs_diff_on(&sum_matrix(&words, &rep), guard) < 1e-10);
    }

    #[test]
    fn pi_times_pi_has_no_contraction() {
        let (cfg, _) = setup();
        let f = Fourier::trig(Trig::Sin, 1, &cfg);
        let w = OperatorWord::new(Complex64::new(1.0, 0.0), vec![(FieldKind::Pi, f.clone())]);
        let words = wick_normal_form(&w, &w).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].factors.len(), 2);
    }

    #[test]
    fn rejects_unordered_input() {
        let (cfg, _) = setup();
        let f = Fourier::trig(Trig::Cos, 0, &cfg);
        let bad = OperatorWord::new(
            Complex64::new(1.0, 0.0),
            vec![(FieldKind::Phi, f.clone()), (FieldKind::Pi, f.clone())],
        );
        assert!(matches!(wick_normal_form(&bad, &OperatorWord::identity()), Err(FockError::NotNormalOrdered)));
        assert!(OperatorWord::identity().is_normal_ordered());
    }
}
