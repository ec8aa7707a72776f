use super::scalar::Scalar;
use super::AlgebraError;

/// Bilinear form on the mode space: the only datum a contraction star
/// product consumes. No symmetry is assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingForm<S: Scalar> {
    name: String,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> PairingForm<S> {
    pub fn new(name: impl Into<String>, rows: Vec<Vec<S>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(AlgebraError::DimensionMismatch { left: n, right: bad.len() });
        }
        Ok(PairingForm { name: name.into(), rows })
    }

    pub fn from_fn(name: impl Into<String>, dim: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let rows = (0..dim).map(|r| (0..dim).map(|s| f(r, s)).collect()).collect();
        PairingForm { name: name.into(), rows }
    }

    pub fn zero(name: impl Into<String>, dim: usize) -> Self {
        Self::from_fn(name, dim, |_, _| S::zero())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, s: usize) -> &S {
        &self.rows[r][s]
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(format!("{}^T", self.name), self.dim(), |r, s| self.rows[s][r].clone())
    }

    /// `B[r][s] - B[s][r]`, the generator-level Poisson bracket.
    pub fn antisymmetrized(&self) -> Self {
        Self::from_fn(format!("{}^A", self.name), self.dim(), |r, s| {
            self.rows[r][s].clone() - self.rows[s][r].clone()
        })
    }

    pub fn scaled(&self, c: &S) -> Self {
        Self::from_fn(self.name.clone(), self.dim(), |r, s| self.rows[r][s].clone() * c.clone())
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<(), AlgebraError> {
        if self.dim() != dim {
            return Err(AlgebraError::DimensionMismatch { left: self.dim(), right: dim });
        }
        Ok(())
    }
}
