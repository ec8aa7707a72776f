use num_complex::Complex64;

use super::space::FockSpace;

/// Sparse complex matrix on a [`FockSpace`] basis, stored by rows with
/// column-sorted entries.
///
/// `formal_degree` counts the ladder factors composed into the operator;
/// matrix elements are trustworthy only between states of occupation
/// `≤ ncap − formal_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
    formal_degree: u32,
}

impl FockOperator {
    pub fn zero(dim: usize) -> Self {
        FockOperator { dim, rows: vec![Vec::new(); dim], formal_degree: 0 }
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim).map(|i| vec![(i, Complex64::new(1.0, 0.0))]).collect();
        FockOperator { dim, rows, formal_degree: 0 }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed in
    /// input order.
    pub fn from_triplets(dim: usize, formal_degree: u32, triplets: Vec<(usize, usize, Complex64)>) -> Self {
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
        for (r, c, v) in triplets {
            rows[r].push((c, v));
        }
        for row in &mut rows {
            row.sort_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != Complex64::new(0.0, 0.0));
            *row = merged;
        }
        FockOperator { dim, rows, formal_degree }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn formal_degree(&self) -> u32 {
        self.formal_degree
    }

    pub fn with_formal_degree(mut self, d: u32) -> Self {
        self.formal_degree = d;
        self
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.rows[r]
            .binary_search_by_key(&c, |&(col, _)| col)
            .map(|i| self.rows[r][i].1)
            .unwrap_or_default()
    }

    pub fn row(&self, r: usize) -> &[(usize, Complex64)] {
        &self.rows[r]
    }

    fn merge_rows(
        a: &[(usize, Complex64)],
        b: &[(usize, Complex64)],
        sb: Complex64,
    ) -> Vec<(usize, Complex64)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i]);
                i += 1;
            } else if take_b {
                out.push((b[j].0, b[j].1 * sb));
                j += 1;
            } else {
                let v = a[i].1 + b[j].1 * sb;
                if v != Complex64::new(0.0, 0.0) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// `self + c · other`; the formal degree is the larger of the two.
    pub fn add_scaled(&self, other: &FockOperator, c: Complex64) -> FockOperator {
        assert_eq!(self.dim, other.dim, "operator dimensions differ");
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| Self::merge_rows(a, b, c)).collect();
        FockOperator { dim: self.dim, rows, formal_degree: self.formal_degree.max(other.formal_degree) }
    }

    pub fn add(&self, other: &FockOperator) -> FockOperator {
        self.add_scaled(other, Complex64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &FockOperator) -> FockOperator {
        self.add_scaled(other, Complex64::new(-1.0, 0.0))
    }

    pub fn scale(&self, c: Complex64) -> FockOperator {
        if c == Complex64::new(0.0, 0.0) {
            return FockOperator::zero(self.dim).with_formal_degree(self.formal_degree);
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|&(j, v)| (j, v * c)).collect()).collect();
        FockOperator { dim: self.dim, rows, formal_degree: self.formal_degree }
    }

    /// Operator product `self · other`; formal degrees add.
    pub fn compose(&self, other: &FockOperator) -> FockOperator {
        assert_eq!(self.dim, other.dim, "operator dimensions differ");
        let mut acc = vec![Complex64::new(0.0, 0.0); self.dim];
        let mut touched = vec![false; self.dim];
        let mut cols: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    if !touched[j] {
                        touched[j] = true;
                        cols.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            cols.sort_unstable();
            let mut out = Vec::with_capacity(cols.len());
            for &j in &cols {
                if acc[j] != Complex64::new(0.0, 0.0) {
                    out.push((j, acc[j]));
                }
                acc[j] = Complex64::new(0.0, 0.0);
                touched[j] = false;
            }
            cols.clear();
            rows.push(out);
        }
        FockOperator { dim: self.dim, rows, formal_degree: self.formal_degree + other.formal_degree }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &FockOperator) -> FockOperator {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn adjoint(&self) -> FockOperator {
        let mut triplets = Vec::with_capacity(self.nnz());
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                triplets.push((c, r, v.conj()));
            }
        }
        FockOperator::from_triplets(self.dim, self.formal_degree, triplets)
    }

    /// Largest `|self_uv − other_uv|` over basis states `u, v < guard_dim`.
    pub fn max_abs_diff_on(&self, other: &FockOperator, guard_dim: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..guard_dim.min(self.dim) {
            let merged = Self::merge_rows(&self.rows[r], &other.rows[r], Complex64::new(-1.0, 0.0));
            for (c, v) in merged {
                if c < guard_dim {
                    worst = worst.max(v.norm());
                }
            }
        }
        worst
    }

    /// Guard size for this operator's formal degree.
    pub fn guard_dim(&self, space: &FockSpace) -> usize {
        match space.ncap().checked_sub(self.formal_degree) {
            Some(n) => space.guard_dim(n),
            None => 0,
        }
    }
}
