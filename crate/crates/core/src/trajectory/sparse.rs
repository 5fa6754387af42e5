use nalgebra::DMatrix;

use crate::numerics::C64;

/// Row-wise sparse square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOp {
    rows: Vec<Vec<(usize, C64)>>,
}

impl SparseOp {
    pub fn zeros(d: usize) -> Self {
        Self {
            rows: vec![Vec::new(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` at `(r, c)`.
    pub fn push(&mut self, r: usize, c: usize, v: C64) {
        match self.rows[r].iter_mut().find(|(k, _)| *k == c) {
            Some(e) => e.1 += v,
            None => {
                self.rows[r].push((c, v));
                self.rows[r].sort_by_key(|e| e.0);
            }
        }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[(usize, C64)] {
        &self.rows[r]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn add_scaled(&mut self, other: &SparseOp, s: C64) {
        for (r, row) in other.rows.iter().enumerate() {
            for &(c, v) in row {
                self.push(r, c, v * s);
            }
        }
    }

    pub fn adjoint(&self) -> SparseOp {
        let mut out = SparseOp::zeros(self.dim());
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                out.push(c, r, v.conj());
            }
        }
        out
    }

    /// `A† A`
    pub fn adjoint_times_self(&self) -> SparseOp {
        let adj = self.adjoint();
        let mut out = SparseOp::zeros(self.dim());
        for (r, row) in adj.rows.iter().enumerate() {
            for &(k, v) in row {
                for &(c, w) in &self.rows[k] {
                    out.push(r, c, v * w);
                }
            }
        }
        out
    }

    /// `√(‖A‖₁ ‖A‖_∞)`, an upper bound on the spectral norm.
    pub fn norm_bound(&self) -> f64 {
        let d = self.dim();
        let mut col = vec![0.0; d];
        let mut row_max: f64 = 0.0;
        for row in &self.rows {
            let mut s = 0.0;
            for &(c, v) in row {
                s += v.norm();
                col[c] += v.norm();
            }
            row_max = row_max.max(s);
        }
        let col_max = col.into_iter().fold(0.0, f64::max);
        (row_max * col_max).sqrt()
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m[(r, c)] += v;
            }
        }
        m
    }

    /// `out[i] = (A x)[i]` for each `i` in `rows`.
    #[inline]
    pub fn apply_rows(&self, x: &[C64], rows: &[usize], out: &mut [C64]) {
        for &i in rows {
            let mut acc = C64::new(0.0, 0.0);
            for &(k, v) in &self.rows[i] {
                acc += v * x[k];
            }
            out[i] = acc;
        }
    }
}
