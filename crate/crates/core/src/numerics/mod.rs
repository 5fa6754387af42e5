//! Dense complex linear algebra used by every other module.
//!
//! Everything here works on [`ComplexMatrix`] (a dense `nalgebra` matrix of
//! `Complex64`). The matrices that show up in practice are small (`2n x 2n`
//! with `n` a handful of modes), so the routines favour robustness over
//! asymptotic cost.

mod eigen;
mod expm;
mod jordan;
mod sylvester;

pub use eigen::{cluster_values, eig, eig_with_tol, eigen_decompose, Eigen, EigenClusters};
pub use expm::expm;
pub use jordan::{jordan_structure, JordanEntry, JordanSpec};
pub use sylvester::{solve_sylvester, SylvesterSolution};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Default relative tolerance for grouping eigenvalues.
pub const CLUSTER_TOL_REL: f64 = 1e-8;

/// Default relative singular-value threshold for rank decisions.
pub const RANK_TOL_REL: f64 = 1e-10;

pub(crate) const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Builds a matrix from row-major `(re, im)` pairs.
pub fn from_rows(rows: &[&[C64]]) -> ComplexMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    DMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn ensure_finite(a: &ComplexMatrix) -> Result<()> {
    if a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn ensure_square(a: &ComplexMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    ensure_finite(a)
}

/// Largest singular value.
pub fn spectral_norm(a: &ComplexMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    singular_values(a).iter().cloned().fold(0.0, f64::max)
}

/// Singular values, sorted descending, by one-sided Jacobi rotations.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut u = if a.nrows() >= a.ncols() {
        a.clone()
    } else {
        a.adjoint()
    };
    let n = u.ncols();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = u.column(p).norm_squared();
                let beta = u.column(q).norm_squared();
                let gamma: C64 = u.column(p).dotc(&u.column(q));
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // make the inner product real, then rotate
                let phase = gamma.conj() / g;
                for i in 0..u.nrows() {
                    u[(i, q)] *= phase;
                }
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..u.nrows() {
                    let x = u[(i, p)];
                    let y = u[(i, q)];
                    u[(i, p)] = x * cs - y * sn;
                    u[(i, q)] = x * sn + y * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut s: Vec<f64> = (0..n).map(|j| u.column(j).norm()).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Induced 1-norm (maximum absolute column sum).
pub fn norm1(a: &ComplexMatrix) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn frobenius(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Entrywise complex conjugate (no transpose).
pub fn conj(a: &ComplexMatrix) -> ComplexMatrix {
    a.map(|z| z.conj())
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    DMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Exchange matrix with ones on the anti-diagonal.
pub fn exchange(n: usize) -> ComplexMatrix {
    DMatrix::from_fn(n, n, |i, j| if i + j + 1 == n { re(1.0) } else { re(0.0) })
}

/// Stacks four equally sized blocks into `[[a, b], [c, d]]`.
pub fn block2(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    cm: &ComplexMatrix,
    d: &ComplexMatrix,
) -> ComplexMatrix {
    let n = a.nrows();
    let m = a.ncols();
    let mut out = DMatrix::zeros(n + cm.nrows(), m + b.ncols());
    out.view_mut((0, 0), (n, m)).copy_from(a);
    out.view_mut((0, m), (n, b.ncols())).copy_from(b);
    out.view_mut((n, 0), (cm.nrows(), m)).copy_from(cm);
    out.view_mut((n, m), (d.nrows(), d.ncols())).copy_from(d);
    out
}

/// Max-entry distance between two matrices of the same shape.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
