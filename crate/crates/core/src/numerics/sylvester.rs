use nalgebra::{DMatrix, DVector};

use super::{eigen_decompose, frobenius, kron, spectral_norm, ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Relative bound on `min |α_i + β_j|` below which the system is treated as
/// singular.
pub const SINGULAR_TOL_REL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SylvesterSolution {
    pub z: ComplexMatrix,
    /// Frobenius norm of `A Z + Z B - C`.
    pub residual: f64,
    /// Smallest `|α_i + β_j|` over eigenvalues of `A` and `B`.
    pub min_sum: f64,
}

/// Solves `A Z + Z B = C` through the Kronecker form
/// `(I ⊗ A + Bᵀ ⊗ I) vec(Z) = vec(C)` with column-stacked `vec`.
///
/// The dense system has dimension `m n`, so the cost grows like `(m n)^3`;
/// this is meant for the small matrices of few-mode models.
pub fn solve_sylvester(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<SylvesterSolution> {
    let m = a.nrows();
    let n = b.nrows();
    super::ensure_square(a)?;
    super::ensure_square(b)?;
    super::ensure_finite(c)?;
    if c.nrows() != m || c.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "C is {}x{}, expected {m}x{n}",
            c.nrows(),
            c.ncols()
        )));
    }
    if m == 0 || n == 0 {
        return Ok(SylvesterSolution {
            z: DMatrix::zeros(m, n),
            residual: 0.0,
            min_sum: f64::INFINITY,
        });
    }

    let alpha = eigen_decompose(a)?.values;
    let beta = eigen_decompose(b)?.values;
    let min_sum = alpha
        .iter()
        .flat_map(|x| beta.iter().map(move |y| (x + y).norm()))
        .fold(f64::INFINITY, f64::min);
    let scale = spectral_norm(a) + spectral_norm(b);
    if min_sum <= SINGULAR_TOL_REL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NoUniqueSolution { min_sum });
    }

    let im = DMatrix::<C64>::identity(m, m);
    let in_ = DMatrix::<C64>::identity(n, n);
    let big = kron(&in_, a) + kron(&b.transpose(), &im);
    let rhs = DVector::from_column_slice(c.as_slice());
    let sol = big
        .lu()
        .solve(&rhs)
        .ok_or(Error::NoUniqueSolution { min_sum })?;
    let z = DMatrix::from_column_slice(m, n, sol.as_slice());
    let residual = frobenius(&(a * &z + &z * b - c));
    Ok(SylvesterSolution { z, residual, min_sum })
}
