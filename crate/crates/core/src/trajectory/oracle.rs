//! Dense reference route: explicit site matrices, Kronecker products, and the
//! `d² × d²` generator exponentiated directly. Only practical for small `S`.

use nalgebra::{DMatrix, DVector};

use super::SpinModel;
use crate::error::{Error, Result};
use crate::numerics::{expm, kron, C64};

/// Largest joint dimension accepted by the dense superoperator.
pub const MAX_DENSE_DIM: usize = 25;

#[derive(Debug, Clone)]
pub struct DenseOperators {
    pub sz_a: DMatrix<C64>,
    pub sz_b: DMatrix<C64>,
    pub sp_a: DMatrix<C64>,
    pub sp_b: DMatrix<C64>,
    pub h: DMatrix<C64>,
    pub jumps: Vec<DMatrix<C64>>,
}

pub fn dense_operators(model: &SpinModel) -> DenseOperators {
    let s = model.s;
    let d1 = model.site_dim();
    let mvals: Vec<f64> = (0..d1).map(|k| s - k as f64).collect();
    let sz = DMatrix::from_fn(d1, d1, |i, j| {
        if i == j {
            C64::new(mvals[i], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let sp = DMatrix::from_fn(d1, d1, |i, j| {
        if i + 1 == j {
            let m = mvals[j];
            C64::new((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let id = DMatrix::<C64>::identity(d1, d1);
    let sp_a = kron(&sp, &id);
    let sp_b = kron(&id, &sp);
    let sm_b = sp_b.adjoint();
    let coupling = &sp_a * &sm_b;
    let h = (&coupling + coupling.adjoint()) * C64::new(model.g / (2.0 * s), 0.0);
    let jumps = vec![
        &sp_a * C64::new((model.gg / (2.0 * s)).sqrt(), 0.0),
        &sm_b * C64::new((model.gl / (2.0 * s)).sqrt(), 0.0),
    ];
    DenseOperators {
        sz_a: kron(&sz, &id),
        sz_b: kron(&id, &sz),
        sp_a,
        sp_b,
        h,
        jumps,
    }
}

/// Generator acting on column-stacked `vec(ρ)`, using
/// `vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ)`.
pub fn dense_superoperator(model: &SpinModel) -> Result<DMatrix<C64>> {
    let d = model.dim();
    if d > MAX_DENSE_DIM {
        return Err(Error::InvalidParameter(format!(
            "dense superoperator limited to dimension {MAX_DENSE_DIM}, got {d}"
        )));
    }
    let ops = dense_operators(model);
    let id = DMatrix::<C64>::identity(d, d);
    let mi = C64::new(0.0, -1.0);
    let mut l = (kron(&id, &ops.h) - kron(&ops.h.transpose(), &id)) * mi;
    for c in &ops.jumps {
        let cdc = c.adjoint() * c;
        l += kron(&c.map(|z| z.conj()), c) * C64::new(2.0, 0.0);
        l -= kron(&id, &cdc);
        l -= kron(&cdc.transpose(), &id);
    }
    Ok(l)
}

/// `ρ(t)` for each time by exponentiating the dense generator.
pub fn oracle_evolve(model: &SpinModel, rho0: &DMatrix<C64>, times: &[f64]) -> Result<Vec<DMatrix<C64>>> {
    let l = dense_superoperator(model)?;
    let d = model.dim();
    let v0 = DVector::from_column_slice(rho0.as_slice());
    times
        .iter()
        .map(|&t| {
            let v = expm(&(&l * C64::new(t, 0.0)))? * &v0;
            Ok(DMatrix::from_column_slice(d, d, v.as_slice()))
        })
        .collect()
}
