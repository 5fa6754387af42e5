//! Quadratic bosonic models and their structure matrices.
//!
//! A model is `H = Σ H_ij a_i† a_j + Σ (K_ij a_i a_j + K̄_ij a_i† a_j†)` together
//! with bath operators `L_μ = l_μ·a + k_μ·a†`. Rates are folded into the bath
//! amplitudes, and the dissipator carries a factor two:
//! `D[L]ρ = 2LρL† − L†Lρ − ρL†L`.

mod file;
mod hp;
mod presets;

pub use file::{parse_model_file, ModelFile, ModelFileBath, ModelFileHp};
pub use hp::{hp_observable, n_from_sz, HpFrame, HpValue, Orientation, HP_VALIDITY_RATIO};
pub use presets::{preset, Preset, PresetModel, PresetParams};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{block2, conj, ComplexMatrix, C64, I};

/// Absolute entrywise tolerance for Hermiticity and symmetry checks.
pub const STRUCTURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BathVector {
    pub l: Vec<C64>,
    pub k: Vec<C64>,
}

impl BathVector {
    pub fn new(l: Vec<C64>, k: Vec<C64>) -> Self {
        Self { l, k }
    }

    /// `amp · a_site`
    pub fn annihilation(n: usize, site: usize, amp: f64) -> Self {
        let mut l = vec![C64::new(0.0, 0.0); n];
        l[site] = C64::new(amp, 0.0);
        Self::new(l, vec![C64::new(0.0, 0.0); n])
    }

    /// `amp · a_site†`
    pub fn creation(n: usize, site: usize, amp: f64) -> Self {
        let mut k = vec![C64::new(0.0, 0.0); n];
        k[site] = C64::new(amp, 0.0);
        Self::new(vec![C64::new(0.0, 0.0); n], k)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(
            self.l.iter().map(|z| z * s).collect(),
            self.k.iter().map(|z| z * s).collect(),
        )
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.l.iter().chain(self.k.iter()).all(|z| z.im.abs() <= tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticModel {
    n: usize,
    h: ComplexMatrix,
    k: ComplexMatrix,
    baths: Vec<BathVector>,
}

impl QuadraticModel {
    /// Validates shapes, finiteness, `H = H†` and `K = Kᵀ`.
    pub fn new(h: ComplexMatrix, k: ComplexMatrix, baths: Vec<BathVector>) -> Result<Self> {
        let n = h.nrows();
        if h.ncols() != n || k.shape() != (n, n) {
            return Err(Error::InvalidModel(format!(
                "H is {}x{} and K is {}x{}; both must be {n}x{n}",
                h.nrows(),
                h.ncols(),
                k.nrows(),
                k.ncols()
            )));
        }
        if !all_finite(&h) || !all_finite(&k) {
            return Err(Error::InvalidModel("non-finite entry in H or K".into()));
        }
        if crate::numerics::max_abs_diff(&h, &h.adjoint()) > STRUCTURE_TOL {
            return Err(Error::InvalidModel("H is not Hermitian".into()));
        }
        if crate::numerics::max_abs_diff(&k, &k.transpose()) > STRUCTURE_TOL {
            return Err(Error::InvalidModel("K is not symmetric".into()));
        }
        for (mu, b) in baths.iter().enumerate() {
            if b.l.len() != n || b.k.len() != n {
                return Err(Error::InvalidModel(format!(
                    "bath {mu}: l and k must have length {n}"
                )));
            }
            if b.l.iter().chain(b.k.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidModel(format!("bath {mu}: non-finite amplitude")));
            }
        }
        Ok(Self { n, h, k, baths })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &ComplexMatrix {
        &self.h
    }

    pub fn k(&self) -> &ComplexMatrix {
        &self.k
    }

    pub fn baths(&self) -> &[BathVector] {
        &self.baths
    }

    /// Same model with every bath amplitude multiplied by `s`.
    pub fn with_scaled_baths(&self, s: f64) -> Self {
        Self {
            baths: self.baths.iter().map(|b| b.scaled(s)).collect(),
            ..self.clone()
        }
    }
}

fn all_finite(a: &ComplexMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureMatrices {
    pub m: ComplexMatrix,
    pub n: ComplexMatrix,
    pub l: ComplexMatrix,
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub s0: C64,
}

/// `M = Σ l⊗l̄`, `N = Σ k⊗k̄`, `L = Σ l⊗k̄`.
pub fn build_bath_matrices(model: &QuadraticModel) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let n = model.n;
    let outer = |u: &[C64], v: &[C64]| DMatrix::from_fn(n, n, |i, j| u[i] * v[j].conj());
    let mut m = DMatrix::zeros(n, n);
    let mut nm = DMatrix::zeros(n, n);
    let mut l = DMatrix::zeros(n, n);
    for b in &model.baths {
        m += outer(&b.l, &b.l);
        nm += outer(&b.k, &b.k);
        l += outer(&b.l, &b.k);
    }
    (m, nm, l)
}

pub fn build_structure(model: &QuadraticModel) -> StructureMatrices {
    let (m, nm, l) = build_bath_matrices(model);
    let h = &model.h;
    let k = &model.k;
    let half = C64::new(0.5, 0.0);
    let two = C64::new(2.0, 0.0);

    let x11 = conj(h) * I - conj(&nm) + &m;
    let x12 = k * (-two * I) - &l + l.transpose();
    let x21 = conj(k) * (two * I) - conj(&l) + conj(&l).transpose();
    let x22 = h * (-I) - &nm + conj(&m);
    let x = block2(&x11, &x12, &x21, &x22) * half;

    let y11 = conj(k) * (-two * I) - conj(&l) - conj(&l).transpose();
    let y12 = &nm * two;
    let y21 = nm.transpose() * two;
    let y22 = k * (two * I) - &l - l.transpose();
    let mut y = block2(&y11, &y12, &y21, &y22) * half;
    // exact symmetry
    let yt = y.transpose();
    y = (&y + yt) * half;

    let s0 = x.trace();
    StructureMatrices {
        m,
        n: nm,
        l,
        x,
        y,
        s0,
    }
}
