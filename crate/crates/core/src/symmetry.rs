//! PT checks at two levels: the Liouvillian-level criterion on the model
//! (Hamiltonian reflection symmetry plus a bath set closed under
//! parity-and-gain/loss exchange) and conventional PT / anti-PT symmetry of
//! `iX` under a chosen parity.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::QuadraticModel;
use crate::numerics::{block2, conj, exchange, frobenius, ComplexMatrix, EigenClusters, C64};

/// Default relative tolerance for symmetry residuals.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Default relative tolerance for the real parts of β in [`classify_beta_pt`].
pub const BETA_CLASS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityKind {
    /// `blockdiag(P_n, P_n)`
    Reflection,
    /// `[[0, P_n], [P_n, 0]]`
    SectorSwap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParitySpec {
    pub kind: ParityKind,
    pub n: usize,
}

impl ParitySpec {
    pub fn reflection(n: usize) -> Self {
        Self {
            kind: ParityKind::Reflection,
            n,
        }
    }

    pub fn sector_swap(n: usize) -> Self {
        Self {
            kind: ParityKind::SectorSwap,
            n,
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let p = exchange(self.n);
        let z = DMatrix::zeros(self.n, self.n);
        match self.kind {
            ParityKind::Reflection => block2(&p, &z, &z, &p),
            ParityKind::SectorSwap => block2(&z, &p, &p, &z),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    pub huber_hamiltonian: f64,
    /// `None` when the criterion does not apply (complex baths).
    pub huber_baths: Option<f64>,
    pub pt: f64,
    pub anti_pt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuberReport {
    pub huber_hamiltonian: bool,
    /// `None` when some bath vector is not real.
    pub huber_baths: Option<bool>,
    pub hamiltonian_residual: f64,
    pub baths_residual: Option<f64>,
    /// Baths without a partner under the pairing.
    pub unmatched_baths: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatrixPtReport {
    pub parity: ParitySpec,
    pub matrix_pt: bool,
    pub matrix_anti_pt: bool,
    pub pt_residual: f64,
    pub anti_pt_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub huber_hamiltonian: bool,
    pub huber_baths: Option<bool>,
    pub matrix_pt: bool,
    pub matrix_anti_pt: bool,
    pub residuals: Residuals,
    pub parity: ParitySpec,
    pub unmatched_baths: Vec<usize>,
    pub tol: f64,
}

impl SymmetryReport {
    pub fn combine(h: HuberReport, m: MatrixPtReport, tol: f64) -> Self {
        Self {
            huber_hamiltonian: h.huber_hamiltonian,
            huber_baths: h.huber_baths,
            matrix_pt: m.matrix_pt,
            matrix_anti_pt: m.matrix_anti_pt,
            residuals: Residuals {
                huber_hamiltonian: h.hamiltonian_residual,
                huber_baths: h.baths_residual,
                pt: m.pt_residual,
                anti_pt: m.anti_pt_residual,
            },
            parity: m.parity,
            unmatched_baths: h.unmatched_baths,
            tol,
        }
    }
}

fn rel(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        num
    }
}

fn vnorm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn reflect(v: &[C64]) -> Vec<C64> {
    v.iter().rev().copied().collect()
}

fn dist(a: &[C64], b: &[C64], sign: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y * sign).norm_sqr())
        .sum::<f64>()
}

/// Liouvillian-level PT criterion on the model.
pub fn check_huber(model: &QuadraticModel, tol: f64) -> HuberReport {
    let p = exchange(model.n());
    let h = model.h();
    let k = model.k();
    let dh = frobenius(&(h - &p * conj(h) * &p));
    let dk = frobenius(&(k - &p * conj(k) * &p));
    let hamiltonian_residual = rel(dh.max(dk), frobenius(h) + frobenius(k));

    let baths = model.baths();
    let scale = baths
        .iter()
        .map(|b| vnorm(&b.l).max(vnorm(&b.k)))
        .fold(0.0, f64::max);
    let real = baths.iter().all(|b| b.is_real(tol * scale.max(1e-300)));

    let (baths_residual, unmatched) = if real {
        let mut worst: f64 = 0.0;
        let mut unmatched = Vec::new();
        for (mu, b) in baths.iter().enumerate() {
            let tl = reflect(&b.k);
            let tk = reflect(&b.l);
            let norm = (vnorm(&b.l).powi(2) + vnorm(&b.k).powi(2)).sqrt();
            // L and -L give the same dissipator
            let best = baths
                .iter()
                .flat_map(|c| {
                    [1.0, -1.0].map(|s| (dist(&c.l, &tl, s) + dist(&c.k, &tk, s)).sqrt())
                })
                .fold(f64::INFINITY, f64::min);
            let r = rel(best, norm);
            if r > tol {
                unmatched.push(mu);
            }
            worst = worst.max(r);
        }
        (Some(worst), unmatched)
    } else {
        (None, Vec::new())
    };

    HuberReport {
        huber_hamiltonian: hamiltonian_residual <= tol,
        huber_baths: baths_residual.map(|r| r <= tol),
        hamiltonian_residual,
        baths_residual,
        unmatched_baths: unmatched,
    }
}

/// Conventional PT (`P X̄ P = −X`) and anti-PT (`P X̄ P = X`) of `iX`.
pub fn check_matrix_pt(x: &ComplexMatrix, parity: ParitySpec, tol: f64) -> Result<MatrixPtReport> {
    if x.nrows() != x.ncols() || x.nrows() != 2 * parity.n {
        return Err(Error::DimensionMismatch(format!(
            "X is {}x{}, parity acts on dimension {}",
            x.nrows(),
            x.ncols(),
            2 * parity.n
        )));
    }
    let p = parity.matrix();
    let pxp = &p * conj(x) * &p;
    let nx = frobenius(x);
    let pt_residual = rel(frobenius(&(&pxp + x)), nx);
    let anti_pt_residual = rel(frobenius(&(&pxp - x)), nx);
    Ok(MatrixPtReport {
        parity,
        matrix_pt: pt_residual <= tol,
        matrix_anti_pt: anti_pt_residual <= tol,
        pt_residual,
        anti_pt_residual,
    })
}

/// Both checks on a model with the given parity kind.
pub fn check_symmetry(model: &QuadraticModel, kind: ParityKind, tol: f64) -> Result<SymmetryReport> {
    let s = crate::model::build_structure(model);
    let parity = ParitySpec { kind, n: model.n() };
    let m = check_matrix_pt(&s.x, parity, tol)?;
    Ok(SymmetryReport::combine(check_huber(model, tol), m, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PtPhase {
    /// All β purely imaginary.
    Unbroken,
    /// Every β off the imaginary axis has a mirror partner `−β̄`.
    Broken,
    Mixed,
}

/// Classifies the rapidities of a PT-symmetric `iX`.
pub fn classify_beta_pt(betas: &EigenClusters, tol: f64) -> PtPhase {
    classify_values(&betas.values, tol)
}

pub fn classify_values(values: &[C64], tol: f64) -> PtPhase {
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return PtPhase::Unbroken;
    }
    let eps = tol * scale;
    let off: Vec<usize> = (0..values.len()).filter(|&i| values[i].re.abs() > eps).collect();
    if off.is_empty() {
        return PtPhase::Unbroken;
    }
    let paired = off.iter().all(|&i| {
        let z = values[i];
        off.iter()
            .any(|&j| (values[j].re + z.re).abs() <= eps && (values[j].im - z.im).abs() <= eps)
    });
    if paired {
        PtPhase::Broken
    } else {
        PtPhase::Mixed
    }
}
