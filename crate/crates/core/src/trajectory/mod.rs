//! Two coupled spins `S` with gain on A and loss on B, solved without the
//! large-`S` approximation.
//!
//! `H = (g/2S)(S_A⁺S_B⁻ + S_A⁻S_B⁺)` with jump operators
//! `c_g = √(Γg/2S) S_A⁺` and `c_l = √(Γl/2S) S_B⁻`, and
//! `D[c]ρ = 2cρc† − c†cρ − ρc†c`. A jump through `c` therefore happens at
//! rate `2‖cψ‖²`.
//!
//! Site basis index `k` holds `m = S − k`; the joint index is `a·(2S+1) + b`.

mod lindblad;
mod mc;
mod oracle;
mod sparse;

pub use lindblad::{lindblad_evolve, steady_state, LindbladOptions, LindbladResult, SteadyState, TRACE_DRIFT_TOL};
pub use mc::{default_dt as default_mc_dt, mc_trajectories, McOptions, TrajectoryEnsemble, MAX_JUMP_PROBABILITY};
pub use oracle::{dense_operators, dense_superoperator, oracle_evolve, DenseOperators};
pub use sparse::SparseOp;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::C64;

/// Largest spin accepted unless the caller raises the cap.
pub const DEFAULT_MAX_SPIN: f64 = 15.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinModel {
    pub s: f64,
    pub g: f64,
    pub gg: f64,
    pub gl: f64,
}

impl SpinModel {
    pub fn new(s: f64, g: f64, gg: f64, gl: f64) -> Result<Self> {
        Self::with_cap(s, g, gg, gl, DEFAULT_MAX_SPIN)
    }

    pub fn with_cap(s: f64, g: f64, gg: f64, gl: f64, max_spin: f64) -> Result<Self> {
        if !(s > 0.0) || ((2.0 * s).round() - 2.0 * s).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("S = {s} must be a positive half-integer")));
        }
        if s > max_spin {
            return Err(Error::InvalidParameter(format!(
                "S = {s} exceeds the dense-state cap {max_spin}"
            )));
        }
        for (name, v) in [("g", g), ("gg", gg), ("gl", gl)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be finite and non-negative")));
            }
        }
        Ok(Self { s, g, gg, gl })
    }

    /// `2S + 1`
    pub fn site_dim(&self) -> usize {
        (2.0 * self.s).round() as usize + 1
    }

    /// `(2S + 1)²`
    pub fn dim(&self) -> usize {
        self.site_dim().pow(2)
    }

    /// `m` of site A and site B for a joint index.
    pub fn m_values(&self, i: usize) -> (f64, f64) {
        let d1 = self.site_dim();
        (self.s - (i / d1) as f64, self.s - (i % d1) as f64)
    }

    /// Total magnetization `m_A + m_B` shifted to a non-negative integer.
    pub fn sector(&self, i: usize) -> usize {
        let d1 = self.site_dim();
        2 * (d1 - 1) - i / d1 - i % d1
    }

    pub fn index(&self, m_a: f64, m_b: f64) -> Result<usize> {
        let d1 = self.site_dim();
        let ka = self.s - m_a;
        let kb = self.s - m_b;
        let ok = |k: f64| k >= -1e-9 && k <= (d1 - 1) as f64 + 1e-9 && (k - k.round()).abs() < 1e-9;
        if !ok(ka) || !ok(kb) {
            return Err(Error::InvalidState(format!(
                "m values ({m_a}, {m_b}) are not valid for S = {}",
                self.s
            )));
        }
        Ok(ka.round() as usize * d1 + kb.round() as usize)
    }

    /// `|m_a⟩ ⊗ |m_b⟩`
    pub fn product_state(&self, m_a: f64, m_b: f64) -> Result<DVector<C64>> {
        let mut v = DVector::zeros(self.dim());
        v[self.index(m_a, m_b)?] = C64::new(1.0, 0.0);
        Ok(v)
    }

    /// Sparse `H`, jump operators and `H_eff = H − i Σ c†c`.
    pub fn operators(&self) -> Operators {
        let d1 = self.site_dim();
        let s = self.s;
        let d = self.dim();
        // S⁺|m⟩ = √(S(S+1) − m(m+1)) |m+1⟩, i.e. k → k−1
        let plus = |k: usize| -> Option<(usize, f64)> {
            if k == 0 {
                return None;
            }
            let m = s - k as f64;
            Some((k - 1, (s * (s + 1.0) - m * (m + 1.0)).sqrt()))
        };
        let minus = |k: usize| -> Option<(usize, f64)> {
            if k + 1 >= d1 {
                return None;
            }
            let m = s - k as f64;
            Some((k + 1, (s * (s + 1.0) - m * (m - 1.0)).sqrt()))
        };
        let pref = self.g / (2.0 * s);
        let mut h = SparseOp::zeros(d);
        let mut cg = SparseOp::zeros(d);
        let mut cl = SparseOp::zeros(d);
        let ag = (self.gg / (2.0 * s)).sqrt();
        let al = (self.gl / (2.0 * s)).sqrt();
        for ka in 0..d1 {
            for kb in 0..d1 {
                let col = ka * d1 + kb;
                if let (Some((ra, va)), Some((rb, vb))) = (plus(ka), minus(kb)) {
                    h.push(ra * d1 + rb, col, C64::new(pref * va * vb, 0.0));
                }
                if let (Some((ra, va)), Some((rb, vb))) = (minus(ka), plus(kb)) {
                    h.push(ra * d1 + rb, col, C64::new(pref * va * vb, 0.0));
                }
                if let Some((ra, va)) = plus(ka) {
                    if ag > 0.0 {
                        cg.push(ra * d1 + kb, col, C64::new(ag * va, 0.0));
                    }
                }
                if let Some((rb, vb)) = minus(kb) {
                    if al > 0.0 {
                        cl.push(ka * d1 + rb, col, C64::new(al * vb, 0.0));
                    }
                }
            }
        }
        let jumps = vec![cg, cl];
        let mut heff = h.clone();
        for c in &jumps {
            heff.add_scaled(&c.adjoint_times_self(), C64::new(0.0, -1.0));
        }
        Operators { h, jumps, heff }
    }

    /// Upper bound on the spectral radius of the Lindblad generator.
    pub fn rate_bound(&self, ops: &Operators) -> f64 {
        2.0 * ops.heff.norm_bound() + 2.0 * ops.jumps.iter().map(|c| c.norm_bound().powi(2)).sum::<f64>()
    }
}

#[derive(Debug, Clone)]
pub struct Operators {
    pub h: SparseOp,
    /// `[c_g, c_l]`
    pub jumps: Vec<SparseOp>,
    pub heff: SparseOp,
}

/// `|ψ⟩⟨ψ|`
pub fn density(psi: &DVector<C64>) -> DMatrix<C64> {
    psi * psi.adjoint()
}

/// True when the Hermitian part of `ρ` has smallest eigenvalue above `−bound`.
/// Tested by Cholesky of the real symmetric embedding `[[Re, −Im], [Im, Re]]`,
/// which shares its eigenvalues with the Hermitian matrix.
pub fn min_eigenvalue_at_least(rho: &DMatrix<C64>, bound: f64) -> bool {
    let n = rho.nrows();
    let herm = (rho + rho.adjoint()) * C64::new(0.5, 0.0);
    let real = DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let z = herm[(i % n, j % n)];
        let v = match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        };
        if i == j {
            v + bound
        } else {
            v
        }
    });
    real.cholesky().is_some()
}
