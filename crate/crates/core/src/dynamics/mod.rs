//! First and second moments of quadratic bosonic systems.
//!
//! With `ψ = (⟨a⟩, ⟨a†⟩)` and
//! `Z = [[⟨a_i a_j⟩, ⟨a_j† a_i⟩], [⟨a_i† a_j⟩, ⟨a_i† a_j†⟩]]`
//! the moments obey `dψ/dt = −2Xᵀψ` and `dZ/dt = −2(XᵀZ + ZX) + 2Y`.
//! Both are solved in closed form and re-integrated numerically as a check.

mod ode;
mod quad;

pub use ode::dopri5;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{hp_observable, n_from_sz, HpFrame};
use crate::numerics::{
    eigen_decompose, expm, frobenius, solve_sylvester, spectral_norm, ComplexMatrix, ComplexVector,
    SylvesterSolution, C64,
};

/// Norm beyond which evolution stops early.
pub const NORM_CAP: f64 = 1e12;

/// Agreement required between the closed form and the ODE route.
pub const FIRST_MOMENT_TOL: f64 = 1e-8;
pub const SECOND_MOMENT_TOL: f64 = 1e-7;

/// RK4 step in units of `1/‖X‖`.
pub const RK4_STEP: f64 = 1e-3;

/// Relative quadrature tolerance.
pub const QUAD_TOL: f64 = 1e-10;

/// Eigenvector condition number above which the eigen-resolution is not used.
pub const MAX_EIGEN_CONDITION: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentState {
    pub t: f64,
    pub psi: ComplexVector,
    pub z: ComplexMatrix,
}

impl MomentState {
    /// State with the given `⟨a_i⟩`, occupations `⟨a_i†a_i⟩ = n_i`, and every
    /// anomalous or cross second moment zero.
    pub fn from_occupations(mean: &[C64], occupations: &[f64]) -> Result<Self> {
        let n = occupations.len();
        if mean.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} means for {n} modes",
                mean.len()
            )));
        }
        if occupations.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidState("occupations must be finite and non-negative".into()));
        }
        let mut psi = DVector::zeros(2 * n);
        let mut z = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            psi[i] = mean[i];
            psi[n + i] = mean[i].conj();
            z[(i, n + i)] = C64::new(occupations[i], 0.0);
            z[(n + i, i)] = C64::new(occupations[i], 0.0);
        }
        Ok(Self { t: 0.0, psi, z })
    }

    /// Vacuum-frame initial state reproducing `⟨S_i^z⟩ = sz[i]` on each site.
    pub fn from_spin_setup(frame: &HpFrame, sz: &[f64]) -> Result<Self> {
        let n = frame.orientations.len();
        if sz.len() != n {
            return Err(Error::DimensionMismatch(format!("{} S^z values for {n} sites", sz.len())));
        }
        let occ = (0..n)
            .map(|i| n_from_sz(sz[i], frame, i))
            .collect::<Result<Vec<_>>>()?;
        Self::from_occupations(&vec![C64::new(0.0, 0.0); n], &occ)
    }

    pub fn modes(&self) -> usize {
        self.psi.len() / 2
    }

    /// `⟨a_i† a_i⟩`
    pub fn occupation(&self, i: usize) -> C64 {
        self.z[(self.modes() + i, i)]
    }

    /// Largest violation of the structural identities of a physical state.
    pub fn structure_residual(&self) -> f64 {
        let n = self.modes();
        let z = &self.z;
        let mut r: f64 = 0.0;
        for i in 0..n {
            r = r.max((self.psi[n + i] - self.psi[i].conj()).norm());
            for j in 0..n {
                // ⟨a_i†a_j⟩ Hermitian
                r = r.max((z[(n + i, j)] - z[(n + j, i)].conj()).norm());
                // ⟨a_i a_j⟩ symmetric
                r = r.max((z[(i, j)] - z[(j, i)]).norm());
                // ⟨a_i†a_j†⟩ = conj ⟨a_j a_i⟩
                r = r.max((z[(n + i, n + j)] - z[(j, i)].conj()).norm());
                // both placements of ⟨a_j† a_i⟩ agree
                r = r.max((z[(i, n + j)] - z[(n + j, i)]).norm());
            }
        }
        r
    }
}

pub(crate) fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidGrid("times must be finite and non-negative".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid("times must be non-decreasing".into()));
    }
    Ok(())
}

fn check_x(x: &ComplexMatrix) -> Result<usize> {
    crate::numerics::ensure_square(x)?;
    if x.nrows() % 2 != 0 {
        return Err(Error::DimensionMismatch("X must have even dimension".into()));
    }
    Ok(x.nrows())
}

fn vnorm(v: &ComplexVector) -> f64 {
    v.norm()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FirstMomentSeries {
    pub times: Vec<f64>,
    pub psi: Vec<ComplexVector>,
    /// Largest `‖ψ_closed − ψ_ode‖ / (1 + ‖ψ‖)` over the output times.
    pub ode_discrepancy: f64,
    pub consistent: bool,
    /// Set when `‖ψ‖` passed [`NORM_CAP`]; later times are omitted.
    pub early_stop: bool,
}

/// `ψ(t) = exp(−2Xᵀt) ψ(0)`, cross-checked by adaptive integration.
pub fn evolve_first(x: &ComplexMatrix, psi0: &ComplexVector, times: &[f64]) -> Result<FirstMomentSeries> {
    let d = check_x(x)?;
    if psi0.len() != d {
        return Err(Error::DimensionMismatch(format!("psi has length {}, expected {d}", psi0.len())));
    }
    check_times(times)?;
    let gen = x.transpose() * C64::new(-2.0, 0.0);

    let mut out_t = Vec::new();
    let mut out = Vec::new();
    let mut early_stop = false;
    for &t in times {
        let psi = expm(&(&gen * C64::new(t, 0.0)))? * psi0;
        if vnorm(&psi) > NORM_CAP {
            early_stop = true;
            break;
        }
        out_t.push(t);
        out.push(psi);
    }

    let ode = dopri5(
        |_, y| (&gen * DVector::from_column_slice(y)).as_slice().to_vec(),
        0.0,
        psi0.as_slice(),
        &out_t,
        1e-12,
        1e-13,
    );
    let ode_discrepancy = out
        .iter()
        .zip(&ode)
        .map(|(a, b)| (a - DVector::from_column_slice(b)).norm() / (1.0 + a.norm()))
        .fold(0.0, f64::max);
    Ok(FirstMomentSeries {
        times: out_t,
        psi: out,
        consistent: ode_discrepancy <= FIRST_MOMENT_TOL,
        ode_discrepancy,
        early_stop,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralMethod {
    EigenResolution,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondMomentSeries {
    pub times: Vec<f64>,
    pub z: Vec<ComplexMatrix>,
    pub method: IntegralMethod,
    /// Set when the eigen-resolution was skipped because some
    /// `β_i + β_j ≈ 0` or the eigenvectors were ill conditioned.
    pub fallback: bool,
    /// Largest `‖Z_closed − Z_rk4‖ / (1 + ‖Z‖)` over the output times.
    pub rk4_discrepancy: f64,
    /// Accumulated quadrature error estimate (zero for the eigen-resolution).
    pub quadrature_error: f64,
    pub consistent: bool,
    pub early_stop: bool,
}

/// `Z(t) = E(t)ᵀ Z(0) E(t) + ∫₀ᵗ E(s)ᵀ 2Y E(s) ds` with `E(t) = exp(−2tX)`,
/// cross-checked by fixed-step RK4.
pub fn evolve_second(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    z0: &ComplexMatrix,
    times: &[f64],
) -> Result<SecondMomentSeries> {
    let d = check_x(x)?;
    if y.shape() != (d, d) || z0.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!("Y and Z must be {d}x{d}")));
    }
    crate::numerics::ensure_finite(y)?;
    crate::numerics::ensure_finite(z0)?;
    check_times(times)?;

    let y2 = y * C64::new(2.0, 0.0);
    let xnorm = spectral_norm(x);
    let e_of = |t: f64| expm(&(x * C64::new(-2.0 * t, 0.0)));

    let resolution = EigenResolution::new(x, &y2)?;
    let method = if resolution.is_some() {
        IntegralMethod::EigenResolution
    } else {
        IntegralMethod::Quadrature
    };

    let mut out_t = Vec::new();
    let mut out = Vec::new();
    let mut early_stop = false;
    let mut acc = DMatrix::<C64>::zeros(d, d);
    let mut prev_t = 0.0;
    let mut quadrature_error = 0.0;
    for &t in times {
        let e = e_of(t)?;
        let source = match &resolution {
            Some(r) => r.integral(t),
            None => {
                let f = |s: f64| -> Result<ComplexMatrix> {
                    let es = e_of(s)?;
                    Ok(es.transpose() * &y2 * es)
                };
                if t > prev_t {
                    let piece = quad::integrate(&f, prev_t, t, QUAD_TOL, 1e-14)?;
                    acc += piece.value;
                    quadrature_error += piece.error;
                }
                prev_t = t;
                acc.clone()
            }
        };
        let z = e.transpose() * z0 * &e + source;
        if frobenius(&z) > NORM_CAP || !z.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            early_stop = true;
            break;
        }
        out_t.push(t);
        out.push(z);
    }

    let rk = rk4_second(x, &y2, z0, &out_t, RK4_STEP / xnorm.max(1e-12));
    let rk4_discrepancy = out
        .iter()
        .zip(&rk)
        .map(|(a, b)| frobenius(&(a - b)) / (1.0 + frobenius(a)))
        .fold(0.0, f64::max);
    Ok(SecondMomentSeries {
        times: out_t,
        z: out,
        method,
        fallback: method == IntegralMethod::Quadrature,
        consistent: rk4_discrepancy <= SECOND_MOMENT_TOL,
        rk4_discrepancy,
        quadrature_error,
        early_stop,
    })
}

/// Analytic `∫₀ᵗ E(s)ᵀ 2Y E(s) ds` through `X = V Λ V⁻¹`.
struct EigenResolution {
    vinv_t: ComplexMatrix,
    vinv: ComplexMatrix,
    w: ComplexMatrix,
    lambda: Vec<C64>,
}

impl EigenResolution {
    fn new(x: &ComplexMatrix, y2: &ComplexMatrix) -> Result<Option<Self>> {
        let dec = eigen_decompose(x)?;
        if !(dec.condition <= MAX_EIGEN_CONDITION) {
            return Ok(None);
        }
        let scale = spectral_norm(x).max(f64::MIN_POSITIVE);
        let resonant = dec
            .values
            .iter()
            .any(|a| dec.values.iter().any(|b| (a + b).norm() <= 1e-8 * scale));
        if resonant {
            return Ok(None);
        }
        let Some(vinv) = dec.vectors.clone().try_inverse() else {
            return Ok(None);
        };
        let w = dec.vectors.transpose() * y2 * &dec.vectors;
        Ok(Some(Self {
            vinv_t: vinv.transpose(),
            vinv,
            w,
            lambda: dec.values,
        }))
    }

    fn integral(&self, t: f64) -> ComplexMatrix {
        let d = self.lambda.len();
        let inner = DMatrix::from_fn(d, d, |i, j| {
            let sigma = self.lambda[i] + self.lambda[j];
            self.w[(i, j)] * integral_factor(sigma, t)
        });
        &self.vinv_t * inner * &self.vinv
    }
}

/// `∫₀ᵗ exp(−2σs) ds`
fn integral_factor(sigma: C64, t: f64) -> C64 {
    let z = sigma * (-2.0 * t);
    let em1 = if z.norm() < 1e-5 {
        z + z * z / 2.0 + z * z * z / 6.0
    } else {
        z.exp() - 1.0
    };
    if sigma.norm() == 0.0 {
        C64::new(t, 0.0)
    } else {
        -em1 / (sigma * 2.0)
    }
}

fn rk4_second(
    x: &ComplexMatrix,
    y2: &ComplexMatrix,
    z0: &ComplexMatrix,
    times: &[f64],
    h_max: f64,
) -> Vec<ComplexMatrix> {
    let xt = x.transpose();
    let rhs = |z: &ComplexMatrix| -> ComplexMatrix { (&xt * z + z * x) * C64::new(-2.0, 0.0) + y2 };
    let mut z = z0.clone();
    let mut t = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &target in times {
        let span = target - t;
        if span > 0.0 {
            let steps = (span / h_max).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            let hc = C64::new(h, 0.0);
            let half = C64::new(h / 2.0, 0.0);
            for _ in 0..steps {
                let k1 = rhs(&z);
                let k2 = rhs(&(&z + &k1 * half));
                let k3 = rhs(&(&z + &k2 * half));
                let k4 = rhs(&(&z + &k3 * hc));
                z += (k1 + (k2 + k3) * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0);
            }
            t = target;
        }
        out.push(z.clone());
    }
    out
}

/// Both moments from one initial state.
pub fn evolve_moments(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    state0: &MomentState,
    times: &[f64],
) -> Result<MomentEvolution> {
    let first = evolve_first(x, &state0.psi, times)?;
    let second = evolve_second(x, y, &state0.z, times)?;
    let k = first.times.len().min(second.times.len());
    let states = (0..k)
        .map(|i| MomentState {
            t: first.times[i],
            psi: first.psi[i].clone(),
            z: second.z[i].clone(),
        })
        .collect();
    Ok(MomentEvolution {
        states,
        first_discrepancy: first.ode_discrepancy,
        second_discrepancy: second.rk4_discrepancy,
        method: second.method,
        fallback: second.fallback,
        consistent: first.consistent && second.consistent,
        early_stop: first.early_stop || second.early_stop,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentEvolution {
    pub states: Vec<MomentState>,
    pub first_discrepancy: f64,
    pub second_discrepancy: f64,
    pub method: IntegralMethod,
    pub fallback: bool,
    pub consistent: bool,
    pub early_stop: bool,
}

/// Solves `XᵀZ + ZX = Y`.
pub fn stationary_second(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<SylvesterSolution> {
    solve_sylvester(&x.transpose(), x, y).map_err(|e| match e {
        Error::NoUniqueSolution { min_sum } => Error::NoUniqueStationaryCovariance { min_sum },
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservableSeries {
    pub times: Vec<f64>,
    pub names: Vec<String>,
    /// `values[k][i]` is observable `names[k]` at `times[i]`.
    pub values: Vec<Vec<C64>>,
    pub warnings: Vec<String>,
}

impl ObservableSeries {
    pub fn get(&self, name: &str) -> Option<&[C64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|k| self.values[k].as_slice())
    }
}

/// Per mode `i`: `a{i}` = `⟨a_i⟩`, `n{i}` = `⟨a_i†a_i⟩`, and with a frame
/// `sz{i}` = `⟨S_i^z⟩/S`.
pub fn observable_series(states: &[MomentState], frame: Option<&HpFrame>) -> Result<ObservableSeries> {
    let n = states.first().map_or(0, MomentState::modes);
    if let Some(f) = frame {
        if f.orientations.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "frame has {} sites, state has {n} modes",
                f.orientations.len()
            )));
        }
    }
    let mut names = Vec::new();
    let mut values = Vec::new();
    let mut warnings = Vec::new();
    for i in 0..n {
        names.push(format!("a{i}"));
        values.push(states.iter().map(|s| s.psi[i]).collect());
    }
    for i in 0..n {
        names.push(format!("n{i}"));
        values.push(states.iter().map(|s| s.occupation(i)).collect());
    }
    if let Some(f) = frame {
        for i in 0..n {
            let mut col = Vec::with_capacity(states.len());
            let mut warned = false;
            for s in states {
                let occ = s.occupation(i);
                if occ.im.abs() > 1e-8 * (1.0 + occ.re.abs()) {
                    return Err(Error::InvalidState(format!(
                        "occupation of mode {i} has imaginary part {:.3e} at t = {}",
                        occ.im, s.t
                    )));
                }
                let v = hp_observable(occ.re, f, i)?;
                if v.warning && !warned {
                    warned = true;
                    warnings.push(format!(
                        "site {i}: n/(2S) = {:.3} at t = {} exceeds the linearization range",
                        occ.re / (2.0 * f.s),
                        s.t
                    ));
                }
                col.push(C64::new(v.value, 0.0));
            }
            names.push(format!("sz{i}"));
            values.push(col);
        }
    }
    Ok(ObservableSeries {
        times: states.iter().map(|s| s.t).collect(),
        names,
        values,
        warnings,
    })
}

/// Least-squares slope of `ln y` against `t` over the points with `y > 0`.
pub fn log_slope(t: &[f64], y: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = t
        .iter()
        .zip(y)
        .filter(|(_, v)| **v > 0.0 && v.is_finite())
        .map(|(a, b)| (*a, b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_structure, preset, Preset, PresetParams};
    use crate::numerics::{c, re};

    fn two_boson(gamma: f64, g: f64) -> crate::model::StructureMatrices {
        build_structure(&preset(Preset::TwoBoson, &PresetParams::boson(gamma, g)).unwrap().model)
    }

    #[test]
    fn closed_two_boson_first_moment() {
        let s = two_boson(0.0, 1.3);
        let psi0 = DVector::from_vec(vec![c(1.0, 0.5), c(-0.3, 2.0), c(1.0, -0.5), c(-0.3, -2.0)]);
        let times: Vec<f64> = (0..20).map(|k| 0.37 * k as f64).collect();
        let r = evolve_first(&s.x, &psi0, &times).unwrap();
        assert!(r.consistent, "{}", r.ode_discrepancy);
        for (t, psi) in r.times.iter().zip(&r.psi) {
            let want = psi0[0] * (1.3 * t).cos() - c(0.0, 1.0) * (1.3 * t).sin() * psi0[1];
            assert!((psi[0] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_source_zero_state() {
        let s = two_boson(0.4, 1.0);
        let r = evolve_second(&s.x, &DMatrix::zeros(4, 4), &DMatrix::zeros(4, 4), &[0.0, 1.0, 5.0]).unwrap();
        assert!(r.z.iter().all(|z| frobenius(z) == 0.0));
    }

    #[test]
    fn diagonal_real_x_decays() {
        let x = DMatrix::from_diagonal(&DVector::from_vec(vec![re(0.5), re(1.0)]));
        let r = evolve_first(&x, &DVector::from_vec(vec![re(1.0), re(1.0)]), &[0.0, 1.0, 2.0]).unwrap();
        assert!((r.psi[2][0].re - (-2.0f64).exp()).abs() < 1e-14);
        assert!((r.psi[1][1].re - (-2.0f64).exp()).abs() < 1e-14);
        assert!(r.psi.iter().flat_map(|p| p.iter()).all(|z| z.im == 0.0));
    }

    #[test]
    fn stationary_examples() {
        let afm0 = build_structure(&preset(Preset::Afm2Spin, &PresetParams::spins(1.0, 2.0, 0.0)).unwrap().model);
        let z = stationary_second(&afm0.x, &afm0.y).unwrap();
        assert!(frobenius(&z.z) == 0.0);
        let afm = build_structure(&preset(Preset::Afm2Spin, &PresetParams::spins(2.0, 2.0, 1.0)).unwrap().model);
        let z = stationary_second(&afm.x, &afm.y).unwrap();
        assert!(z.residual < 1e-10);
        let tb = two_boson(0.5, 1.0);
        assert!(matches!(
            stationary_second(&tb.x, &tb.y),
            Err(Error::NoUniqueStationaryCovariance { .. })
        ));
    }

    #[test]
    fn resonant_case_uses_quadrature() {
        let s = two_boson(0.5, 1.0);
        let st = MomentState::from_occupations(&[re(10.0), re(10.0)], &[100.0, 100.0]).unwrap();
        let times: Vec<f64> = (0..=10).map(|k| k as f64).collect();
        let r = evolve_second(&s.x, &s.y, &st.z, &times).unwrap();
        assert_eq!(r.method, IntegralMethod::Quadrature);
        assert!(r.fallback);
        assert!(r.consistent, "{}", r.rk4_discrepancy);
    }

    #[test]
    fn decaying_case_uses_eigen_resolution() {
        let s = build_structure(&preset(Preset::Afm2Spin, &PresetParams::spins(2.0, 1.5, 1.0)).unwrap().model);
        let st = MomentState::from_occupations(&[re(0.0), re(0.0)], &[3.0, 1.0]).unwrap();
        let times: Vec<f64> = (0..=20).map(|k| k as f64 * 0.5).collect();
        let r = evolve_second(&s.x, &s.y, &st.z, &times).unwrap();
        assert_eq!(r.method, IntegralMethod::EigenResolution);
        assert!(r.consistent, "{}", r.rk4_discrepancy);
    }

    #[test]
    fn hp_series_and_warnings() {
        let pm = preset(Preset::Afm2Spin, &PresetParams::spins(2.0, 2.0, 1.0)).unwrap();
        let frame = pm.frame.unwrap();
        let st = MomentState::from_spin_setup(&frame, &[900.0, -900.0]).unwrap();
        assert!((st.occupation(0).re - 100.0).abs() < 1e-12);
        assert!((st.occupation(1).re - 100.0).abs() < 1e-12);
        let obs = observable_series(&[st.clone()], Some(&frame)).unwrap();
        assert!((obs.get("sz0").unwrap()[0].re - 0.9).abs() < 1e-14);
        assert!((obs.get("sz1").unwrap()[0].re + 0.9).abs() < 1e-14);
        assert!(obs.warnings.is_empty());
        let small = frame.with_spin(400.0).unwrap();
        let obs = observable_series(&[st], Some(&small)).unwrap();
        assert_eq!(obs.warnings.len(), 2);
    }

    #[test]
    fn rejects_bad_times() {
        let s = two_boson(0.5, 1.0);
        let psi = DVector::zeros(4);
        assert!(matches!(evolve_first(&s.x, &psi, &[1.0, 0.5]), Err(Error::InvalidGrid(_))));
        assert!(evolve_first(&s.x, &psi, &[-1.0]).is_err());
    }

    #[test]
    fn divergent_run_stops_early() {
        let s = two_boson(3.0, 1.0);
        let psi = DVector::from_vec(vec![re(1.0), re(0.0), re(1.0), re(0.0)]);
        let times: Vec<f64> = (0..200).map(|k| k as f64).collect();
        let r = evolve_first(&s.x, &psi, &times).unwrap();
        assert!(r.early_stop);
        assert!(r.times.len() < 200);
    }

    #[test]
    fn slope_of_exponential() {
        let t: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let y: Vec<f64> = t.iter().map(|t| 3.0 * (-0.7 * t).exp()).collect();
        assert!((log_slope(&t, &y).unwrap() + 0.7).abs() < 1e-12);
    }
}
