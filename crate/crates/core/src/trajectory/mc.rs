//! Fixed-step quantum-jump unraveling.
//!
//! Each step of length `dt` fires channel `μ` with probability
//! `2 dt ‖c_μ ψ‖²`; otherwise `ψ` follows `−i H_eff ψ` (one RK4 step) and is
//! renormalized. Trajectory `k` draws from ChaCha8 seeded with `seed` on
//! stream `k`.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{Operators, SparseOp, SpinModel};
use crate::error::{Error, Result};
use crate::numerics::C64;

/// Upper limit on the total jump probability of a single step.
pub const MAX_JUMP_PROBABILITY: f64 = 0.05;
const DEFAULT_PROBABILITY: f64 = 0.01;
const HEFF_STEP_FACTOR: f64 = 0.1;
const MAX_HALVINGS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct McOptions {
    /// Step size; `None` keeps the worst-case jump probability at 0.01.
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryEnsemble {
    pub seed: u64,
    /// Stream index of each trajectory.
    pub streams: Vec<u64>,
    pub times: Vec<f64>,
    /// Observable names, `sz_a` and `sz_b` (normalized by `S`).
    pub names: Vec<String>,
    /// `[trajectory][observable][time]`
    pub trajectories: Vec<Vec<Vec<f64>>>,
    /// `[observable][time]`
    pub mean: Vec<Vec<f64>>,
    /// Sample standard deviation over `√n_traj`.
    pub sem: Vec<Vec<f64>>,
    /// `(t, channel)` per trajectory, channel 0 = gain on A, 1 = loss on B.
    pub jumps: Vec<Vec<(f64, usize)>>,
    pub dt: f64,
    pub warnings: Vec<String>,
}

impl TrajectoryEnsemble {
    pub fn observable(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

struct Run {
    series: Vec<Vec<f64>>,
    jumps: Vec<(f64, usize)>,
    warnings: Vec<String>,
}

/// `out[i] = (op x)[i]` for `i` in `rows`.
fn apply(op: &SparseOp, x: &[C64], rows: &[usize], out: &mut [C64]) {
    for &i in rows {
        out[i] = op.row(i).iter().map(|&(k, v)| v * x[k]).sum();
    }
}

/// `x† op x` over the support `rows`, for an `op` that preserves the support.
fn expectation(op: &SparseOp, x: &[C64], rows: &[usize]) -> f64 {
    rows.iter()
        .map(|&i| {
            let y: C64 = op.row(i).iter().map(|&(k, v)| v * x[k]).sum();
            (x[i].conj() * y).re
        })
        .sum()
}

fn normalize(x: &mut [C64], rows: &[usize]) {
    let n = rows.iter().map(|&i| x[i].norm_sqr()).sum::<f64>().sqrt();
    rows.iter().for_each(|&i| x[i] /= n);
}

/// Integrator state. `H_eff` and every `c†c` preserve the total magnetization,
/// so only the sectors carrying amplitude are touched.
struct Stepper<'a> {
    ops: &'a Operators,
    cdc: Vec<SparseOp>,
    by_sector: Vec<Vec<usize>>,
    sector_of: Vec<usize>,
    support: Vec<usize>,
    k: [Vec<C64>; 4],
    tmp: Vec<C64>,
}

impl<'a> Stepper<'a> {
    fn new(model: &SpinModel, ops: &'a Operators, cdc: Vec<SparseOp>) -> Self {
        let d = model.dim();
        let sector_of: Vec<usize> = (0..d).map(|i| model.sector(i)).collect();
        let mut by_sector = vec![Vec::new(); sector_of.iter().max().map_or(0, |m| m + 1)];
        for (i, &s) in sector_of.iter().enumerate() {
            by_sector[s].push(i);
        }
        let z = vec![C64::new(0.0, 0.0); d];
        Self {
            ops,
            cdc,
            by_sector,
            sector_of,
            support: Vec::new(),
            k: [z.clone(), z.clone(), z.clone(), z.clone()],
            tmp: z,
        }
    }

    fn set_support(&mut self, psi: &[C64]) {
        let mut live = vec![false; self.by_sector.len()];
        for (i, z) in psi.iter().enumerate() {
            if *z != C64::new(0.0, 0.0) {
                live[self.sector_of[i]] = true;
            }
        }
        self.support = live
            .iter()
            .enumerate()
            .filter(|(_, &l)| l)
            .flat_map(|(s, _)| self.by_sector[s].iter().copied())
            .collect();
    }

    fn deriv(&self, x: &[C64], out: &mut [C64]) {
        for &i in &self.support {
            let y: C64 = self.ops.heff.row(i).iter().map(|&(k, v)| v * x[k]).sum();
            out[i] = C64::new(y.im, -y.re);
        }
    }

    fn no_jump(&mut self, psi: &mut [C64], h: f64) {
        let mut k = std::mem::take(&mut self.k);
        let mut tmp = std::mem::take(&mut self.tmp);
        self.deriv(psi, &mut k[0]);
        for &i in &self.support {
            tmp[i] = psi[i] + 0.5 * h * k[0][i];
        }
        self.deriv(&tmp, &mut k[1]);
        for &i in &self.support {
            tmp[i] = psi[i] + 0.5 * h * k[1][i];
        }
        self.deriv(&tmp, &mut k[2]);
        for &i in &self.support {
            tmp[i] = psi[i] + h * k[2][i];
        }
        self.deriv(&tmp, &mut k[3]);
        for &i in &self.support {
            psi[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
        }
        normalize(psi, &self.support);
        self.k = k;
        self.tmp = tmp;
    }

    /// Per-channel probabilities `2 h ‖c_μ ψ‖²`.
    fn probabilities(&self, psi: &[C64], h: f64) -> Vec<f64> {
        self.cdc
            .iter()
            .map(|m| 2.0 * h * expectation(m, psi, &self.support))
            .collect()
    }

    fn jump(&mut self, psi: &mut Vec<C64>, channel: usize) {
        let mut out = vec![C64::new(0.0, 0.0); psi.len()];
        let all: Vec<usize> = (0..psi.len()).collect();
        apply(&self.ops.jumps[channel], psi, &all, &mut out);
        *psi = out;
        self.set_support(psi);
        normalize(psi, &self.support);
    }
}

fn observe(model: &SpinModel, psi: &[C64]) -> (f64, f64) {
    let (mut a, mut b) = (0.0, 0.0);
    for (i, z) in psi.iter().enumerate() {
        let p = z.norm_sqr();
        let (ma, mb) = model.m_values(i);
        a += ma * p;
        b += mb * p;
    }
    (a / model.s, b / model.s)
}

fn run_one(
    model: &SpinModel,
    ops: &Operators,
    psi0: &[C64],
    times: &[f64],
    dt: f64,
    seed: u64,
    stream: u64,
) -> Result<Run> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let cdc = ops.jumps.iter().map(SparseOp::adjoint_times_self).collect();
    let mut stepper = Stepper::new(model, ops, cdc);
    let mut psi = psi0.to_vec();
    stepper.set_support(&psi);
    let mut dt = dt;
    let mut series = vec![Vec::with_capacity(times.len()); 2];
    let mut jumps = Vec::new();
    let mut warnings = Vec::new();
    let mut halvings = 0;
    let record = |psi: &[C64], series: &mut Vec<Vec<f64>>| {
        let (a, b) = observe(model, psi);
        series[0].push(a);
        series[1].push(b);
    };
    record(&psi, &mut series);
    let mut t = times[0];
    for &target in &times[1..] {
        let mut n = ((target - t) / dt).ceil().max(1.0) as usize;
        let mut h = (target - t) / n as f64;
        let mut k = 0;
        while k < n {
            let p = stepper.probabilities(&psi, h);
            let total: f64 = p.iter().sum();
            if total > MAX_JUMP_PROBABILITY {
                halvings += 1;
                if halvings > MAX_HALVINGS {
                    return Err(Error::InvalidParameter(format!(
                        "jump probability {total} per step persists after {MAX_HALVINGS} halvings"
                    )));
                }
                dt /= 2.0;
                warnings.push(format!(
                    "trajectory {stream}: jump probability {total:.4} at t = {t:.6}; dt halved to {dt:e}"
                ));
                n = ((target - t) / dt).ceil().max(1.0) as usize;
                h = (target - t) / n as f64;
                k = 0;
                continue;
            }
            let r: f64 = rng.random();
            if r < total {
                let mut acc = 0.0;
                let mut channel = p.len() - 1;
                for (mu, &pm) in p.iter().enumerate() {
                    acc += pm;
                    if r < acc {
                        channel = mu;
                        break;
                    }
                }
                stepper.jump(&mut psi, channel);
                jumps.push((t + h, channel));
            } else {
                stepper.no_jump(&mut psi, h);
            }
            t += h;
            k += 1;
        }
        t = target;
        if psi.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        record(&psi, &mut series);
    }
    Ok(Run {
        series,
        jumps,
        warnings,
    })
}

/// Step size keeping `2 dt Σ ‖c_μ‖²` at 0.01 and `dt ‖H_eff‖` at 0.1.
pub fn default_dt(ops: &Operators) -> f64 {
    let jump_rate: f64 = 2.0 * ops.jumps.iter().map(|c| c.norm_bound().powi(2)).sum::<f64>();
    let hnorm = ops.heff.norm_bound();
    let mut dt = f64::INFINITY;
    if jump_rate > 0.0 {
        dt = dt.min(DEFAULT_PROBABILITY / jump_rate);
    }
    if hnorm > 0.0 {
        dt = dt.min(HEFF_STEP_FACTOR / hnorm);
    }
    dt
}

pub fn mc_trajectories(
    model: &SpinModel,
    psi0: &DVector<C64>,
    times: &[f64],
    n_traj: usize,
    seed: u64,
    opts: &McOptions,
) -> Result<TrajectoryEnsemble> {
    if n_traj == 0 {
        return Err(Error::InvalidParameter("n_traj must be at least 1".into()));
    }
    if psi0.len() != model.dim() {
        return Err(Error::DimensionMismatch(format!(
            "psi0 has length {}, expected {}",
            psi0.len(),
            model.dim()
        )));
    }
    if psi0.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if (psi0.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidState(format!("psi0 has norm {}", psi0.norm())));
    }
    if times.is_empty() {
        return Err(Error::InvalidGrid("times must not be empty".into()));
    }
    crate::dynamics::check_times(times)?;
    let ops = model.operators();
    let dt = match opts.dt {
        Some(h) if h > 0.0 && h.is_finite() => h,
        Some(h) => return Err(Error::InvalidParameter(format!("dt = {h} must be positive"))),
        None => default_dt(&ops),
    };
    let psi0 = psi0.as_slice();
    let runs: Vec<Run> = (0..n_traj as u64)
        .into_par_iter()
        .map(|k| run_one(model, &ops, psi0, times, dt, seed, k))
        .collect::<Result<_>>()?;

    let nt = times.len();
    let nf = n_traj as f64;
    let mut mean = vec![vec![0.0; nt]; 2];
    let mut sem = vec![vec![0.0; nt]; 2];
    for o in 0..2 {
        for ti in 0..nt {
            let m = runs.iter().map(|r| r.series[o][ti]).sum::<f64>() / nf;
            mean[o][ti] = m;
            if n_traj > 1 {
                let var = runs.iter().map(|r| (r.series[o][ti] - m).powi(2)).sum::<f64>() / (nf - 1.0);
                sem[o][ti] = (var / nf).sqrt();
            }
        }
    }
    let mut warnings = Vec::new();
    let mut trajectories = Vec::with_capacity(n_traj);
    let mut jumps = Vec::with_capacity(n_traj);
    for r in runs {
        warnings.extend(r.warnings);
        trajectories.push(r.series);
        jumps.push(r.jumps);
    }
    Ok(TrajectoryEnsemble {
        seed,
        streams: (0..n_traj as u64).collect(),
        times: times.to_vec(),
        names: vec!["sz_a".into(), "sz_b".into()],
        trajectories,
        mean,
        sem,
        jumps,
        dt,
        warnings,
    })
}
