//! RK4 integration of the two-spin master equation.
//!
//! The generator preserves the coherence order `q = sector(i) − sector(j)` of
//! every matrix element, so only the entries whose order appears in `ρ(0)` are
//! ever stored or updated.

use nalgebra::DMatrix;
use serde::Serialize;

use super::{min_eigenvalue_at_least, SpinModel};
use crate::error::{Error, Result};
use crate::numerics::C64;

/// Trace drift per step that triggers step halving.
pub const TRACE_DRIFT_TOL: f64 = 1e-6;
/// Tolerance on Hermiticity, trace and positivity of the initial state.
pub const INITIAL_STATE_TOL: f64 = 1e-10;
const MAX_HALVINGS: u32 = 10;
const DEFAULT_STEP_FACTOR: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LindbladOptions {
    /// Step size; `None` uses `0.1 / rate_bound`.
    pub dt: Option<f64>,
    /// Test `ρ + 1e-8·I > 0` at every output time.
    pub check_positivity: bool,
}

impl Default for LindbladOptions {
    fn default() -> Self {
        Self {
            dt: None,
            check_positivity: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LindbladResult {
    pub times: Vec<f64>,
    /// `⟨S_A^z⟩/S`
    pub sz_a: Vec<f64>,
    /// `⟨S_B^z⟩/S`
    pub sz_b: Vec<f64>,
    pub purity: Vec<f64>,
    pub trace: Vec<f64>,
    /// Empty unless positivity checks were requested.
    pub positive: Vec<bool>,
    #[serde(skip)]
    pub rho_final: DMatrix<C64>,
    pub dt: f64,
    pub steps: usize,
    pub halvings: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct SteadyState {
    #[serde(skip)]
    pub rho: DMatrix<C64>,
    pub sz_a: f64,
    pub sz_b: f64,
    pub purity: f64,
    /// Entrywise 1-norm of `dρ/dt`, an upper bound on its trace norm.
    pub residual: f64,
    pub t: f64,
    pub converged: bool,
}

/// The generator restricted to the active entries, stored as a sparse matrix
/// over the compact state vector.
struct Generator {
    d: usize,
    active: Vec<(usize, usize)>,
    rows: Vec<Vec<(u32, C64)>>,
    diag: Vec<usize>,
    partner: Vec<usize>,
    rate: f64,
}

impl Generator {
    fn new(model: &SpinModel, rho0: &DMatrix<C64>) -> Self {
        let d = model.dim();
        let nsec = 2 * (model.site_dim() - 1) + 1;
        let order = |i: usize, j: usize| model.sector(i) + nsec - 1 - model.sector(j);
        let mut orders = vec![false; 2 * nsec - 1];
        for i in 0..d {
            for j in 0..d {
                if rho0[(i, j)] != C64::new(0.0, 0.0) {
                    orders[order(i, j)] = true;
                }
            }
        }
        let mut active = Vec::new();
        let mut pos = vec![u32::MAX; d * d];
        for i in 0..d {
            for j in 0..d {
                if orders[order(i, j)] {
                    pos[i * d + j] = active.len() as u32;
                    active.push((i, j));
                }
            }
        }
        let ops = model.operators();
        let mi = C64::new(0.0, -1.0);
        let rows = active
            .iter()
            .map(|&(i, j)| {
                let mut row: Vec<(u32, C64)> = Vec::new();
                let mut add = |p: u32, v: C64| {
                    debug_assert!(p != u32::MAX);
                    match row.iter_mut().find(|e| e.0 == p) {
                        Some(e) => e.1 += v,
                        None => row.push((p, v)),
                    }
                };
                for &(k, v) in ops.heff.row(i) {
                    add(pos[k * d + j], mi * v);
                }
                for &(k, v) in ops.heff.row(j) {
                    add(pos[i * d + k], -mi * v.conj());
                }
                for c in &ops.jumps {
                    for &(k, a) in c.row(i) {
                        for &(l, b) in c.row(j) {
                            add(pos[k * d + l], 2.0 * a * b.conj());
                        }
                    }
                }
                row
            })
            .collect();
        let diag = (0..d).map(|i| pos[i * d + i] as usize).collect();
        let partner = active.iter().map(|&(i, j)| pos[j * d + i] as usize).collect();
        Self {
            d,
            active,
            rows,
            diag,
            partner,
            rate: model.rate_bound(&ops),
        }
    }

    fn len(&self) -> usize {
        self.active.len()
    }

    fn apply(&self, rho: &[C64], out: &mut [C64]) {
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().map(|&(p, v)| v * rho[p as usize]).sum();
        }
    }

    fn compact(&self, rho: &DMatrix<C64>) -> Vec<C64> {
        self.active.iter().map(|&(i, j)| rho[(i, j)]).collect()
    }

    fn to_matrix(&self, rho: &[C64]) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.d, self.d);
        for (&(i, j), &v) in self.active.iter().zip(rho) {
            m[(i, j)] = v;
        }
        m
    }

    fn trace(&self, rho: &[C64]) -> C64 {
        self.diag.iter().map(|&p| rho[p]).sum()
    }

    fn hermitize(&self, rho: &mut [C64]) {
        for (p, &q) in self.partner.iter().enumerate() {
            if p < q {
                let avg = 0.5 * (rho[p] + rho[q].conj());
                rho[p] = avg;
                rho[q] = avg.conj();
            } else if p == q {
                rho[p].im = 0.0;
            }
        }
    }

    fn rk4(&self, rho: &mut [C64], h: f64, ws: &mut Workspace) {
        let Workspace { k1, k2, k3, k4, tmp } = ws;
        self.apply(rho, k1);
        for p in 0..rho.len() {
            tmp[p] = rho[p] + 0.5 * h * k1[p];
        }
        self.apply(tmp, k2);
        for p in 0..rho.len() {
            tmp[p] = rho[p] + 0.5 * h * k2[p];
        }
        self.apply(tmp, k3);
        for p in 0..rho.len() {
            tmp[p] = rho[p] + h * k3[p];
        }
        self.apply(tmp, k4);
        for p in 0..rho.len() {
            rho[p] += h / 6.0 * (k1[p] + 2.0 * k2[p] + 2.0 * k3[p] + k4[p]);
        }
    }
}

struct Workspace {
    k1: Vec<C64>,
    k2: Vec<C64>,
    k3: Vec<C64>,
    k4: Vec<C64>,
    tmp: Vec<C64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        let z = vec![C64::new(0.0, 0.0); n];
        Self {
            k1: z.clone(),
            k2: z.clone(),
            k3: z.clone(),
            k4: z.clone(),
            tmp: z,
        }
    }
}

fn validate_state(model: &SpinModel, rho0: &DMatrix<C64>) -> Result<()> {
    let d = model.dim();
    if rho0.nrows() != d || rho0.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "rho0 is {}x{}, expected {d}x{d}",
            rho0.nrows(),
            rho0.ncols()
        )));
    }
    if rho0.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if crate::numerics::max_abs_diff(rho0, &rho0.adjoint()) > INITIAL_STATE_TOL {
        return Err(Error::InvalidState("rho0 is not Hermitian".into()));
    }
    let tr = rho0.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > INITIAL_STATE_TOL {
        return Err(Error::InvalidState(format!("rho0 has trace {tr}")));
    }
    if !min_eigenvalue_at_least(rho0, INITIAL_STATE_TOL) {
        return Err(Error::InvalidState("rho0 is not positive semidefinite".into()));
    }
    Ok(())
}

fn default_dt(gen: &Generator) -> f64 {
    if gen.rate > 0.0 {
        DEFAULT_STEP_FACTOR / gen.rate
    } else {
        f64::INFINITY
    }
}

struct Observables {
    sz_a: f64,
    sz_b: f64,
    purity: f64,
    trace: f64,
}

fn observe(model: &SpinModel, gen: &Generator, rho: &[C64]) -> Observables {
    let (mut a, mut b) = (0.0, 0.0);
    for (i, &p) in gen.diag.iter().enumerate() {
        let w = rho[p].re;
        let (ma, mb) = model.m_values(i);
        a += ma * w;
        b += mb * w;
    }
    Observables {
        sz_a: a / model.s,
        sz_b: b / model.s,
        purity: rho.iter().map(|z| z.norm_sqr()).sum(),
        trace: gen.trace(rho).re,
    }
}

/// Integrates `dρ/dt` from `times[0]` through every output time.
pub fn lindblad_evolve(
    model: &SpinModel,
    rho0: &DMatrix<C64>,
    times: &[f64],
    opts: &LindbladOptions,
) -> Result<LindbladResult> {
    validate_state(model, rho0)?;
    if times.is_empty() {
        return Err(Error::InvalidGrid("times must not be empty".into()));
    }
    crate::dynamics::check_times(times)?;
    let gen = Generator::new(model, rho0);
    let base_dt = match opts.dt {
        Some(h) if h > 0.0 && h.is_finite() => h,
        Some(h) => return Err(Error::InvalidParameter(format!("dt = {h} must be positive"))),
        None => default_dt(&gen),
    };
    let mut rho: Vec<C64> = gen.compact(rho0);
    let mut ws = Workspace::new(gen.len());
    let mut out = LindbladResult {
        times: times.to_vec(),
        sz_a: Vec::with_capacity(times.len()),
        sz_b: Vec::with_capacity(times.len()),
        purity: Vec::with_capacity(times.len()),
        trace: Vec::with_capacity(times.len()),
        positive: Vec::new(),
        rho_final: DMatrix::zeros(0, 0),
        dt: base_dt,
        steps: 0,
        halvings: 0,
    };
    let record = |rho: &[C64], out: &mut LindbladResult| {
        let o = observe(model, &gen, rho);
        out.sz_a.push(o.sz_a);
        out.sz_b.push(o.sz_b);
        out.purity.push(o.purity);
        out.trace.push(o.trace);
        if opts.check_positivity {
            out.positive.push(min_eigenvalue_at_least(&gen.to_matrix(rho), 1e-8));
        }
    };
    record(&rho, &mut out);
    let mut t = times[0];
    for &target in &times[1..] {
        let mut halving = 0;
        loop {
            let span = target - t;
            let h0 = base_dt / 2f64.powi(halving as i32);
            let n = (span / h0).ceil().max(1.0) as usize;
            let h = span / n as f64;
            let mut trial = rho.clone();
            let mut drift_at = None;
            for k in 0..n {
                let tr_before = gen.trace(&trial);
                gen.rk4(&mut trial, h, &mut ws);
                gen.hermitize(&mut trial);
                let drift = (gen.trace(&trial) - tr_before).norm();
                if !drift.is_finite() || drift > TRACE_DRIFT_TOL {
                    drift_at = Some((drift, t + (k + 1) as f64 * h));
                    break;
                }
            }
            match drift_at {
                None => {
                    out.steps += n;
                    rho = trial;
                    break;
                }
                Some((drift, at)) => {
                    halving += 1;
                    out.halvings += 1;
                    if halving > MAX_HALVINGS {
                        return Err(Error::TraceDrift { drift, t: at });
                    }
                }
            }
        }
        t = target;
        record(&rho, &mut out);
    }
    out.rho_final = gen.to_matrix(&rho);
    Ok(out)
}

/// Integrates until the entrywise 1-norm of `dρ/dt` drops below `tol` or
/// `max_time` elapses. Starts from `rho0`, or the maximally mixed state.
pub fn steady_state(
    model: &SpinModel,
    tol: f64,
    max_time: f64,
    rho0: Option<&DMatrix<C64>>,
) -> Result<SteadyState> {
    if !(tol > 0.0) || !(max_time > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tol = {tol} and max_time = {max_time} must be positive"
        )));
    }
    let d = model.dim();
    let mixed = DMatrix::<C64>::identity(d, d) / C64::new(d as f64, 0.0);
    let rho0 = rho0.unwrap_or(&mixed);
    validate_state(model, rho0)?;
    let gen = Generator::new(model, rho0);
    let h = default_dt(&gen).min(max_time);
    let h = if h.is_finite() { h } else { max_time };
    let mut rho: Vec<C64> = gen.compact(rho0);
    let mut ws = Workspace::new(gen.len());
    let mut deriv = vec![C64::new(0.0, 0.0); gen.len()];
    let mut t = 0.0;
    let check_every = 50;
    let residual = loop {
        gen.apply(&rho, &mut deriv);
        let res: f64 = deriv.iter().map(|z| z.norm()).sum();
        if res < tol || t >= max_time {
            break res;
        }
        for _ in 0..check_every {
            gen.rk4(&mut rho, h, &mut ws);
            gen.hermitize(&mut rho);
            t += h;
        }
        let tr = gen.trace(&rho);
        if !tr.re.is_finite() || (tr - C64::new(1.0, 0.0)).norm() > TRACE_DRIFT_TOL {
            return Err(Error::TraceDrift {
                drift: (tr - C64::new(1.0, 0.0)).norm(),
                t,
            });
        }
    };
    let o = observe(model, &gen, &rho);
    Ok(SteadyState {
        rho: gen.to_matrix(&rho),
        sz_a: o.sz_a,
        sz_b: o.sz_b,
        purity: o.purity,
        residual,
        t,
        converged: residual < tol,
    })
}
