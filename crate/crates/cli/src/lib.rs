//! Command-line front end. [`run`] parses arguments, performs one command and
//! writes its artifacts; the binary only forwards the outcome to the process.

mod args;
mod error;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::{json, Map, Value};
use thirdq::dynamics::{evolve_moments, observable_series, stationary_second, MomentState};
use thirdq::export;
use thirdq::model::{
    build_structure, hp_observable, n_from_sz, parse_model_file, preset, HpFrame, Preset, PresetParams, QuadraticModel,
};
use thirdq::numerics::{jordan_structure, RANK_TOL_REL};
use thirdq::spectrum::{analyze, beta_spectrum, ep_scan, liouvillian_gap, Validity};
use thirdq::symmetry::{check_symmetry, classify_beta_pt, ParityKind, BETA_CLASS_TOL};
use thirdq::trajectory::{
    density, lindblad_evolve, mc_trajectories, steady_state, LindbladOptions, McOptions, SpinModel, DEFAULT_MAX_SPIN,
};
use thirdq::C64;

pub use args::{Cli, Command};
pub use error::{exit, CliError};

/// Text for stdout; empty when everything went to files.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Outcome {
                    stdout: e.render().to_string(),
                    warnings: Vec::new(),
                }),
                _ => Err(CliError::usage(e.render().to_string().trim_end())),
            };
        }
    };
    let recorded: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    Runner { args: recorded }.dispatch(cli.command)
}

struct Runner {
    args: Vec<String>,
}

struct Resolved {
    model: QuadraticModel,
    frame: Option<HpFrame>,
    source: Value,
    warnings: Vec<String>,
}

fn params(m: &args::ModelArgs) -> PresetParams {
    PresetParams {
        gg: m.gg,
        gl: m.gl,
        g: m.g,
        gamma: m.gamma,
        omega: m.omega,
    }
}

fn parse_preset(name: &str) -> Result<Preset, CliError> {
    name.parse::<Preset>().map_err(CliError::from)
}

fn resolve(m: &args::ModelArgs) -> Result<Resolved, CliError> {
    let (model, frame, source, warnings) = match (&m.preset, &m.model_file) {
        (Some(_), Some(_)) => return Err(CliError::usage("give exactly one of --preset and --model-file")),
        (None, None) => return Err(CliError::usage("a model source is required: --preset or --model-file")),
        (Some(name), None) => {
            let p = parse_preset(name)?;
            let pm = preset(p, &params(m))?;
            let src = json!({ "preset": p.name(), "params": params(m) });
            (pm.model, pm.frame, src, pm.warnings)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| CliError {
                code: exit::MODEL_FILE,
                kind: "model_file",
                message: format!("{}: {e}", path.display()),
            })?;
            let (model, frame) = parse_model_file(&text)?;
            (model, frame, json!({ "model_file": path.display().to_string() }), Vec::new())
        }
    };
    let frame = match (frame, m.spin) {
        (Some(f), Some(s)) => Some(f.with_spin(s)?),
        (f, _) => f,
    };
    Ok(Resolved {
        model,
        frame,
        source,
        warnings,
    })
}

fn time_grid(g: &args::TimeArgs) -> Result<Vec<f64>, CliError> {
    if !g.t0.is_finite() || !g.t1.is_finite() {
        return Err(CliError::grid("--t0 and --t1 must be finite"));
    }
    if g.steps == 0 {
        return Err(CliError::grid("--steps must be at least 1"));
    }
    if g.t1 <= g.t0 {
        return Err(CliError::grid(format!("--t1 = {} must exceed --t0 = {}", g.t1, g.t0)));
    }
    let n = g.steps as f64;
    let times: Vec<f64> = (0..=g.steps).map(|k| g.t0 + (g.t1 - g.t0) * k as f64 / n).collect();
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::grid("time grid is not strictly increasing at this resolution"));
    }
    Ok(times)
}

/// `name=start:stop:n` into a named list of `n` equally spaced values.
fn parse_axis(spec: &str) -> Result<(String, Vec<f64>), CliError> {
    let bad = || CliError::grid(format!("grid `{spec}` is not of the form name=start:stop:n"));
    let (name, range) = spec.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !start.is_finite() || !stop.is_finite() || n == 0 {
        return Err(bad());
    }
    if n == 1 && start != stop {
        return Err(CliError::grid(format!("grid `{spec}`: one point needs start = stop")));
    }
    if n > 1 && stop <= start {
        return Err(CliError::grid(format!("grid `{spec}`: stop must exceed start")));
    }
    let name = name.trim();
    if !["gg", "gl", "g", "gamma", "omega"].contains(&name) {
        return Err(CliError::grid(format!("unknown grid parameter `{name}`")));
    }
    let vals = if n == 1 {
        vec![start]
    } else {
        (0..n).map(|k| start + (stop - start) * k as f64 / (n - 1) as f64).collect()
    };
    Ok((name.to_string(), vals))
}

fn set_param(p: &mut PresetParams, name: &str, v: f64) {
    match name {
        "gg" => p.gg = Some(v),
        "gl" => p.gl = Some(v),
        "g" => p.g = Some(v),
        "gamma" => p.gamma = Some(v),
        "omega" => p.omega = Some(v),
        _ => unreachable!("checked by parse_axis"),
    }
}

fn pair(z: C64) -> Value {
    json!([z.re, z.im])
}

fn initial_state(init: &args::InitArgs, n: usize, frame: Option<&HpFrame>) -> Result<MomentState, CliError> {
    let expand = |v: &[f64], what: &str| -> Result<Vec<f64>, CliError> {
        match v.len() {
            0 => Ok(vec![0.0; n]),
            1 => Ok(vec![v[0]; n]),
            k if k == n => Ok(v.to_vec()),
            k => Err(CliError::usage(format!("--{what} has {k} values for {n} modes"))),
        }
    };
    if !init.sz0.is_empty() && !init.occ.is_empty() {
        return Err(CliError::usage("give at most one of --sz0 and --occ"));
    }
    let occ = if init.sz0.is_empty() {
        expand(&init.occ, "occ")?
    } else {
        let f = frame.ok_or_else(|| CliError::usage("--sz0 needs a model with an HP frame"))?;
        match init.sz0.len() {
            1 => vec![n_from_sz(init.sz0[0], f, 0)?; n],
            k if k == n => (0..n).map(|i| n_from_sz(init.sz0[i], f, i)).collect::<thirdq::Result<Vec<_>>>()?,
            k => return Err(CliError::usage(format!("--sz0 has {k} values for {n} sites"))),
        }
    };
    let re = expand(&init.mean, "mean")?;
    let im = expand(&init.mean_im, "mean-im")?;
    let mean: Vec<C64> = re.iter().zip(&im).map(|(a, b)| C64::new(*a, *b)).collect();
    Ok(MomentState::from_occupations(&mean, &occ)?)
}

fn spin_model(m: &args::ModelArgs) -> Result<(SpinModel, Value), CliError> {
    if m.model_file.is_some() {
        return Err(CliError::usage("the finite-spin model takes --gg/--gl/--g, not --model-file"));
    }
    if let Some(name) = &m.preset {
        let p = parse_preset(name)?;
        if !matches!(p, Preset::Afm2Spin | Preset::Fm2SpinUp) {
            return Err(CliError::usage(format!("preset {p} has no finite-spin model")));
        }
    }
    let s = m.spin.unwrap_or(10.0);
    let gg = m.gg.or(m.gamma).ok_or_else(|| CliError::usage("--gg (or --gamma) is required"))?;
    let gl = m.gl.or(m.gamma).ok_or_else(|| CliError::usage("--gl (or --gamma) is required"))?;
    let g = m.g.ok_or_else(|| CliError::usage("--g is required"))?;
    let model = SpinModel::new(s, g, gg, gl)?;
    let cfg = json!({ "spin": s, "gg": gg, "gl": gl, "g": g });
    Ok((model, cfg))
}

impl Runner {
    fn dispatch(&self, cmd: Command) -> Result<Outcome, CliError> {
        match cmd {
            Command::Spectrum { model, max_order, out } => self.spectrum(&model, max_order, &out),
            Command::Gap { model, out } => self.gap(&model, &out),
            Command::PtCheck {
                model,
                parity,
                tol,
                out,
            } => self.pt_check(&model, parity, tol, &out),
            Command::EpScan { model, grid, tol, out } => self.ep_scan(&model, &grid, tol, &out),
            Command::Dynamics { model, grid, init, out } => self.dynamics(&model, &grid, &init, &out),
            Command::Steady {
                model,
                lindblad,
                tol,
                max_time,
                out,
            } => {
                if lindblad {
                    self.steady_lindblad(&model, tol, max_time, &out)
                } else {
                    self.steady(&model, &out)
                }
            }
            Command::Trajectory {
                model,
                grid,
                ntraj,
                seed,
                dt,
                ma0,
                mb0,
                no_lindblad,
                traj_out,
                out,
            } => self.trajectory(
                &model,
                &grid,
                TrajectoryKnobs {
                    ntraj,
                    seed,
                    dt,
                    ma0,
                    mb0,
                    lindblad: !no_lindblad,
                    traj_out,
                },
                &out,
            ),
            Command::Presets { out } => self.presets(&out),
        }
    }

    fn meta(&self, command: &str, config: Value, tolerances: Value, diagnostics: Value, warnings: &[String]) -> Value {
        json!({
            "tool": "thirdq",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "args": self.args,
            "config": config,
            "tolerances": tolerances,
            "diagnostics": diagnostics,
            "warnings": warnings,
        })
    }

    fn emit_csv(&self, out: &args::OutArgs, csv: String, meta: Value, warnings: Vec<String>) -> Result<Outcome, CliError> {
        match &out.out {
            Some(path) => {
                write_file(path, &csv)?;
                write_file(&sidecar(path), &pretty(&meta))?;
                Ok(Outcome {
                    stdout: String::new(),
                    warnings,
                })
            }
            None => Ok(Outcome { stdout: csv, warnings }),
        }
    }

    fn emit_json(&self, out: &args::OutArgs, value: Value, warnings: Vec<String>) -> Result<Outcome, CliError> {
        let text = pretty(&value);
        match &out.out {
            Some(path) => {
                write_file(path, &text)?;
                Ok(Outcome {
                    stdout: String::new(),
                    warnings,
                })
            }
            None => Ok(Outcome { stdout: text, warnings }),
        }
    }

    fn spectrum(&self, m: &args::ModelArgs, max_order: usize, out: &args::OutArgs) -> Result<Outcome, CliError> {
        let r = resolve(m)?;
        let x = build_structure(&r.model).x;
        let rep = analyze(&x, max_order)?;
        let mut warnings = r.warnings;
        if rep.spectrum.validity == Validity::Formal {
            warnings.push("some Re beta <= 0: the enumeration is a formal limit, not the spectrum".into());
        }
        if rep.spectrum.truncated {
            warnings.push(format!("enumeration truncated after {} multi-indices", rep.spectrum.enumerated));
        }
        if rep.jordan.low_confidence {
            warnings.push("Jordan structure decided close to the rank threshold".into());
        }
        let meta = self.meta(
            "spectrum",
            json!({ "model": r.source, "max_order": max_order }),
            json!({ "dedup_tol": rep.spectrum.dedup_tol, "cluster_tol": rep.betas.cluster_tol, "rank_tol_rel": RANK_TOL_REL }),
            json!({
                "validity": rep.spectrum.validity,
                "truncated": rep.spectrum.truncated,
                "enumerated": rep.spectrum.enumerated,
                "collisions": rep.spectrum.collisions,
                "distinct": rep.spectrum.entries.len(),
                "gap": rep.gap,
                "betas": rep.betas.values.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
                "jordan": rep.jordan,
            }),
            &warnings,
        );
        self.emit_csv(out, export::spectrum_csv(&rep.spectrum), meta, warnings)
    }

    fn gap(&self, m: &args::ModelArgs, out: &args::OutArgs) -> Result<Outcome, CliError> {
        let r = resolve(m)?;
        let x = build_structure(&r.model).x;
        let betas = beta_spectrum(&x)?;
        let jordan = jordan_structure(&x, RANK_TOL_REL)?;
        let min_re = betas.values.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let scale = betas.max_abs().max(1.0);
        let validity = if min_re > thirdq::spectrum::VALIDITY_TOL_REL * scale {
            Validity::Rigorous
        } else {
            Validity::Formal
        };
        let value = json!({
            "model": r.source,
            "gap": liouvillian_gap(&betas),
            "min_re_beta": min_re,
            "validity": validity,
            "betas": betas.values.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
            "jordan": jordan,
            "warnings": r.warnings,
        });
        self.emit_json(out, value, r.warnings)
    }

    fn pt_check(&self, m: &args::ModelArgs, parity: args::Parity, tol: f64, out: &args::OutArgs) -> Result<Outcome, CliError> {
        if !(tol > 0.0) {
            return Err(CliError::usage("--tol must be positive"));
        }
        let r = resolve(m)?;
        let kind = match parity {
            args::Parity::Reflection => ParityKind::Reflection,
            args::Parity::SectorSwap => ParityKind::SectorSwap,
        };
        let report = check_symmetry(&r.model, kind, tol)?;
        let betas = beta_spectrum(&build_structure(&r.model).x)?;
        let mut value = serde_json::to_value(&report).expect("report serializes");
        let obj = value.as_object_mut().expect("report is an object");
        obj.insert("beta_phase".into(), json!(classify_beta_pt(&betas, BETA_CLASS_TOL)));
        obj.insert("model".into(), r.source);
        self.emit_json(out, value, r.warnings)
    }

    fn ep_scan(&self, m: &args::ModelArgs, grid: &[String], tol: f64, out: &args::OutArgs) -> Result<Outcome, CliError> {
        if m.model_file.is_some() {
            return Err(CliError::usage("ep-scan scans a preset family; --model-file is not accepted"));
        }
        let name = m.preset.as_deref().ok_or_else(|| CliError::usage("ep-scan needs --preset"))?;
        let family = parse_preset(name)?;
        if grid.is_empty() {
            return Err(CliError::grid("at least one --grid axis is required"));
        }
        let axes = grid.iter().map(|s| parse_axis(s)).collect::<Result<Vec<_>, _>>()?;
        for (i, (a, _)) in axes.iter().enumerate() {
            if axes[..i].iter().any(|(b, _)| a == b) {
                return Err(CliError::grid(format!("grid parameter `{a}` given twice")));
            }
        }
        let total = axes.iter().try_fold(1usize, |acc, (_, v)| acc.checked_mul(v.len()));
        let total = total.filter(|&t| t <= 10_000_000).ok_or_else(|| CliError::grid("grid is too large"))?;
        let base = params(m);
        let mut points = Vec::with_capacity(total);
        for idx in 0..total {
            let mut p = base;
            let mut rem = idx;
            for (name, vals) in axes.iter().rev() {
                set_param(&mut p, name, vals[rem % vals.len()]);
                rem /= vals.len();
            }
            points.push(p);
        }
        let found = ep_scan(family, &points, tol)?;
        let meta = self.meta(
            "ep-scan",
            json!({
                "preset": family.name(),
                "fixed": base,
                "axes": axes.iter().map(|(n, v)| json!({ "name": n, "values": v })).collect::<Vec<_>>(),
            }),
            json!({ "rank_tol_rel": tol }),
            json!({ "points": total, "exceptional": found.len() }),
            &[],
        );
        self.emit_csv(out, export::ep_scan_csv(&found), meta, Vec::new())
    }

    fn dynamics(
        &self,
        m: &args::ModelArgs,
        grid: &args::TimeArgs,
        init: &args::InitArgs,
        out: &args::OutArgs,
    ) -> Result<Outcome, CliError> {
        let r = resolve(m)?;
        let times = time_grid(grid)?;
        let s = build_structure(&r.model);
        let mut state0 = initial_state(init, r.model.n(), r.frame.as_ref())?;
        state0.t = times[0];
        let ev = evolve_moments(&s.x, &s.y, &state0, &times)?;
        let series = observable_series(&ev.states, r.frame.as_ref())?;
        let mut warnings = r.warnings;
        warnings.extend(series.warnings.iter().cloned());
        if ev.early_stop {
            warnings.push(format!("moments exceeded the norm cap; output stops at t = {}", series.times.last().copied().unwrap_or(times[0])));
        }
        if !ev.consistent {
            warnings.push("closed form and integrator disagree beyond tolerance".into());
        }
        let meta = self.meta(
            "dynamics",
            json!({
                "model": r.source,
                "frame": r.frame,
                "t0": grid.t0,
                "t1": grid.t1,
                "steps": grid.steps,
                "initial": { "sz0": init.sz0, "occ": init.occ, "mean": init.mean, "mean_im": init.mean_im },
            }),
            json!({
                "first_moment": thirdq::dynamics::FIRST_MOMENT_TOL,
                "second_moment": thirdq::dynamics::SECOND_MOMENT_TOL,
            }),
            json!({
                "method": ev.method,
                "fallback": ev.fallback,
                "first_discrepancy": ev.first_discrepancy,
                "second_discrepancy": ev.second_discrepancy,
                "consistent": ev.consistent,
                "early_stop": ev.early_stop,
            }),
            &warnings,
        );
        self.emit_csv(out, export::observables_csv(&series), meta, warnings)
    }

    fn steady(&self, m: &args::ModelArgs, out: &args::OutArgs) -> Result<Outcome, CliError> {
        let r = resolve(m)?;
        let s = build_structure(&r.model);
        let sol = stationary_second(&s.x, &s.y)?;
        let n = r.model.n();
        let occ: Vec<C64> = (0..n).map(|i| sol.z[(n + i, i)]).collect();
        let mut obj = Map::new();
        obj.insert("model".into(), r.source);
        obj.insert(
            "z".into(),
            json!((0..2 * n).map(|i| (0..2 * n).map(|j| pair(sol.z[(i, j)])).collect::<Vec<_>>()).collect::<Vec<_>>()),
        );
        obj.insert("occupations".into(), json!(occ.iter().map(|z| pair(*z)).collect::<Vec<_>>()));
        obj.insert("residual".into(), json!(sol.residual));
        obj.insert("min_sum".into(), json!(sol.min_sum));
        let mut warnings = r.warnings;
        if let Some(f) = &r.frame {
            let mut sz = Vec::with_capacity(n);
            for (i, o) in occ.iter().enumerate() {
                match hp_observable(o.re, f, i) {
                    Ok(v) => {
                        if v.warning {
                            warnings.push(format!("site {i}: stationary occupation outside the linearization range"));
                        }
                        sz.push(json!(v.value));
                    }
                    Err(e) => {
                        warnings.push(format!("site {i}: {e}"));
                        sz.push(Value::Null);
                    }
                }
            }
            obj.insert("sz".into(), json!(sz));
            obj.insert("spin".into(), json!(f.s));
        }
        obj.insert("warnings".into(), json!(warnings));
        self.emit_json(out, Value::Object(obj), warnings)
    }

    fn steady_lindblad(&self, m: &args::ModelArgs, tol: f64, max_time: f64, out: &args::OutArgs) -> Result<Outcome, CliError> {
        if !(tol > 0.0) || !(max_time > 0.0) {
            return Err(CliError::usage("--tol and --max-time must be positive"));
        }
        let (model, cfg) = spin_model(m)?;
        let ss = steady_state(&model, tol, max_time, None)?;
        let mut warnings = Vec::new();
        if !ss.converged {
            warnings.push(format!("residual {:.3e} above tolerance at t = {}", ss.residual, ss.t));
        }
        let value = json!({
            "model": cfg,
            "sz_a": ss.sz_a,
            "sz_b": ss.sz_b,
            "purity": ss.purity,
            "residual": ss.residual,
            "t": ss.t,
            "converged": ss.converged,
            "tol": tol,
            "warnings": warnings,
        });
        self.emit_json(out, value, warnings)
    }

    fn trajectory(
        &self,
        m: &args::ModelArgs,
        grid: &args::TimeArgs,
        k: TrajectoryKnobs,
        out: &args::OutArgs,
    ) -> Result<Outcome, CliError> {
        let (model, cfg) = spin_model(m)?;
        let times = time_grid(grid)?;
        if k.ntraj == 0 {
            return Err(CliError::usage("--ntraj must be positive"));
        }
        let s = model.s;
        let (ma, mb) = (k.ma0.unwrap_or(-s), k.mb0.unwrap_or(s));
        let psi0 = model.product_state(ma, mb)?;
        let ens = mc_trajectories(&model, &psi0, &times, k.ntraj, k.seed, &McOptions { dt: k.dt })?;
        let lind = if k.lindblad {
            Some(lindblad_evolve(&model, &density(&psi0), &times, &LindbladOptions::default())?)
        } else {
            None
        };
        let warnings = ens.warnings.clone();
        let config = json!({
            "model": cfg,
            "ma0": ma,
            "mb0": mb,
            "t0": grid.t0,
            "t1": grid.t1,
            "steps": grid.steps,
            "ntraj": k.ntraj,
            "seed": k.seed,
            "dt": k.dt,
            "lindblad": k.lindblad,
            "max_spin": DEFAULT_MAX_SPIN,
        });
        let tolerances = json!({
            "max_jump_probability": thirdq::trajectory::MAX_JUMP_PROBABILITY,
            "trace_drift": thirdq::trajectory::TRACE_DRIFT_TOL,
        });
        let diagnostics = json!({
            "mc_dt": ens.dt,
            "jumps": ens.jumps.iter().map(Vec::len).sum::<usize>(),
            "lindblad_dt": lind.as_ref().map(|l| l.dt),
            "lindblad_halvings": lind.as_ref().map(|l| l.halvings),
        });
        if let Some(path) = &k.traj_out {
            let meta = self.meta("trajectory", config.clone(), tolerances.clone(), diagnostics.clone(), &warnings);
            write_file(path, &export::trajectories_csv(&ens))?;
            write_file(&sidecar(path), &pretty(&meta))?;
        }
        let meta = self.meta("trajectory", config, tolerances, diagnostics, &warnings);
        self.emit_csv(out, export::ensemble_csv(&ens, lind.as_ref()), meta, warnings)
    }

    fn presets(&self, out: &args::OutArgs) -> Result<Outcome, CliError> {
        let list: Vec<Value> = Preset::ALL
            .iter()
            .map(|p| {
                json!({
                    "name": p.name(),
                    "description": p.description(),
                    "parameters": p.parameters().iter().map(|n| json!({ "name": n, "flag": format!("--{n}"), "type": "f64" })).collect::<Vec<_>>(),
                })
            })
            .collect();
        self.emit_json(out, json!({ "presets": list }), Vec::new())
    }
}

struct TrajectoryKnobs {
    ntraj: usize,
    seed: u64,
    dt: Option<f64>,
    ma0: Option<f64>,
    mb0: Option<f64>,
    lindblad: bool,
    traj_out: Option<PathBuf>,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

/// `<out>.meta.json`
pub fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}
