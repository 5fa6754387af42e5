use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{BathVector, HpFrame, Orientation, QuadraticModel};
use crate::error::{Error, Result};
use crate::numerics::{from_rows, re, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Afm2Spin,
    Fm2SpinUp,
    TwoBoson,
    RabiNormal,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Afm2Spin,
        Preset::Fm2SpinUp,
        Preset::TwoBoson,
        Preset::RabiNormal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Afm2Spin => "afm_2spin",
            Preset::Fm2SpinUp => "fm_2spin_up",
            Preset::TwoBoson => "two_boson",
            Preset::RabiNormal => "rabi_normal",
        }
    }

    /// Parameter names the preset reads, in CLI flag spelling.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Preset::Afm2Spin | Preset::Fm2SpinUp => &["gg", "gl", "g"],
            Preset::TwoBoson => &["gamma", "g"],
            Preset::RabiNormal => &["omega", "g", "gamma"],
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::Afm2Spin => "two spins, A pumped up and B pumped down (HP about |S>,|-S>)",
            Preset::Fm2SpinUp => "two spins, both linearized about |S> (gain on A, loss on B)",
            Preset::TwoBoson => "two hopping bosons with balanced loss on A and gain on B",
            Preset::RabiNormal => "two-mode Rabi model, normal phase, loss on A and gain on B",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Named parameters; each preset reads only the ones it needs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PresetParams {
    pub gg: Option<f64>,
    pub gl: Option<f64>,
    pub g: Option<f64>,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
}

impl PresetParams {
    pub fn spins(gg: f64, gl: f64, g: f64) -> Self {
        Self {
            gg: Some(gg),
            gl: Some(gl),
            g: Some(g),
            ..Self::default()
        }
    }

    pub fn boson(gamma: f64, g: f64) -> Self {
        Self {
            gamma: Some(gamma),
            g: Some(g),
            ..Self::default()
        }
    }

    pub fn rabi(omega: f64, g: f64, gamma: f64) -> Self {
        Self {
            omega: Some(omega),
            g: Some(g),
            gamma: Some(gamma),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresetModel {
    pub preset: Preset,
    pub model: QuadraticModel,
    pub frame: Option<HpFrame>,
    pub warnings: Vec<String>,
}

fn need(v: Option<f64>, name: &str, preset: Preset) -> Result<f64> {
    let x = v.ok_or_else(|| Error::InvalidParameter(format!("{preset} requires --{name}")))?;
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} must be finite")));
    }
    Ok(x)
}

fn rate(v: Option<f64>, name: &str, preset: Preset) -> Result<f64> {
    let x = need(v, name, preset)?;
    if x < 0.0 {
        return Err(Error::InvalidParameter(format!("rate {name} = {x} is negative")));
    }
    Ok(x)
}

fn swap(x: f64) -> DMatrix<C64> {
    from_rows(&[&[re(0.0), re(x)], &[re(x), re(0.0)]])
}

/// Builds a preset model. The HP spin size of the returned frame defaults to
/// 1000 and can be replaced by the caller.
pub fn preset(which: Preset, params: &PresetParams) -> Result<PresetModel> {
    let mut warnings = Vec::new();
    let (model, frame) = match which {
        Preset::Afm2Spin => {
            let gg = rate(params.gg, "gg", which)?;
            let gl = rate(params.gl, "gl", which)?;
            let g = need(params.g, "g", which)?;
            let model = QuadraticModel::new(
                DMatrix::zeros(2, 2),
                swap(g / 2.0),
                vec![
                    BathVector::annihilation(2, 0, gg.sqrt()),
                    BathVector::annihilation(2, 1, gl.sqrt()),
                ],
            )?;
            let frame = HpFrame::new(1000.0, vec![Orientation::Up, Orientation::Down])?;
            (model, Some(frame))
        }
        Preset::Fm2SpinUp => {
            let gg = rate(params.gg, "gg", which)?;
            let gl = rate(params.gl, "gl", which)?;
            let g = need(params.g, "g", which)?;
            let model = fm_like(gg, gl, g)?;
            let frame = HpFrame::new(1000.0, vec![Orientation::Up, Orientation::Up])?;
            (model, Some(frame))
        }
        Preset::TwoBoson => {
            let gamma = rate(params.gamma, "gamma", which)?;
            let g = need(params.g, "g", which)?;
            (fm_like(gamma, gamma, g)?, None)
        }
        Preset::RabiNormal => {
            let w = need(params.omega, "omega", which)?;
            let g = need(params.g, "g", which)?;
            let gamma = rate(params.gamma, "gamma", which)?;
            if w <= 0.0 {
                return Err(Error::InvalidParameter("omega must be positive".into()));
            }
            let gc = ((1.0 + gamma * gamma / (w * w)) / 2.0).sqrt();
            if g.abs() >= gc {
                warnings.push(format!(
                    "g = {g} is outside the normal phase (g_c = {gc:.6}); model built anyway"
                ));
            }
            let r = w * g * g / 2.0;
            let h = from_rows(&[&[re(w - r), re(-r)], &[re(-r), re(w - r)]]);
            let k = DMatrix::from_element(2, 2, re(-r / 2.0));
            let model = QuadraticModel::new(
                h,
                k,
                vec![
                    BathVector::annihilation(2, 0, gamma.sqrt()),
                    BathVector::creation(2, 1, gamma.sqrt()),
                ],
            )?;
            (model, None)
        }
    };
    Ok(PresetModel {
        preset: which,
        model,
        frame,
        warnings,
    })
}

fn fm_like(gg: f64, gl: f64, g: f64) -> Result<QuadraticModel> {
    QuadraticModel::new(
        swap(g),
        DMatrix::zeros(2, 2),
        vec![
            BathVector::annihilation(2, 0, gg.sqrt()),
            BathVector::creation(2, 1, gl.sqrt()),
        ],
    )
}
