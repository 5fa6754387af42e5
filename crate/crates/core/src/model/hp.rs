use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Linearization is trusted while `n / 2S` stays below this.
pub const HP_VALIDITY_RATIO: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Vacuum is `|S⟩`; `S^z = S − a†a`.
    Up,
    /// Vacuum is `|−S⟩`; `S^z = −S + a†a`.
    Down,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HpFrame {
    pub s: f64,
    pub orientations: Vec<Orientation>,
}

impl HpFrame {
    pub fn new(s: f64, orientations: Vec<Orientation>) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() || ((2.0 * s).round() - 2.0 * s).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "spin S = {s} must be a positive half-integer"
            )));
        }
        Ok(Self { s, orientations })
    }

    pub fn with_spin(&self, s: f64) -> Result<Self> {
        Self::new(s, self.orientations.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HpValue {
    /// `⟨S^z⟩ / S`
    pub value: f64,
    /// Set when `n / 2S ≥ 0.1`.
    pub warning: bool,
}

const NEG_TOL: f64 = 1e-8;

/// Normalized magnetization of `site` from its boson occupation.
pub fn hp_observable(n_expect: f64, frame: &HpFrame, site: usize) -> Result<HpValue> {
    let orient = *frame.orientations.get(site).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "site {site} out of range for {} modes",
            frame.orientations.len()
        ))
    })?;
    if !n_expect.is_finite() || n_expect < -NEG_TOL {
        return Err(Error::InvalidState(format!("occupation {n_expect} is negative")));
    }
    let n = n_expect.max(0.0);
    let value = match orient {
        Orientation::Up => 1.0 - n / frame.s,
        Orientation::Down => -1.0 + n / frame.s,
    };
    Ok(HpValue {
        value,
        warning: n / (2.0 * frame.s) >= HP_VALIDITY_RATIO,
    })
}

/// Occupation that reproduces `⟨S^z⟩ = sz` at `site`.
pub fn n_from_sz(sz: f64, frame: &HpFrame, site: usize) -> Result<f64> {
    let orient = *frame
        .orientations
        .get(site)
        .ok_or_else(|| Error::InvalidParameter(format!("site {site} out of range")))?;
    if sz.abs() > frame.s + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "|S^z| = {} exceeds S = {}",
            sz.abs(),
            frame.s
        )));
    }
    Ok(match orient {
        Orientation::Up => frame.s - sz,
        Orientation::Down => frame.s + sz,
    })
}
