use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{BathVector, HpFrame, Orientation, QuadraticModel};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};

/// On-disk model description (JSON). Complex numbers are `[re, im]` pairs.
///
/// ```json
/// {
///   "n": 2,
///   "H": [[[0,0],[1,0]], [[1,0],[0,0]]],
///   "K": [[[0,0],[0,0]], [[0,0],[0,0]]],
///   "baths": [{"l": [[0.5,0],[0,0]], "k": [[0,0],[0,0]]}],
///   "hp": {"S": 10, "orientations": ["up", "down"]}
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub n: usize,
    #[serde(rename = "H")]
    pub h: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "K")]
    pub k: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub baths: Vec<ModelFileBath>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hp: Option<ModelFileHp>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFileBath {
    pub l: Vec<[f64; 2]>,
    pub k: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFileHp {
    #[serde(rename = "S")]
    pub s: f64,
    pub orientations: Vec<Orientation>,
}

fn matrix(rows: &[Vec<[f64; 2]>], n: usize, name: &str) -> Result<ComplexMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::ModelFile(format!("{name} must be {n}x{n}")));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

fn vector(v: &[[f64; 2]], n: usize, what: &str) -> Result<Vec<C64>> {
    if v.len() != n {
        return Err(Error::ModelFile(format!("{what} must have length {n}")));
    }
    Ok(v.iter().map(|p| C64::new(p[0], p[1])).collect())
}

impl ModelFile {
    pub fn into_model(self) -> Result<(QuadraticModel, Option<HpFrame>)> {
        let n = self.n;
        let h = matrix(&self.h, n, "H")?;
        let k = matrix(&self.k, n, "K")?;
        let baths = self
            .baths
            .iter()
            .enumerate()
            .map(|(mu, b)| {
                Ok(BathVector::new(
                    vector(&b.l, n, &format!("baths[{mu}].l"))?,
                    vector(&b.k, n, &format!("baths[{mu}].k"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let model = QuadraticModel::new(h, k, baths).map_err(|e| Error::ModelFile(e.to_string()))?;
        let frame = match self.hp {
            Some(hp) => {
                if hp.orientations.len() != n {
                    return Err(Error::ModelFile(format!(
                        "hp.orientations must have length {n}"
                    )));
                }
                Some(HpFrame::new(hp.s, hp.orientations).map_err(|e| Error::ModelFile(e.to_string()))?)
            }
            None => None,
        };
        Ok((model, frame))
    }

    pub fn from_model(model: &QuadraticModel, frame: Option<&HpFrame>) -> Self {
        let pair = |z: &C64| [z.re, z.im];
        let mat = |m: &ComplexMatrix| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| pair(&m[(i, j)])).collect())
                .collect()
        };
        Self {
            n: model.n(),
            h: mat(model.h()),
            k: mat(model.k()),
            baths: model
                .baths()
                .iter()
                .map(|b| ModelFileBath {
                    l: b.l.iter().map(pair).collect(),
                    k: b.k.iter().map(pair).collect(),
                })
                .collect(),
            hp: frame.map(|f| ModelFileHp {
                s: f.s,
                orientations: f.orientations.clone(),
            }),
        }
    }
}

/// Parses a JSON model file.
pub fn parse_model_file(text: &str) -> Result<(QuadraticModel, Option<HpFrame>)> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::ModelFile(e.to_string()))?;
    file.into_model()
}
