use nalgebra::DMatrix;
use serde::Serialize;

use super::{cluster_values, eigen_decompose, ensure_square, singular_values, ComplexMatrix, C64};
use crate::error::Result;

/// Jordan blocks attached to one distinct eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JordanEntry {
    pub eigenvalue: C64,
    /// Sorted descending.
    pub block_sizes: Vec<usize>,
}

impl JordanEntry {
    pub fn algebraic_multiplicity(&self) -> usize {
        self.block_sizes.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JordanSpec {
    pub entries: Vec<JordanEntry>,
    /// Set when some rank decision had a singular value within a factor 10
    /// of the threshold.
    pub low_confidence: bool,
}

impl JordanSpec {
    pub fn dim(&self) -> usize {
        self.entries.iter().map(JordanEntry::algebraic_multiplicity).sum()
    }

    pub fn max_block(&self) -> usize {
        self.entries
            .iter()
            .flat_map(|e| e.block_sizes.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.max_block() <= 1
    }

    /// Every eigenvalue slot, with each block's eigenvalue repeated once per
    /// block dimension.
    pub fn slot_values(&self) -> Vec<C64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.eigenvalue, e.algebraic_multiplicity()))
            .collect()
    }

    /// Block sizes of all entries, flattened and sorted descending.
    pub fn all_blocks(&self) -> Vec<usize> {
        let mut b: Vec<usize> = self
            .entries
            .iter()
            .flat_map(|e| e.block_sizes.iter().copied())
            .collect();
        b.sort_by(|x, y| y.cmp(x));
        b
    }
}

const COARSE_RADIUS_REL: f64 = 1e-3;
const REFINE_FACTOR: f64 = 100.0;

/// Numerical Jordan structure from the nullities of `(A - βI)^k`.
///
/// Eigenvalues are grouped coarsely first; each group is tested at its mean.
/// If the nullity sequence is inconsistent with a single eigenvalue of that
/// multiplicity the group is split at a finer radius and retried.
pub fn jordan_structure(a: &ComplexMatrix, tol: f64) -> Result<JordanSpec> {
    ensure_square(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(JordanSpec {
            entries: Vec::new(),
            low_confidence: false,
        });
    }
    let values = eigen_decompose(a)?.values;
    let sigma = singular_values(a).first().copied().unwrap_or(0.0);
    let scale = if sigma > 0.0 { sigma } else { 1.0 };

    let mut ctx = Ctx {
        a,
        tol,
        scale,
        low_confidence: false,
    };
    let mut entries = Vec::new();
    let radius = COARSE_RADIUS_REL * scale;
    for group in cluster_values(&values, radius) {
        let members: Vec<C64> = group.iter().map(|&i| values[i]).collect();
        ctx.resolve(&members, radius, &mut entries);
    }
    entries.sort_by(|x: &JordanEntry, y: &JordanEntry| {
        x.eigenvalue
            .re
            .total_cmp(&y.eigenvalue.re)
            .then(x.eigenvalue.im.total_cmp(&y.eigenvalue.im))
    });
    Ok(JordanSpec {
        entries,
        low_confidence: ctx.low_confidence,
    })
}

struct Ctx<'a> {
    a: &'a ComplexMatrix,
    tol: f64,
    scale: f64,
    low_confidence: bool,
}

impl Ctx<'_> {
    fn resolve(&mut self, members: &[C64], radius: f64, out: &mut Vec<JordanEntry>) {
        let m = members.len();
        let mean = members.iter().sum::<C64>() / m as f64;
        if m == 1 {
            out.push(JordanEntry {
                eigenvalue: mean,
                block_sizes: vec![1],
            });
            return;
        }
        if let Some(blocks) = self.blocks_at(mean, m) {
            out.push(JordanEntry {
                eigenvalue: mean,
                block_sizes: blocks,
            });
            return;
        }
        let finer = radius / REFINE_FACTOR;
        if finer < 1e-15 * self.scale {
            // give up resolving: report semisimple singletons
            self.low_confidence = true;
            for &z in members {
                out.push(JordanEntry {
                    eigenvalue: z,
                    block_sizes: vec![1],
                });
            }
            return;
        }
        let parts = cluster_values(members, finer);
        if parts.len() == 1 {
            self.resolve(members, finer, out);
            return;
        }
        for part in parts {
            let sub: Vec<C64> = part.iter().map(|&i| members[i]).collect();
            self.resolve(&sub, finer, out);
        }
    }

    /// Block sizes for a cluster of `m` eigenvalues near `beta`, or `None`
    /// when the nullity sequence does not describe such a cluster.
    fn blocks_at(&mut self, beta: C64, m: usize) -> Option<Vec<usize>> {
        let n = self.a.nrows();
        let shifted = self.a - DMatrix::<C64>::identity(n, n) * beta;
        let mut power = DMatrix::<C64>::identity(n, n);
        let mut nullity = vec![0usize];
        for k in 1..=m {
            power = &power * &shifted;
            let s = singular_values(&power);
            let thr = self.tol * self.scale.powi(k as i32);
            let d = s.iter().filter(|&&x| x <= thr).count();
            if s.iter().any(|&x| x > thr / 10.0 && x < thr * 10.0) {
                self.low_confidence = true;
            }
            nullity.push(d);
            if d >= m {
                break;
            }
        }
        let last = *nullity.last().unwrap();
        if last != m {
            return None;
        }
        // increments must be positive and nonincreasing
        let inc: Vec<usize> = nullity.windows(2).map(|w| w[1].wrapping_sub(w[0])).collect();
        if inc.iter().any(|&x| x == 0 || x > m) || inc.windows(2).any(|w| w[1] > w[0]) {
            return None;
        }
        let mut blocks = Vec::new();
        for k in 0..inc.len() {
            let next = inc.get(k + 1).copied().unwrap_or(0);
            for _ in 0..inc[k] - next {
                blocks.push(k + 1);
            }
        }
        blocks.sort_by(|x, y| y.cmp(x));
        Some(blocks)
    }
}
