//! Rapidities, the Liouvillian spectrum built from them, the gap, and
//! exceptional-point scans.
//!
//! Liouvillian eigenvalues are `λ = −2 Σ_r m_r β_r` over multi-indices `m` of
//! non-negative integers. The set is infinite, so enumeration stops at a total
//! order `Σ m_r ≤ max_order`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{build_structure, preset, Preset, PresetParams};
use crate::numerics::{cluster_values, eig, jordan_structure, ComplexMatrix, EigenClusters, JordanSpec, C64, RANK_TOL_REL};

pub const DEFAULT_MAX_ORDER: usize = 6;

/// Default cap on the number of enumerated multi-indices.
pub const DEFAULT_ENTRY_CAP: usize = 2_000_000;

/// Relative threshold under which `Re β` counts as zero for the validity label.
pub const VALIDITY_TOL_REL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Validity {
    /// Every `Re β > 0`: the enumeration is the true spectrum.
    Rigorous,
    /// Some `Re β` vanishes or is negative; the enumeration is a formal limit.
    Formal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub lambda: C64,
    pub multiplicity: usize,
    /// The first multi-index (by total order, then lexicographically
    /// descending) that maps to `lambda`.
    pub representative: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiouvillianSpectrum {
    pub entries: Vec<SpectrumEntry>,
    pub max_order: usize,
    pub validity: Validity,
    /// Set when the multi-index count hit the cap.
    pub truncated: bool,
    /// Number of multi-indices visited.
    pub enumerated: usize,
    /// Distinct multi-indices sharing a value, `Σ (multiplicity − 1)`.
    pub collisions: usize,
    pub dedup_tol: f64,
}

impl LiouvillianSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn find(&self, lambda: C64, tol: f64) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| (e.lambda - lambda).norm() <= tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub betas: EigenClusters,
    pub jordan: JordanSpec,
    pub spectrum: LiouvillianSpectrum,
    pub gap: f64,
}

/// Eigenvector condition number above which defective clusters are looked for.
const DEFECT_CONDITION: f64 = 1e6;

/// Eigenvalues of `X` with clustering.
///
/// At an exceptional point the raw eigenvalues of a Jordan block scatter by
/// roughly `√ε`. Members of a confirmed defective cluster are replaced by the
/// cluster mean, which is accurate to rounding.
pub fn beta_spectrum(x: &ComplexMatrix) -> Result<EigenClusters> {
    let mut b = eig(x)?;
    if b.condition.is_finite() && b.condition < DEFECT_CONDITION {
        return Ok(b);
    }
    let jordan = jordan_structure(x, RANK_TOL_REL)?;
    let mut taken = vec![false; b.values.len()];
    for entry in jordan.entries.iter().filter(|e| e.block_sizes.iter().any(|&s| s > 1)) {
        let mut order: Vec<usize> = (0..b.values.len()).filter(|&i| !taken[i]).collect();
        order.sort_by(|&i, &j| {
            (b.values[i] - entry.eigenvalue)
                .norm()
                .total_cmp(&(b.values[j] - entry.eigenvalue).norm())
        });
        for &i in order.iter().take(entry.algebraic_multiplicity()) {
            b.values[i] = entry.eigenvalue;
            taken[i] = true;
        }
    }
    b.clusters = cluster_values(&b.values, b.cluster_tol);
    Ok(b)
}

/// `2 · min Re β`, clamped at zero.
pub fn liouvillian_gap(betas: &EigenClusters) -> f64 {
    let m = betas
        .values
        .iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min);
    if m.is_finite() {
        (2.0 * m).max(0.0)
    } else {
        0.0
    }
}

pub fn enumerate_liouvillian(
    betas: &EigenClusters,
    jordan: &JordanSpec,
    max_order: usize,
) -> Result<LiouvillianSpectrum> {
    enumerate_with_cap(betas, jordan, max_order, DEFAULT_ENTRY_CAP)
}

/// Number of multi-indices in `d` slots with total order at most `order`,
/// i.e. `C(order + d, d)`, saturating.
pub fn multi_index_count(d: usize, order: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 1..=d as u128 {
        acc = acc * (order as u128 + i) / i;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

pub fn enumerate_with_cap(
    betas: &EigenClusters,
    jordan: &JordanSpec,
    max_order: usize,
    cap: usize,
) -> Result<LiouvillianSpectrum> {
    let slots = jordan.slot_values();
    if slots.len() != betas.len() {
        return Err(Error::DimensionMismatch(format!(
            "Jordan structure covers {} slots, {} rapidities given",
            slots.len(),
            betas.len()
        )));
    }
    let d = slots.len();
    let scale = betas.max_abs();
    let validity = if betas
        .values
        .iter()
        .all(|z| z.re > VALIDITY_TOL_REL * scale.max(f64::MIN_POSITIVE))
    {
        Validity::Rigorous
    } else {
        Validity::Formal
    };
    let dedup_tol = betas.cluster_tol.max(f64::EPSILON * scale) * 2.0 * max_order.max(1) as f64;

    // (λ, enumeration index, m)
    let mut raw: Vec<(C64, usize, Vec<usize>)> = Vec::new();
    let mut truncated = false;
    let mut m = vec![0usize; d];
    'outer: for order in 0..=max_order {
        let mut done = false;
        first_composition(&mut m, order);
        while !done {
            if raw.len() >= cap {
                truncated = true;
                break 'outer;
            }
            let lam = m
                .iter()
                .zip(&slots)
                .map(|(&k, b)| b * k as f64)
                .sum::<C64>()
                * -2.0;
            raw.push((lam, raw.len(), m.clone()));
            done = !next_composition(&mut m);
        }
        if d == 0 {
            break;
        }
    }
    let enumerated = raw.len();

    raw.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.1.cmp(&b.1)));
    // groups: (representative λ, min index, rep m, count)
    let mut groups: Vec<(C64, usize, Vec<usize>, usize)> = Vec::new();
    for (lam, idx, mi) in raw {
        let mut hit = None;
        for g in (0..groups.len()).rev() {
            if groups[g].0.re < lam.re - dedup_tol {
                break;
            }
            if (groups[g].0 - lam).norm() <= dedup_tol {
                hit = Some(g);
                break;
            }
        }
        match hit {
            Some(g) => {
                let grp = &mut groups[g];
                grp.3 += 1;
                if idx < grp.1 {
                    grp.1 = idx;
                    grp.2 = mi;
                }
            }
            None => groups.push((lam, idx, mi, 1)),
        }
    }

    let mut entries: Vec<SpectrumEntry> = groups
        .into_iter()
        .map(|(_, _, rep, count)| {
            let lambda = rep
                .iter()
                .zip(&slots)
                .map(|(&k, b)| b * k as f64)
                .sum::<C64>()
                * -2.0
                + C64::new(0.0, 0.0);
            SpectrumEntry {
                lambda,
                multiplicity: count,
                representative: rep,
            }
        })
        .collect();
    entries.sort_by(|a, b| {
        b.lambda
            .re
            .total_cmp(&a.lambda.re)
            .then(a.lambda.im.total_cmp(&b.lambda.im))
            .then(a.representative.cmp(&b.representative))
    });
    let collisions = entries.iter().map(|e| e.multiplicity - 1).sum();
    Ok(LiouvillianSpectrum {
        entries,
        max_order,
        validity,
        truncated,
        enumerated,
        collisions,
        dedup_tol,
    })
}

/// Sets `m` to the first composition of `total` (everything in slot 0).
fn first_composition(m: &mut [usize], total: usize) {
    m.iter_mut().for_each(|x| *x = 0);
    if let Some(first) = m.first_mut() {
        *first = total;
    }
}

/// Advances to the next composition with the same total in lexicographically
/// descending order; false when exhausted.
fn next_composition(m: &mut [usize]) -> bool {
    let d = m.len();
    if d <= 1 {
        return false;
    }
    // rightmost nonzero position before the last slot
    let Some(i) = (0..d - 1).rev().find(|&i| m[i] > 0) else {
        return false;
    };
    m[i] -= 1;
    let rest: usize = m[i + 1..].iter().sum::<usize>() + 1;
    m[i + 1..].iter_mut().for_each(|x| *x = 0);
    m[i + 1] = rest;
    true
}

/// Rapidities, Jordan structure, enumerated spectrum and gap of `X`.
pub fn analyze(x: &ComplexMatrix, max_order: usize) -> Result<SpectrumReport> {
    let betas = beta_spectrum(x)?;
    let jordan = jordan_structure(x, RANK_TOL_REL)?;
    let spectrum = enumerate_liouvillian(&betas, &jordan, max_order)?;
    let gap = liouvillian_gap(&betas);
    Ok(SpectrumReport {
        betas,
        jordan,
        spectrum,
        gap,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpPoint {
    pub params: PresetParams,
    pub jordan: JordanSpec,
}

/// Grid points of a preset family where `X` has a Jordan block of size ≥ 2.
/// Results keep the grid order.
pub fn ep_scan(family: Preset, grid: &[PresetParams], tol: f64) -> Result<Vec<EpPoint>> {
    let specs: Vec<Result<Option<EpPoint>>> = grid
        .par_iter()
        .map(|p| {
            let pm = preset(family, p)?;
            let x = build_structure(&pm.model).x;
            let jordan = jordan_structure(&x, tol)?;
            Ok((!jordan.is_diagonalizable()).then_some(EpPoint { params: *p, jordan }))
        })
        .collect();
    let mut out = Vec::new();
    for s in specs {
        if let Some(p) = s? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Same scan over arbitrary matrices; returns indices of defective ones.
pub fn ep_scan_matrices(mats: &[ComplexMatrix], tol: f64) -> Result<Vec<(usize, JordanSpec)>> {
    let specs: Vec<Result<JordanSpec>> = mats.par_iter().map(|x| jordan_structure(x, tol)).collect();
    let mut out = Vec::new();
    for (i, s) in specs.into_iter().enumerate() {
        let s = s?;
        if !s.is_diagonalizable() {
            out.push((i, s));
        }
    }
    Ok(out)
}
