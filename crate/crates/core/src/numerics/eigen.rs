use nalgebra::{DMatrix, Schur};
use serde::Serialize;

use super::{ensure_square, singular_values, spectral_norm, ComplexMatrix, C64, CLUSTER_TOL_REL};
use crate::error::{Error, Result};

/// Eigenvalues grouped into numerically coincident clusters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenClusters {
    pub values: Vec<C64>,
    /// Partition of `0..values.len()`; members of a cluster are pairwise
    /// closer than `cluster_tol`.
    pub clusters: Vec<Vec<usize>>,
    /// 2-norm condition number of the eigenvector matrix (infinite when the
    /// eigenvectors are numerically dependent).
    pub condition: f64,
    /// Absolute clustering radius that produced `clusters`.
    pub cluster_tol: f64,
}

impl EigenClusters {
    /// Builds clusters for an already known list of values.
    pub fn from_values(values: Vec<C64>, cluster_tol: f64) -> Self {
        let clusters = cluster_values(&values, cluster_tol);
        Self {
            values,
            clusters,
            condition: 1.0,
            cluster_tol,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Mean value of each cluster, in cluster order.
    pub fn cluster_means(&self) -> Vec<C64> {
        self.clusters
            .iter()
            .map(|idx| idx.iter().map(|&i| self.values[i]).sum::<C64>() / idx.len() as f64)
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Full eigendecomposition `A V = V diag(values)`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<C64>,
    /// Unit-norm eigenvectors as columns.
    pub vectors: ComplexMatrix,
    pub condition: f64,
}

/// Eigenvalues of `a` clustered at the default relative tolerance.
pub fn eig(a: &ComplexMatrix) -> Result<EigenClusters> {
    eig_with_tol(a, CLUSTER_TOL_REL)
}

/// Eigenvalues of `a`; values closer than `tol_rel * ||a||_2` share a cluster.
pub fn eig_with_tol(a: &ComplexMatrix, tol_rel: f64) -> Result<EigenClusters> {
    let dec = eigen_decompose(a)?;
    let cluster_tol = tol_rel * spectral_norm(a);
    let clusters = cluster_values(&dec.values, cluster_tol);
    Ok(EigenClusters {
        values: dec.values,
        clusters,
        condition: dec.condition,
        cluster_tol,
    })
}

/// Complex Schur form followed by triangular back-substitution for the
/// eigenvectors.
pub fn eigen_decompose(a: &ComplexMatrix) -> Result<Eigen> {
    ensure_square(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
            condition: 1.0,
        });
    }
    let schur = Schur::try_new(a.clone(), f64::EPSILON, 100 * n.max(10)).ok_or(Error::SchurFailed)?;
    let (q, t) = schur.unpack();
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();

    let tnorm = spectral_norm(&t).max(f64::MIN_POSITIVE);
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);
    let mut w = DMatrix::<C64>::zeros(n, n);
    for k in 0..n {
        w[(k, k)] = C64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = C64::new(0.0, 0.0);
            for l in j + 1..=k {
                acc += t[(j, l)] * w[(l, k)];
            }
            let mut denom = t[(j, j)] - t[(k, k)];
            if denom.norm() < smin {
                denom = C64::new(smin, 0.0);
            }
            w[(j, k)] = -acc / denom;
        }
        // rescale to avoid overflow on nearly defective columns
        let scale = w.column(k).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale > 1e100 {
            for j in 0..=k {
                w[(j, k)] /= scale;
            }
        }
    }
    let mut v = q * w;
    for k in 0..n {
        let norm = v.column(k).norm();
        if norm > 0.0 {
            v.column_mut(k).unscale_mut(norm);
        }
    }
    let s = singular_values(&v);
    let smax = s.first().copied().unwrap_or(0.0);
    let smin_v = s.last().copied().unwrap_or(0.0);
    let condition = if smin_v > 0.0 { smax / smin_v } else { f64::INFINITY };
    Ok(Eigen {
        values,
        vectors: v,
        condition,
    })
}

/// Greedy partition: each value joins the first cluster whose members are all
/// within `tol`, otherwise it opens a new cluster.
pub fn cluster_values(values: &[C64], tol: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, z) in values.iter().enumerate() {
        let slot = clusters
            .iter()
            .position(|cl| cl.iter().all(|&j| (values[j] - z).norm() <= tol));
        match slot {
            Some(k) => clusters[k].push(i),
            None => clusters.push(vec![i]),
        }
    }
    clusters
}
