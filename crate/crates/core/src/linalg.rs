//! Numerical rank and left nullspaces via the singular value decomposition.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank threshold `τ = rel_tol · max(σ_max, floor)`.
///
/// Singular values strictly above `τ` count toward the rank.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankPolicy {
    pub rel_tol: f64,
    pub floor: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            floor: 1.0,
        }
    }
}

impl RankPolicy {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn threshold(&self, sigma_max: f64) -> f64 {
        self.rel_tol * sigma_max.max(self.floor)
    }
}

/// Singular values (descending), the threshold applied and the resulting rank.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankInfo {
    pub rank: usize,
    pub threshold: f64,
    pub singular_values: Vec<f64>,
}

fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("matrix"))
    }
}

fn rank_of(singular_values: &[f64], policy: RankPolicy) -> (usize, f64) {
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let tau = policy.threshold(sigma_max);
    (singular_values.iter().filter(|&&s| s > tau).count(), tau)
}

fn sorted_desc(mut values: Vec<f64>) -> Vec<f64> {
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

pub fn singular_values(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    check_finite(m)?;
    if m.is_empty() {
        return Ok(Vec::new());
    }
    Ok(sorted_desc(m.singular_values().iter().copied().collect()))
}

pub fn rank_info(m: &DMatrix<f64>, policy: RankPolicy) -> Result<RankInfo> {
    let singular_values = singular_values(m)?;
    let (rank, threshold) = rank_of(&singular_values, policy);
    Ok(RankInfo {
        rank,
        threshold,
        singular_values,
    })
}

/// Number of singular values above the policy threshold.
pub fn numerical_rank(m: &DMatrix<f64>, policy: RankPolicy) -> Result<usize> {
    Ok(rank_info(m, policy)?.rank)
}

/// Orthonormal basis (as row-space coefficient vectors) of
/// `{λ : ‖Σ_i λ_i · row_i(m)‖ ≤ τ}`, together with the rank data.
///
/// The returned vectors have length `m.nrows()`.
pub fn left_nullspace(m: &DMatrix<f64>, policy: RankPolicy) -> Result<(Vec<Vec<f64>>, RankInfo)> {
    check_finite(m)?;
    let rows = m.nrows();
    if rows == 0 {
        return Ok((
            Vec::new(),
            RankInfo {
                rank: 0,
                threshold: policy.threshold(0.0),
                singular_values: Vec::new(),
            },
        ));
    }
    // Pad with zero columns so the SVD returns a full square U.
    let cols = m.ncols().max(rows);
    let mut padded = DMatrix::<f64>::zeros(rows, cols);
    padded.view_mut((0, 0), (rows, m.ncols())).copy_from(m);
    let svd = padded.svd(true, false);
    let u = svd.u.expect("requested U");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let all: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let (rank, threshold) = rank_of(&all, policy);
    let basis = order[rank..]
        .iter()
        .map(|&i| u.column(i).iter().copied().collect())
        .collect();
    let singular_values = all.into_iter().take(m.ncols().min(rows)).collect();
    Ok((
        basis,
        RankInfo {
            rank,
            threshold,
            singular_values,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank() {
        let m = DMatrix::<f64>::identity(4, 4);
        assert_eq!(numerical_rank(&m, RankPolicy::default()).unwrap(), 4);
    }

    #[test]
    fn duplicated_row_has_rank_one() {
        let u = [0.3, -1.2, 0.7, 2.0];
        let m = DMatrix::from_fn(2, 4, |i, j| u[j] * (i + 1) as f64);
        assert_eq!(numerical_rank(&m, RankPolicy::default()).unwrap(), 1);
        let (null, info) = left_nullspace(&m, RankPolicy::default()).unwrap();
        assert_eq!(info.rank, 1);
        assert_eq!(null.len(), 1);
        // λ ∝ (2, −1)
        let v = &null[0];
        assert!((v[0] / v[1] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn tall_matrix_nullspace_is_complete() {
        let m = DMatrix::from_row_slice(3, 1, &[1.0, 1.0, 0.0]);
        let (null, info) = left_nullspace(&m, RankPolicy::default()).unwrap();
        assert_eq!(info.rank, 1);
        assert_eq!(null.len(), 2);
        for v in &null {
            assert!((v[0] + v[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_finite() {
        let m = DMatrix::from_row_slice(1, 2, &[1.0, f64::NAN]);
        assert_eq!(
            numerical_rank(&m, RankPolicy::default()),
            Err(Error::NonFinite("matrix"))
        );
    }

    #[test]
    fn threshold_scales_with_floor() {
        let p = RankPolicy::default();
        assert_eq!(p.threshold(0.5), 1e-9);
        assert_eq!(p.threshold(10.0), 1e-8);
        let tiny = DMatrix::from_row_slice(1, 1, &[1e-10]);
        assert_eq!(numerical_rank(&tiny, p).unwrap(), 0);
    }
}
