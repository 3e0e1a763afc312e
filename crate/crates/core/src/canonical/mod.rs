//! Canonical forms under local unitaries and equivalence decisions.

mod equiv;
mod schmidt;
mod three;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

pub use equiv::{lu_equivalent, EquivVerdict, Witness, WITNESS_TOL};
pub use schmidt::{schmidt_2q, SchmidtForm};
pub use three::{canonical_3q, CanonicalForm3};

use crate::local::Mat2;

/// Multi-start settings shared by the canonical-form and witness searches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Simplex stopping tolerance on the objective; a restart whose polished
    /// residual falls below it ends the search early.
    pub tol: f64,
    pub max_iter: usize,
    /// Fingerprint tolerance used by [`lu_equivalent`].
    pub match_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            seed: 0,
            tol: 1e-12,
            max_iter: 20_000,
            match_tol: 1e-8,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// `a = U diag(σ) V†` with σ descending and the first nonzero entry of each
/// column of `V` real positive.
pub(crate) fn svd2(a: &Mat2) -> (Mat2, [f64; 2], Mat2) {
    let m = Matrix2::new(a[0][0], a[0][1], a[1][0], a[1][1]);
    let svd = m.svd(true, true);
    let u = svd.u.expect("u requested");
    let v = svd.v_t.expect("v requested").adjoint();
    let mut uu = to_mat2(&u);
    let mut vv = to_mat2(&v);
    for col in 0..2 {
        let lead = if vv[0][col].norm() > 1e-300 { vv[0][col] } else { vv[1][col] };
        if lead.norm() == 0.0 {
            continue;
        }
        let fix = lead.conj() / lead.norm();
        for row in 0..2 {
            vv[row][col] *= fix;
            uu[row][col] *= fix;
        }
    }
    (uu, [svd.singular_values[0], svd.singular_values[1]], vv)
}

fn to_mat2(m: &Matrix2<Complex64>) -> Mat2 {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}
