use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::three::ser_unitaries;
use super::OptimizerConfig;
use crate::error::{Error, Result};
use crate::invariants::fingerprint;
use crate::local::{LocalUnitary, Mat2};
use crate::optimize::{levenberg_marquardt, nelder_mead, NelderMeadConfig};
use crate::rng;
use crate::state::QubitState;

/// Witnesses at or below this distance are reported.
pub const WITNESS_TOL: f64 = 1e-6;

/// `‖(⊗ U_k) ψ − e^{iθ} φ‖ = residual`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "ser_unitaries")]
    pub unitaries: Vec<Mat2>,
    pub phase: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivVerdict {
    pub fingerprints_match: bool,
    pub max_component_gap: f64,
    pub witness: Option<Witness>,
}

/// `θ = arg⟨φ, χ⟩` and `‖χ − e^{iθ}φ‖` packed as real residuals.
fn aligned_difference(moved: &[Complex64], target: &[Complex64]) -> (f64, Vec<f64>) {
    let overlap: Complex64 = target.iter().zip(moved).map(|(t, m)| t.conj() * m).sum();
    let theta = overlap.arg();
    let rot = Complex64::from_polar(1.0, theta);
    let r = moved
        .iter()
        .zip(target)
        .flat_map(|(m, t)| {
            let d = m - rot * t;
            [d.re, d.im]
        })
        .collect();
    (theta, r)
}

pub fn lu_equivalent(psi: &QubitState, phi: &QubitState, search: bool, config: OptimizerConfig) -> Result<EquivVerdict> {
    if psi.n() != phi.n() {
        return Err(Error::Dimension {
            expected: psi.n(),
            found: phi.n(),
        });
    }
    let gap = fingerprint(psi)?.max_gap(&fingerprint(phi)?);
    let fingerprints_match = gap <= config.match_tol;
    let witness = if search && fingerprints_match {
        find_witness(psi, phi, config)
    } else {
        None
    };
    Ok(EquivVerdict {
        fingerprints_match,
        max_component_gap: gap,
        witness,
    })
}

fn find_witness(psi: &QubitState, phi: &QubitState, config: OptimizerConfig) -> Option<Witness> {
    let n = psi.n();
    let source = psi.amplitudes();
    let target = phi.amplitudes();
    let residual = |x: &[f64]| aligned_difference(&LocalUnitary::from_angles(x).apply_raw(source), target).1;
    let objective = |x: &[f64]| residual(x).iter().map(|v| v * v).sum::<f64>();
    let nm = NelderMeadConfig {
        max_iter: config.max_iter,
        f_tol: config.tol,
        initial_step: 0.5,
    };
    let mut best: Option<(Vec<f64>, f64)> = None;
    for restart in 0..config.restarts.max(1) {
        let mut r = rng::substream(config.seed, restart as u64);
        let x0: Vec<f64> = (0..3 * n).map(|_| r.random_range(-1.5..1.5)).collect();
        let coarse = nelder_mead(objective, &x0, nm);
        let fine = levenberg_marquardt(residual, &coarse.x, 200);
        let cand = if fine.value <= coarse.value { (fine.x, fine.value) } else { (coarse.x, coarse.value) };
        if best.as_ref().is_none_or(|b| cand.1 < b.1) {
            best = Some(cand);
        }
        if best.as_ref().is_some_and(|b| b.1.sqrt() <= config.tol) {
            break;
        }
    }
    let (x, _) = best?;
    let u = LocalUnitary::from_angles(&x);
    let (theta, r) = aligned_difference(&u.apply_raw(source), target);
    let dist = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    (dist <= WITNESS_TOL).then_some(Witness {
        unitaries: u.factors,
        phase: theta,
        residual: dist,
    })
}
