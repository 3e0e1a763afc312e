//! Reduction of three-qubit states to the six-parameter canonical form
//!
//! ```text
//! N cosα e1⊗(cosβ e1e1 + sinβ e2e2)
//!   + N sinα cosγ e2⊗(sinβ e1e1 − cosβ e2e2)
//!   + N sinα sinγ e2⊗(cosδ e1e2 + e^{iη} sinδ e2e1)
//! ```
//!
//! Writing `ψ = e1⊗A + e2⊗B` with 2×2 blocks, the form is exactly "A
//! diagonal and ⟨A, B⟩ = 0" followed by a choice of phases. The optimizer
//! drives those six real conditions to zero over three SU(2) factors; the
//! finish step then orders the blocks, makes `A` exactly diagonal by a 2×2
//! SVD and fixes the remaining diagonal phases by a linear solve.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use super::{svd2, OptimizerConfig};
use crate::error::{Error, Result};
use crate::local::{adjoint, apply_site, mat_mul, transpose, LocalUnitary, Mat2, SIGMA_X};
use crate::optimize::{levenberg_marquardt, nelder_mead, NelderMeadConfig};
use crate::rng;
use crate::state::{canonical3, QubitState};
use rand::Rng;

/// Amplitudes below this (on the normalized state) carry no phase information.
const NEGLIGIBLE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalForm3 {
    #[serde(rename = "N")]
    pub norm: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
    pub residual: f64,
    #[serde(rename = "unitaries", serialize_with = "ser_unitaries")]
    pub local_unitaries: [Mat2; 3],
    /// Some parameter was fixed by convention rather than by the state.
    pub degenerate: bool,
}

impl CanonicalForm3 {
    pub fn local_unitary(&self) -> LocalUnitary {
        LocalUnitary::new(self.local_unitaries.to_vec())
    }

    pub fn params(&self) -> [f64; 6] {
        [self.norm, self.alpha, self.beta, self.gamma, self.delta, self.eta]
    }

    pub fn canonical_state(&self) -> QubitState {
        canonical3(self.norm, self.alpha, self.beta, self.gamma, self.delta, self.eta)
    }
}

/// Serializes 2×2 complex matrices as nested `[re, im]` pairs.
pub(crate) fn ser_unitaries<S, M>(mats: &M, s: S) -> std::result::Result<S::Ok, S::Error>
where
    S: Serializer,
    M: AsRef<[Mat2]>,
{
    let mats = mats.as_ref();
    let mut seq = s.serialize_seq(Some(mats.len()))?;
    for m in mats {
        let rows: Vec<Vec<[f64; 2]>> = m
            .iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        seq.serialize_element(&rows)?;
    }
    seq.end()
}

fn transform(factors: &[Mat2; 3], amps: &[Complex64]) -> Vec<Complex64> {
    let mut out = amps.to_vec();
    for (site, m) in factors.iter().enumerate() {
        apply_site(&mut out, 3, site, m);
    }
    out
}

/// `[Re a1, Im a1, Re a2, Im a2, Re⟨A,B⟩, Im⟨A,B⟩]`.
fn conditions(amps: &[Complex64]) -> [f64; 6] {
    let ip: Complex64 = (0..4).map(|j| amps[j].conj() * amps[j + 4]).sum();
    [amps[1].re, amps[1].im, amps[2].re, amps[2].im, ip.re, ip.im]
}

fn angle_residual(x: &[f64], unit: &[Complex64]) -> Vec<f64> {
    let u = LocalUnitary::from_angles(x);
    conditions(&u.apply_raw(unit)).to_vec()
}

pub fn canonical_3q(state: &QubitState, config: OptimizerConfig) -> Result<CanonicalForm3> {
    if state.n() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            found: state.n(),
        });
    }
    let norm = state.norm();
    let Some(unit) = state.normalized() else {
        return Ok(CanonicalForm3 {
            norm: 0.0,
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 0.0,
            eta: 0.0,
            residual: 0.0,
            local_unitaries: [crate::local::IDENTITY; 3],
            degenerate: true,
        });
    };
    let unit = unit.amplitudes().to_vec();

    let nm = NelderMeadConfig {
        max_iter: config.max_iter,
        f_tol: config.tol,
        initial_step: 0.5,
    };
    let objective = |x: &[f64]| angle_residual(x, &unit).iter().map(|v| v * v).sum::<f64>();
    let mut best: Option<(Vec<f64>, f64)> = None;
    for restart in 0..config.restarts.max(1) {
        let mut r = rng::substream(config.seed, restart as u64);
        let x0: Vec<f64> = (0..9).map(|_| r.random_range(-1.5..1.5)).collect();
        let coarse = nelder_mead(objective, &x0, nm);
        let fine = levenberg_marquardt(|x| angle_residual(x, &unit), &coarse.x, 200);
        let (x, value) = if fine.value <= coarse.value {
            (fine.x, fine.value)
        } else {
            (coarse.x, coarse.value)
        };
        if best.as_ref().is_none_or(|b| value < b.1) {
            best = Some((x, value));
        }
        if best.as_ref().is_some_and(|b| b.1.sqrt() <= config.tol) {
            break;
        }
    }
    let (x, _) = best.expect("at least one restart");
    let start = LocalUnitary::from_angles(&x);
    let factors = [start.factors[0], start.factors[1], start.factors[2]];
    Ok(finish(factors, &unit, norm))
}

fn finish(mut factors: [Mat2; 3], unit: &[Complex64], norm: f64) -> CanonicalForm3 {
    let weight = |a: &[Complex64]| a.iter().map(|z| z.norm_sqr()).sum::<f64>();

    // Larger qubit-1 block first.
    let chi = transform(&factors, unit);
    if weight(&chi[4..]) > weight(&chi[..4]) {
        factors[0] = mat_mul(&SIGMA_X, &factors[0]);
    }

    // A ↦ U2 A U3ᵀ; diagonal with descending entries for U2 = U†, U3 = Vᵀ.
    let chi = transform(&factors, unit);
    let (u, _, v) = svd2(&[[chi[0], chi[1]], [chi[2], chi[3]]]);
    factors[1] = mat_mul(&adjoint(&u), &factors[1]);
    factors[2] = mat_mul(&transpose(&v), &factors[2]);

    let chi = transform(&factors, unit);
    let (phases, phase_degenerate) = solve_phases(&chi);
    let [x, p1, p2, p3] = phases;
    for (k, p) in [p1, p2, p3].into_iter().enumerate() {
        let d = [
            [Complex64::from_polar(1.0, p), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, -p)],
        ];
        factors[k] = mat_mul(&d, &factors[k]);
    }
    let g = Complex64::from_polar(1.0, x);
    factors[0] = factors[0].map(|row| row.map(|z| z * g));

    let chi = transform(&factors, unit);
    let mut degenerate = phase_degenerate;
    let mut flag = |cond: bool| {
        degenerate |= cond;
        !cond
    };

    let a_norm = chi[0].norm().hypot(chi[3].norm());
    let b_norm = weight(&chi[4..]).sqrt();
    let alpha = b_norm.atan2(a_norm);
    flag((a_norm - b_norm).abs() < NEGLIGIBLE);
    flag((chi[0].norm() - chi[3].norm()).abs() < NEGLIGIBLE);

    let beta = if a_norm > NEGLIGIBLE {
        chi[3].re.atan2(chi[0].re)
    } else if flag(chi[4].norm().hypot(chi[7].norm()) <= NEGLIGIBLE) {
        chi[4].re.atan2(-chi[7].re)
    } else {
        0.0
    };
    let side = chi[4].norm().hypot(chi[7].norm());
    let corner = chi[5].norm().hypot(chi[6].norm());
    let gamma = if flag(b_norm <= NEGLIGIBLE) { corner.atan2(side) } else { 0.0 };
    let delta = if flag(corner <= NEGLIGIBLE) { chi[6].norm().atan2(chi[5].re) } else { 0.0 };
    let eta = if flag(chi[6].norm() <= NEGLIGIBLE) { chi[6].arg() } else { 0.0 };

    let scaled: Vec<Complex64> = chi.iter().map(|z| z * norm).collect();
    let form = canonical3(norm, alpha, beta, gamma, delta, eta);
    let residual = scaled
        .iter()
        .zip(form.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    CanonicalForm3 {
        norm,
        alpha,
        beta,
        gamma,
        delta,
        eta,
        residual,
        local_unitaries: factors,
        degenerate,
    }
}

/// Global phase `x` and diagonal phases `p_k` (`diag(e^{ip}, e^{−ip})` on
/// qubit k) making slots 0, 3, 4, 5 real positive and slot 7 real negative.
///
/// Slots with negligible amplitude are skipped; slot 6 stands in when slot
/// 5 vanishes. Returns whether the phases were underdetermined.
fn solve_phases(chi: &[Complex64]) -> ([f64; 4], bool) {
    let row = |slot: usize| -> Vector4<f64> {
        let s = |k: usize| if slot >> (2 - k) & 1 == 0 { 1.0 } else { -1.0 };
        Vector4::new(1.0, s(0), s(1), s(2))
    };
    let mut basis: Vec<Vector4<f64>> = Vec::new();
    let mut rows: Vec<(Vector4<f64>, f64)> = Vec::new();
    let mut accept = |v: Vector4<f64>, rhs: f64, rows: &mut Vec<(Vector4<f64>, f64)>| {
        let mut w = v;
        for b in &basis {
            w -= b * b.dot(&w);
        }
        if w.norm() > 1e-9 {
            basis.push(w / w.norm());
            rows.push((v, rhs));
            true
        } else {
            false
        }
    };
    let mut used_six = false;
    for (slot, target) in [(0, 0.0), (3, 0.0), (4, 0.0), (5, 0.0), (7, std::f64::consts::PI), (6, 0.0)] {
        if chi[slot].norm() > NEGLIGIBLE && accept(row(slot), target - chi[slot].arg(), &mut rows) && slot == 6 {
            used_six = true;
        }
    }
    let determined = rows.len() == 4;
    for k in (1..4).rev() {
        let mut e = Vector4::zeros();
        e[k] = 1.0;
        accept(e, 0.0, &mut rows);
    }
    let m = Matrix4::from_fn(|i, j| rows[i].0[j]);
    let rhs = Vector4::from_fn(|i, _| rows[i].1);
    let sol = m.lu().solve(&rhs).expect("rows are independent");
    ([sol[0], sol[1], sol[2], sol[3]], !determined || used_six)
}
