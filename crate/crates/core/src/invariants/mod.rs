//! Polynomial local-unitary invariants.
//!
//! An invariant is specified by a [`ContractionPattern`]: `d` copies of the
//! amplitude tensor `α` and `d` copies of `α*`, with every slot-`s` index of
//! an `α` copy summed against the slot-`s` index of some `α*` copy. Because
//! each local factor `U_s` then appears once as `U_s` and once as `U_s†` on
//! the same index line, the value is unchanged by local unitaries.
//!
//! Built-in sets, per qubit count:
//!
//! * `n = 1`: `I1` (the norm squared).
//! * `n = 2`: `I1`, `I2 = Tr((αα†)²)`.
//! * `n = 3`: `I1`, the three quartic invariants `J1, J2, J3`, one sextic
//!   (`K6`) and one octic (`L8`) pattern; together they are functionally
//!   independent, matching the six nonlocal parameters of three qubits.
//! * `n ≥ 4`: `I1` and one quartic pattern per bipartition of the qubits
//!   (the purity of that cut).

mod contract;
mod pattern;

use num_complex::Complex64;
use serde::Serialize;

pub use pattern::ContractionPattern;

use crate::error::{check_size, Error, Result};
use crate::lie::{orbit_report, Mode};
use crate::linalg::{numerical_rank, RankPolicy};
use crate::local::LocalUnitary;
use crate::rng;
use crate::state::{random_state_with, QubitState};

/// Value of the pattern polynomial at `ψ` (no normalization).
pub fn evaluate_invariant(pattern: &ContractionPattern, state: &QubitState) -> Result<Complex64> {
    contract::evaluate_network(pattern, state)
}

fn pat(perms: &[&[usize]], label: &str) -> ContractionPattern {
    ContractionPattern::new(perms.iter().map(|p| p.to_vec()).collect(), label)
        .expect("built-in patterns are valid")
}

/// `I1 = Σ α α*`.
pub fn norm_pattern(n: usize) -> Result<ContractionPattern> {
    check_size(n)?;
    ContractionPattern::new(vec![vec![0]; n], "I1")
}

/// `I2 = Tr((αα†)²)` for two qubits.
pub fn i2_pattern() -> ContractionPattern {
    pat(&[&[0, 1], &[1, 0]], "I2")
}

/// `I3 = Tr((αα†)³)` for two qubits.
pub fn i3_pattern() -> ContractionPattern {
    pat(&[&[0, 1, 2], &[1, 2, 0]], "I3")
}

/// Quartic pattern swapping the second copies on the slots in `swapped`
/// (0-based); its value is the squared purity of that cut.
pub fn bipartition_pattern(n: usize, swapped: &[usize], label: impl Into<String>) -> Result<ContractionPattern> {
    check_size(n)?;
    let perms = (0..n)
        .map(|s| if swapped.contains(&s) { vec![1, 0] } else { vec![0, 1] })
        .collect();
    ContractionPattern::new(perms, label)
}

fn three_qubit_patterns() -> Vec<ContractionPattern> {
    let id2: &[usize] = &[0, 1];
    let sw: &[usize] = &[1, 0];
    vec![
        pat(&[&[0], &[0], &[0]], "I1"),
        pat(&[id2, id2, sw], "J1"),
        pat(&[id2, sw, id2], "J2"),
        pat(&[sw, id2, id2], "J3"),
        pat(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]], "K6"),
        pat(&[&[0, 1, 2, 3], &[1, 0, 3, 2], &[2, 3, 0, 1]], "L8"),
    ]
}

/// Deterministic, labeled list of built-in invariants for `n` qubits.
pub fn builtin_patterns(n: usize) -> Result<Vec<ContractionPattern>> {
    check_size(n)?;
    Ok(match n {
        1 => vec![norm_pattern(1)?],
        2 => vec![norm_pattern(2)?, i2_pattern()],
        3 => three_qubit_patterns(),
        _ => {
            let mut out = vec![norm_pattern(n)?];
            // One representative per {S, complement}: the smaller side, and on
            // ties the side without slot 1.
            let mut cuts: Vec<Vec<usize>> = (1u32..(1 << n) - 1)
                .map(|mask| (0..n).filter(|&s| mask & (1 << (n - 1 - s)) != 0).collect::<Vec<_>>())
                .filter(|set: &Vec<usize>| {
                    2 * set.len() < n || (2 * set.len() == n && !set.contains(&0))
                })
                .collect();
            cuts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
            for cut in cuts {
                let label = format!(
                    "Q{{{}}}",
                    cut.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(",")
                );
                out.push(bipartition_pattern(n, &cut, label)?);
            }
            out
        }
    })
}

/// `|I3 − ½(3 I1 I2 − I1³)| / max(1, |I3|)` for a two-qubit state.
pub fn check_i3_relation(state: &QubitState) -> Result<f64> {
    if state.n() != 2 {
        return Err(Error::SlotMismatch {
            pattern: 2,
            state: state.n(),
        });
    }
    let i1 = evaluate_invariant(&norm_pattern(2)?, state)?.re;
    let i2 = evaluate_invariant(&i2_pattern(), state)?.re;
    let i3 = evaluate_invariant(&i3_pattern(), state)?;
    let predicted = 0.5 * (3.0 * i1 * i2 - i1.powi(3));
    Ok((i3 - predicted).norm() / i3.norm().max(1.0))
}

/// Deliberately non-invariant probe `α_{11…1} · conj(α_{22…2})`.
pub fn corner_probe(state: &QubitState) -> Complex64 {
    let amps = state.amplitudes();
    amps[0] * amps[amps.len() - 1].conj()
}

/// Largest relative change `|f(Vψ) − f(ψ)| / max(1, |f(ψ)|)` over `trials`
/// random local unitaries (Haar SU(2) per site times a global phase).
///
/// Trial `t` draws from its own sub-stream of `seed`.
pub fn invariance_test<F>(f: F, state: &QubitState, trials: usize, seed: u64) -> Result<f64>
where
    F: Fn(&QubitState) -> Result<Complex64>,
{
    let base = f(state)?;
    let scale = base.norm().max(1.0);
    let mut worst: f64 = 0.0;
    for t in 0..trials {
        let mut r = rng::substream(seed, t as u64);
        let v = LocalUnitary::random(state.n(), &mut r);
        let moved = f(&v.apply(state)?)?;
        worst = worst.max((moved - base).norm() / scale);
    }
    Ok(worst)
}

pub fn pattern_invariance_test(pattern: &ContractionPattern, state: &QubitState, trials: usize, seed: u64) -> Result<f64> {
    invariance_test(|s| evaluate_invariant(pattern, s), state, trials, seed)
}

/// Central-difference step used for invariant Jacobians.
pub const FD_STEP: f64 = 1e-5;

/// `|ps| × 2^{n+1}` Jacobian of `Re p(ψ)` with respect to the real embedding.
pub fn invariant_jacobian(patterns: &[ContractionPattern], state: &QubitState, step: f64) -> Result<nalgebra::DMatrix<f64>> {
    let base = state.embed_real();
    let cols = base.len();
    let mut jac = nalgebra::DMatrix::<f64>::zeros(patterns.len(), cols);
    for col in 0..cols {
        let mut plus = base.clone();
        plus.coords[col] += step;
        let mut minus = base.clone();
        minus.coords[col] -= step;
        let sp = QubitState::from_embedding(&plus)?;
        let sm = QubitState::from_embedding(&minus)?;
        for (row, p) in patterns.iter().enumerate() {
            let fp = evaluate_invariant(p, &sp)?.re;
            let fm = evaluate_invariant(p, &sm)?.re;
            jac[(row, col)] = (fp - fm) / (2.0 * step);
        }
    }
    Ok(jac)
}

/// Maximum, over `samples` random states, of the numerical rank of the
/// invariants' Jacobian.
pub fn functional_independence(patterns: &[ContractionPattern], n: usize, samples: usize, seed: u64, policy: RankPolicy) -> Result<usize> {
    if let Some(p) = patterns.iter().find(|p| p.n() != n) {
        return Err(Error::SlotMismatch {
            pattern: p.n(),
            state: n,
        });
    }
    let mut best = 0;
    for i in 0..samples {
        let state = random_state_with(n, &mut rng::substream(seed, i as u64))?;
        let jac = invariant_jacobian(patterns, &state, FD_STEP)?;
        best = best.max(numerical_rank(&jac, policy)?);
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantValue {
    pub label: String,
    pub value: f64,
}

/// Built-in invariant values of the normalized state plus orbit data.
///
/// Equal fingerprints are necessary, not sufficient, for local-unitary
/// equivalence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantFingerprint {
    pub n: usize,
    pub norm_sq: f64,
    pub values: Vec<InvariantValue>,
    pub orbit_dim: usize,
    pub stabilizer_dim: usize,
}

impl InvariantFingerprint {
    /// Largest componentwise gap in `norm_sq` and the invariant values;
    /// infinite when sizes or orbit data differ.
    pub fn max_gap(&self, other: &Self) -> f64 {
        if self.n != other.n
            || self.values.len() != other.values.len()
            || self.orbit_dim != other.orbit_dim
            || self.stabilizer_dim != other.stabilizer_dim
        {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.value - b.value).abs())
            .fold((self.norm_sq - other.norm_sq).abs(), f64::max)
    }

    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        self.max_gap(other) <= tol
    }

    pub fn value(&self, label: &str) -> Option<f64> {
        self.values.iter().find(|v| v.label == label).map(|v| v.value)
    }
}

pub fn fingerprint(state: &QubitState) -> Result<InvariantFingerprint> {
    fingerprint_with(state, RankPolicy::default())
}

pub fn fingerprint_with(state: &QubitState, policy: RankPolicy) -> Result<InvariantFingerprint> {
    let patterns = builtin_patterns(state.n())?;
    let unit = state.normalized();
    let values = patterns
        .iter()
        .map(|p| {
            let value = match &unit {
                Some(u) => evaluate_invariant(p, u)?.re,
                None => 0.0,
            };
            Ok(InvariantValue {
                label: p.label().to_string(),
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = orbit_report(state, Mode::Reduced, policy)?;
    Ok(InvariantFingerprint {
        n: state.n(),
        norm_sq: state.norm_sq(),
        values,
        orbit_dim: report.orbit_dim,
        stabilizer_dim: report.stabilizer_dim,
    })
}
