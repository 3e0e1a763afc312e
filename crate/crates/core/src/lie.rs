//! The local-transformation Lie algebra acting on n-qubit states.
//!
//! Every element the crate builds is a real combination of single-site Pauli
//! matrices and the global identity, so a [`LieElement`] is stored by its
//! `3n + 1` coordinates in the basis `(σx)_1, (σy)_1, (σz)_1, …, (σz)_n, 1`.
//! The dense `2^n × 2^n` matrix is available through
//! [`LieElement::to_dense`] but is never needed for the orbit computations.
//!
//! A Hermitian element `T` moves a state along `δψ = iεTψ`; the tangent
//! vector at `ψ` is the real embedding of `iTψ`. The rank of the tangent
//! vectors of a generator set is the orbit dimension, and the real
//! coefficient vectors annihilating `ψ` span the stabilizer algebra.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::linalg::{left_nullspace, rank_info, RankInfo, RankPolicy};
use crate::local::{apply_pauli, PAULI};
use crate::state::{QubitState, RealEmbedding};

const AXES: [&str; 3] = ["x", "y", "z"];

/// Which generator basis to use.
///
/// `Reduced` is the `3n + 1` generators of `U(1) × SU(2)^n`; `Full` is the
/// `4n` generators of `U(2)^n`, with one (redundant) identity per site.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Reduced,
    Full,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Reduced => "reduced",
            Mode::Full => "full",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduced" => Ok(Mode::Reduced),
            "full" => Ok(Mode::Full),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieElement {
    n: usize,
    coords: Vec<f64>,
    label: String,
}

impl LieElement {
    /// Element with the given coordinates in the `(σx,σy,σz)_k …, 1` basis.
    pub fn from_coords(n: usize, coords: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        check_size(n)?;
        if coords.len() != 3 * n + 1 {
            return Err(Error::Dimension {
                expected: 3 * n + 1,
                found: coords.len(),
            });
        }
        Ok(Self {
            n,
            coords,
            label: label.into(),
        })
    }

    /// `σ_axis` at `site` (1-based), identity elsewhere.
    pub fn pauli(n: usize, site: usize, axis: usize) -> Result<Self> {
        if site == 0 || site > n || axis > 2 {
            return Err(Error::Dimension {
                expected: n,
                found: site,
            });
        }
        let mut coords = vec![0.0; 3 * n + 1];
        coords[3 * (site - 1) + axis] = 1.0;
        Self::from_coords(n, coords, format!("σ{}@{site}", AXES[axis]))
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut coords = vec![0.0; 3 * n + 1];
        coords[3 * n] = 1.0;
        Self::from_coords(n, coords, "identity")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Coefficient of `σ_axis` at `site` (0-based).
    pub fn pauli_coeff(&self, site: usize, axis: usize) -> f64 {
        self.coords[3 * site + axis]
    }

    pub fn identity_coeff(&self) -> f64 {
        self.coords[3 * self.n]
    }

    /// `Tψ` as an amplitude vector.
    pub fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        if amps.len() != 1 << self.n {
            return Err(Error::Dimension {
                expected: 1 << self.n,
                found: amps.len(),
            });
        }
        let id = self.identity_coeff();
        let mut out: Vec<Complex64> = amps.iter().map(|a| a * id).collect();
        for site in 0..self.n {
            for axis in 0..3 {
                let c = self.pauli_coeff(site, axis);
                if c == 0.0 {
                    continue;
                }
                let term = apply_pauli(amps, self.n, site, axis);
                for (o, t) in out.iter_mut().zip(term) {
                    *o += t * c;
                }
            }
        }
        Ok(out)
    }

    /// Dense `2^n × 2^n` matrix. Costs `4^n` memory.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n;
        let mut m = DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(self.identity_coeff(), 0.0);
        for site in 0..self.n {
            for axis in 0..3 {
                let c = self.pauli_coeff(site, axis);
                if c == 0.0 {
                    continue;
                }
                let stride = 1usize << (self.n - 1 - site);
                for col in 0..dim {
                    let b = usize::from(col & stride != 0);
                    for (r, row_bit) in [(col & !stride, 0usize), (col | stride, 1usize)] {
                        let entry = PAULI[axis][row_bit][b];
                        if entry.norm() > 0.0 {
                            m[(r, col)] += entry * c;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub n: usize,
    pub mode: Mode,
    pub elements: Vec<LieElement>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Assembles `Σ λ_i T_i` from a coefficient vector in this set's basis.
    pub fn combine(&self, lambda: &[f64], label: impl Into<String>) -> Result<LieElement> {
        if lambda.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                found: lambda.len(),
            });
        }
        let mut coords = vec![0.0; 3 * self.n + 1];
        for (l, t) in lambda.iter().zip(&self.elements) {
            for (c, tc) in coords.iter_mut().zip(t.coords()) {
                *c += l * tc;
            }
        }
        LieElement::from_coords(self.n, coords, label)
    }
}

/// Generators in site-major order: `σx, σy, σz` per site, then a single
/// identity (reduced) or an identity after each site's Paulis (full).
pub fn generators(n: usize, mode: Mode) -> Result<GeneratorSet> {
    check_size(n)?;
    let mut elements = Vec::with_capacity(4 * n);
    for site in 1..=n {
        for axis in 0..3 {
            elements.push(LieElement::pauli(n, site, axis)?);
        }
        if mode == Mode::Full {
            let mut id = LieElement::identity(n)?;
            id.label = format!("1@{site}");
            elements.push(id);
        }
    }
    if mode == Mode::Reduced {
        elements.push(LieElement::identity(n)?);
    }
    Ok(GeneratorSet { n, mode, elements })
}

/// Real embedding of `iTψ`.
pub fn tangent_vector(t: &LieElement, state: &QubitState) -> Result<RealEmbedding> {
    if t.n() != state.n() {
        return Err(Error::Dimension {
            expected: state.n(),
            found: t.n(),
        });
    }
    let image = t.apply(state.amplitudes())?;
    let coords = image.iter().flat_map(|z| [-z.im, z.re]).collect();
    Ok(RealEmbedding { coords })
}

/// `|G| × 2^{n+1}` matrix whose rows are the tangent vectors of `G` at `ψ`.
pub fn tangent_matrix(generators: &GeneratorSet, state: &QubitState) -> Result<DMatrix<f64>> {
    if generators.n != state.n() {
        return Err(Error::Dimension {
            expected: state.n(),
            found: generators.n,
        });
    }
    let cols = 2 * state.dim();
    let mut m = DMatrix::<f64>::zeros(generators.len(), cols);
    for (row, t) in generators.elements.iter().enumerate() {
        let v = tangent_vector(t, state)?;
        for (col, x) in v.coords.into_iter().enumerate() {
            m[(row, col)] = x;
        }
    }
    Ok(m)
}

/// Orbit dimension, invariant count and stabilizer dimension at one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitReport {
    pub n: usize,
    pub mode: Mode,
    pub orbit_dim: usize,
    pub invariant_count: usize,
    pub stabilizer_dim: usize,
    pub tolerance: f64,
    pub singular_values: Vec<f64>,
}

fn normalized_rank(state: &QubitState, mode: Mode, policy: RankPolicy) -> Result<(GeneratorSet, RankInfo, Option<QubitState>)> {
    let gens = generators(state.n(), mode)?;
    match state.normalized() {
        None => Ok((
            gens,
            RankInfo {
                rank: 0,
                threshold: policy.threshold(0.0),
                singular_values: Vec::new(),
            },
            None,
        )),
        Some(unit) => {
            let info = rank_info(&tangent_matrix(&gens, &unit)?, policy)?;
            Ok((gens, info, Some(unit)))
        }
    }
}

pub fn orbit_report(state: &QubitState, mode: Mode, policy: RankPolicy) -> Result<OrbitReport> {
    let (gens, info, _) = normalized_rank(state, mode, policy)?;
    let total = 2 * state.dim();
    Ok(OrbitReport {
        n: state.n(),
        mode,
        orbit_dim: info.rank,
        invariant_count: total - info.rank,
        stabilizer_dim: gens.len() - info.rank,
        tolerance: info.threshold,
        singular_values: info.singular_values,
    })
}

/// Real dimension of the orbit through `ψ` (0 for the zero state).
///
/// `ψ` is normalized before ranking, so the result does not depend on scale.
pub fn orbit_dimension(state: &QubitState, mode: Mode, policy: RankPolicy) -> usize {
    orbit_report(state, mode, policy)
        .expect("generators match the state size")
        .orbit_dim
}

/// `2^{n+1} − orbit_dimension`; the norm is counted among the invariants.
pub fn invariant_count(state: &QubitState, mode: Mode, policy: RankPolicy) -> usize {
    2 * state.dim() - orbit_dimension(state, mode, policy)
}

/// Parameter-counting lower bounds on the number of nonlocal parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountBounds {
    /// `2^{n+1} − 4n`
    pub naive: i64,
    /// `2^{n+1} − (3n + 1)`
    pub reduced: i64,
}

pub fn count_bounds(n: usize) -> Result<CountBounds> {
    if n == 0 || n > 60 {
        return Err(Error::UnsupportedSize(n));
    }
    let total = 1i64 << (n + 1);
    let n = n as i64;
    Ok(CountBounds {
        naive: total - 4 * n,
        reduced: total - (3 * n + 1),
    })
}

/// Orthonormal basis of the stabilizer algebra at one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerBasis {
    pub mode: Mode,
    /// Coefficient vectors in the generator basis of `mode`.
    pub coefficients: Vec<Vec<f64>>,
    #[serde(skip)]
    pub elements: Vec<LieElement>,
    pub tol: f64,
}

impl StabilizerBasis {
    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }
}

/// All real `λ` with `‖Σ λ_i · tangent_vector(T_i, ψ)‖ ≤ τ` on the normalized state.
///
/// The zero state is stabilized by the whole algebra.
pub fn stabilizer_basis(state: &QubitState, mode: Mode, policy: RankPolicy) -> Result<StabilizerBasis> {
    let gens = generators(state.n(), mode)?;
    let (coefficients, tol) = match state.normalized() {
        None => {
            let k = gens.len();
            let basis = (0..k)
                .map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect();
            (basis, policy.threshold(0.0))
        }
        Some(unit) => {
            let (basis, info) = left_nullspace(&tangent_matrix(&gens, &unit)?, policy)?;
            (basis, info.threshold)
        }
    };
    let elements = coefficients
        .iter()
        .enumerate()
        .map(|(i, lambda)| gens.combine(lambda, format!("S{}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilizerBasis {
        mode,
        coefficients,
        elements,
        tol,
    })
}
