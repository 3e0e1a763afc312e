//! Single-site operators and local unitary transformations `V1 ⊗ … ⊗ Vn`.
//!
//! Operators are never expanded to `2^n × 2^n` matrices here: a 2×2 factor
//! acting on site `k` (1-based) is applied by pairing amplitudes whose flat
//! indices differ only in bit `n − k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::state::QubitState;

/// Row-major 2×2 complex matrix.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub const IDENTITY: Mat2 = [[ONE, ZERO], [ZERO, ONE]];
pub const SIGMA_X: Mat2 = [[ZERO, ONE], [ONE, ZERO]];
pub const SIGMA_Y: Mat2 = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
pub const SIGMA_Z: Mat2 = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];
pub const PAULI: [Mat2; 3] = [SIGMA_X, SIGMA_Y, SIGMA_Z];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

pub fn det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// `max |(A A† − 1)_{ij}|`.
pub fn unitarity_defect(a: &Mat2) -> f64 {
    let p = mat_mul(a, &adjoint(a));
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((p[i][j] - target).norm());
        }
    }
    worst
}

/// Applies `m` to `site` (0-based, qubit 1 is site 0) in place.
pub fn apply_site(amps: &mut [Complex64], n: usize, site: usize, m: &Mat2) {
    let stride = 1usize << (n - 1 - site);
    let block = stride << 1;
    for base in (0..amps.len()).step_by(block) {
        for offset in base..base + stride {
            let a0 = amps[offset];
            let a1 = amps[offset + stride];
            amps[offset] = m[0][0] * a0 + m[0][1] * a1;
            amps[offset + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// Pauli `axis` (0 = x, 1 = y, 2 = z) at `site`, returned as a new vector.
pub fn apply_pauli(amps: &[Complex64], n: usize, site: usize, axis: usize) -> Vec<Complex64> {
    let stride = 1usize << (n - 1 - site);
    let mut out = vec![ZERO; amps.len()];
    for (idx, slot) in out.iter_mut().enumerate() {
        let bit = idx & stride != 0;
        *slot = match axis {
            0 => amps[idx ^ stride],
            1 => {
                // σy e1 = i e2, σy e2 = −i e1
                if bit {
                    I * amps[idx ^ stride]
                } else {
                    -I * amps[idx ^ stride]
                }
            }
            _ => {
                if bit {
                    -amps[idx]
                } else {
                    amps[idx]
                }
            }
        };
    }
    out
}

/// `exp(i (x σx + y σy + z σz))`, a smooth surjection `R³ → SU(2)`.
pub fn su2_exp(v: [f64; 3]) -> Mat2 {
    let theta = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let (s, c) = theta.sin_cos();
    // sin θ / θ, continuous at 0
    let k = if theta < 1e-8 { 1.0 - theta * theta / 6.0 } else { s / theta };
    let (x, y, z) = (v[0] * k, v[1] * k, v[2] * k);
    [
        [Complex64::new(c, z), Complex64::new(y, x)],
        [Complex64::new(-y, x), Complex64::new(c, -z)],
    ]
}

/// Haar-random SU(2): a uniformly random unit quaternion from four normals.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        let [a, b, c, d] = q.map(|x| x / norm);
        return [
            [Complex64::new(a, b), Complex64::new(c, d)],
            [Complex64::new(-c, d), Complex64::new(a, -b)],
        ];
    }
}

/// A product `e^{iθ} V1 ⊗ … ⊗ Vn` of one 2×2 unitary per site and a global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    pub factors: Vec<Mat2>,
    pub phase: f64,
}

impl LocalUnitary {
    pub fn identity(n: usize) -> Self {
        Self {
            factors: vec![IDENTITY; n],
            phase: 0.0,
        }
    }

    pub fn new(factors: Vec<Mat2>) -> Self {
        Self { factors, phase: 0.0 }
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    /// Independent Haar SU(2) per site times a uniform global phase.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let factors = (0..n).map(|_| haar_su2(rng)).collect();
        let phase = rng.random_range(-PI..PI);
        Self { factors, phase }
    }

    /// SU(2) factors from 3 exponential coordinates per site.
    pub fn from_angles(angles: &[f64]) -> Self {
        let factors = angles
            .chunks_exact(3)
            .map(|v| su2_exp([v[0], v[1], v[2]]))
            .collect();
        Self::new(factors)
    }

    pub fn apply(&self, state: &QubitState) -> Result<QubitState> {
        if state.n() != self.n() {
            return Err(Error::Dimension {
                expected: state.n(),
                found: self.n(),
            });
        }
        let mut amps = self.apply_raw(state.amplitudes());
        if self.phase != 0.0 {
            let p = Complex64::from_polar(1.0, self.phase);
            amps.iter_mut().for_each(|a| *a *= p);
        }
        QubitState::new(state.n(), amps)
    }

    pub(crate) fn apply_raw(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        let mut out = amps.to_vec();
        for (site, m) in self.factors.iter().enumerate() {
            apply_site(&mut out, n, site, m);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self {
            factors: self.factors.iter().map(adjoint).collect(),
            phase: -self.phase,
        }
    }
}
