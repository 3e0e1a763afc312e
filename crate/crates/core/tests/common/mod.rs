//! Reference computations that do not go through the library's own
//! linear algebra: dense Kronecker-product operators and a pivoted
//! Gram–Schmidt rank.

#![allow(dead_code)]

use num_complex::Complex64;
use orbit_forge::rng::SeededRng;
use rand::Rng;
use rand_distr::StandardNormal;

pub type Dense = Vec<Vec<Complex64>>;

const O: Complex64 = Complex64::new(0.0, 0.0);
const L: Complex64 = Complex64::new(1.0, 0.0);
const J: Complex64 = Complex64::new(0.0, 1.0);

pub fn pauli(axis: usize) -> [[Complex64; 2]; 2] {
    match axis {
        0 => [[O, L], [L, O]],
        1 => [[O, -J], [J, O]],
        2 => [[L, O], [O, -L]],
        _ => [[L, O], [O, L]],
    }
}

fn kron(a: &Dense, b: &[[Complex64; 2]; 2]) -> Dense {
    let n = a.len();
    let mut out = vec![vec![O; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `1 ⊗ … ⊗ m ⊗ … ⊗ 1` with `m` on `site` (0-based, qubit 1 leftmost).
pub fn site_operator(n: usize, site: usize, m: [[Complex64; 2]; 2]) -> Dense {
    let mut acc: Dense = vec![vec![L]];
    for k in 0..n {
        acc = kron(&acc, &if k == site { m } else { pauli(3) });
    }
    acc
}

pub fn identity(n: usize) -> Dense {
    site_operator(n, 0, pauli(3))
}

pub fn matvec(m: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn embed(v: &[Complex64]) -> Vec<f64> {
    v.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Embedded `iTψ` for the reduced generators, in the library's order.
pub fn reduced_tangents(n: usize, amps: &[Complex64]) -> Vec<Vec<f64>> {
    let mut ops: Vec<Dense> = Vec::new();
    for site in 0..n {
        for axis in 0..3 {
            ops.push(site_operator(n, site, pauli(axis)));
        }
    }
    ops.push(identity(n));
    ops.iter()
        .map(|t| embed(&matvec(t, amps).iter().map(|z| J * z).collect::<Vec<_>>()))
        .collect()
}

/// Rank under Gram–Schmidt with largest-residual pivoting; a pivot counts
/// when its residual norm exceeds `rel · max(largest input norm, 1)`.
pub fn gs_rank(vectors: &[Vec<f64>], rel: f64) -> usize {
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = vectors.iter().map(|v| norm(v)).fold(1.0, f64::max);
    let mut rest: Vec<Vec<f64>> = vectors.to_vec();
    let mut rank = 0;
    while !rest.is_empty() {
        let (best, size) = rest
            .iter()
            .enumerate()
            .map(|(i, v)| (i, norm(v)))
            .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        if size <= rel * scale {
            break;
        }
        rank += 1;
        let q: Vec<f64> = rest.swap_remove(best).iter().map(|x| x / size).collect();
        for v in rest.iter_mut() {
            for _ in 0..2 {
                let dot: f64 = v.iter().zip(&q).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(&q).for_each(|(a, b)| *a -= dot * b);
            }
        }
    }
    rank
}

pub fn normalize(amps: &[Complex64]) -> Vec<Complex64> {
    let n = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.iter().map(|z| z / n).collect()
}

/// Orbit dimension from dense operators on the normalized state.
pub fn orbit_rank(n: usize, amps: &[Complex64]) -> usize {
    gs_rank(&reduced_tangents(n, &normalize(amps)), 1e-9)
}

pub fn normal(rng: &mut SeededRng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_amps(len: usize, rng: &mut SeededRng) -> Vec<Complex64> {
    (0..len).map(|_| Complex64::new(normal(rng), normal(rng))).collect()
}

/// Eigenvalues of a 2×2 Hermitian matrix, descending.
pub fn hermitian2_eigs(m: [[Complex64; 2]; 2]) -> [f64; 2] {
    let tr = m[0][0].re + m[1][1].re;
    let det = m[0][0].re * m[1][1].re - m[0][1].norm_sqr();
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    [0.5 * tr + disc, 0.5 * tr - disc]
}

/// `ρ1 = tr_{2..n} |ψ⟩⟨ψ|`.
pub fn rho_first(amps: &[Complex64]) -> [[Complex64; 2]; 2] {
    let half = amps.len() / 2;
    let mut r = [[O; 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            r[i][k] = (0..half).map(|j| amps[i * half + j] * amps[k * half + j].conj()).sum();
        }
    }
    r
}
