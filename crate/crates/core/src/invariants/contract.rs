//! Evaluation of a contraction pattern as a small tensor network.
//!
//! The network has `d` amplitude tensors and `d` conjugate tensors, each with
//! one binary leg per slot. Pairs of tensors are contracted greedily, always
//! choosing the pair (sharing at least one leg, when possible) whose result
//! is smallest, until a scalar remains.

use num_complex::Complex64;

use super::ContractionPattern;
use crate::error::{Error, Result};
use crate::state::QubitState;

#[derive(Debug, Clone)]
struct Tensor {
    /// Leg ids; `legs[0]` is the most significant bit of the data index.
    legs: Vec<usize>,
    data: Vec<Complex64>,
}

impl Tensor {
    fn position_mask(&self, leg: usize) -> usize {
        let pos = self.legs.iter().position(|&l| l == leg).expect("leg present");
        1 << (self.legs.len() - 1 - pos)
    }

    /// Data offsets for every assignment of `legs` (first leg most significant).
    fn offsets(&self, legs: &[usize]) -> Vec<usize> {
        let masks: Vec<usize> = legs.iter().map(|&l| self.position_mask(l)).collect();
        (0..1usize << legs.len())
            .map(|assign| {
                masks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| assign & (1 << (legs.len() - 1 - i)) != 0)
                    .map(|(_, m)| m)
                    .sum()
            })
            .collect()
    }
}

fn contract_pair(a: &Tensor, b: &Tensor) -> Tensor {
    let shared: Vec<usize> = a.legs.iter().copied().filter(|l| b.legs.contains(l)).collect();
    let free_a: Vec<usize> = a.legs.iter().copied().filter(|l| !shared.contains(l)).collect();
    let free_b: Vec<usize> = b.legs.iter().copied().filter(|l| !shared.contains(l)).collect();

    let a_free = a.offsets(&free_a);
    let a_shared = a.offsets(&shared);
    let b_free = b.offsets(&free_b);
    let b_shared = b.offsets(&shared);

    // Gather into row-major (free_a × shared) and (shared × free_b) blocks.
    let ns = a_shared.len();
    let lhs: Vec<Complex64> = a_free
        .iter()
        .flat_map(|&fo| a_shared.iter().map(move |&so| a.data[fo + so]))
        .collect();
    let rhs: Vec<Complex64> = b_shared
        .iter()
        .flat_map(|&so| b_free.iter().map(move |&fo| b.data[fo + so]))
        .collect();

    let nb = b_free.len();
    let mut data = vec![Complex64::new(0.0, 0.0); a_free.len() * nb];
    for (i, row) in data.chunks_exact_mut(nb).enumerate() {
        let l = &lhs[i * ns..(i + 1) * ns];
        for (s, &lv) in l.iter().enumerate() {
            let r = &rhs[s * nb..(s + 1) * nb];
            for (out, &rv) in row.iter_mut().zip(r) {
                *out += lv * rv;
            }
        }
    }
    let mut legs = free_a;
    legs.extend(free_b);
    Tensor { legs, data }
}

pub(super) fn evaluate_network(pattern: &ContractionPattern, state: &QubitState) -> Result<Complex64> {
    let n = pattern.n();
    if n != state.n() {
        return Err(Error::SlotMismatch {
            pattern: n,
            state: state.n(),
        });
    }
    let d = pattern.degree();
    let amps = state.amplitudes();
    let conj: Vec<Complex64> = amps.iter().map(|a| a.conj()).collect();
    // Leg `s * d + k` joins amplitude copy k to conjugate copy perms[s][k] at slot s.
    let mut tensors: Vec<Tensor> = (0..d)
        .map(|k| Tensor {
            legs: (0..n).map(|s| s * d + k).collect(),
            data: amps.to_vec(),
        })
        .collect();
    for j in 0..d {
        let legs = (0..n)
            .map(|s| {
                let k = pattern.perms()[s].iter().position(|&x| x == j).expect("bijection");
                s * d + k
            })
            .collect();
        tensors.push(Tensor {
            legs,
            data: conj.clone(),
        });
    }

    while tensors.len() > 1 {
        let mut best: Option<(bool, usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let shared = tensors[i].legs.iter().filter(|l| tensors[j].legs.contains(l)).count();
                let out_legs = tensors[i].legs.len() + tensors[j].legs.len() - 2 * shared;
                let key = (shared == 0, out_legs, i, j);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, _, i, j) = best.expect("at least two tensors");
        let b = tensors.swap_remove(j);
        let a = tensors.swap_remove(i);
        tensors.push(contract_pair(&a, &b));
    }
    let result = tensors.pop().expect("one tensor remains");
    debug_assert!(result.legs.is_empty());
    Ok(result.data[0])
}
