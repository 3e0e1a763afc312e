use num_complex::Complex64;
use serde::Serialize;

use super::svd2;
use crate::error::{Error, Result};
use crate::local::{adjoint, transpose, LocalUnitary, Mat2, IDENTITY};
use crate::state::QubitState;

/// `(U1 ⊗ U2) ψ = N (cos φ e1⊗e1 + sin φ e2⊗e2)` with `0 ≤ φ ≤ π/4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtForm {
    #[serde(rename = "N")]
    pub norm: f64,
    pub phi: f64,
    #[serde(serialize_with = "crate::canonical::three::ser_unitaries")]
    pub local_unitaries: [Mat2; 2],
}

impl SchmidtForm {
    pub fn local_unitary(&self) -> LocalUnitary {
        LocalUnitary::new(self.local_unitaries.to_vec())
    }
}

pub fn schmidt_2q(state: &QubitState) -> Result<SchmidtForm> {
    if state.n() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: state.n(),
        });
    }
    let a = state.amplitudes();
    let alpha: Mat2 = [[a[0], a[1]], [a[2], a[3]]];
    if a.iter().all(|x| *x == Complex64::new(0.0, 0.0)) {
        return Ok(SchmidtForm {
            norm: 0.0,
            phi: 0.0,
            local_unitaries: [IDENTITY, IDENTITY],
        });
    }
    // α ↦ U1 α U2ᵀ, so α = U Σ V† is diagonalized by U1 = U†, U2 = Vᵀ.
    let (u, s, v) = svd2(&alpha);
    Ok(SchmidtForm {
        norm: s[0].hypot(s[1]),
        phi: s[1].atan2(s[0]),
        local_unitaries: [adjoint(&u), transpose(&v)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{random_state, schmidt2, singlet};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn documented_examples() {
        let s = schmidt_2q(&singlet()).unwrap();
        assert!((s.norm - 1.0).abs() < 1e-15 && (s.phi - FRAC_PI_4).abs() < 1e-15);

        let p = schmidt_2q(&QubitState::basis(2, 0b01).unwrap()).unwrap();
        assert!((p.norm - 1.0).abs() < 1e-15 && p.phi.abs() < 1e-15);

        let amps = [0.8, 0.0, 0.0, 0.6].map(|x| Complex64::new(x, 0.0)).to_vec();
        let d = schmidt_2q(&QubitState::new(2, amps).unwrap()).unwrap();
        assert!((d.norm - 1.0).abs() < 1e-15);
        assert!((d.phi - 0.6f64.atan2(0.8)).abs() < 1e-15);
    }

    #[test]
    fn reconstruction() {
        for seed in 0..50 {
            let psi = random_state(2, seed).unwrap();
            let f = schmidt_2q(&psi).unwrap();
            let out = f.local_unitary().apply(&psi).unwrap();
            assert!(out.max_abs_diff(&schmidt2(f.norm, f.phi)) < 1e-14);
            assert!(f.phi >= 0.0 && f.phi <= FRAC_PI_4);
        }
    }

    #[test]
    fn zero_state_and_wrong_size() {
        let z = schmidt_2q(&QubitState::zero(2).unwrap()).unwrap();
        assert_eq!((z.norm, z.phi), (0.0, 0.0));
        assert!(schmidt_2q(&QubitState::zero(3).unwrap()).is_err());
    }
}
