//! n-qubit pure states, their real-coordinate embedding, the state-file
//! format, and a small catalog of named constructions.
//!
//! Amplitudes are stored in flat-index order with qubit 1 as the most
//! significant bit: the basis vector `e_{i1} ⊗ … ⊗ e_{in}` (with `e1 ↦ 0`,
//! `e2 ↦ 1`) sits at index `Σ_k b_k · 2^{n-k}`. States are never normalized
//! implicitly; only [`random_state`] returns a unit vector.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use serde_json::Value;

use crate::error::{check_size, Error, Result};
use crate::rng;

#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl QubitState {
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_size(n)?;
        let expected = 1usize << n;
        if amplitudes.len() != expected {
            return Err(Error::Dimension {
                expected,
                found: amplitudes.len(),
            });
        }
        Ok(Self { n, amplitudes })
    }

    /// Builds a state from its amplitude vector, inferring `n`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Dimension {
                expected: len.next_power_of_two().max(2),
                found: len,
            });
        }
        Self::new(len.trailing_zeros() as usize, amplitudes)
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self {
            n,
            amplitudes: vec![Complex64::new(0.0, 0.0); 1 << n],
        })
    }

    /// The computational basis vector with amplitude 1 at `index`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let mut state = Self::zero(n)?;
        let dim = state.dim();
        let slot = state
            .amplitudes
            .get_mut(index)
            .ok_or(Error::Dimension {
                expected: dim,
                found: index + 1,
            })?;
        *slot = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// `Σ |α_i|²`.
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.iter().all(|a| *a == Complex64::new(0.0, 0.0))
    }

    /// Unit-norm copy, or `None` for the zero state.
    pub fn normalized(&self) -> Option<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        Some(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
        }
    }

    /// Hermitian inner product `⟨self, other⟩ = Σ conj(self_i) other_i`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn embed_real(&self) -> RealEmbedding {
        let coords = self
            .amplitudes
            .iter()
            .flat_map(|a| [a.re, a.im])
            .collect();
        RealEmbedding { coords }
    }

    pub fn from_embedding(embedding: &RealEmbedding) -> Result<Self> {
        if !embedding.coords.len().is_multiple_of(2) {
            return Err(Error::Dimension {
                expected: embedding.coords.len() + 1,
                found: embedding.coords.len(),
            });
        }
        let amplitudes = embedding
            .coords
            .chunks_exact(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        Self::from_amplitudes(amplitudes)
    }

    /// Parses the state-file JSON document.
    pub fn from_json(document: &str) -> Result<Self> {
        parse_state(document)
    }

    /// Serializes to the state-file format, 17 significant digits per value.
    pub fn to_json(&self) -> String {
        let mut out = format!("{{\"n\": {}, \"amplitudes\": [", self.n);
        for (i, a) in self.amplitudes.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "[{:.16e}, {:.16e}]", a.re, a.im);
        }
        out.push_str("]}\n");
        out
    }
}

/// Interleaved real coordinates `(Re α_0, Im α_0, Re α_1, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealEmbedding {
    pub coords: Vec<f64>,
}

impl RealEmbedding {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }
}

/// Flat index of the basis vector with the given per-qubit bits (qubit 1 first).
pub fn flat_index(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b & 1))
}

pub fn norm_sq(state: &QubitState) -> f64 {
    state.norm_sq()
}

pub fn embed_real(state: &QubitState) -> RealEmbedding {
    state.embed_real()
}

/// Parses a state document `{"n": <int>, "amplitudes": [[re, im], ...]}`.
pub fn parse_state(document: &str) -> Result<QubitState> {
    let value: Value =
        serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("state document must be a JSON object".into()))?;
    let n = obj
        .get("n")
        .ok_or_else(|| Error::Parse("missing field `n`".into()))?;
    let n = n
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("`n` must be a non-negative integer, got {n}")))?;
    let n = usize::try_from(n).map_err(|_| Error::UnsupportedSize(usize::MAX))?;
    check_size(n)?;
    let list = obj
        .get("amplitudes")
        .ok_or_else(|| Error::Parse("missing field `amplitudes`".into()))?
        .as_array()
        .ok_or_else(|| Error::Parse("`amplitudes` must be an array".into()))?;
    let expected = 1usize << n;
    if list.len() != expected {
        return Err(Error::Dimension {
            expected,
            found: list.len(),
        });
    }
    let mut amplitudes = Vec::with_capacity(expected);
    for (i, entry) in list.iter().enumerate() {
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse(format!("amplitude {i} must be a [re, im] pair")))?;
        let re = pair[0]
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("amplitude {i}: non-numeric real part")))?;
        let im = pair[1]
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("amplitude {i}: non-numeric imaginary part")))?;
        amplitudes.push(Complex64::new(re, im));
    }
    QubitState::new(n, amplitudes)
}

/// Haar-distributed unit vector: independent standard normals for every real
/// and imaginary part, then normalized.
pub fn random_state(n: usize, seed: u64) -> Result<QubitState> {
    random_state_with(n, &mut rng::stream(seed))
}

pub fn random_state_with<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<QubitState> {
    check_size(n)?;
    let amplitudes: Vec<Complex64> = (0..1usize << n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    let state = QubitState::new(n, amplitudes)?;
    Ok(state.normalized().expect("gaussian sample is nonzero"))
}

/// Names accepted by [`catalog_state`].
pub const CATALOG: &[&str] = &["singlet", "schmidt2", "family4", "ghz", "product", "canonical3"];

/// Builds a named state.
///
/// | name | params |
/// |------|--------|
/// | `singlet` | none |
/// | `schmidt2` | `N, φ` |
/// | `family4` | `Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d` |
/// | `ghz` | none |
/// | `product` | `n` |
/// | `canonical3` | `N, α, β, γ, δ, η` |
pub fn catalog_state(name: &str, params: &[f64]) -> Result<QubitState> {
    let arity = |expected: usize| {
        if params.len() == expected {
            Ok(())
        } else {
            Err(Error::Parameter {
                name: name.to_string(),
                expected,
                found: params.len(),
            })
        }
    };
    match name {
        "singlet" => {
            arity(0)?;
            Ok(singlet())
        }
        "schmidt2" => {
            arity(2)?;
            Ok(schmidt2(params[0], params[1]))
        }
        "family4" => {
            arity(8)?;
            let c = |i: usize| Complex64::new(params[2 * i], params[2 * i + 1]);
            Ok(family4(c(0), c(1), c(2), c(3)))
        }
        "ghz" => {
            arity(0)?;
            Ok(ghz())
        }
        "product" => {
            arity(1)?;
            let n = params[0];
            if n.fract() != 0.0 || n < 0.0 {
                return Err(Error::Parse(format!("product: `n` must be an integer, got {n}")));
            }
            product_state(n as usize)
        }
        "canonical3" => {
            arity(6)?;
            Ok(canonical3(params[0], params[1], params[2], params[3], params[4], params[5]))
        }
        other => Err(Error::Catalog(other.to_string())),
    }
}

/// `(e1⊗e2 − e2⊗e1)/√2`.
pub fn singlet() -> QubitState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 4];
    amps[0b01] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[0b10] = Complex64::new(-FRAC_1_SQRT_2, 0.0);
    QubitState { n: 2, amplitudes: amps }
}

/// `N(cos φ e1⊗e1 + sin φ e2⊗e2)`.
pub fn schmidt2(norm: f64, phi: f64) -> QubitState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 4];
    amps[0b00] = Complex64::new(norm * phi.cos(), 0.0);
    amps[0b11] = Complex64::new(norm * phi.sin(), 0.0);
    QubitState { n: 2, amplitudes: amps }
}

/// `a e1e1e1 + b e2e2e2 + c e1e1e2 + d e2e1e1`.
pub fn family4(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> QubitState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = a;
    amps[0b111] = b;
    amps[0b001] = c;
    amps[0b100] = d;
    QubitState { n: 3, amplitudes: amps }
}

pub fn ghz() -> QubitState {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    family4(h, h, z, z)
}

/// `e1 ⊗ … ⊗ e1`.
pub fn product_state(n: usize) -> Result<QubitState> {
    QubitState::basis(n, 0)
}

/// The three-qubit canonical form
///
/// ```text
/// N cosα e1⊗(cosβ e1e1 + sinβ e2e2)
///   + N sinα cosγ e2⊗(sinβ e1e1 − cosβ e2e2)
///   + N sinα sinγ e2⊗(cosδ e1e2 + e^{iη} sinδ e2e1)
/// ```
pub fn canonical3(norm: f64, alpha: f64, beta: f64, gamma: f64, delta: f64, eta: f64) -> QubitState {
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let (sg, cg) = gamma.sin_cos();
    let (sd, cd) = delta.sin_cos();
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = Complex64::new(norm * ca * cb, 0.0);
    amps[0b011] = Complex64::new(norm * ca * sb, 0.0);
    amps[0b100] = Complex64::new(norm * sa * cg * sb, 0.0);
    amps[0b111] = Complex64::new(-norm * sa * cg * cb, 0.0);
    amps[0b101] = Complex64::new(norm * sa * sg * cd, 0.0);
    amps[0b110] = Complex64::from_polar(norm * sa * sg * sd, eta);
    QubitState { n: 3, amplitudes: amps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_basis_state() {
        let s = parse_state(r#"{"n":1, "amplitudes":[[1,0],[0,0]]}"#).unwrap();
        assert_eq!(s, QubitState::basis(1, 0).unwrap());
    }

    #[test]
    fn parses_singlet_bit_exactly() {
        let s = parse_state(
            r#"{"n":2, "amplitudes":[[0,0],[0.70710678,0],[-0.70710678,0],[0,0]]}"#,
        )
        .unwrap();
        assert_eq!(s.amplitudes()[1], c(0.70710678, 0.0));
        assert_eq!(s.amplitudes()[2], c(-0.70710678, 0.0));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_state(r#"{"n":1, "amplitudes":[[1,0],[0,0],[0,0]]}"#),
            Err(Error::Dimension { expected: 2, found: 3 })
        ));
        assert!(matches!(
            parse_state(r#"{"n":1, "amplitudes":[["x",0],[0,0]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_state(r#"{"n":0, "amplitudes":[[1,0]]}"#),
            Err(Error::UnsupportedSize(0))
        ));
        assert!(matches!(
            parse_state(r#"{"n":13, "amplitudes":[]}"#),
            Err(Error::UnsupportedSize(13))
        ));
        assert!(matches!(parse_state("not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn writer_round_trips_bits() {
        let s = random_state(3, 11).unwrap();
        let text = s.to_json();
        assert!(text.contains("e-1"));
        assert_eq!(parse_state(&text).unwrap(), s);
        let neg_zero = QubitState::new(1, vec![c(-0.0, 1e-300), c(f64::MIN_POSITIVE, -3.5)]).unwrap();
        let back = parse_state(&neg_zero.to_json()).unwrap();
        for (a, b) in back.amplitudes().iter().zip(neg_zero.amplitudes()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn catalog_entries() {
        let g = catalog_state("ghz", &[]).unwrap();
        let nonzero: Vec<usize> = (0..8).filter(|&i| g.amplitudes()[i].norm() > 0.0).collect();
        assert_eq!(nonzero, vec![0, 7]);
        assert_eq!(g.amplitudes()[7], c(FRAC_1_SQRT_2, 0.0));

        let s = catalog_state("schmidt2", &[1.0, FRAC_PI_4]).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitudes()[3].re - FRAC_1_SQRT_2).abs() < 1e-15);

        let p = catalog_state("product", &[3.0]).unwrap();
        assert_eq!(p.amplitudes()[0], c(1.0, 0.0));
        assert!(p.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));

        assert!(matches!(catalog_state("w", &[]), Err(Error::Catalog(_))));
        assert!(matches!(
            catalog_state("schmidt2", &[1.0]),
            Err(Error::Parameter { expected: 2, found: 1, .. })
        ));
    }

    #[test]
    fn family4_slots() {
        let (a, b, cc, d) = (c(1.0, 2.0), c(3.0, 4.0), c(5.0, 6.0), c(7.0, 8.0));
        let s = family4(a, b, cc, d);
        let amps = s.amplitudes();
        assert_eq!((amps[0], amps[7], amps[1], amps[4]), (a, b, cc, d));
        for i in [2, 3, 5, 6] {
            assert_eq!(amps[i], c(0.0, 0.0));
        }
        assert_eq!(flat_index(&[1, 0, 0]), 4);
        assert_eq!(flat_index(&[0, 0, 1]), 1);
    }

    #[test]
    fn norms() {
        assert!((singlet().norm_sq() - 1.0).abs() < 1e-15);
        assert_eq!(QubitState::zero(3).unwrap().norm_sq(), 0.0);
        for phi in [0.0, 0.3, 1.1, PI] {
            assert!((schmidt2(2.0, phi).norm_sq() - 4.0).abs() < 1e-14);
        }
        assert!((random_state(1, 42).unwrap().norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_state_is_deterministic() {
        assert_eq!(random_state(2, 7).unwrap(), random_state(2, 7).unwrap());
        assert_ne!(random_state(2, 7).unwrap(), random_state(2, 8).unwrap());
        assert!(matches!(random_state(13, 0), Err(Error::UnsupportedSize(13))));
        assert!(matches!(random_state(0, 0), Err(Error::UnsupportedSize(0))));
    }

    #[test]
    fn embedding_layout() {
        let s = QubitState::new(1, vec![c(0.1, 0.2), c(0.3, 0.4)]).unwrap();
        assert_eq!(s.embed_real().coords, vec![0.1, 0.2, 0.3, 0.4]);
        assert_eq!(QubitState::basis(1, 0).unwrap().embed_real().coords, vec![1.0, 0.0, 0.0, 0.0]);
        let r = random_state(3, 5).unwrap();
        assert_eq!(QubitState::from_embedding(&r.embed_real()).unwrap(), r);
    }
}
