//! Structure of stabilizer algebras and the four-parameter three-qubit family.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lie::{stabilizer_basis, LieElement, Mode, StabilizerBasis};
use crate::linalg::{numerical_rank, RankPolicy};
use crate::rng;
use crate::state::{family4, QubitState};

/// `−i(AB − BA)`.
///
/// On each site `−i[a·σ, b·σ] = 2(a × b)·σ`; identity parts drop out.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            expected: a.n(),
            found: b.n(),
        });
    }
    let n = a.n();
    let mut coords = vec![0.0; 3 * n + 1];
    for site in 0..n {
        let p = |e: &LieElement, k: usize| e.pauli_coeff(site, k);
        for c in 0..3 {
            let (i, j) = ((c + 1) % 3, (c + 2) % 3);
            coords[3 * site + c] = 2.0 * (p(a, i) * p(b, j) - p(a, j) * p(b, i));
        }
    }
    LieElement::from_coords(n, coords, format!("[{},{}]", a.label(), b.label()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilizerLabel {
    Trivial,
    /// `u1^k`, abelian of dimension k.
    U1(usize),
    Su2,
    U1Su2,
    Unclassified { dim: usize, derived_dim: usize },
}

impl StabilizerLabel {
    pub fn from_dims(dim: usize, derived_dim: usize) -> Self {
        match (dim, derived_dim) {
            (0, _) => Self::Trivial,
            (k, 0) => Self::U1(k),
            (3, 3) => Self::Su2,
            (4, 3) => Self::U1Su2,
            (dim, derived_dim) => Self::Unclassified { dim, derived_dim },
        }
    }
}

impl fmt::Display for StabilizerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Trivial => f.write_str("trivial"),
            Self::U1(1) => f.write_str("u1"),
            Self::U1(k) => write!(f, "u1^{k}"),
            Self::Su2 => f.write_str("su2"),
            Self::U1Su2 => f.write_str("u1+su2"),
            Self::Unclassified { dim, derived_dim } => write!(f, "unclassified({dim},{derived_dim})"),
        }
    }
}

impl Serialize for StabilizerLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerReport {
    pub n: usize,
    pub mode: Mode,
    pub dim: usize,
    pub derived_dim: usize,
    pub closure_residual: f64,
    pub label: StabilizerLabel,
    pub flip_symmetric: bool,
    pub flip_phase: Option<f64>,
    pub basis: StabilizerBasis,
}

/// Stabilizer algebra in the reduced basis, its derived algebra and label.
pub fn classify_stabilizer(state: &QubitState, policy: RankPolicy) -> Result<StabilizerReport> {
    let basis = stabilizer_basis(state, Mode::Reduced, policy)?;
    let elems = &basis.elements;
    let mut brackets = Vec::new();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            brackets.push(bracket(&elems[i], &elems[j])?);
        }
    }
    let width = 3 * state.n() + 1;
    let derived_dim = if brackets.is_empty() {
        0
    } else {
        let m = DMatrix::from_fn(brackets.len(), width, |r, c| brackets[r].coords()[c]);
        numerical_rank(&m, policy)?
    };
    let closure_residual = brackets
        .iter()
        .map(|b| {
            let mut w = b.coords().to_vec();
            for e in &basis.coefficients {
                let dot: f64 = w.iter().zip(e).map(|(x, y)| x * y).sum();
                w.iter_mut().zip(e).for_each(|(x, y)| *x -= dot * y);
            }
            w.iter().map(|x| x * x).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max);
    let (flip_symmetric, flip_phase) = flip_symmetry(state);
    Ok(StabilizerReport {
        n: state.n(),
        mode: Mode::Reduced,
        dim: basis.dim(),
        derived_dim,
        closure_residual,
        label: StabilizerLabel::from_dims(basis.dim(), derived_dim),
        flip_symmetric,
        flip_phase,
        basis,
    })
}

/// Whether `σx^{⊗n} ψ = e^{iθ} ψ` (to `1e−10‖ψ‖`), with `θ` when it holds.
pub fn flip_symmetry(state: &QubitState) -> (bool, Option<f64>) {
    let amps = state.amplitudes();
    let mask = amps.len() - 1;
    let overlap: Complex64 = amps.iter().enumerate().map(|(i, a)| a.conj() * amps[i ^ mask]).sum();
    let theta = if overlap.norm() > 0.0 { overlap.arg() } else { 0.0 };
    let rot = Complex64::from_polar(1.0, theta);
    let gap = amps
        .iter()
        .enumerate()
        .map(|(i, a)| (amps[i ^ mask] - rot * a).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let ok = gap <= 1e-10 * state.norm();
    (ok, ok.then_some(theta))
}

/// Parameter constraints defining one case of the family
/// `a e1e1e1 + b e2e2e2 + c e1e1e2 + d e2e1e1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyCase {
    pub name: &'static str,
    /// Parameters (0 = a … 3 = d) set to zero.
    pub zero: &'static [usize],
    /// `(i, j)`: force `|p_i| = |p_j|`.
    pub equal_modulus: Option<(usize, usize)>,
    /// `(i, j, s)`: force `p_j = s · p_i`.
    pub tied: Option<(usize, usize, i8)>,
    pub expected_dim: usize,
    pub expected_label: &'static str,
    pub expected_flip: bool,
}

const fn case(
    name: &'static str,
    zero: &'static [usize],
    equal_modulus: Option<(usize, usize)>,
    tied: Option<(usize, usize, i8)>,
    expected_dim: usize,
    expected_label: &'static str,
    expected_flip: bool,
) -> FamilyCase {
    FamilyCase {
        name,
        zero,
        equal_modulus,
        tied,
        expected_dim,
        expected_label,
        expected_flip,
    }
}

/// Every special case of the family, with its expected stabilizer.
pub const FAMILY_CASES: &[FamilyCase] = &[
    case("generic", &[], None, None, 0, "trivial", false),
    case("a=0", &[0], None, None, 1, "u1", false),
    // qubit 2 factors out as e1 when b=0
    case("b=0", &[1], None, None, 2, "u1^2", false),
    case("c=0", &[2], None, None, 1, "u1", false),
    case("d=0", &[3], None, None, 1, "u1", false),
    case("a=b=0, |c|!=|d|", &[0, 1], None, None, 2, "u1^2", false),
    case("a=b=0, |c|=|d|", &[0, 1], Some((2, 3)), None, 4, "u1+su2", false),
    case("a=b=c=0", &[0, 1, 2], None, None, 3, "u1^3", false),
    case("a=b=d=0", &[0, 1, 3], None, None, 3, "u1^3", false),
    case("a=c=0, |b|!=|d|", &[0, 2], None, None, 2, "u1^2", false),
    case("a=c=0, |b|=|d|", &[0, 2], Some((1, 3)), None, 4, "u1+su2", false),
    case("d=a=0, |b|!=|c|", &[3, 0], None, None, 2, "u1^2", false),
    case("d=a=0, |b|=|c|", &[3, 0], Some((1, 2)), None, 4, "u1+su2", false),
    case("d=b=0", &[3, 1], None, None, 3, "u1^3", false),
    case("d=c=0, a!=b", &[3, 2], None, None, 2, "u1^2", false),
    case("d=c=0, a=b", &[3, 2], None, Some((0, 1, 1)), 2, "u1^2", true),
    case("d=c=0, a=-b", &[3, 2], None, Some((0, 1, -1)), 2, "u1^2", true),
    case("d=c=a=0", &[3, 2, 0], None, None, 3, "u1^3", false),
];

/// Pairs `(from, to)` of case names where `to` specializes `from`.
pub const SPECIALIZATION_CHAINS: &[(&str, &str)] = &[
    ("generic", "a=0"),
    ("a=0", "a=b=0, |c|!=|d|"),
    ("a=b=0, |c|!=|d|", "a=b=0, |c|=|d|"),
    ("a=b=0, |c|!=|d|", "a=b=c=0"),
    ("a=b=0, |c|!=|d|", "a=b=d=0"),
    ("a=0", "a=c=0, |b|!=|d|"),
    ("a=c=0, |b|!=|d|", "a=c=0, |b|=|d|"),
    ("generic", "d=0"),
    ("d=0", "d=a=0, |b|!=|c|"),
    ("d=a=0, |b|!=|c|", "d=a=0, |b|=|c|"),
    ("d=0", "d=b=0"),
    ("d=0", "d=c=0, a!=b"),
    ("d=c=0, a!=b", "d=c=0, a=b"),
    ("d=c=0, a!=b", "d=c=a=0"),
];

impl FamilyCase {
    /// Log-uniform moduli in `[0.3, 3]` and uniform phases, then the case
    /// constraints imposed exactly.
    pub fn instantiate<R: Rng + ?Sized>(&self, rng: &mut R) -> [Complex64; 4] {
        let (lo, hi) = (0.3f64.ln(), 3.0f64.ln());
        let mut p: [Complex64; 4] = std::array::from_fn(|_| {
            let r = rng.random_range(lo..hi).exp();
            Complex64::from_polar(r, rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        });
        if let Some((i, j)) = self.equal_modulus {
            p[j] = Complex64::from_polar(p[i].norm(), p[j].arg());
        }
        if let Some((i, j, s)) = self.tied {
            p[j] = p[i] * f64::from(s);
        }
        for &z in self.zero {
            p[z] = Complex64::new(0.0, 0.0);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRow {
    pub case: &'static str,
    #[serde(serialize_with = "ser_params")]
    pub params: [Complex64; 4],
    pub expected_dim: usize,
    pub measured_dim: usize,
    pub derived_dim: usize,
    pub label: StabilizerLabel,
    pub flip: bool,
    pub expected_label: &'static str,
    pub expected_flip: bool,
}

impl CaseRow {
    pub fn passes(&self) -> bool {
        self.measured_dim == self.expected_dim
            && self.label.to_string() == self.expected_label
            && self.flip == self.expected_flip
    }
}

fn ser_params<S: Serializer>(p: &[Complex64; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = p.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

/// One row per (case, sample). Sample `i` of case `k` draws from sub-stream
/// `(k << 32) | i` of `seed`.
pub fn family4_case_table(samples: usize, seed: u64) -> Result<Vec<CaseRow>> {
    let mut rows = Vec::with_capacity(FAMILY_CASES.len() * samples);
    for (k, fc) in FAMILY_CASES.iter().enumerate() {
        for i in 0..samples {
            let mut r = rng::substream(seed, ((k as u64) << 32) | i as u64);
            let params = fc.instantiate(&mut r);
            let report = classify_stabilizer(&family4(params[0], params[1], params[2], params[3]), RankPolicy::default())?;
            rows.push(CaseRow {
                case: fc.name,
                params,
                expected_dim: fc.expected_dim,
                measured_dim: report.dim,
                derived_dim: report.derived_dim,
                label: report.label,
                flip: report.flip_symmetric,
                expected_label: fc.expected_label,
                expected_flip: fc.expected_flip,
            });
        }
    }
    Ok(rows)
}

/// Aligned text table with one line per case (all samples folded together).
pub fn render_case_table(rows: &[CaseRow]) -> String {
    let mut lines = vec![(
        "case".to_string(),
        "expected".to_string(),
        "measured".to_string(),
        "label".to_string(),
        "flip".to_string(),
        "status".to_string(),
    )];
    let mut names: Vec<&str> = Vec::new();
    for r in rows {
        if !names.contains(&r.case) {
            names.push(r.case);
        }
    }
    for name in names {
        let group: Vec<&CaseRow> = rows.iter().filter(|r| r.case == name).collect();
        let mut dims: Vec<usize> = group.iter().map(|r| r.measured_dim).collect();
        dims.sort_unstable();
        dims.dedup();
        let mut labels: Vec<String> = group.iter().map(|r| r.label.to_string()).collect();
        labels.sort();
        labels.dedup();
        let flips: Vec<bool> = group.iter().map(|r| r.flip).collect();
        let flip = if flips.iter().all(|&f| f) {
            "yes"
        } else if flips.iter().any(|&f| f) {
            "mixed"
        } else {
            "no"
        };
        let ok = group.iter().all(|r| r.passes());
        lines.push((
            name.to_string(),
            group[0].expected_dim.to_string(),
            dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("/"),
            labels.join("/"),
            flip.to_string(),
            if ok { "ok" } else { "MISMATCH" }.to_string(),
        ));
    }
    let w = |f: fn(&(String, String, String, String, String, String)) -> &String| {
        lines.iter().map(|l| f(l).chars().count()).max().unwrap_or(0)
    };
    let widths = [w(|l| &l.0), w(|l| &l.1), w(|l| &l.2), w(|l| &l.3), w(|l| &l.4)];
    let mut out = String::new();
    for l in &lines {
        let cells = [&l.0, &l.1, &l.2, &l.3, &l.4];
        for (cell, width) in cells.iter().zip(widths) {
            out.push_str(cell);
            out.push_str(&" ".repeat(width - cell.chars().count() + 2));
        }
        out.push_str(&l.5);
        out.push('\n');
    }
    out
}
