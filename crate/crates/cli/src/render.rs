//! Text renderings of command results.

use std::fmt::Write;

use orbit_forge::local::Mat2;
use orbit_forge::{CanonicalForm3, Complex64, EquivVerdict, InvariantFingerprint, OrbitReport, SchmidtForm, StabilizerReport};

fn complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{:.12}-{:.12}i", z.re, -z.im)
    } else {
        format!("{:.12}+{:.12}i", z.re, z.im)
    }
}

fn matrices(out: &mut String, mats: &[Mat2]) {
    for (k, m) in mats.iter().enumerate() {
        let _ = writeln!(out, "U{}: [{}, {}; {}, {}]", k + 1, complex(m[0][0]), complex(m[0][1]), complex(m[1][0]), complex(m[1][1]));
    }
}

fn yes(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

pub fn analyze(orbit: &OrbitReport, stab: &StabilizerReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n: {}, mode: {}", orbit.n, orbit.mode);
    let _ = writeln!(
        out,
        "orbit_dim: {}, invariant_count: {}, stabilizer_dim: {}",
        orbit.orbit_dim, orbit.invariant_count, orbit.stabilizer_dim
    );
    let _ = writeln!(out, "rank threshold: {:e}", orbit.tolerance);
    out.push_str(&classify(stab));
    out
}

pub fn classify(stab: &StabilizerReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "stabilizer: {} (dim {}, derived {}, closure residual {:.3e})",
        stab.label, stab.dim, stab.derived_dim, stab.closure_residual
    );
    match stab.flip_phase {
        Some(phase) => {
            let _ = writeln!(out, "flip symmetric: yes (phase {phase:.12})");
        }
        None => out.push_str("flip symmetric: no\n"),
    }
    for (i, e) in stab.basis.elements.iter().enumerate() {
        let terms: Vec<String> = (0..stab.n)
            .flat_map(|site| (0..3).map(move |axis| (site, axis)))
            .filter_map(|(site, axis)| {
                let c = e.pauli_coeff(site, axis);
                (c.abs() > 1e-12).then(|| format!("{c:+.6} σ{}@{}", ["x", "y", "z"][axis], site + 1))
            })
            .chain((e.identity_coeff().abs() > 1e-12).then(|| format!("{:+.6} 1", e.identity_coeff())))
            .collect();
        let _ = writeln!(out, "  S{}: {}", i + 1, terms.join(" "));
    }
    out
}

pub fn invariants(fp: &InvariantFingerprint, deviation: f64, trials: usize, user: Option<&(String, Complex64, f64)>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n: {}, norm_sq: {}", fp.n, fp.norm_sq);
    let width = fp.values.iter().map(|v| v.label.chars().count()).max().unwrap_or(0);
    for v in &fp.values {
        let pad = width - v.label.chars().count();
        let _ = writeln!(out, "{}{}  {:.15}", v.label, " ".repeat(pad), v.value);
    }
    let _ = writeln!(out, "orbit_dim: {}, stabilizer_dim: {}", fp.orbit_dim, fp.stabilizer_dim);
    let _ = writeln!(out, "max relative deviation over {trials} local unitaries: {deviation:.3e}");
    if let Some((label, value, dev)) = user {
        let _ = writeln!(out, "pattern {label}: {} (max relative deviation {dev:.3e})", complex(*value));
    }
    out
}

pub fn equiv(verdict: &EquivVerdict, searched: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fingerprints_match: {}, max_component_gap: {:e}",
        verdict.fingerprints_match, verdict.max_component_gap
    );
    match &verdict.witness {
        Some(w) => {
            let _ = writeln!(out, "witness residual: {:.3e}, phase: {:.12}", w.residual, w.phase);
            matrices(&mut out, &w.unitaries);
        }
        None if searched && verdict.fingerprints_match => out.push_str("witness: not found\n"),
        None => {}
    }
    out
}

pub fn schmidt(form: &SchmidtForm) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "N: {:.15}, phi: {:.15}", form.norm, form.phi);
    matrices(&mut out, &form.local_unitaries);
    out
}

pub fn canonical(form: &CanonicalForm3) -> String {
    let mut out = String::new();
    let names = ["N", "alpha", "beta", "gamma", "delta", "eta"];
    for (name, value) in names.iter().zip(form.params()) {
        let _ = writeln!(out, "{name}: {value:.15}");
    }
    let _ = writeln!(out, "residual: {:.3e}, degenerate: {}", form.residual, yes(form.degenerate));
    matrices(&mut out, &form.local_unitaries);
    out
}
