//! Orbits of n-qubit pure states under local unitary transformations.
//!
//! A local unitary is a product `U1 ⊗ … ⊗ Un` of one 2×2 unitary per qubit.
//! This crate computes, for a given state, the dimension of its orbit, the
//! number and values of polynomial invariants, the structure of its
//! stabilizer algebra, Schmidt and three-qubit canonical forms, and
//! equivalence verdicts between two states.
//!
//! ```
//! use orbit_forge::{ghz, orbit_report, Mode, RankPolicy};
//!
//! let report = orbit_report(&ghz(), Mode::Reduced, RankPolicy::default()).unwrap();
//! assert_eq!((report.orbit_dim, report.stabilizer_dim), (8, 2));
//! ```
//!
//! Conventions: qubit 1 is the most significant bit of the flat amplitude
//! index (`e1 ↦ 0`, `e2 ↦ 1`), and real embeddings interleave `(Re, Im)`.

pub mod canonical;
pub mod classify;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod local;
pub mod optimize;
pub mod rng;
pub mod state;

pub use canonical::{
    canonical_3q, lu_equivalent, schmidt_2q, CanonicalForm3, EquivVerdict, OptimizerConfig, SchmidtForm, Witness,
};
pub use classify::{
    bracket, classify_stabilizer, family4_case_table, flip_symmetry, render_case_table, CaseRow, StabilizerLabel,
    StabilizerReport,
};
pub use error::{Error, Result, MAX_QUBITS};
pub use invariants::{
    builtin_patterns, evaluate_invariant, fingerprint, invariance_test, ContractionPattern, InvariantFingerprint,
};
pub use lie::{
    count_bounds, generators, invariant_count, orbit_dimension, orbit_report, stabilizer_basis, tangent_matrix,
    tangent_vector, CountBounds, GeneratorSet, LieElement, Mode, OrbitReport, StabilizerBasis,
};
pub use linalg::{numerical_rank, RankPolicy};
pub use local::LocalUnitary;
pub use num_complex::Complex64;
pub use state::{
    canonical3, catalog_state, family4, ghz, parse_state, product_state, random_state, schmidt2, singlet, QubitState,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/canonical.md")]
    mod canonical {}
    #[doc = include_str!("../../../book/src/classify.md")]
    mod classify {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
