//! Spectral localization and perturbation toolkit built around Gershgorin
//! discs.
//!
//! The crate answers three related questions about a square matrix whose
//! diagonal dominates its rows:
//!
//! * **Where are the eigenvalues?** — disc computation, separation reports,
//!   and disc-aware eigensolvers ([`gershgorin`], [`eigen`]).
//! * **How do they move under inversion, truncation, or a structured
//!   perturbation?** — closed-form error regions and interlacing checks
//!   ([`bounds`], [`perturb`]).
//! * **How can the disc structure speed up iterative solvers?** — seeded
//!   power-method starts for dominant eigenpairs ([`perron`]).
//!
//! Matrices enter and leave through Matrix Market files and tabular
//! CSV/JSON reports ([`mmio`]); the `wellsep` binary wraps each capability
//! as a subcommand.

pub mod bounds;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod gershgorin;
pub mod matrix;
pub mod mmio;
pub mod perron;
pub mod perturb;
pub mod stats;

pub use bounds::{
    condition_bound, condition_number_2, corollary_bound, error_region, estimate_k, invert_disc,
    lemma_entry_bound, relative_error, spectral_norm, ConditionBound, ErrorRegion, InvertedDisc,
};
pub use eigen::{eig_general, eig_symmetric, match_to_discs, SpectralPair, SpectrumReport};
pub use error::{Error, Result};
pub use gershgorin::{
    compute_discs, separation_report, GershgorinDisc, RadiusMode, SeparationOrder,
    SeparationReport,
};
pub use matrix::{DenseMatrix, Symmetry};
pub use mmio::{
    hash_bytes, hash_file, hash_matrix, parse_matrix_market, read_matrix_market,
    render_matrix_market, render_table, write_matrix_market, write_table, Column, ColumnType,
    ResultTable, TableFormat, Value,
};
pub use perron::{
    compare_starts, gen_perron_test, perron_seed, power_method, random_start, CompareSummary,
    PowerTrace, StartKind, StartVector,
};
pub use perturb::{
    check_interlacing, gen_hessenberg_positive, gen_separated_symmetric, gen_structured_S,
    truncate_offdiag, InterlaceResult, PerturbKind, PerturbSpec, Separation,
};

/// Deterministic per-task seed derivation (splitmix64 over `base ^ salt`),
/// so independent subtasks never share an RNG stream.
pub(crate) fn derive_seed(base: u64, salt: u64) -> u64 {
    let mut z = base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
