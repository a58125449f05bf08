use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, {cols} entries per row")]
    NotSquare { rows: usize, cols: usize },

    #[error("symmetric tag violated: entry ({i},{j}) != entry ({j},{i})")]
    NotSymmetric { i: usize, j: usize },

    #[error("operation requires a real matrix, found nonzero imaginary part at ({i},{j})")]
    NotReal { i: usize, j: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Iterative solver ran out of its iteration budget.
    #[error("no convergence: {what} (achieved {achieved:e} after {iterations} iterations)")]
    NonConvergence {
        what: String,
        achieved: f64,
        iterations: usize,
    },

    /// Disc contains or touches the origin; inversion is unbounded.
    #[error("degenerate disc: center magnitude {a} <= radius {r1}")]
    DegenerateDisc { a: f64, r1: f64 },

    #[error("relative error undefined for (near-)zero eigenvalue |lambda| = {modulus:e}")]
    ZeroEigenvalue { modulus: f64 },

    /// Entry bound is vacuous when the eigenvalue sits on the disc center.
    #[error("eigenvalue coincides with disc center (|lambda - a_i| = {gap:e})")]
    CoincidentCenter { gap: f64 },

    /// Condition-number bound denominator is nonpositive.
    #[error("outside valid regime: n^3 - 3kn^2 - 3k^2 = {denominator} <= 0 for n={n}, k={k}")]
    InvalidRegime { n: usize, k: f64, denominator: f64 },

    /// Power-method seed vector would divide by a (near-)zero diagonal gap.
    #[error("shift K collides with diagonal entry {index}: |A(i,i) - K| = {gap:e}")]
    ShiftCollision { index: usize, gap: f64 },

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("unsupported Matrix Market field: {0}")]
    UnsupportedField(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
