//! Tolerances shared by the library checks, the CLI verdicts and the tests.

/// Antisymmetry and Jacobi defects of unit-scale structure constants.
pub const STRUCTURE: f64 = 1e-12;

/// Euclidean norm below which a vector counts as zero.
pub const ZERO_VECTOR: f64 = 1e-14;

/// Torsion and almost-metric defects of a solved connection table.
pub const CONNECTION_DEFECT: f64 = 1e-10;

/// Entry-wise agreement of the `X₀ = 0` Chern–Rund table with Levi-Civita.
pub const LEVI_CIVITA_MATCH: f64 = 1e-12;

/// Closed-form osculating product against the second-difference oracle.
pub const OSCULATING_FD: f64 = 1e-6;

/// Closed-form Cartan tensor against the third-difference oracle.
pub const CARTAN_FD: f64 = 1e-4;

/// Step of the central second difference (truncation ~h², round-off ~ε/h²).
pub const SECOND_DIFF_STEP: f64 = 1e-4;

/// Step of the central third difference.
///
/// Truncation error is ~h² times the fifth derivative of F², which grows
/// quickly as ‖X₀‖ → 1; at ‖X₀‖ = 0.9 a step of 1e-2 leaves ~2e-4 of error
/// while 1e-3 leaves ~1e-6 against a round-off floor near 1e-7.
pub const THIRD_DIFF_STEP: f64 = 1e-3;

/// Relative threshold of the flag area term below which a flag is degenerate.
pub const FLAG_DEGENERACY: f64 = 1e-10;

/// Strictness margin for sign witnesses.
pub const SIGN_MARGIN: f64 = 1e-8;

/// Closed-form flag curvatures (relative, floored at unit scale).
pub const FLAG_CLOSED_FORM: f64 = 1e-9;

/// Closed-form connection components (absolute).
pub const TABLE_CELL: f64 = 1e-10;
