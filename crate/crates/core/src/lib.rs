//! Numerical laboratory for operator Young/Aczél inequalities.
//!
//! The crate verifies, over finite-dimensional real symmetric positive
//! definite matrices, a family of operator inequalities built around the
//! α-weighted arithmetic and geometric means, the Kantorovich constant
//! `K(h) = (h+1)²/4h`, the generalized Kantorovich constant `K(w, α)`, and
//! the Specht ratio. Every inequality is an executable check that consumes
//! seeded random instances and reports a signed slack: nonnegative slack
//! means the inequality holds at that instance.
//!
//! Module map:
//!
//! - [`matcore`] — dense symmetric linear algebra: cyclic Jacobi
//!   eigendecomposition, spectral functional calculus, Loewner-order tests,
//!   eigen-alignment unitaries.
//! - [`means`] — α-arithmetic and α-geometric operator means.
//! - [`constants`] — Kantorovich constant, generalized Kantorovich constant,
//!   Specht ratio, composite reverse constants.
//! - [`funcatalog`] — scalar test functions with declared analytic classes
//!   and numeric validators for those classes.
//! - [`generators`] — deterministic seeded generation of constrained
//!   instances (SPD matrices, sandwich pairs, commuting pairs, scalar
//!   sequences, probe vectors).
//! - [`checkers`] — one executable check per inequality.
//! - [`campaign`] — property-test campaigns over the checkers with
//!   machine-readable reports.

// `!(x > 0)` is the NaN-rejecting positivity guard; index loops mirror the
// textbook statements of the matrix kernels.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod campaign;
pub mod checkers;
pub mod constants;
pub mod funcatalog;
pub mod generators;
pub mod matcore;
pub mod means;
pub mod prng;
pub mod report;
pub mod result;

pub use matcore::{Matrix, SpectralDecomp, SymMatrix};
pub use result::{CheckId, CheckKind, CheckResult, TrialMeta};
