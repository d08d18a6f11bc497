//! Numerics for the Bloch space of the unit disk.
//!
//! Functions are immutable expression trees ([`AnalyticFn`]) with exact
//! values and derivatives. Suprema over the disk are estimated on a
//! boundary-crowded polar grid with local refinement. On top of that sit
//! Bloch norms, norm bounds for weighted composition operators, isometry
//! checks, and spectra of the isometric operators.

// `!(x < bound)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod function;
pub mod isometry;
pub mod operators;
pub mod spectra;
pub mod suite;
pub mod wire;

pub use analysis::{bloch_norm, bloch_seminorm, sup_norm, DiskGrid, SupremumEstimate};
pub use error::{BlochError, Result};
pub use function::{AnalyticFn, ComplexPoint, EvalPair};
pub use operators::{NormBounds, OperatorKind, OperatorSpec, TestFamily};
pub use spectra::{RotationSpec, SpectrumResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
