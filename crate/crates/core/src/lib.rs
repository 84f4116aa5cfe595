//! Polynomial factors `B_n` of successive derivatives of hyperexponential
//! functions `f = (P/Q) exp(S/T)`, their high-precision zeros, the Voronoi
//! limit measure of the zero sets, cellwise coefficient asymptotics, and
//! the reduced local models at essential singularities.
//!
//! The crate is organized around a pipeline:
//!
//! 1. [`hyperfunc`] validates and normalizes the four input polynomials
//!    and derives every structural quantity (`W`, `U`, sites, `d`,
//!    `kappa`, `h`, `sigma`).
//! 2. [`derivseq`] computes `B_0..B_N` by the exact recurrence
//!    `B_{n+1} = W B_n' + (U - n W') B_n` and cross-checks it against an
//!    independent contour-integral oracle.
//! 3. [`roots`] locates all zeros of a `B_n` by simultaneous iteration.
//! 4. [`voronoi`] builds the Voronoi geometry of the singular set and the
//!    predicted limit measure with closed-form edge masses.
//! 5. [`asympt`] evaluates the predicted cellwise asymptotics (Darboux on
//!    pole cells, multi-saddle expansions on essential cells).
//! 6. [`localmodels`] provides the Laguerre-type Sheffer sequences and
//!    their microscopic limit laws in exact rational arithmetic.
//!
//! All values are immutable after construction and the operations are
//! pure functions, so everything is safe to share across threads.

pub mod asympt;
pub mod derivseq;
pub mod error;
pub mod hyperfunc;
pub mod localmodels;
pub mod num;
pub mod presets;
pub mod roots;
pub mod voronoi;

pub use error::{Error, Result};
pub use num::{BigComplex, CPoly, LaurentPrincipalPart, RationalFunction};

/// Default working precision in bits.
pub const DEFAULT_PREC: u32 = 256;
