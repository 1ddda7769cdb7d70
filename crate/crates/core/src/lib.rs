//! Linear relations on finite-dimensional complex spaces, multivalued
//! projections, weighted projections and weighted least squares.
//!
//! A linear relation `T` from `C^n` to `C^m` is a subspace of `C^n × C^m`
//! (the graph of a possibly multivalued, partially defined operator). The
//! crate covers:
//!
//! - [`subspace`]: subspace arithmetic and affine cosets.
//! - [`relation`]: domain, range, kernel, multivalued part, adjoint,
//!   products and sums of relations.
//! - [`mvproj`]: multivalued projections `P_{M,N}`, super-idempotents and
//!   2x2 block representations.
//! - [`weighted`]: projections for a selfadjoint weight `W`,
//!   complementability, shorted operators and Krein-space classification.
//! - [`lss`]: weighted least-squares solutions of `b ∈ A x`.
//! - [`spline`]: interpolating and smoothing splines.
//! - [`oracle`]: independent brute-force references used by `--verify` and
//!   the tests.
//! - [`cli`]: the `relcalc` command-line front end.
//!
//! Every routine takes a [`Tolerance`] that fixes rank and comparison
//! thresholds.
//!
//! ```
//! use relcalc::linalg::real_vector;
//! use relcalc::mvproj::make_pmn;
//! use relcalc::{Subspace, Tolerance};
//!
//! let tol = Tolerance::default();
//! let m = Subspace::coordinate(2, &[0]);
//! let n = Subspace::coordinate(2, &[0, 1]);
//! // M ∩ N = M, so P_{M,N} sends every vector to M, up to M.
//! let p = make_pmn(&m, &n, &tol).unwrap();
//! let image = p.apply(&real_vector(&[3.0, 4.0]), &tol).unwrap();
//! assert_eq!(image.direction().unwrap().dim(), 1);
//! ```

pub mod cli;
pub mod error;
pub mod linalg;
pub mod lss;
pub mod mvproj;
pub mod oracle;
pub mod relation;
pub mod spline;
pub mod subspace;
pub mod tolerance;
pub mod weighted;

pub use error::{Error, Result};
pub use relation::{LinearRelation, Parts, Restriction};
pub use subspace::{Coset, Subspace};
pub use tolerance::Tolerance;
pub use weighted::{Weight, WeightKind};
