//! Exact invariants of the cone singularity of a factored homogeneous
//! polynomial in three variables: monodromy characteristic polynomials,
//! the monodromy zeta function, multiplier-ideal data of the plane-curve
//! germs (log canonical thresholds, jumping numbers, inner jumping
//! multiplicities), and Hodge-spectrum windows and aggregates.
//!
//! Everything is computed in exact rational arithmetic; there is no
//! floating point anywhere.
//!
//! The crate is organized bottom-up:
//!
//! - [`rat`], [`poly`], [`jet`], [`matrix`]: exact scalars, sparse
//!   multivariate polynomials, truncated jets, exact linear algebra;
//! - [`newton`]: Newton polyhedra of monomial ideals and their multiplier
//!   ideals, lct and jumping numbers;
//! - [`resolve`]: embedded resolution of plane-curve germs by point
//!   blowups, with full exceptional bookkeeping;
//! - [`local`]: local multiplier ideals as jet-space condition schemes,
//!   colengths, lct, jumping numbers, inner jumping multiplicities and the
//!   local spectrum on (0, 1];
//! - [`global`]: the projective pipeline: eigenvalue classes, singular
//!   locus, cohomology deficiencies, characteristic polynomials, zeta
//!   function, spectrum windows and aggregates;
//! - [`io`] and [`cli`]: expression parsing, JSON job files and reports,
//!   and the command-line front end.
//!
//! See the `examples/` directory for one runnable walkthrough per major
//! capability.

pub mod cli;
pub mod error;
pub mod global;
pub mod io;
pub mod jet;
pub mod local;
pub mod matrix;
pub mod newton;
pub mod poly;
pub mod rat;
pub mod resolve;

pub use error::{Error, Result};
pub use poly::SparsePolynomial;
pub use rat::Rational;
