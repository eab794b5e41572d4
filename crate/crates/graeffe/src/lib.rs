//! Polynomial root finding via renormalized tangent Graeffe iteration.
//!
//! Classical Graeffe iteration maps a polynomial `f` to a polynomial `Gf`
//! whose roots are the squares of the roots of `f`.  Iterating separates
//! root moduli doubly exponentially, but the coefficients overflow any
//! fixed-precision format after a handful of steps.  This crate works in
//! *renormalized* coordinates instead: each coefficient `g_i` at level `N`
//! is stored as a pair `(r_i, alpha_i)` with `g_i = alpha_i * exp(-2^N *
//! r_i)`, so the radial parts stay bounded no matter how many squarings are
//! applied.  Root moduli are read off the lower convex hull of the points
//! `(i, r_i)` (the Newton diagram), and root *arguments* are recovered from
//! a first-order jet (a tangent direction) propagated alongside the
//! iteration.
//!
//! The crate is organised bottom-up:
//!
//! * [`renorm`] — log-scale arithmetic on renormalized coefficients;
//! * [`poly`] — dense polynomials, Möbius substitution, generators, I/O;
//! * [`graeffe`] — classical and renormalized (tangent) Graeffe steps;
//! * [`diagram`] — Newton diagram corner detection and modulus estimates;
//! * [`recover`] — root estimates (modulus *and* argument) from a jet;
//! * [`solver`] — the full pipeline: transform, iterate, recover, polish;
//! * [`oracle`] — an independent Aberth–Ehrlich solver used for validation.

pub mod diagram;
pub mod error;
pub mod graeffe;
pub mod oracle;
pub mod poly;
pub mod recover;
pub mod renorm;
pub mod solver;

pub use error::Error;
pub use poly::Polynomial;
pub use solver::{solve, Mode, SolveOptions, SolveReport, StopReason};

/// Convenience alias used throughout the crate.
pub type Complex = num_complex::Complex64;
