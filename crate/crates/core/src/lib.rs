//! Bound states of the four-dimensional double singular oscillator.
//!
//! The system is an isotropic 4D harmonic oscillator with two centrifugal-type
//! singular terms `c1/(u0^2+u1^2)` and `c2/(u2^2+u3^2)`. Its Schrödinger
//! equation separates in Eulerian, double-polar and prolate spheroidal
//! coordinates; the degenerate multiplets of the three separations are related
//! by finite unitary transforms.
//!
//! The crate provides:
//!
//! - [`specfun`] — the special-function kernel: log-gamma, Pochhammer symbols,
//!   Jacobi polynomials, terminating hypergeometric sums and the analytically
//!   continued SU(2) Clebsch-Gordan coefficient;
//! - [`model`] — physical parameters, exact quantum-number bookkeeping, the
//!   three coordinate systems and the Eulerian / double-polar wavefunctions;
//! - [`interbasis`] — the expansion coefficients connecting the double-polar
//!   and Eulerian bases, by two closed forms and by brute quadrature;
//! - [`spheroidal`] — the spheroidal basis built algebraically from
//!   tridiagonal eigenproblems, with three-term recursion diagnostics;
//! - [`oracle`] — Gaussian quadrature (Golub-Welsch), a symmetric tridiagonal
//!   eigensolver, numerical overlaps and normalizations: the ground truth the
//!   closed forms are judged against;
//! - [`verify`] — the end-to-end verification suite used by the acceptance
//!   tests and the `singosc4 verify` command.

pub mod error;
pub mod interbasis;
pub mod model;
pub mod oracle;
pub mod specfun;
pub mod spheroidal;
pub mod verify;

pub use error::Error;
pub use specfun::HalfInt;

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
