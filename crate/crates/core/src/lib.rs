//! Effective lower bounds for the number of smooth (friable) elements of a
//! finite set of integers, and exact machinery to check them at desk scale.
//!
//! The crate is organised by concern:
//!
//! * [`dickman`] evaluates the Dickman function, the recursive integral family
//!   `μ_k(u, v)`, its κ-weighted series `μ^(κ)(u, v)` and the sieve coefficient
//!   `ρ_{θ,κ}(u)`.
//! * [`sieve`] counts smooth integers exactly (segmented largest-prime-factor
//!   tables, `Ψ(x, y)`, progressions, coprimality classes).
//! * [`polyvals`] handles polynomial and binary-form values: root counting
//!   modulo `d`, multiplicative densities, value sieves and remainder terms.
//! * [`saddle`] covers shifted smooth pairs: the saddle point `α(x, z)`, the
//!   density `γ(d)`, exact pair counts and the coefficients `f(u)`.
//! * [`verify`] checks the identities and inequalities underlying the sieve on
//!   concrete sets, and produces lower-bound reports.
//! * [`suite`] bundles the desk-scale acceptance checks.

pub mod dickman;
mod error;
pub mod oracle;
pub mod polyvals;
pub mod primes;
pub mod quadrature;
pub mod saddle;
pub mod sieve;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};
