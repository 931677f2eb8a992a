//! Exact and asymptotic redundancies of universal quantum coding for qubits.
//!
//! The crate averages the n-fold tensor power of a qubit state over the
//! unitarily invariant prior family `q(u) ∝ (1 - r²)^(-u)` on the Bloch ball,
//! giving the Bayesian density matrices `ζ_n(u)`. Everything else is built on
//! their closed-form structure:
//!
//! - [`specfun`]: log-gamma, digamma, trigamma, exact binomials and Catalan
//!   numbers, tanh-sinh and Gauss–Legendre quadrature.
//! - [`qstate`]: Bloch vectors, density matrices, tensor powers, a cyclic
//!   Jacobi eigensolver and the entropy functionals.
//! - [`priors`]: the `q(u)` family, the Kubo–Mori family and monotone-metric
//!   volume elements.
//! - [`bayes_matrix`]: entries of `ζ_n(u)` and of the generalized symmetric
//!   family, with a quadrature oracle.
//! - [`spectrum`]: eigenvalues, multiplicities, ballot-path eigenbases and
//!   eigenprojectors.
//! - [`redundancy`]: relative entropy of `⊗ⁿρ` against `ζ_n(u)`, its
//!   asymptotics, the entropy of `ζ_n(u)`, Bayes redundancy and the
//!   summation identities behind them.
//! - [`optimize`]: the minimax sequence `u_n`, the maximin root and the
//!   argmax scan in `r`.
//! - [`compress`]: the dominant-eigenspace compression planner.
//!
//! All logarithms are natural.

pub mod bayes_matrix;
pub mod compress;
mod error;
pub mod export;
pub mod linalg;
pub mod optimize;
pub mod priors;
pub mod qstate;
pub mod redundancy;
pub mod specfun;
pub mod spectrum;
pub mod subset;

pub use error::{Error, Result};
