//! Minimal classical and quantum entropy compatible with a given value of a
//! linear dimension witness in a prepare-and-measure scenario.
//!
//! The library covers:
//!
//! - [`qcore`]: Hermitian matrix algebra, probability vectors, Shannon and
//!   von Neumann entropy.
//! - [`witness`]: linear dimension witnesses (including the canonical
//!   `I3`/`I4`/`R4`), their quantum evaluation, the eigenvalue-sum upper
//!   bound and the measurements saturating it.
//! - [`classical`]: deterministic-strategy model, dimension-restricted
//!   bounds `L_d` and the exact minimal classical entropy at a fixed
//!   witness value.
//! - [`qopt`]: minimal quantum entropy under a fixed witness value via
//!   hyperspherical pure-state parameterization and penalized multistart
//!   search; entropy curves and classical-quantum gap reports.
//! - [`decomp`]: constructive rank-1 decompositions of density matrices
//!   preserving an observable's expectation value, and the ensemble
//!   reduction they enable.
//! - [`polsim`]: wave-plate model of the polarization experiment, Poisson
//!   coincidence counting and the expectation estimators.
//! - [`tomo`]: linear state tomography with maximum-likelihood positivity
//!   repair.
//! - [`scenarios`]: the canonical states, measurements, strategies and
//!   wave-plate angle tables used throughout.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `entropy-witness` binary for a configuration-driven driver.

pub mod classical;
pub mod decomp;
pub mod error;
pub mod polsim;
pub mod qcore;
pub mod qopt;
pub mod report;
pub mod scenarios;
pub mod tomo;
pub mod witness;

mod optim;

pub use error::{Error, Result};
