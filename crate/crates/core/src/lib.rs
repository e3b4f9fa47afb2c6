//! Quantum-style probability from accessible variables.
//!
//! Operators are built from group actions on accessible variables; the crate
//! evaluates Born probabilities, likelihood effects, POVMs and Kraus updates,
//! and runs the CHSH and quantum-vs-Bayesian comparisons end to end.
//!
//! Module map:
//!
//! * [`hilbert`]: dense complex operators, states, densities, spectra
//! * [`groups`]: finite group actions, permissibility, orbits, invariant measures
//! * [`spin`]: SU(2) spin-r operators, rotations, coherent states
//! * [`epistemic`]: accessible variables and their operators
//! * [`born`]: transition probabilities and the singlet joint law
//! * [`measurement`]: likelihood effects, POVMs, Kraus instruments
//! * [`inference`]: Bayes posteriors and frequentist Monte Carlo
//! * [`experiments`]: CHSH runs and the medical example
//! * [`validation`]: seeded residual sweeps over random cases and fixtures

pub mod born;
pub mod epistemic;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod groups;
pub mod hilbert;
pub mod inference;
pub mod measurement;
pub mod quadrature;
pub mod spin;
pub mod tol;
pub mod validation;

pub use error::{Error, Result};
pub use exec::Execution;
