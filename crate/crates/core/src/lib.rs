//! Group-theoretical periodic system built on SO(4,2)⊗SU(2).
//!
//! * [`catalog`]: Cartan classification tables and Racah counting.
//! * [`boson`]: exact quadratic boson forms, the so(4,2) generators and the
//!   sp(8,R) closure.
//! * [`fock`]: the generators as sparse matrices on a truncated Fock space,
//!   Casimir spectra, branching and reachability.
//! * [`addresses`]: the `(n, l, j, m)` address model, atomic numbers and
//!   electron configurations.
//! * [`chart`]: the periodic chart, rendering and navigation moves.

pub mod addresses;
pub mod boson;
pub mod catalog;
pub mod chart;
pub mod datasets;
pub mod error;
pub mod exact;
pub mod fock;

pub use error::{Error, Result};
