//! Exact simulation of stabilizer circuits on qudits of any dimension `d >= 2`.
//!
//! Pauli operators are tracked as Weyl operators `tau^t W_v` with all
//! arithmetic carried out modulo `D` (`D = d` for odd `d`, `2d` for even `d`).
//! Measurements are supported for composite `d`, where outcome distributions
//! are uniform over cosets `kappa + eta Z_d` rather than just one or all of
//! `Z_d`.
//!
//! ```text
//! modmath      residues, Smith normal form, linear systems mod M
//! weyl         phased Weyl operators and Pauli vectors
//! tableau      stabilizer tableaus, optionally with a phase-correction block
//! clifford     conjugation tableaus for S, F, M_a, CZ, CX, SWAP and Paulis
//! measurement  outcome cosets and post-measurement tableaus
//! oracle       dense state-vector reference simulator (d^n <= 4096)
//! circuit      text format, trajectory runner, JSON output
//! ```
//!
//! Qudit indices are 0-based everywhere in this crate.

#![allow(clippy::needless_range_loop)]

pub mod circuit;
pub mod clifford;
pub mod error;
pub mod measurement;
pub mod modmath;
pub mod oracle;
pub mod tableau;
pub mod weyl;

pub use clifford::{ConjugationTableau, GateKind, GateSpec};
pub use error::{Error, Result};
pub use measurement::{MeasurementRecord, OutcomeCoset};
pub use modmath::RingParams;
pub use tableau::StabilizerTableau;
pub use weyl::{PauliVector, PhasedWeyl};
