//! Stabilizer-code workbench for GHZ-loop disentanglers.
//!
//! Builds toric, color and triangular-ladder codes on explicit periodic
//! lattices, pushes their stabilizers through an exact symplectic map that
//! re-expresses loops of qubits in a GHZ basis, and analyses the image:
//! support components, ladder-code membership, rank bookkeeping and
//! entanglement entropies. A dense state-vector oracle cross-checks the
//! symbolic machinery on small systems.

pub mod analysis;
pub mod bits;
pub mod codes;
pub mod error;
pub mod export;
pub mod gf2;
pub mod ghz;
pub mod group;
pub mod lattice;
pub mod oracle;
pub mod pauli;

pub use bits::BitVec;
pub use error::{Error, Result};
pub use gf2::GF2Matrix;
pub use group::{Membership, StabilizerGroup, StabilizerState};
pub use pauli::{commute, multiply, PauliOperator};
