//! Exact dense linear algebra for small quantum systems.
//!
//! Everything operates on `2^n x 2^n` complex matrices; the systems here
//! stay small (n <= ~7 including dilation ancillas) so dense exact
//! simulation is both trivial and maximally testable.
//!
//! Index convention: qubit 0 is the leftmost tensor factor, i.e. the most
//! significant bit of a computational-basis index.

mod gates;
mod pauli;
mod state;

pub use gates::{
    controlled_swap, embed_one_qubit, embed_two_qubit, gate_h, gate_rx, gate_ry, gate_rz,
    gate_rzz, is_unitary, CMatrix, CVector,
};
pub use pauli::{ObservableSet, PauliLetter, PauliString};
pub use state::{
    apply_unitary, expectation, hs_distance, partial_trace, trace_distance, DensityOperator,
};

/// Hermiticity / trace tolerance for state invariants.
pub const STATE_TOL: f64 = 1e-12;
/// Allowed negative eigenvalue slack from round-off.
pub const PSD_TOL: f64 = 1e-10;
/// Max-abs tolerance when checking that a matrix is unitary.
pub const UNITARY_TOL: f64 = 1e-10;
