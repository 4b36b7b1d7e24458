//! Qubit thermal noise (generalized amplitude damping) in four equivalent
//! forms: Kraus operator sum, closed-form output, canonical Stinespring
//! dilation, and a five-CNOT/two-rotation gate-level circuit on three qubits.
//!
//! Tensor ordering is big-endian throughout: the leftmost factor of a ket
//! (`|q e a⟩`) is the most significant index. QASM export remaps wires to
//! physical qubit indices at its boundary.

pub mod channel;
pub mod circuit;
pub mod dilation;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod qasm;
pub mod state;

pub use channel::{apply_channel, gad_closed_form, gad_kraus, GadParams, KrausChannel};
pub use circuit::{gad_simulator_circuit, simulate_channel, simulate_gad, Circuit, Gate};
pub use dilation::{attenuator_model, canonical_dilation, reduce, DilatedModel};
pub use error::{Error, Result};
pub use linalg::{Complex, ComplexMatrix, ComplexVector};
pub use state::{DensityOperator, PureState};
