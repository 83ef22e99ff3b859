//! Digital simulation of one-flavor SU(N) Yang-Mills theory on qubits.
//!
//! The pipeline runs in five stages:
//!
//! 1. [`theory`] — continuum kinematics: SU(N) generators and structure
//!    constants, Dirac matrices and spinors, polarization vectors, and the
//!    complex vertex coefficients that weight every interaction term.
//! 2. [`lattice`] + [`encoding`] — a momentum-space lattice Γ = aℤ³ of
//!    second-quantized modes, mapped to a qubit register (unary blocks for
//!    truncated boson modes, one qubit per fermionic mode).
//! 3. [`pauli`] + [`hamiltonian`] — Jordan-Wigner ladder operators as
//!    Pauli-string sums, composed into the four interaction Hamiltonians
//!    (fermion-gluon, four-gluon, three-gluon, ghost-gluon).
//! 4. [`circuit`] — each Hermitian Pauli string exponentiated into the
//!    basis-change / CNOT-ladder / RZ / uncompute gate pattern, scheduled
//!    as a first-order Trotter product.
//! 5. [`simulator`] + [`hadronize`] — dense statevector execution, exact
//!    eigendecomposition oracles, occupation measurements, and the
//!    color-singlet meson preparation demo.
//!
//! Everything is built to be verifiable against exact dense-matrix oracles
//! at desk scale (register caps: 26 qubits simulated, 12 qubits for dense
//! oracles).

pub mod circuit;
pub mod encoding;
pub mod error;
pub mod hadronize;
pub mod hamiltonian;
pub mod lattice;
pub mod pauli;
pub mod report;
pub mod simulator;
pub mod theory;
pub mod verify;

pub use error::{Error, Result};
pub use theory::ModelParams;
