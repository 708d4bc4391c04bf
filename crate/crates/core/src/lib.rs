//! Exact Ising-anyon braid-group representations and the Pauli, Clifford and
//! symplectic groups built on them.
//!
//! All matrix entries live in Z[ζ, 1/2] with ζ = e^{iπ/4} ([`CycScalar`]), so
//! group elements hash and compare exactly.

pub mod braid;
pub mod clifford;
pub mod error;
pub mod fusion;
pub mod gamma;
pub mod gates;
pub mod group;
pub mod matrix;
pub mod orders;
pub mod pauli;
pub mod scalar;
pub mod symplectic;
pub mod synth;

pub use braid::{BraidRep, BraidWord, Form, NamedGate, RepContext};
pub use clifford::{clifford_check, CliffordAction, CliffordVerdict};
pub use error::{Error, Result};
pub use gamma::Parity;
pub use matrix::DenseMatrix;
pub use pauli::{Pauli, PauliElement};
pub use scalar::CycScalar;
pub use symplectic::{BitMatrix, SymplecticMatrix};
