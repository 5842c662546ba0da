//! Fermion-to-qubit mappings generated from labelled ternary trees.

pub mod bonsai;
pub mod classic;
pub mod error;
pub mod export;
pub mod gf2;
pub mod mapping;
pub mod metrics;
pub mod pauli;
pub mod topology;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use mapping::{pair_modes, MajoranaMapping, Mode, PairingOptions};
pub use pauli::{Pauli, PauliString, SymplecticVector};
pub use topology::HardwareGraph;
pub use tree::{Label, Leg, Link, QubitTree, RootedTree, TreeDescription};
