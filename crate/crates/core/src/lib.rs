//! Whittled Khovanov complexes for positive torus braids.
//!
//! The crate enumerates the enhanced Kauffman states of `(σ_1 ⋯ σ_{n-1})^k`,
//! picks a matching of Gaussian-elimination pairs, checks that the induced
//! graph of connecting maps is acyclic and reports the surviving generators.
//! Survivors are classified through Temperley-Lieb rewriting and checked
//! against an integer homology computation of the braid closure.

pub mod braid;
pub mod counting;
pub mod error;
pub mod export;
pub mod homology;
pub mod states;
pub mod tl;
pub mod verify;
pub mod whittle;

pub use braid::BraidWord;
pub use error::{Error, Result};
pub use tl::{JnfTuple, MoveKind, Pairing, TlDiagram, TlMove, TlPath, TlWord};
