//! Lie bialgebras over exact rationals: r-matrices, the classical
//! Yang–Baxter obstruction, factorizability and Manin triples.
//!
//! Everything is at the Lie-algebra level; no group manifolds are built.

pub mod lie;
pub mod manin;
pub mod rmatrix;

pub use lie::{JacobiReport, LieAlgebraData};
pub use manin::{commuting_abelian_check, manin_triple, ManinTripleData};
pub use rmatrix::{cocommutator, cybe_obstruction, CocommutatorReport, CybeReport, RMatrix, Tensor3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BialgError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not a Lie algebra: {0}")]
    NotLie(String),
    #[error("dual bracket violates Jacobi: {0}")]
    DualJacobi(String),
    #[error("r-matrix is not factorizable: {0}")]
    NotFactorizable(String),
    #[error("contradiction: {0}")]
    Contradiction(String),
}
