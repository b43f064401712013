//! Abelian bi-Hamiltonian torus reduction on an invariant chart model of
//! the level set, and the T-duality identity between the two quotients.
//!
//! Descent to a quotient is certified by basicness; quotient-chart
//! expressions are obtained by deleting the quotiented angle coordinates.

pub mod action;
pub mod tgroup;
pub mod twist;

pub use action::{hamiltonian_checks, moment_sections, pairing_p, restrict_to_level, Moment, PairingReport, Tag, TorusActionData, TorusFamilies};
pub use tgroup::{b_shear, o11_elements, split_pairing, subtorus_reduction_check, tduality_transform, SubtorusMode, SubtorusReport, TransformOutcome};
pub use twist::{
    b_tilde, duality_check, duality_check_with, h_tilde, horizontal_part, reduced_twisting, BTildeReport, ConnectionData, ConnectionReport, DualityReport,
    ReducedTwist, Side, CONVENTION,
};

use crate::courant::CourantError;
use crate::genlin::GenlinError;
use crate::symcalc::SymError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("connection contraction mismatch: {0}")]
    Contraction(String),
    #[error("not basic: {0}")]
    NotBasic(String),
    #[error("not in O(m,m;Z): {0}")]
    NotInGroup(String),
    #[error("transformed family is not Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("neither reduction case applies: {0}")]
    NoCase(String),
    #[error(transparent)]
    Courant(#[from] CourantError),
    #[error(transparent)]
    Genlin(#[from] GenlinError),
    #[error(transparent)]
    Sym(#[from] SymError),
}
