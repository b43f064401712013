//! Twisted Courant brackets on `TM ⊕ T*M`, spinors, and integrability of
//! generalized complex structures.

pub mod bracket;
pub mod frame;
pub mod random;
pub mod section;
pub mod spinor;

pub use bracket::{
    axioms_check, axioms_check_triples, axioms_check_with, b_naturality_residual, loday_bracket, loday_bracket_corrupted, psi, psi_translate_check,
    psi_translate_residual, symmetrization_residual, symmetry_bracket, AxiomReport, TripleResidual,
};
pub use frame::{act_on_section, eigenframe, frame_involutivity, frame_residuals, gcs_integrability, preserves_frame, InvolutivityReport};
pub use section::{GenSection, SymmetryPair, TwistData};
pub use spinor::{
    act_on_spinor, action_commutator_residual, clifford, clifford_residual, d_twisted, pure_spinor, spinor_annihilator, spinor_integrability, Annihilator,
    Integrability, Locus,
};

use crate::symcalc::SymError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CourantError {
    #[error("chart mismatch: '{0}' vs '{1}'")]
    ChartMismatch(String, String),
    #[error("wrong degree: {0}")]
    Degree(String),
    #[error("form is not closed: {0}")]
    NotClosed(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("spinor vanishes: {0}")]
    Vanishing(String),
    #[error("spinor is not pure: {0}")]
    NotPure(String),
    #[error("not integrable: {0}")]
    NotIntegrable(String),
    #[error("degenerate structure: {0}")]
    RankDrop(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}
