//! Linear algebra on `V ⊕ V*` with the split pairing.

pub mod field;
pub mod lemmas;
pub mod matrix;
pub mod structures;
pub mod subspace;
pub mod suite;

pub use field::Field;
pub use lemmas::{lemma_double_split, lemma_dual_split, lemma_extend, lemma_kahler_split, lemma_missingrank};
pub use matrix::Matrix;
pub use structures::{b_matrix, b_transform_gcs, gcs_from_complex, gcs_from_symplectic, is_gcs, is_gk, natural_pairing, pairing_nat, random_gk, LinearGk};
pub use subspace::{Quotient, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenlinError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("shape error: {0}")]
    Shape(String),
}
