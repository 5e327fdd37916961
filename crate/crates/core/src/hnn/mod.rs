//! HNN-extensions of involutive Hom-associative and Hom-Lie algebras, with
//! exact embedding certificates at bounded length and degree.

mod assoc;
mod lie;
mod variant;

pub use assoc::{
    build_q, check_hnn_relation, embedding_certificate_assoc, enumerate_normal_sequences, left_mult_op,
    sigma_op, validate_hnn_assoc_data, EndoOperator, HNNAssocData, HNNLetter, NormalSequence,
    RelationFragment, SlotMode, TruncatedQ, FREE_BASIS, THETA_INJECTIVE, THETA_MULTIPLICATIVE,
    TWIST_COMMUTES_DELTA, TWIST_COMMUTES_THETA,
};
pub use variant::{variant_experiment, variant_instances, VariantExperiment, VariantInstance, VariantOutcome, VariantRow};
pub use lie::{
    build_m, crosscheck_semidirect, embedding_certificate_lie, hnn_lie_presentation, validate_hnn_lie_data,
    HNNLieData, HNNLieModel, HNNLiePresentation, BRACKETS_AGREE, D_COMMUTES, D_EXTENDS, D_LEIBNIZ, LIE_SUBALGEBRA,
    TWISTS_AGREE,
};
