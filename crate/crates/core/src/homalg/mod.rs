//! Finite-dimensional Hom-associative and Hom-Lie algebras given by structure
//! constants, with their axiom and derivation checkers.

mod algebra;
pub mod catalog;
mod derivation;
mod lie;
mod subspace;
mod tensor;

pub use algebra::{
    check_hom_associative, HomAssociativeAlgebra, TwistedAlgebra, HOM_ASSOCIATIVITY, INVOLUTIVITY,
    MULTIPLICATIVITY,
};
pub use derivation::{
    adjoint, check_alpha_k_derivation, check_beta_k_derivation, check_theta_derivation,
    derivation_space, theta_derivation_space, DerivationData, LeibnizVariant, COMMUTES_WITH_TWIST,
    THETA_LEIBNIZ, TWISTED_LEIBNIZ,
};
pub use lie::{check_hom_lie, commutator_hom_lie, HomLieAlgebra, HOM_JACOBI};
pub use subspace::{
    check_ideal, check_subalgebra, quotient_algebra, SubspaceData, CLOSED_UNDER_PRODUCT,
    LEFT_ABSORPTION, RIGHT_ABSORPTION, TWIST_STABLE,
};
pub use tensor::Tensor3;
