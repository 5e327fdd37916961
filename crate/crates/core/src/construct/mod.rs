//! Hom-actions and semidirect products of Hom-Lie algebras, and coset
//! modules `A/B` with free-basis verification.

mod action;
mod coset;

pub use action::{
    check_hom_action, semidirect_product, HomAction, SemidirectProduct, ACTION_BRACKET,
    ACTION_DERIVATION, ACTION_TWIST,
};
pub use coset::{
    check_free_basis, check_free_basis_lifted, coset_module, is_involutive, CosetHomModule,
    FreeBasisWitness,
};
