//! Free involutive Hom-associative algebras and their quotients, truncated
//! at a degree, and truncated universal enveloping algebras.

mod enveloping;
mod monomial;
mod presented;
mod reducer;
mod term;

pub use enveloping::{
    check_pbw_injectivity, enveloping, extend_derivation, DerivationOperator, EnvelopingAlgebra,
    PHI_BRACKET, PHI_TWIST, QUOTIENT_HOM_ASSOCIATIVE, QUOTIENT_INVOLUTIVE,
};
pub(crate) use enveloping::commutator_relations;
pub use monomial::{monomial, poly_add, poly_scale, poly_sub, LetterBound, MonomialTable, Node, Poly};
pub use presented::{FreeAlgebraTrunc, FreeConfig, PresentedAlgebraTrunc};
pub use reducer::Reducer;
pub use term::{normalize_term, spanning_terms, Term};
