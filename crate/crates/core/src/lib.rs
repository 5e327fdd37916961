//! Exact computations with involutive Hom-associative and Hom-Lie algebras:
//! axiom checkers, free and presented algebras at bounded degree, enveloping
//! algebras, and HNN-extensions with embedding certificates.

pub mod cli;
pub mod construct;
pub mod error;
pub mod exactlin;
pub mod freepres;
pub mod generate;
pub mod hnn;
pub mod homalg;
pub mod report;

pub use error::{Error, Result};
pub use report::{AxiomReport, EmbeddingCertificate, RelationCheck, Violation};
