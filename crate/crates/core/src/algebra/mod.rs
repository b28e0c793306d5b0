//! Exact integer linear algebra: Smith normal form, homology of integer
//! chain complexes, induced maps and isomorphism tests.

mod chain;
mod group;
mod matrix;
mod snf;

pub use chain::{
    induced_between, induced_on_homology, ChainMap, CochainComplex, GradedGroups, HomologyData, InducedMap,
    IntegerChainComplex,
};
pub use group::{kernel_basis, same_lattice, span_basis, FgAbelianGroup, Lattice, Presentation, PresentedHom};
pub use matrix::{integer_value, IntMatrix};
pub(crate) use matrix::{serialize_integers, serialize_optional_integers};
pub use snf::{invariant_factors, rank, sparse_invariant_factors, SmithForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape mismatch in degree {degree}: {detail}")]
    ShapeMismatch { degree: usize, detail: String },
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("map does not commute with the differentials at degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("chain is not a cycle")]
    NotACycle,
}
