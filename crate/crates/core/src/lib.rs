//! Optimal single-query discrimination of group-symmetric quantum oracles.
//!
//! Given a finite group `G` and a unitary representation `Θ: G → U(V)`, the
//! oracles `{Θ(g)}` are to be told apart with one query. This crate builds the
//! pieces needed to do that optimally and to check the answer:
//!
//! * [`group`]: finite groups from Cayley tables and built-in families.
//! * [`rep`], [`decompose`], [`chartable`]: representations, numerical
//!   isotypic decomposition, and character tables.
//! * [`discrimination`]: the cyclic-dimension bound, the optimal input state
//!   and its symmetric measurement, confusion matrices, ancilla analysis.
//! * [`problems`]: group multiplication, hidden conjugating element, and the
//!   Bernstein-Vazirani / van Dam oracle families.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chartable;
pub mod decompose;
pub mod discrimination;
pub mod error;
pub mod group;
pub mod linalg;
pub mod problems;
pub mod rep;

pub use num_complex::Complex64;

pub use chartable::{character_table, CharacterTable};
pub use decompose::{decompose, dual_isotype_index, restrict_to_complement_of_isotype, Isotype, IsotypicDecomposition};
pub use discrimination::{
    ancilla_success, confusion_by_character, confusion_matrix, construct_optimal_input, dimension_bound_check,
    is_optimal_input, max_cyclic_dimension, min_ancilla_for_certainty, square_root_measurement, srm_povm,
    success_probability, ConfusionMatrix, OptimalInput, OptimalityDiagnostic, SymmetricPOVM,
};
pub use error::{Error, Result};
pub use group::{
    center, conjugacy_classes, cyclic_group, dihedral_group, direct_product, elementary_abelian_2, group_from_cayley,
    symmetric_group, ConjugacyClassPartition, FiniteGroup, Limits,
};
pub use linalg::CMatrix;
pub use rep::{
    character_of, permutation_representation, regular_representation, tensor_with_trivial, Character, RepTag, SubRep,
    UnitaryRep,
};
