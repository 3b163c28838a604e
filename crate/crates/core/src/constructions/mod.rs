//! Closure constructions on word-problem objects. Each result carries the
//! constructed recognizer and an equality oracle assembled from the inputs'
//! oracles.

mod bruck_reilly;
mod direct;
mod free_product;
mod hyperbolic;
mod rees;
mod semilattice;

pub use direct::{direct_factor, direct_product_finite, factor_circuit, Circuit};
pub use free_product::{free_product_monoids, free_product_semigroups, renamed};
pub use semilattice::{free_group_over_integers, semilattice_oracle, strong_semilattice, SemilatticeSpec};
pub use rees::{c2_rees_fixture, rees_gsm, rees_letter, rees_matrix, rees_oracle, ReesMatrixSpec};
pub use bruck_reilly::{
    bicyclic_bruck_reilly, bicyclic_fixture, br_fold, br_multiply, br_oracle, bruck_reilly, c2_identity_spec, BrDerived, BrNormalForm,
    BruckReillySpec, B_LETTER, C_LETTER,
};
pub use hyperbolic::{hyperbolic_word, word_hyperbolic_structure, MARK1, MARK2};
