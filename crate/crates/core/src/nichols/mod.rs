//! Quantum symmetrizers, Nichols ideals, braided coproducts and graded quotients.

pub mod rewrite;

pub use rewrite::{rewrite_dims, Completion, GradedDims, GroebnerBasis, RewriteOptions, Rule};
pub mod symmetrizer;

pub use symmetrizer::{
    ideal_component, is_in_nichols_ideal, matsumoto_symmetrizer, nichols_dims, nichols_dims_with, Symmetrizer, SymmetrizerBlock,
    SymmetrizerTower, MEMORY_GUARD,
};
pub mod coproduct;
pub mod quotient;

pub use coproduct::{braided_coproduct, coproduct_word};
pub use quotient::{primitives, Quotient};
