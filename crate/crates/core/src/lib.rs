//! Exact computations with Nichols algebras of diagonal and group type.

pub mod braided;
pub mod cohomology;
pub mod config;
pub mod error;
pub mod exact;
pub mod fk;
pub mod linalg;
pub mod nichols;
pub mod par;
pub mod relations;
pub mod selfcheck;
pub mod symmetric;
pub mod tensor;
pub mod weyl;

pub use error::{Error, Result};
pub use exact::{CycNumber, Scalar};
pub use tensor::{TensorElement, TensorPair, Word};
