//! Exact computation of Johnson homomorphisms of products of Dehn twists
//! along bounding curves on a genus-`g` surface with one boundary
//! component, via the Kawazumi–Kuno tensors of a symplectic expansion.
//!
//! The crate also evaluates tree-like Jacobi diagrams in the tensor algebra
//! and the Casson-core homomorphisms `d`, `d'` and `lambda`, and carries the
//! genus-2 element `psi` in J_3 with `lambda(psi) = 1` as embedded data.

pub mod casson;
pub mod diagrams;
pub mod error;
pub mod expansion;
pub mod johnson;
pub mod psi;
pub mod surface;
pub mod tensor;
pub mod twist_file;
pub mod verify;

pub use error::{Error, Result};
pub use tensor::{Rational, Tensor, TensorSpace, Word};
