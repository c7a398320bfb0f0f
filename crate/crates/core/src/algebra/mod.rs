//! Finite fields, matrices, permutations and alternating forms.

pub mod field;
pub mod form;
pub mod matrix;
pub mod perm;

pub use field::{FieldElement, FieldOp, FiniteField};
pub use form::{BilinearForm, FormKind};
pub use matrix::{AffineSolution, EchelonSpan, Matrix, Vector};
pub use perm::Permutation;
