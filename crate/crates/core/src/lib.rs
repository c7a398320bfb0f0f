//! Word maps, girth and diameter computations on finite symmetric and classical groups.

pub mod algebra;
pub mod cayley;
pub mod error;
pub mod groups;
pub mod harness;
pub mod probability;
pub mod trajectory;
pub mod words;

pub use algebra::{FieldElement, FiniteField, Matrix, Permutation, Vector};
pub use error::{Error, Result};
pub use groups::{Family, GeneratorTuple, Group, GroupElement, GroupSpec};
pub use words::{parse_word, Letter, Reduction, Word, WordKind};
