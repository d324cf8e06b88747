pub mod analysis;
pub mod blocks;
pub mod check;
pub mod error;
pub mod field;
pub mod linalg;
pub mod loewy;
pub mod meataxe;
pub mod module;
pub mod perm;
pub mod poly;
pub mod report;
pub mod structure;

pub use error::{Error, Result};
pub use field::{Field, FieldElem, FieldSpec};
pub use linalg::{Mat, Subspace};
pub use module::{AlgebraElem, GroupAlgebra, Module};
pub use perm::{builtin, Group, GroupTable, Perm};
pub use poly::Poly;
