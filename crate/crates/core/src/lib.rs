//! Dimensions of principal ideals in finite group algebras, and the
//! group codes they generate.

pub mod abelian;
pub mod algebra;
pub mod code;
pub mod error;
pub(crate) mod expr;
pub mod field;
pub mod group;
pub mod ideal;
pub mod matrix;
pub mod notation;
pub mod poly;

pub use abelian::{Indicator, QOrbitPartition, SplittingField};
pub use algebra::{vector_string, AlgebraElement, GroupAlgebra};
pub use code::{CodeReport, CodeStatus, Distance, DistanceBound, Relation};
pub use error::{Error, Result};
pub use field::{Fe, Field, FieldSpec};
pub use group::{CyclicDecomposition, Group};
pub use ideal::{Bound, Congruence, DimensionReport, ElementAnalysis};
pub use matrix::Matrix;
pub use notation::{parse_field, parse_group, parse_modulus};
pub use poly::{Factorization, Polynomial};
