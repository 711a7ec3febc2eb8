//! Deciding and cross-checking the PBW property for deformations of skew
//! group algebras `S(V)#G` over prime fields and the rationals.

pub mod convert;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod group_algebra;
pub mod hochschild;
pub mod instance;
pub mod matrix;
pub mod params;
pub mod pbw;
pub mod representation;
pub mod rewrite;
pub mod scalar;
pub mod skew;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use group_algebra::{ga_multiply, GroupAlgebraElem};
pub use matrix::{Matrix, Vector};
pub use representation::{close_generators, ElementClass, Representation};
pub use scalar::{scalar_arith, ArithOp, Field, Scalar};
pub use skew::{skew_multiply, SkewElem, SkewMonomial};
