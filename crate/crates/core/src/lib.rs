// `!(a > b)` is used on floats so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bvpath;
pub mod corpus;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod reparam;
pub mod solver;
pub mod verify;

pub use bvpath::{BVPath, NondecreasingMap};
pub use error::{Error, Result};
pub use geometry::{ConvexSet, HalfSpace, Point};
