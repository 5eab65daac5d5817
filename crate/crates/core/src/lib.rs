//! Rauzy tiling patches, their rhombal path algebras with relations, and an
//! exact calculus of finite-dimensional right modules over the truncations.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod census;
pub mod error;
pub mod field;
pub mod linalg;
pub mod modcalc;
pub mod quiver;
pub mod tiling;

pub use error::{Error, Result};
