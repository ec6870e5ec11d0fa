#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod univariate;

pub use error::{CoreError, Result};
pub mod geometry;
pub mod seed;
pub mod varieties;
pub mod quadspace;
pub mod scrollcalc;
pub mod verifier;
