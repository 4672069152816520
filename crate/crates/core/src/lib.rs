//! Cohomology of fusion systems and their linking systems over finite fields.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod category;
pub mod coefficients;
pub mod covering;
pub mod cohomology;
pub mod error;
pub mod fusion;
pub mod gamma;
pub mod group;
pub mod linalg;
pub mod linking;

pub use error::{Error, Result};
