//! Exact computation of the correspondence between projective indecomposable
//! modules and simple modules of a finite-dimensional algebra given by
//! structure constants over a prime field (or, for the linear-algebra layers,
//! over Q).

pub mod algebra;
pub mod arith;
pub mod correspondence;
pub mod decomp;
pub mod io;
mod error;
pub mod linalg;
pub mod module;

pub use error::{Error, Result};
