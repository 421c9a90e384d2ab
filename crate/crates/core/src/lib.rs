//! Exact quantum-torus models of Gaussian braid representations.

pub mod cyclo;
pub mod error;
pub mod poly;

pub use cyclo::{qnum, sqrt_int, zeta, CycNum, HalfInt};
pub use error::{Error, Result};
pub mod exactla;
pub mod field;
pub mod ratfunc;
pub mod modp;
pub mod nso;
pub mod torus;
pub mod gaussian;
pub mod braid_image;
pub mod verma;
pub mod fusion;
