//! Numerical evaluation of square series generating functions
//! (sums of f_n q^{n^2} z^n) through Gaussian-kernel integral
//! representations, verified against direct-summation oracles.
//!
//! The crate covers the geometric, exponential and Fourier-type series
//! families, the Jacobi theta functions and their derivatives, Ramanujan's
//! phi/psi constants, Euler's function, and related special values, plus the
//! Stirling-number transform machinery the integral representations are
//! built from.

pub mod error;
pub mod quadrature;
pub mod rng;
pub mod sequences;
pub mod selftest;
pub mod special;
pub mod stirling;
pub mod transforms;

pub use error::{Error, Result};
pub use quadrature::{EvalResult, Method, QuadratureConfig};

pub use num_complex::Complex64;
