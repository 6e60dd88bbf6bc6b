//! Hall-Littlewood limit laws for singular numbers of p-adic random matrix
//! products.
//!
//! The crate evaluates the limiting law of the smallest conjugate parts of
//! the singular numbers (by residue series, closed forms and contour
//! quadrature), implements the exact Hall-Littlewood machinery behind it,
//! and simulates the matrix ensembles and the reflected Poisson walk whose
//! fluctuations it describes.

pub mod dynamics;
pub mod error;
pub mod hallittlewood;
pub mod harness;
pub mod limitlaw;
pub mod padicmat;
pub mod qcore;

pub use error::{Error, Result};
pub use qcore::{dinf, DiscreteLaw, Extent, Partition, Rational, Signature};
