//! Matrices over `ℤ/p^K`: Haar sampling, products, and Smith normal form.

mod ensemble;
mod matrix;
mod ring;
mod snf;

pub use ensemble::{product_chain, simulate_x_process, simulate_x_process_counted, Ensemble};
pub use matrix::{sample_additive_haar, sample_haar_gl, sample_haar_gl_corner, MatModPK, GL_REJECTION_BUDGET};
pub use ring::{is_prime, ModRing};
pub use snf::{snf, SingularNumbers};
