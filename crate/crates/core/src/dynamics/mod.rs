//! Reflected Poisson walks, the insertion map, and exact Hall-Littlewood
//! Cauchy dynamics.

mod cauchy;
mod exact;
mod insertion;
mod walk;

pub use cauchy::{
    cauchy_pmf_hl, exact_cauchy_pmf, gx_pmf, hl_cauchy_multi, hl_cauchy_step, sample_gx, sample_impulses, AlphaList,
    GxParams,
};
pub use exact::{additive_haar_chain_law, additive_haar_kernel_row, cauchy_chain_law, plancherel_law, plancherel_pmf};
pub use insertion::{insertion, insertion_particles};
pub use walk::{simulate_s, simulate_s_logged, Snapshot, WalkState};
