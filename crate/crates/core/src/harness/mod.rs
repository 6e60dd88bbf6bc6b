//! Monte Carlo experiments comparing finite-size singular numbers and walks
//! with the limit law, plus the exact identity suite.

mod config;
mod experiments;
mod montecarlo;
mod report;
mod verify;

pub use config::{default_tolerance, Centering, Experiment, ExperimentConfig, SEED_ENV};
pub use experiments::{
    appendix_b_time_factor, centering, conjugate_coords, limit_law_window, max_precision, run_appendix_b,
    run_experiment, run_theorem_10_3, run_theorem_1_4, run_theorem_1_5, MIN_LOG_TAU, MIN_PRODUCT_LENGTH,
};
pub use montecarlo::{one_sample_stderr, stream_rng, tally, two_sample_stderr, Tally, CHUNK};
pub use report::{to_json_17, write_outputs, Certification, ComparisonReport};
pub use verify::{
    compare_k3, k3_computed_coefficients, k3_printed_coefficients, k3_worked_coefficients, partitions_up_to, verify_identities,
    IdentityCheck, K3Comparison, K3Item, VerifyReport,
};
