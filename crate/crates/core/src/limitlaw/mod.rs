//! The limit law `𝓛_{k,t,χ}` on `Sig_k`: residue series for every `k`,
//! closed forms for `k = 1, 2`, contour quadrature for `k ≤ 2`, and the
//! moments of the one-point marginal.

mod closed;
mod contour;
mod moments;
mod series;

pub use closed::{pmf_k1, pmf_k1_detailed, pmf_k2, pmf_k2_detailed};
pub use contour::{pmf_contour, ContourEvaluator, ContourSpec};
pub use moments::{moment_k1, moment_k1_exact};
pub use series::{
    pmf_series, series_coefficients, LimitLawParams, Method, PmfRecord, SeriesTerm,
};
