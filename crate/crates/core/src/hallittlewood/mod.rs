//! Hall-Littlewood (`q = 0`) and q-Whittaker (`t = 0`) polynomials:
//! branching coefficients, principal and skew principal specializations,
//! mixed Plancherel/alpha specializations of `Q`, Pieri transition
//! probabilities, and q-Whittaker Laurent polynomials at complex points.

mod branching;
mod laurent;
mod plancherel;
mod principal;

pub use branching::{
    b_lam_hl, b_lam_qw, hl_p, hl_q, phi_hl, phi_qw, psi_hl, psi_hl_partition, psi_qw,
    psi_qw_partition, qw_p, qw_q,
};
pub use laurent::{qw_laurent_monomials, qw_laurent_p, MAX_LAURENT_VARS};
pub use plancherel::{q_gamma_alpha, q_gamma_alpha_coeffs, tableau_weights, GTChainWeight};
pub use principal::{pieri_transition, principal_p, skew_principal_p};
