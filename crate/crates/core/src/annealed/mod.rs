//! Annealed return probabilities over percolation clusters, decay-exponent
//! fits, and the checks built on them.

mod campaign;
mod checks;
mod fit;
mod kappa;

pub use campaign::{annealed_campaign, geometric_grid, AnnealedEstimate, CampaignOptions};
pub use checks::{
    corollary1_bracket, corollary1_exponent_check, kappa_sandwich_check, kappa_sandwich_constant, mass_transport_check,
    mass_transport_reports, planar_time_threshold, theorem3_lower_check, theorem3_upper_check, thm3_lower_constant,
    thm3_lower_exponent, thm3_upper_constant, BRACKET_TOL, BRACKET_TOL_UPPER, MASS_TRANSPORT_SIGMAS, MIN_FIT_R_SQUARED,
    STAT_SIGMAS,
};
pub use fit::{fit_decay, fit_exponent, ExponentFit, FIT_SIGNIFICANCE};
pub use kappa::{box_seed, grimmett_kappa_boxcount, kappa_agreement, BoxCount};
