//! Closed-form bounds and exact verifiers for finite graphs.

pub mod cheeger;
pub mod comparison;
pub mod lemma;
pub mod report;
pub mod theorem1;

pub use cheeger::{boshier_bound, cheeger_constant, cheeger_constant_capped, BoshierBound, CHEEGER_CAP};
pub use comparison::{cycle_reference, eq7_cycle_comparison, factorization_check, CycleIndexing};
pub use lemma::{
    heavy_tail_constant, heavy_tail_lower, it_bound_i, it_bound_ii, it_exact, published_heavy_tail_constant, TailParams,
};
pub use report::{all_satisfied, write_reports_csv, BoundId, BoundReport, BOUND_SLACK};
pub use theorem1::{
    planar_constant, poincare_path_gap, thm1_lower_check, thm1_lower_planar, thm1_upper_i, thm1_upper_ii,
    thm1_upper_sweep, PLANAR_MIN_VERTICES, SWEEP_TIMES,
};
