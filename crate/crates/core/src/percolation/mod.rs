//! Bernoulli bond percolation on Z² and on homogeneous trees.
//!
//! Cluster exploration is lazy and censored at `size_cap`. Non-censored Z²
//! clusters are planar by construction since they embed in the lattice.

mod cluster;
mod lattice_box;
mod model;
mod tail;

pub use cluster::{sample_cluster, sample_cluster_size, ClusterSample};
pub use lattice_box::BoxConfiguration;
pub use model::{Family, PercolationModel, DEFAULT_SIZE_CAP};
pub use tail::{log_grid, survival_counts, tail_from_sizes, tail_survey, TailEstimate, CURVATURE_TOL, TAIL_CI_Z};
