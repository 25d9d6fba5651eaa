//! Delayed random walks on finite graphs and on Bernoulli percolation
//! clusters.
//!
//! The crate computes exact and stochastic return probabilities of the
//! continuous-time delayed random walk, and checks them against closed-form
//! bounds: finite-graph upper and lower bounds, annealed decay laws on
//! critical and subcritical clusters, the integrated density of states, and
//! the clusters-per-site sandwich.

// `!(x > 0.0)` also rejects NaN, which `x <= 0.0` would let through
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod annealed;
pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod graph;
pub mod ids;
pub mod percolation;
pub mod rng;
pub mod spectral;
pub mod stats;
pub mod suite;

pub use error::{Error, Result};
