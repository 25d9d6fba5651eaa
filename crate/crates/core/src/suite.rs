//! Randomized small-graph suite for the exact finite-graph bounds.

use rand::Rng;
use rayon::prelude::*;

use crate::bounds::{
    cheeger_constant, eq7_cycle_comparison, factorization_check, it_bound_i, it_bound_ii, it_exact, thm1_upper_sweep,
    BoundId, BoundReport, CycleIndexing, BOUND_SLACK, CHEEGER_CAP, SWEEP_TIMES,
};
use crate::error::{invalid, Result};
use crate::graph::random_connected_graph;
use crate::rng::{derive_seed, substream};
use crate::spectral::{exact_spectrum, spectral_gap, DrwKernel, DEFAULT_DENSE_CAP};

/// Times of the cosine-sum checks.
pub const IT_TIMES: [f64; 4] = [0.1, 1.0, 10.0, 100.0];

/// Times of the product-factorization checks.
pub const FACTORIZATION_TIMES: [f64; 3] = [0.1, 1.0, 10.0];

/// Tolerance of the product-factorization checks.
pub const FACTORIZATION_TOL: f64 = 1e-10;

/// Largest graph used in the long-cycle comparison.
pub const EQ7_MAX_N: usize = 10;

/// Largest factor used in the factorization checks.
pub const FACTOR_MAX_N: usize = 8;

const EXTRA_EDGE_PROB: f64 = 0.3;
const FACTOR_SALT: u64 = 0x6661_6374;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteSuiteConfig {
    pub seed: u64,
    pub n_graphs: usize,
    pub n_max: usize,
    /// Flip the sign of the last term of the first upper bound. The suite must
    /// then fail; used to show the harness can fail.
    pub sabotage: bool,
}

impl Default for FiniteSuiteConfig {
    fn default() -> Self {
        FiniteSuiteConfig { seed: 0, n_graphs: 200, n_max: 12, sabotage: false }
    }
}

/// Bound i with its `√t` term negated.
fn sabotaged_thm1_i(r: &BoundReport) -> BoundReport {
    let get = |k| r.input(k).expect("sweep reports carry their inputs");
    let (n, delta, beta2, k, t) = (get("N"), get("delta"), get("beta2"), get("k"), get("t"));
    let head = 1.0 / n + delta * k / n * (-t * (1.0 - beta2)).exp();
    let rhs = 2.0 * head - r.rhs;
    let inputs: Vec<(&str, f64)> = r.inputs.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    BoundReport::check(BoundId::Thm1I, &inputs, r.lhs, rhs, BOUND_SLACK).with_note("sabotaged")
}

fn graph_reports(cfg: &FiniteSuiteConfig, i: u64) -> Result<Vec<BoundReport>> {
    let mut rng = substream(cfg.seed, i);
    let n = rng.random_range(2..=cfg.n_max);
    let g = random_connected_graph(&mut rng, n, EXTRA_EDGE_PROB)?;
    let delta = g.max_degree();
    let mut out = Vec::new();

    let k = DrwKernel::with_max_degree(g.clone());
    let s = exact_spectrum(&k)?;
    if n >= 3 {
        for r in thm1_upper_sweep(&s, delta as f64, &SWEEP_TIMES)? {
            out.push(if cfg.sabotage && r.bound_id == BoundId::Thm1I { sabotaged_thm1_i(&r) } else { r });
        }
        // gap <= I needs δ >= 2; K2 with δ = 1 has gap 2 > I = 1
        if n <= CHEEGER_CAP {
            out.push(BoundReport::check(
                BoundId::CheegerLeIsoperimetric,
                &[("N", n as f64), ("delta", delta as f64)],
                spectral_gap(&s)?,
                cheeger_constant(&g)?,
                BOUND_SLACK,
            ));
        }
    }
    if n <= EQ7_MAX_N {
        out.extend(eq7_cycle_comparison(&g, delta.max(3), CycleIndexing::Sorted, DEFAULT_DENSE_CAP)?);
    }
    if n <= FACTOR_MAX_N {
        let mut frng = substream(derive_seed(cfg.seed, FACTOR_SALT), i);
        let m = frng.random_range(2..=FACTOR_MAX_N.min(cfg.n_max));
        let h = random_connected_graph(&mut frng, m, EXTRA_EDGE_PROB)?;
        out.extend(factorization_check(
            &k,
            &DrwKernel::with_max_degree(h),
            &FACTORIZATION_TIMES,
            FACTORIZATION_TOL,
            DEFAULT_DENSE_CAP,
        )?);
    }
    Ok(out)
}

/// Both cosine-sum bounds for every `N in 4..=n_max`, `k in 1..=N-2` and
/// every time in [`IT_TIMES`].
pub fn cosine_sum_reports(n_max: usize) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for n in 4..=n_max {
        for k in 1..=n - 2 {
            for t in IT_TIMES {
                let exact = it_exact(k, n, t)?;
                let inputs = [("N", n as f64), ("k", k as f64), ("t", t)];
                out.push(BoundReport::check(BoundId::Lem32I, &inputs, exact, it_bound_i(k, n, t)?, BOUND_SLACK));
                out.push(BoundReport::check(BoundId::Lem32II, &inputs, exact, it_bound_ii(k, n, t)?, BOUND_SLACK));
            }
        }
    }
    Ok(out)
}

/// Runs every exact finite-graph check on `n_graphs` random connected graphs
/// with `2 <= N <= n_max`, plus the cosine-sum checks up to `n_max`. Graph
/// `i` draws from substream `i`, so the reports do not depend on the pool.
pub fn verify_finite(cfg: &FiniteSuiteConfig) -> Result<Vec<BoundReport>> {
    if cfg.n_max < 2 {
        return Err(invalid(format!("n_max must be >= 2, got {}", cfg.n_max)));
    }
    if cfg.n_max > CHEEGER_CAP {
        return Err(invalid(format!("n_max must be <= {CHEEGER_CAP}")));
    }
    let per_graph: Vec<Vec<BoundReport>> =
        (0..cfg.n_graphs as u64).into_par_iter().map(|i| graph_reports(cfg, i)).collect::<Result<_>>()?;
    let mut out: Vec<BoundReport> = per_graph.into_iter().flatten().collect();
    out.extend(cosine_sum_reports(cfg.n_max)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::all_satisfied;
    use crate::graph::path_graph;

    fn path_gap_exact(n: usize, delta: f64) -> f64 {
        2.0 / delta * (1.0 - (std::f64::consts::PI / n as f64).cos())
    }

    #[test]
    fn default_suite_passes_small() {
        let cfg = FiniteSuiteConfig { n_graphs: 30, ..Default::default() };
        let r = verify_finite(&cfg).unwrap();
        assert!(all_satisfied(&r), "{}", r.iter().find(|x| !x.satisfied).unwrap());
        assert!(r.iter().any(|x| x.bound_id == BoundId::Thm1I));
        assert!(r.iter().any(|x| x.bound_id == BoundId::Factorization));
    }

    #[test]
    fn sabotage_fails() {
        let cfg = FiniteSuiteConfig { n_graphs: 30, sabotage: true, ..Default::default() };
        assert!(!all_satisfied(&verify_finite(&cfg).unwrap()));
    }

    #[test]
    fn k2_only() {
        let cfg = FiniteSuiteConfig { n_graphs: 5, n_max: 2, ..Default::default() };
        let r = verify_finite(&cfg).unwrap();
        assert!(!r.is_empty() && all_satisfied(&r));
        assert!(r.iter().all(|x| x.input("N").is_none_or(|n| n == 2.0) || x.bound_id == BoundId::Factorization));
    }

    #[test]
    fn path_gap_matches_spectrum() {
        for n in [3, 7, 12] {
            let s = exact_spectrum(&DrwKernel::with_max_degree(path_graph(n).unwrap())).unwrap();
            assert!((spectral_gap(&s).unwrap() - path_gap_exact(n, 2.0)).abs() < 1e-12);
        }
    }
}
