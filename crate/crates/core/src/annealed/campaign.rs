//! Monte-Carlo estimation of the annealed return probability
//! `P_t = E[(1/|C_o|) Tr e^{-t(I-P)}]` over root clusters.
//!
//! Point estimates average over non-censored samples only. With a censored
//! fraction `c`, the unconditional value lies in
//! `[(1-c)·p̂, (1-c)·p̂ + c]`, which is what the envelopes report.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::percolation::{sample_cluster, ClusterSample, PercolationModel};
use crate::rng::derive_seed;
use crate::spectral::{
    exact_spectrum_capped, return_probability, root_heat_diagonal, rooted_spectrum, stochastic_heat_traces, DrwKernel,
};
use crate::stats::RunningStats;

/// Samples processed per parallel batch; batches fold in index order.
const BATCH: u64 = 2048;

const PROBE_SALT: u64 = 0x7072_6f62;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CampaignOptions {
    /// Largest cluster handled by a dense eigendecomposition.
    pub dense_cap: usize,
    /// Hutchinson probes for clusters above `dense_cap`.
    pub probes: usize,
    /// Also estimate the fixed-root return probability.
    pub fixed_root: bool,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions { dense_cap: 1000, probes: 64, fixed_root: false }
    }
}

/// Per-t running statistics of one estimator.
#[derive(Debug, Clone)]
struct SeriesStats {
    stats: Vec<RunningStats>,
}

impl SeriesStats {
    fn new(len: usize) -> Self {
        SeriesStats { stats: vec![RunningStats::default(); len] }
    }

    fn push(&mut self, values: &[f64]) {
        for (s, &v) in self.stats.iter_mut().zip(values) {
            s.push(v);
        }
    }

    fn means(&self) -> Vec<f64> {
        self.stats.iter().map(RunningStats::mean).collect()
    }

    fn std_errors(&self) -> Vec<f64> {
        self.stats.iter().map(RunningStats::std_error).collect()
    }
}

#[derive(Debug, Clone)]
pub struct AnnealedEstimate {
    pub model: PercolationModel,
    pub t_grid: Vec<f64>,
    /// Mean of `(1/|C|) Tr e^{-t(I-P)}` over non-censored samples.
    pub p_t_hat: Vec<f64>,
    pub std_error: Vec<f64>,
    /// Mean of the per-sample excess `(1/|C|) Tr e^{-t(I-P)} - 1/|C|`.
    pub excess_hat: Vec<f64>,
    pub excess_std_error: Vec<f64>,
    /// Fixed-root diagonal `(e^{-t(I-P)})_{oo}` and the paired difference
    /// from the uniform-start value, when requested.
    pub root_p_t_hat: Option<Vec<f64>>,
    pub root_std_error: Option<Vec<f64>>,
    pub root_minus_uniform: Option<Vec<f64>>,
    pub root_minus_uniform_std_error: Option<Vec<f64>>,
    pub kappa_hat: f64,
    pub kappa_std_error: f64,
    /// Mean cluster size over non-censored samples; unreliable at criticality.
    pub chi_hat: f64,
    pub chi_std_error: f64,
    pub censored_fraction: f64,
    pub n_samples: u64,
    /// Samples that needed the stochastic trace.
    pub n_stochastic: u64,
    /// Largest Chebyshev truncation bound met on the stochastic path.
    pub max_truncation_bound: f64,
    /// Sizes of the non-censored clusters, in sample order.
    pub sizes: Vec<usize>,
}

impl AnnealedEstimate {
    /// Unconditional `[lower, upper]` envelope for `P_t` at grid index `i`.
    pub fn envelope(&self, i: usize) -> (f64, f64) {
        let c = self.censored_fraction;
        ((1.0 - c) * self.p_t_hat[i], (1.0 - c) * self.p_t_hat[i] + c)
    }

    /// Empirical `E[|C|^alpha]` over non-censored clusters, with std error.
    pub fn size_moment(&self, alpha: f64) -> (f64, f64) {
        let s: RunningStats = self.sizes.iter().map(|&n| (n as f64).powf(alpha)).collect();
        (s.mean(), s.std_error())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "p_t_hat", "std_error", "kappa_hat", "censored_fraction"])?;
        for i in 0..self.t_grid.len() {
            w.write_record([
                self.t_grid[i].to_string(),
                self.p_t_hat[i].to_string(),
                self.std_error[i].to_string(),
                self.kappa_hat.to_string(),
                self.censored_fraction.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

struct SampleRecord {
    size: usize,
    censored: bool,
    stochastic: bool,
    truncation: f64,
    uniform: Vec<f64>,
    root: Vec<f64>,
}

/// Uniform-start trace and (optionally) fixed-root diagonal of one cluster.
fn cluster_values(
    c: &ClusterSample,
    delta: usize,
    times: &[f64],
    opts: &CampaignOptions,
    probe_seed: u64,
) -> Result<(Vec<f64>, Vec<f64>, bool, f64)> {
    let n = c.size;
    if n == 1 {
        return Ok((vec![1.0; times.len()], vec![1.0; times.len()], false, 0.0));
    }
    let k = DrwKernel::new(c.graph.clone(), delta)?;
    if n <= opts.dense_cap {
        if opts.fixed_root {
            let rs = rooted_spectrum(&k, c.root, opts.dense_cap)?;
            let uniform = times.iter().map(|&t| return_probability(&rs.spectrum, t)).collect::<Result<_>>()?;
            let root = times.iter().map(|&t| rs.root_return_probability(t)).collect::<Result<_>>()?;
            return Ok((uniform, root, false, 0.0));
        }
        let s = exact_spectrum_capped(&k, opts.dense_cap)?;
        let uniform = times.iter().map(|&t| return_probability(&s, t)).collect::<Result<_>>()?;
        return Ok((uniform, Vec::new(), false, 0.0));
    }
    let est = stochastic_heat_traces(&k, times, opts.probes, None, probe_seed)?;
    let mut trunc = est.iter().map(|e| e.truncation_bound).fold(0.0, f64::max);
    let uniform = est.iter().map(|e| e.value).collect();
    let root = if opts.fixed_root {
        let diag = root_heat_diagonal(&k, c.root, times)?;
        trunc = diag.iter().map(|d| d.1).fold(trunc, f64::max);
        diag.into_iter().map(|d| d.0).collect()
    } else {
        Vec::new()
    };
    Ok((uniform, root, true, trunc))
}

fn sample_record(model: &PercolationModel, i: u64, times: &[f64], opts: &CampaignOptions) -> Result<SampleRecord> {
    let c = sample_cluster(model, i);
    if c.censored {
        return Ok(SampleRecord {
            size: c.size,
            censored: true,
            stochastic: false,
            truncation: 0.0,
            uniform: Vec::new(),
            root: Vec::new(),
        });
    }
    let probe_seed = derive_seed(derive_seed(model.seed, PROBE_SALT), i);
    let (uniform, root, stochastic, truncation) = cluster_values(&c, model.delta, times, opts, probe_seed)?;
    Ok(SampleRecord { size: c.size, censored: false, stochastic, truncation, uniform, root })
}

/// Runs `n_samples` cluster samples (stream indices `0..n_samples`) and
/// averages the normalised heat trace on each grid time. The walk uses the
/// ambient degree `model.delta` on every cluster.
pub fn annealed_campaign(
    model: &PercolationModel,
    t_grid: &[f64],
    n_samples: u64,
    opts: &CampaignOptions,
) -> Result<AnnealedEstimate> {
    model.validate()?;
    if n_samples == 0 {
        return Err(invalid("n_samples must be >= 1"));
    }
    if t_grid.is_empty() || t_grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
        return Err(invalid("t_grid must be non-empty, finite and non-negative"));
    }
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("t_grid must be strictly ascending"));
    }
    if opts.probes == 0 {
        return Err(invalid("probes must be >= 1"));
    }
    let nt = t_grid.len();
    let (mut uniform, mut excess) = (SeriesStats::new(nt), SeriesStats::new(nt));
    let (mut root, mut diff) = (SeriesStats::new(nt), SeriesStats::new(nt));
    let (mut kappa, mut chi) = (RunningStats::default(), RunningStats::default());
    let (mut censored, mut stochastic) = (0u64, 0u64);
    let mut max_trunc = 0.0f64;
    let mut sizes = Vec::new();

    let mut start = 0u64;
    while start < n_samples {
        let end = (start + BATCH).min(n_samples);
        let batch: Vec<SampleRecord> =
            (start..end).into_par_iter().map(|i| sample_record(model, i, t_grid, opts)).collect::<Result<_>>()?;
        for r in batch {
            if r.censored {
                censored += 1;
                continue;
            }
            let inv = 1.0 / r.size as f64;
            kappa.push(inv);
            chi.push(r.size as f64);
            sizes.push(r.size);
            stochastic += u64::from(r.stochastic);
            max_trunc = max_trunc.max(r.truncation);
            uniform.push(&r.uniform);
            excess.push(&r.uniform.iter().map(|u| u - inv).collect::<Vec<_>>());
            if opts.fixed_root {
                root.push(&r.root);
                diff.push(&r.root.iter().zip(&r.uniform).map(|(a, b)| a - b).collect::<Vec<_>>());
            }
        }
        start = end;
    }
    let opt = |s: &SeriesStats, f: fn(&SeriesStats) -> Vec<f64>| opts.fixed_root.then(|| f(s));
    Ok(AnnealedEstimate {
        model: *model,
        t_grid: t_grid.to_vec(),
        p_t_hat: uniform.means(),
        std_error: uniform.std_errors(),
        excess_hat: excess.means(),
        excess_std_error: excess.std_errors(),
        root_p_t_hat: opt(&root, SeriesStats::means),
        root_std_error: opt(&root, SeriesStats::std_errors),
        root_minus_uniform: opt(&diff, SeriesStats::means),
        root_minus_uniform_std_error: opt(&diff, SeriesStats::std_errors),
        kappa_hat: kappa.mean(),
        kappa_std_error: kappa.std_error(),
        chi_hat: chi.mean(),
        chi_std_error: chi.std_error(),
        censored_fraction: censored as f64 / n_samples as f64,
        n_samples,
        n_stochastic: stochastic,
        max_truncation_bound: max_trunc,
        sizes,
    })
}

/// `points` log-spaced times from `t_min` to `t_max` inclusive.
pub fn geometric_grid(t_min: f64, t_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_max >= t_min && t_max.is_finite()) {
        return Err(invalid(format!("need 0 < t_min <= t_max, got [{t_min}, {t_max}]")));
    }
    if points == 0 || (points == 1 && t_max != t_min) {
        return Err(invalid("grid needs at least two points unless t_min == t_max"));
    }
    if points == 1 {
        return Ok(vec![t_min]);
    }
    let r = (t_max / t_min).ln() / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|i| t_min * (r * i as f64).exp()).collect();
    grid[points - 1] = t_max;
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_zero_gives_one() {
        let m = PercolationModel::square_lattice(0.0).unwrap();
        let e =
            annealed_campaign(&m, &[0.0, 1.0, 100.0], 50, &CampaignOptions { fixed_root: true, ..Default::default() })
                .unwrap();
        assert!(e.p_t_hat.iter().all(|&p| p == 1.0));
        assert_eq!((e.kappa_hat, e.chi_hat, e.censored_fraction), (1.0, 1.0, 0.0));
        assert!(e.root_p_t_hat.unwrap().iter().all(|&p| p == 1.0));
    }

    #[test]
    fn t_zero_is_exactly_one() {
        let m = PercolationModel::square_lattice(0.4).unwrap().with_seed(3);
        let e = annealed_campaign(&m, &[0.0, 2.0], 300, &CampaignOptions::default()).unwrap();
        assert!((e.p_t_hat[0] - 1.0).abs() < 1e-12);
        assert!(e.p_t_hat[1] < 1.0 && e.p_t_hat[1] >= e.kappa_hat);
    }

    #[test]
    fn censoring_envelope() {
        let m = PercolationModel::tree(3, 1.0).unwrap().with_size_cap(20);
        let e = annealed_campaign(&m, &[1.0], 10, &CampaignOptions::default()).unwrap();
        assert_eq!(e.censored_fraction, 1.0);
        assert_eq!(e.envelope(0).1, 1.0);
    }

    #[test]
    fn stochastic_path_agrees_with_dense() {
        // same samples, forcing clusters above 30 vertices onto the stochastic path
        let m = PercolationModel::square_lattice(0.5).unwrap().with_seed(11).with_size_cap(400);
        let times = [1.0, 10.0];
        let dense = annealed_campaign(&m, &times, 200, &CampaignOptions::default()).unwrap();
        let opts = CampaignOptions { dense_cap: 30, probes: 200, fixed_root: true };
        let mixed = annealed_campaign(&m, &times, 200, &opts).unwrap();
        assert!(mixed.n_stochastic > 0);
        for i in 0..2 {
            let tol = 4.0 * (dense.std_error[i].powi(2) + mixed.std_error[i].powi(2)).sqrt();
            assert!((dense.p_t_hat[i] - mixed.p_t_hat[i]).abs() < tol);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let m = PercolationModel::z2_critical();
        let o = CampaignOptions::default();
        assert!(annealed_campaign(&m, &[1.0], 0, &o).is_err());
        assert!(annealed_campaign(&m, &[2.0, 1.0], 1, &o).is_err());
        assert!(annealed_campaign(&m, &[-1.0], 1, &o).is_err());
    }

    #[test]
    fn grid_shape() {
        let g = geometric_grid(10.0, 1000.0, 3).unwrap();
        assert!((g[1] - 100.0).abs() < 1e-9 && g[2] == 1000.0);
        assert!(geometric_grid(0.0, 1.0, 3).is_err());
    }
}
