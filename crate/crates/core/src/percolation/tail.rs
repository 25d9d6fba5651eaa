use std::io::Write;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::stats::{linear_fit, wilson_interval};

use super::cluster::sample_cluster_size;
use super::model::PercolationModel;

/// z-value of the reported survival-function intervals (95%).
pub const TAIL_CI_Z: f64 = 1.96;

/// Relative disagreement between the slopes of the two window halves above
/// which the tail is flagged as not power-law.
pub const CURVATURE_TOL: f64 = 0.3;

#[derive(Debug, Clone)]
pub struct TailEstimate {
    pub m_grid: Vec<u64>,
    pub phi_hat: Vec<f64>,
    pub ci_low: Vec<f64>,
    pub ci_high: Vec<f64>,
    /// Fitted `s` in `Φ(m) ≈ c·m^{-s}` over the window.
    pub slope: f64,
    pub stderr: f64,
    pub r_squared: f64,
    /// Slopes of the lower and upper halves of the window.
    pub half_slopes: (f64, f64),
    /// Set when the log-log fit is poor or visibly curved.
    pub poor_fit: bool,
    pub window: (u64, u64),
    pub n_samples: u64,
    pub censored_fraction: f64,
}

impl TailEstimate {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["m", "phi_hat", "ci_low", "ci_high"])?;
        for i in 0..self.m_grid.len() {
            w.write_record([
                self.m_grid[i].to_string(),
                self.phi_hat[i].to_string(),
                self.ci_low[i].to_string(),
                self.ci_high[i].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Integer grid of roughly `per_decade` log-spaced points in `[lo, hi]`,
/// always containing both ends.
pub fn log_grid(lo: u64, hi: u64, per_decade: usize) -> Vec<u64> {
    let (lo, hi) = (lo.max(1), hi.max(lo.max(1)));
    let decades = (hi as f64 / lo as f64).log10();
    let steps = ((decades * per_decade as f64).ceil() as usize).max(1);
    let mut grid: Vec<u64> = (0..=steps)
        .map(|i| (lo as f64 * (hi as f64 / lo as f64).powf(i as f64 / steps as f64)).round() as u64)
        .collect();
    grid.dedup();
    grid
}

/// Survival function of `sizes` on `m_grid`. Censored samples count as
/// reaching every threshold up to the cap.
pub fn survival_counts(sizes: &[(usize, bool)], m_grid: &[u64]) -> Vec<u64> {
    let mut sorted: Vec<u64> = sizes.iter().map(|&(s, _)| s as u64).collect();
    sorted.sort_unstable();
    m_grid.iter().map(|&m| (sorted.len() - sorted.partition_point(|&s| s < m)) as u64).collect()
}

/// Samples `n_samples` root-cluster sizes (stream indices `0..n_samples`) and
/// fits the survival exponent over `window`, whose ends must be grid points.
pub fn tail_survey(
    model: &PercolationModel,
    n_samples: u64,
    m_grid: &[u64],
    window: (u64, u64),
) -> Result<TailEstimate> {
    model.validate()?;
    if n_samples == 0 {
        return Err(invalid("n_samples must be >= 1"));
    }
    let sizes: Vec<(usize, bool)> = (0..n_samples).into_par_iter().map(|i| sample_cluster_size(model, i)).collect();
    tail_from_sizes(&sizes, m_grid, window, model.size_cap)
}

pub fn tail_from_sizes(
    sizes: &[(usize, bool)],
    m_grid: &[u64],
    window: (u64, u64),
    size_cap: usize,
) -> Result<TailEstimate> {
    if m_grid.is_empty() || m_grid.windows(2).any(|w| w[0] >= w[1]) || m_grid[0] == 0 {
        return Err(invalid("m_grid must be strictly increasing positive integers"));
    }
    if *m_grid.last().unwrap() > size_cap as u64 {
        return Err(invalid(format!("m_grid exceeds size_cap {size_cap}")));
    }
    let (lo, hi) = window;
    if lo >= hi || !m_grid.contains(&lo) || !m_grid.contains(&hi) {
        return Err(invalid(format!("window [{lo}, {hi}] endpoints must be m_grid points")));
    }
    let n = sizes.len() as u64;
    let counts = survival_counts(sizes, m_grid);
    let phi_hat: Vec<f64> = counts.iter().map(|&k| k as f64 / n as f64).collect();
    let (ci_low, ci_high): (Vec<f64>, Vec<f64>) = counts.iter().map(|&k| wilson_interval(k, n, TAIL_CI_Z)).unzip();

    // Unweighted: survival estimates at different m share samples, so
    // per-point variances would overstate the information.
    let pts: Vec<(f64, f64)> = m_grid
        .iter()
        .zip(&counts)
        .filter(|&(&m, &k)| m >= lo && m <= hi && k > 0)
        .map(|(&m, &k)| ((m as f64).ln(), (k as f64 / n as f64).ln()))
        .collect();
    let fit_of = |p: &[(f64, f64)]| {
        let xs: Vec<f64> = p.iter().map(|q| q.0).collect();
        let ys: Vec<f64> = p.iter().map(|q| q.1).collect();
        linear_fit(&xs, &ys, None)
    };
    let fit = fit_of(&pts).ok_or_else(|| invalid("fewer than two populated grid points in the window"))?;
    let mid = pts.len() / 2;
    let half_slopes = match (fit_of(&pts[..=mid.min(pts.len() - 1)]), fit_of(&pts[mid..])) {
        (Some(a), Some(b)) => (-a.slope, -b.slope),
        _ => (-fit.slope, -fit.slope),
    };
    let spread = (half_slopes.0 - half_slopes.1).abs() / (-fit.slope).abs().max(1e-12);
    let poor_fit = fit.r_squared < 0.95 || spread > CURVATURE_TOL;
    let censored = sizes.iter().filter(|s| s.1).count();
    Ok(TailEstimate {
        m_grid: m_grid.to_vec(),
        phi_hat,
        ci_low,
        ci_high,
        slope: -fit.slope,
        stderr: fit.slope_stderr,
        r_squared: fit.r_squared,
        half_slopes,
        poor_fit,
        window,
        n_samples: n,
        censored_fraction: censored as f64 / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = log_grid(1, 1000, 5);
        assert_eq!((g[0], *g.last().unwrap()), (1, 1000));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn phi_at_one_is_one_and_monotone() {
        let m = PercolationModel::tree_critical(3).unwrap().with_size_cap(2000).with_seed(7);
        let grid = log_grid(1, 1000, 6);
        let t = tail_survey(&m, 20_000, &grid, (10, 1000)).unwrap();
        assert_eq!(t.phi_hat[0], 1.0);
        assert!(t.phi_hat.windows(2).all(|w| w[0] >= w[1]));
        assert!(t.ci_low.iter().zip(&t.phi_hat).all(|(l, p)| l <= p));
        assert!((t.slope - 0.5).abs() < 0.15, "slope {}", t.slope);
    }

    #[test]
    fn bad_windows() {
        let m = PercolationModel::tree_critical(3).unwrap().with_size_cap(100);
        let grid = [1, 10, 100];
        assert!(tail_survey(&m, 10, &grid, (5, 100)).is_err());
        assert!(tail_survey(&m, 10, &grid, (10, 1000)).is_err());
        assert!(tail_survey(&m, 0, &grid, (1, 100)).is_err());
        assert!(tail_survey(&m, 10, &[1, 10, 1000], (1, 10)).is_err());
    }

    #[test]
    fn subcritical_lattice_is_flagged() {
        let m = PercolationModel::square_lattice(0.3).unwrap().with_seed(2);
        let grid = log_grid(1, 100, 8);
        let t = tail_survey(&m, 40_000, &grid, (2, 100)).unwrap();
        assert!(t.poor_fit, "half slopes {:?}", t.half_slopes);
        assert!(t.slope > 1.0);
    }

    #[test]
    fn csv_layout() {
        let sizes = vec![(1, false), (3, false), (10, true)];
        let t = tail_from_sizes(&sizes, &[1, 2, 5, 10], (1, 10), 10).unwrap();
        assert_eq!(t.phi_hat, vec![1.0, 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("m,phi_hat,ci_low,ci_high\n1,1,"));
    }
}
