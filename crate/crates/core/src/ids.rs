//! Empirical integrated density of states of `I - P` on percolated Z² boxes.
//!
//! The box `{-L+1..L}²` has free boundary and every vertex keeps the ambient
//! normalization `δ = 4`, so `I - P` is block diagonal over the open clusters
//! and each block is diagonalized on its own.

use std::io::Write;

use rayon::prelude::*;

use crate::annealed::AnnealedEstimate;
use crate::bounds::{BoundId, BoundReport, BOUND_SLACK};
use crate::error::{invalid, Error, Result};
use crate::percolation::BoxConfiguration;
use crate::rng::{derive_seed, substream};
use crate::spectral::{exact_spectrum_capped, DrwKernel};
use crate::stats::{linear_fit, RunningStats};

const IDS_SALT: u64 = 0x0069_6473;
const LATTICE_DELTA: usize = 4;

/// Eigenvalues below this count as zero modes.
pub const ZERO_MODE_TOL: f64 = 1e-9;

/// Default small-energy window for the slope fit.
pub const DEFAULT_E_WINDOW: (f64, f64) = (1e-3, 1e-1);

/// Pooled eigenvalues needed inside the fit window.
pub const MIN_WINDOW_EIGENVALUES: usize = 200;

/// Relative part of the Laplace-transform tolerance.
pub const LAPLACE_REL_TOL: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct IdsCurve {
    pub p: f64,
    pub half_width: usize,
    pub n_realizations: u64,
    /// Sites per realization, `(2L)²`.
    pub sites: usize,
    /// Pooled eigenvalues of `I - P` over all realizations, ascending.
    pub energies: Vec<f64>,
    /// Eigenvalues below [`ZERO_MODE_TOL`], per realization.
    pub zero_modes: Vec<usize>,
    /// Union-find cluster count, per realization.
    pub components: Vec<usize>,
    /// Per-realization eigenvalues, kept for per-realization statistics.
    realization_energies: Vec<Vec<f64>>,
}

impl IdsCurve {
    /// `N_Λ(E)`: fraction of pooled eigenvalues `<= E`.
    pub fn n_of_e(&self, e: f64) -> f64 {
        self.energies.partition_point(|&x| x <= e) as f64 / self.energies.len() as f64
    }

    /// Eigenvalue sum `(1/|Λ|) Σ e^{-tE}` averaged over realizations, with the
    /// standard error across realizations.
    pub fn laplace_transform(&self, t: f64) -> (f64, f64) {
        let s: RunningStats = self
            .realization_energies
            .iter()
            .map(|es| es.iter().map(|e| (-t * e).exp()).sum::<f64>() / es.len() as f64)
            .collect();
        (s.mean(), s.std_error())
    }

    /// Realizations where zero-mode multiplicity differs from the cluster count.
    pub fn zero_mode_mismatches(&self) -> usize {
        self.zero_modes.iter().zip(&self.components).filter(|(a, b)| a != b).count()
    }

    pub fn zero_mode_reports(&self) -> Vec<BoundReport> {
        self.zero_modes
            .iter()
            .zip(&self.components)
            .enumerate()
            .map(|(i, (&z, &c))| {
                BoundReport::check(
                    BoundId::ZeroModes,
                    &[("realization", i as f64), ("zero_modes", z as f64), ("components", c as f64)],
                    (z as f64 - c as f64).abs(),
                    0.0,
                    0.0,
                )
            })
            .collect()
    }

    /// Step points `(E, N(E))` at every distinct eigenvalue.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["E", "N_of_E"])?;
        let total = self.energies.len() as f64;
        for (i, &e) in self.energies.iter().enumerate() {
            if self.energies.get(i + 1) == Some(&e) {
                continue;
            }
            w.write_record([e.to_string(), ((i + 1) as f64 / total).to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn realization(p: f64, half_width: usize, seed: u64, i: u64, cap: usize) -> Result<(Vec<f64>, usize, usize)> {
    let b = BoxConfiguration::sample(half_width, p, &mut substream(seed, i))?;
    let comps = b.components();
    let mut energies = Vec::with_capacity(b.sites());
    for g in comps.iter() {
        if g.n() == 1 {
            energies.push(0.0);
            continue;
        }
        if g.n() > cap {
            return Err(Error::SizeExceeded { n: g.n(), cap });
        }
        let s = exact_spectrum_capped(&DrwKernel::new(g.clone(), LATTICE_DELTA)?, cap)?;
        energies.extend(s.betas().iter().map(|b| (1.0 - b).max(0.0)));
    }
    let zero = energies.iter().filter(|&&e| e < ZERO_MODE_TOL).count();
    energies.sort_by(f64::total_cmp);
    Ok((energies, zero, comps.len()))
}

/// Pools the spectra of `n_realizations` boxes of half-width `half_width`.
/// `cap` bounds the largest single cluster, since clusters are diagonalized
/// separately.
pub fn ids_curve(p: f64, half_width: usize, n_realizations: u64, seed: u64, cap: usize) -> Result<IdsCurve> {
    if half_width == 0 {
        return Err(invalid("box half-width must be >= 1"));
    }
    if n_realizations == 0 {
        return Err(invalid("n_realizations must be >= 1"));
    }
    let stream_seed = derive_seed(seed, IDS_SALT);
    let runs: Vec<(Vec<f64>, usize, usize)> = (0..n_realizations)
        .into_par_iter()
        .map(|i| realization(p, half_width, stream_seed, i, cap))
        .collect::<Result<_>>()?;
    let mut energies: Vec<f64> = runs.iter().flat_map(|r| r.0.iter().copied()).collect();
    energies.sort_by(f64::total_cmp);
    let zero_modes = runs.iter().map(|r| r.1).collect();
    let components = runs.iter().map(|r| r.2).collect();
    Ok(IdsCurve {
        p,
        half_width,
        n_realizations,
        sites: 4 * half_width * half_width,
        energies,
        zero_modes,
        components,
        realization_energies: runs.into_iter().map(|r| r.0).collect(),
    })
}

/// Compares the eigenvalue Laplace sum with the fixed-root annealed estimate
/// at each campaign time: `|L(t) - P_t| <= 5%·P_t + 4σ`.
pub fn laplace_consistency(curve: &IdsCurve, est: &AnnealedEstimate) -> Result<Vec<BoundReport>> {
    if (curve.p - est.model.p).abs() > 1e-12 {
        return Err(invalid(format!("curve at p={} but campaign at p={}", curve.p, est.model.p)));
    }
    let (Some(root), Some(root_se)) = (&est.root_p_t_hat, &est.root_std_error) else {
        return Err(invalid("campaign was run without fixed-root estimates"));
    };
    Ok(est
        .t_grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let (lap, lap_se) = curve.laplace_transform(t);
            let sigma = (lap_se.powi(2) + root_se[i].powi(2)).sqrt();
            BoundReport::check(
                BoundId::LaplaceIds,
                &[("t", t), ("laplace", lap), ("p_t_root", root[i]), ("sigma", sigma), ("L", curve.half_width as f64)],
                (lap - root[i]).abs(),
                LAPLACE_REL_TOL * root[i] + 4.0 * sigma,
                BOUND_SLACK,
            )
        })
        .collect())
}

/// Log-log slope of `f(E)` on `points` log-spaced energies in `window`,
/// skipping points where `f` vanishes.
pub fn window_slope(f: impl Fn(f64) -> f64, window: (f64, f64), points: usize) -> Result<(f64, f64)> {
    let (lo, hi) = window;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for i in 0..points {
        let e = lo * (hi / lo).powf(i as f64 / (points - 1).max(1) as f64);
        let y = f(e);
        if y > 0.0 {
            xs.push(e.ln());
            ys.push(y.ln());
        }
    }
    let fit = linear_fit(&xs, &ys, None)
        .ok_or_else(|| Error::InsufficientData("fewer than two populated energies in the window".into()))?;
    Ok((fit.slope, fit.r_squared))
}

/// Accepted slopes of `N(E) - N(0)` near zero:
/// `[(1+α)/2 - 0.2, (1+1/α)(1 + 1/ln(1/E_min))]`.
pub fn theorem2_bracket(alpha: f64, e_min: f64) -> (f64, f64) {
    ((1.0 + alpha) / 2.0 - 0.2, (1.0 + 1.0 / alpha) * (1.0 + 1.0 / (1.0 / e_min).ln()))
}

/// Fits the small-energy slope of `N_Λ(E) - N_Λ(0)` on `window` and checks it
/// against [`theorem2_bracket`]. `lhs` is the distance outside the bracket.
pub fn theorem2_window_check(curve: &IdsCurve, alpha: f64, window: (f64, f64)) -> Result<BoundReport> {
    if !(alpha > 0.0 && alpha < 0.2) {
        return Err(invalid(format!("alpha must lie in (0, 1/5), got {alpha}")));
    }
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) {
        return Err(invalid(format!("bad energy window [{lo}, {hi}]")));
    }
    let inside = curve.energies.partition_point(|&e| e <= hi) - curve.energies.partition_point(|&e| e < lo);
    if inside < MIN_WINDOW_EIGENVALUES {
        return Err(Error::InsufficientData(format!(
            "{inside} eigenvalues in [{lo}, {hi}], need {MIN_WINDOW_EIGENVALUES}"
        )));
    }
    let n0 = curve.n_of_e(ZERO_MODE_TOL);
    let (slope, r2) = window_slope(|e| curve.n_of_e(e) - n0, window, 20)?;
    let (blo, bhi) = theorem2_bracket(alpha, lo);
    Ok(BoundReport::check(
        BoundId::Thm2Window,
        &[
            ("slope", slope),
            ("r_squared", r2),
            ("lo", blo),
            ("hi", bhi),
            ("E_min", lo),
            ("E_max", hi),
            ("eigenvalues_in_window", inside as f64),
        ],
        (blo - slope).max(slope - bhi),
        0.0,
        0.0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_zero_all_zero_modes() {
        let c = ids_curve(0.0, 3, 2, 1, 100).unwrap();
        assert!(c.energies.iter().all(|&e| e == 0.0));
        assert_eq!(c.n_of_e(0.0), 1.0);
        assert_eq!(c.laplace_transform(5.0), (1.0, 0.0));
        assert_eq!(c.zero_mode_mismatches(), 0);
    }

    #[test]
    fn p_one_two_by_two() {
        // 4-cycle with δ = 4: I - P has eigenvalues {0, 1/2, 1/2, 1}
        let c = ids_curve(1.0, 1, 1, 0, 100).unwrap();
        let want = [0.0, 0.5, 0.5, 1.0];
        for (a, b) in c.energies.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(c.n_of_e(0.6), 0.75);
        assert_eq!(c.n_of_e(2.0), 1.0);
    }

    #[test]
    fn curve_invariants() {
        let c = ids_curve(0.5, 6, 4, 9, 200).unwrap();
        assert_eq!(c.energies.len(), 4 * c.sites);
        assert!(c.energies.iter().all(|&e| (0.0..=2.0).contains(&e)));
        assert_eq!(c.zero_mode_mismatches(), 0);
        assert!(c.n_of_e(0.0) >= 1.0 / c.sites as f64);
        let (a, _) = c.laplace_transform(1.0);
        let (b, _) = c.laplace_transform(10.0);
        assert!(b <= a && a <= 1.0);
        assert!((c.laplace_transform(0.0).0 - 1.0).abs() < 1e-12);
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("E,N_of_E\n"));
        assert!(text.trim_end().ends_with(",1"));
    }

    #[test]
    fn planted_slope() {
        let (s, r2) = window_slope(|e| e.powf(0.7), DEFAULT_E_WINDOW, 20).unwrap();
        assert!((s - 0.7).abs() < 0.02 && r2 > 0.999);
    }

    #[test]
    fn bracket_and_errors() {
        let (lo, hi) = theorem2_bracket(0.1, 1e-3);
        assert!((lo - 0.35).abs() < 1e-12);
        assert!(hi > 11.0);
        let c = ids_curve(0.5, 2, 1, 0, 100).unwrap();
        assert!(matches!(theorem2_window_check(&c, 0.1, DEFAULT_E_WINDOW), Err(Error::InsufficientData(_))));
        assert!(theorem2_window_check(&c, 0.3, DEFAULT_E_WINDOW).is_err());
        assert!(matches!(ids_curve(1.0, 4, 1, 0, 10), Err(Error::SizeExceeded { .. })));
    }
}
