use crate::error::{Error, Result};
use crate::stats::linear_fit;

use super::campaign::AnnealedEstimate;

/// Points whose excess is below this many standard errors are left out of
/// the decay fit.
pub const FIT_SIGNIFICANCE: f64 = 5.0;

/// `P_t - κ ≈ c·t^{-exponent}` on `window`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub window: (f64, f64),
    pub stderr: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Weighted log-log fit of `ys` against `ts`, weights `(y/σ)²` so that each
/// point counts by the precision of `log y`. Points with `y <= 5σ` or outside
/// `window` are dropped.
pub fn fit_decay(ts: &[f64], ys: &[f64], std_errors: &[f64], window: (f64, f64)) -> Result<ExponentFit> {
    let mut xs = Vec::new();
    let mut ls = Vec::new();
    let mut ws = Vec::new();
    for ((&t, &y), &se) in ts.iter().zip(ys).zip(std_errors) {
        if t < window.0 || t > window.1 || !(y > FIT_SIGNIFICANCE * se) || y <= 0.0 {
            continue;
        }
        xs.push(t.ln());
        ls.push(y.ln());
        ws.push(if se > 0.0 { (y / se).powi(2) } else { 1.0 });
    }
    // exact data: fall back to equal weights
    let weights = if ws.iter().all(|&w| w == 1.0) { None } else { Some(ws.as_slice()) };
    let fit = linear_fit(&xs, &ls, weights).ok_or_else(|| {
        Error::InsufficientData(format!(
            "{} significant points in t-window [{}, {}], need 2",
            xs.len(),
            window.0,
            window.1
        ))
    })?;
    Ok(ExponentFit {
        exponent: -fit.slope,
        prefactor: fit.intercept.exp(),
        window,
        stderr: fit.slope_stderr,
        r_squared: fit.r_squared,
        n_points: fit.n,
    })
}

/// Decay exponent of the campaign excess `P_t - κ` over `window`.
pub fn fit_exponent(est: &AnnealedEstimate, window: (f64, f64)) -> Result<ExponentFit> {
    fit_decay(&est.t_grid, &est.excess_hat, &est.excess_std_error, window)
}
