use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::rng::substream;

use super::chebyshev::{chebyshev_moments, default_degree, HeatChebyshev};
use super::eigen::{exact_spectrum_capped, return_probability, DEFAULT_DENSE_CAP};
use super::kernel::DrwKernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceMethod {
    Exact,
    Stochastic,
}

/// Estimate of the normalised heat trace `(1/N) Tr e^{-t(I-P)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEstimate {
    pub t: f64,
    pub value: f64,
    pub std_error: f64,
    pub method: TraceMethod,
    pub probes: usize,
    pub cheb_degree: usize,
    pub truncation_bound: f64,
}

/// Exact normalised trace from a dense eigendecomposition.
pub fn exact_heat_trace(k: &DrwKernel, t: f64) -> Result<TraceEstimate> {
    let s = exact_spectrum_capped(k, DEFAULT_DENSE_CAP)?;
    Ok(TraceEstimate {
        t,
        value: return_probability(&s, t)?,
        std_error: 0.0,
        method: TraceMethod::Exact,
        probes: 0,
        cheb_degree: 0,
        truncation_bound: 0.0,
    })
}

/// Hutchinson estimate with Rademacher probes and a Chebyshev expansion of
/// the heat function. Probe `i` draws from substream `i` of `seed`, so the
/// result is independent of the rayon pool size.
pub fn stochastic_heat_trace(
    k: &DrwKernel,
    t: f64,
    probes: usize,
    cheb_degree: usize,
    seed: u64,
) -> Result<TraceEstimate> {
    Ok(stochastic_heat_traces(k, &[t], probes, Some(cheb_degree), seed)?.remove(0))
}

/// Same as [`stochastic_heat_trace`] for several times at once. Each probe's
/// Chebyshev moments are computed once up to the largest degree and reused.
/// `cheb_degree = None` picks [`default_degree`] per time.
pub fn stochastic_heat_traces(
    k: &DrwKernel,
    times: &[f64],
    probes: usize,
    cheb_degree: Option<usize>,
    seed: u64,
) -> Result<Vec<TraceEstimate>> {
    if probes == 0 {
        return Err(invalid("need at least one probe"));
    }
    if cheb_degree == Some(0) {
        return Err(invalid("Chebyshev degree must be at least 1"));
    }
    if let Some(&t) = times.iter().find(|t| !(**t >= 0.0) || !t.is_finite()) {
        return Err(invalid(format!("time must be finite and >= 0, got {t}")));
    }
    let expansions: Vec<HeatChebyshev> =
        times.iter().map(|&t| HeatChebyshev::new(t, cheb_degree.unwrap_or_else(|| default_degree(t)))).collect();
    let max_degree = expansions.iter().map(HeatChebyshev::degree).max().unwrap_or(0);
    let n = k.n();
    let op = k.operator();

    let per_probe: Vec<Vec<f64>> = (0..probes)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let z: Vec<f64> = (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
            let moments = chebyshev_moments(op, &z, max_degree);
            expansions.iter().map(|e| e.contract(&moments) / n as f64).collect()
        })
        .collect();

    Ok(expansions
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let samples: Vec<f64> = per_probe.iter().map(|p| p[j]).collect();
            let (mean, se) = mean_and_std_error(&samples);
            TraceEstimate {
                t: e.t,
                value: mean,
                std_error: se,
                method: TraceMethod::Stochastic,
                probes,
                cheb_degree: e.degree(),
                truncation_bound: e.truncation_bound,
            }
        })
        .collect())
}

/// Heat-kernel diagonal `(e^{-t(I-P)})_{root,root}` for each time, by the
/// Chebyshev series applied to the indicator of `root`. Returns values and
/// truncation bounds.
pub fn root_heat_diagonal(k: &DrwKernel, root: usize, times: &[f64]) -> Result<Vec<(f64, f64)>> {
    if root >= k.n() {
        return Err(invalid(format!("root {root} out of range for n={}", k.n())));
    }
    let expansions: Vec<HeatChebyshev> = times.iter().map(|&t| HeatChebyshev::new(t, default_degree(t))).collect();
    let max_degree = expansions.iter().map(HeatChebyshev::degree).max().unwrap_or(0);
    let mut e = vec![0.0; k.n()];
    e[root] = 1.0;
    let moments = chebyshev_moments(k.operator(), &e, max_degree);
    Ok(expansions.iter().map(|x| (x.contract(&moments), x.truncation_bound)).collect())
}

pub(crate) fn mean_and_std_error(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
