//! Upper and lower bounds on the uniform-start return probability of the
//! delayed random walk on a finite connected graph.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::spectral::{return_probability, spectral_gap, Spectrum};

use super::report::{BoundId, BoundReport, BOUND_SLACK};

/// Size above which the planar lower bound applies (`N > 288`).
pub const PLANAR_MIN_VERTICES: usize = 289;

fn check_upper_args(n: usize, delta: f64, beta2: f64, k: usize, t: f64) -> Result<()> {
    if n < 3 {
        return Err(invalid(format!("need N >= 3, got {n}")));
    }
    if k < 1 || k > n - 2 {
        return Err(invalid(format!("k = {k} outside 1..={}", n - 2)));
    }
    if !(t > 0.0) {
        return Err(invalid(format!("t must be positive, got {t}")));
    }
    if !(-1.0..1.0).contains(&beta2) {
        return Err(invalid(format!("beta2 = {beta2} outside [-1, 1)")));
    }
    if !(delta >= 1.0) {
        return Err(invalid(format!("delta must be >= 1, got {delta}")));
    }
    Ok(())
}

/// Shared first two terms and the Gaussian damping factor of bounds i and ii.
fn common_terms(n: usize, delta: f64, beta2: f64, k: usize, t: f64) -> (f64, f64) {
    let (nf, kf) = (n as f64, k as f64);
    let head = 1.0 / nf + delta * kf / nf * (-t * (1.0 - beta2)).exp();
    let damping = (-32.0 * t * kf * kf / ((delta + 2.0) * delta * delta * nf * nf)).exp();
    (head, damping)
}

/// `1/N + δ(k/N)e^{-t(1-β₂)} + √(π/32)·δ√(δ+2)/√t · exp(-32tk²/((δ+2)δ²N²))`
pub fn thm1_upper_i(n: usize, delta: f64, beta2: f64, k: usize, t: f64) -> Result<f64> {
    check_upper_args(n, delta, beta2, k, t)?;
    let (head, damping) = common_terms(n, delta, beta2, k, t);
    Ok(head + (PI / 32.0).sqrt() * delta * (delta + 2.0).sqrt() / t.sqrt() * damping)
}

/// `1/N + δ(k/N)e^{-t(1-β₂)} + δ²(δ+2)/(16t)·(N/k) · exp(-32tk²/((δ+2)δ²N²))`
pub fn thm1_upper_ii(n: usize, delta: f64, beta2: f64, k: usize, t: f64) -> Result<f64> {
    check_upper_args(n, delta, beta2, k, t)?;
    let (head, damping) = common_terms(n, delta, beta2, k, t);
    Ok(head + delta * delta * (delta + 2.0) / (16.0 * t) * (n as f64 / k as f64) * damping)
}

/// `K = 12√2·δ`.
pub fn planar_constant(delta: f64) -> f64 {
    12.0 * 2f64.sqrt() * delta
}

/// `1/N + e^{-tK/√N}/N` for planar graphs with `N > 288`.
pub fn thm1_lower_planar(n: usize, delta: f64, t: f64) -> Result<f64> {
    if n < PLANAR_MIN_VERTICES {
        return Err(Error::PreconditionViolated(format!("planar lower bound needs N > 288, got {n}")));
    }
    if !(t >= 0.0) {
        return Err(invalid(format!("t must be >= 0, got {t}")));
    }
    let nf = n as f64;
    Ok((1.0 + (-t * planar_constant(delta) / nf.sqrt()).exp()) / nf)
}

/// Times used by the exhaustive small-graph sweep.
pub const SWEEP_TIMES: [f64; 7] = [0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0];

/// Checks bounds i and ii for every admissible `k` and every `t` against the
/// exact return probability of a connected graph's spectrum.
pub fn thm1_upper_sweep(s: &Spectrum, delta: f64, times: &[f64]) -> Result<Vec<BoundReport>> {
    let n = s.n();
    let beta2 = 1.0 - spectral_gap(s)?;
    let mut reports = Vec::with_capacity(2 * times.len() * n.saturating_sub(2));
    for &t in times {
        let exact = return_probability(s, t)?;
        for k in 1..=n - 2 {
            let inputs = [("N", n as f64), ("delta", delta), ("beta2", beta2), ("k", k as f64), ("t", t)];
            let bi = thm1_upper_i(n, delta, beta2, k, t)?;
            let bii = thm1_upper_ii(n, delta, beta2, k, t)?;
            reports.push(BoundReport::check(BoundId::Thm1I, &inputs, exact, bi, BOUND_SLACK));
            reports.push(BoundReport::check(BoundId::Thm1II, &inputs, exact, bii, BOUND_SLACK));
        }
    }
    Ok(reports)
}

/// Planar lower bound through the gap: `1 - β₂ <= K/√N`, plus the pointwise
/// form `P_t >= 1/N + e^{-tK/√N}/N` on the given times. The pointwise form
/// follows from the gap form because `P_t >= (1 + e^{-t(1-β₂)})/N`.
pub fn thm1_lower_check(s: &Spectrum, delta: f64, times: &[f64]) -> Result<Vec<BoundReport>> {
    let n = s.n();
    let gap = spectral_gap(s)?;
    let k_over_root_n = planar_constant(delta) / (n as f64).sqrt();
    // the check needs N > 288 in any case
    thm1_lower_planar(n, delta, 0.0)?;
    let mut reports = vec![BoundReport::check(
        BoundId::Thm1III,
        &[("N", n as f64), ("delta", delta), ("gap", gap)],
        gap,
        k_over_root_n,
        BOUND_SLACK,
    )
    .with_note("gap_form")];
    for &t in times {
        let lower = thm1_lower_planar(n, delta, t)?;
        let exact = return_probability(s, t)?;
        reports.push(
            BoundReport::check(
                BoundId::Thm1III,
                &[("N", n as f64), ("delta", delta), ("t", t)],
                lower,
                exact,
                BOUND_SLACK,
            )
            .with_note("pointwise"),
        );
    }
    Ok(reports)
}

/// `4/(δN²)`, the path-graph lower bound on the spectral gap.
pub fn poincare_path_gap(n: usize, delta: f64) -> f64 {
    4.0 / (delta * (n * n) as f64)
}
