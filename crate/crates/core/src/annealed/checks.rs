//! Statistical checks of annealed estimates against closed-form decay laws.

use crate::bounds::{planar_constant, BoundId, BoundReport, TailParams, BOUND_SLACK};
use crate::error::{invalid, Error, Result};
use crate::percolation::{Family, PercolationModel};

use super::campaign::{annealed_campaign, AnnealedEstimate, CampaignOptions};
use super::fit::ExponentFit;

/// Standard errors of slack in the one-sided annealed checks.
pub const STAT_SIGMAS: f64 = 3.0;

/// Standard errors allowed between the fixed-root and uniform-start estimates.
pub const MASS_TRANSPORT_SIGMAS: f64 = 4.0;

/// Below this r² an exponent fit is not judged.
pub const MIN_FIT_R_SQUARED: f64 = 0.9;

/// Tolerance added on both sides of the exponent brackets.
pub const BRACKET_TOL: f64 = 0.15;
pub const BRACKET_TOL_UPPER: f64 = 0.3;

/// Smallest time at which the planar lower decay law is claimed, `√288`.
pub fn planar_time_threshold() -> f64 {
    288f64.sqrt()
}

/// `C = 27δ(δ+2)`.
pub fn thm3_upper_constant(delta: usize) -> f64 {
    27.0 * (delta * (delta + 2)) as f64
}

/// `D = e^{-K}·(A/2)/(1 + (2B/A)^{1/b})` with `K = 12√2·δ`.
pub fn thm3_lower_constant(delta: usize, tail: &TailParams) -> f64 {
    let k = planar_constant(delta as f64);
    (-k).exp() * (tail.big_a / 2.0) / (1.0 + (2.0 * tail.big_b / tail.big_a).powf(1.0 / tail.b))
}

/// Exponent `2a(1+1/b)` of the planar lower decay law.
pub fn thm3_lower_exponent(tail: &TailParams) -> f64 {
    2.0 * tail.exponent()
}

/// `c = min{(d/4)(d²+d+8), 108d(d+1)}`.
pub fn kappa_sandwich_constant(d: usize) -> f64 {
    let d = d as f64;
    (d / 4.0 * (d * d + d + 8.0)).min(108.0 * d * (d + 1.0))
}

/// `P_t - κ <= 27δ(δ+2)·E[|C|^α]·t^{-(1+α)/2}` at every grid time, with
/// slack from the excess and moment standard errors. `b` is the tail decay
/// exponent; the moment only exists for `α < b`.
pub fn theorem3_upper_check(est: &AnnealedEstimate, delta: usize, alpha: f64, b: f64) -> Result<Vec<BoundReport>> {
    if !(alpha > 0.0) {
        return Err(invalid(format!("alpha must be positive, got {alpha}")));
    }
    if alpha >= b {
        return Err(invalid(format!("alpha {alpha} >= tail exponent {b}: moment may not exist")));
    }
    let c = thm3_upper_constant(delta);
    let (moment, moment_se) = est.size_moment(alpha);
    Ok(est
        .t_grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let decay = t.powf(-(1.0 + alpha) / 2.0);
            let slack = STAT_SIGMAS * (est.excess_std_error[i] + c * moment_se * decay) + BOUND_SLACK;
            BoundReport::check(
                BoundId::Thm3I,
                &[("t", t), ("delta", delta as f64), ("alpha", alpha), ("moment", moment), ("C", c)],
                est.excess_hat[i],
                c * moment * decay,
                slack,
            )
        })
        .collect())
}

/// `D·t^{-2a(1+1/b)} <= P_t - κ` on planar clusters for grid times above
/// `√288`. Reports carry the note `vacuous margin` when the bound sits below
/// the statistical resolution of the excess.
pub fn theorem3_lower_check(est: &AnnealedEstimate, delta: usize, tail: &TailParams) -> Result<Vec<BoundReport>> {
    if !est.model.family.is_planar() {
        return Err(Error::FamilyMismatch(format!(
            "planar lower decay law does not apply to {}",
            est.model.family.as_str()
        )));
    }
    let d = thm3_lower_constant(delta, tail);
    let e = thm3_lower_exponent(tail);
    let t0 = planar_time_threshold();
    Ok(est
        .t_grid
        .iter()
        .enumerate()
        .filter(|(_, &t)| t > t0)
        .map(|(i, &t)| {
            let bound = d * t.powf(-e);
            let se = est.excess_std_error[i];
            let r = BoundReport::check(
                BoundId::Thm3II,
                &[("t", t), ("delta", delta as f64), ("D", d), ("exponent", e)],
                bound,
                est.excess_hat[i],
                STAT_SIGMAS * se + BOUND_SLACK,
            );
            if bound < se.max(f64::EPSILON) {
                r.with_note("vacuous margin")
            } else {
                r
            }
        })
        .collect())
}

/// Accepted range of the excess decay exponent for a critical campaign.
pub fn corollary1_bracket(family: Family, alpha: f64) -> (f64, f64) {
    match family {
        Family::HomogeneousTree => (0.75 - BRACKET_TOL, 3.0 + BRACKET_TOL_UPPER),
        Family::SquareLattice => ((1.0 + alpha) / 2.0 - BRACKET_TOL, 1.0 + 1.0 / alpha + BRACKET_TOL_UPPER),
    }
}

/// Checks the fitted exponent against [`corollary1_bracket`]. The report's
/// `lhs` is the distance outside the bracket (negative inside).
pub fn corollary1_exponent_check(fit: &ExponentFit, family: Family, alpha: f64) -> Result<BoundReport> {
    if fit.r_squared < MIN_FIT_R_SQUARED {
        return Err(Error::FitUnreliable { r_squared: fit.r_squared });
    }
    let (lo, hi) = corollary1_bracket(family, alpha);
    let outside = (lo - fit.exponent).max(fit.exponent - hi);
    Ok(BoundReport::check(
        BoundId::Cor1Bracket,
        &[
            ("nu", fit.exponent),
            ("nu_stderr", fit.stderr),
            ("r_squared", fit.r_squared),
            ("lo", lo),
            ("hi", hi),
            ("t_min", fit.window.0),
            ("t_max", fit.window.1),
        ],
        outside,
        0.0,
        0.0,
    ))
}

/// Both sides of `P_t - c·χ/t <= κ <= P_t` at every grid time, for a
/// subcritical Z² campaign.
pub fn kappa_sandwich_check(est: &AnnealedEstimate, d: usize) -> Result<Vec<BoundReport>> {
    let m = &est.model;
    if !(m.family == Family::SquareLattice && m.is_subcritical()) {
        return Err(Error::FamilyMismatch(format!(
            "clusters-per-site sandwich needs subcritical Z², got {} at p={}",
            m.family.as_str(),
            m.p
        )));
    }
    let c = kappa_sandwich_constant(d);
    let mut out = Vec::new();
    for (i, &t) in est.t_grid.iter().enumerate() {
        let sigma = est.excess_std_error[i];
        let inputs = [("t", t), ("c", c), ("chi_hat", est.chi_hat), ("p_t_hat", est.p_t_hat[i])];
        out.push(BoundReport::check(
            BoundId::KappaSandwichUpper,
            &inputs,
            est.kappa_hat,
            est.p_t_hat[i],
            STAT_SIGMAS * sigma + BOUND_SLACK,
        ));
        out.push(BoundReport::check(
            BoundId::KappaSandwichLower,
            &inputs,
            est.excess_hat[i],
            c * est.chi_hat / t,
            STAT_SIGMAS * (sigma + c * est.chi_std_error / t) + BOUND_SLACK,
        ));
    }
    Ok(out)
}

/// Fixed-root against uniform-start estimates from one campaign run with
/// `fixed_root = true`. The std error is that of the paired difference.
pub fn mass_transport_reports(est: &AnnealedEstimate) -> Result<Vec<BoundReport>> {
    let (Some(root), Some(diff), Some(se)) =
        (&est.root_p_t_hat, &est.root_minus_uniform, &est.root_minus_uniform_std_error)
    else {
        return Err(invalid("campaign was run without fixed-root estimates"));
    };
    Ok(est
        .t_grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            BoundReport::check(
                BoundId::MassTransport,
                &[("t", t), ("root", root[i]), ("uniform", est.p_t_hat[i]), ("se", se[i])],
                diff[i].abs(),
                MASS_TRANSPORT_SIGMAS * se[i],
                BOUND_SLACK,
            )
        })
        .collect())
}

/// Runs a fixed-root campaign and compares both estimators at `times`.
pub fn mass_transport_check(
    model: &PercolationModel,
    times: &[f64],
    n_samples: u64,
    opts: &CampaignOptions,
) -> Result<Vec<BoundReport>> {
    let opts = CampaignOptions { fixed_root: true, ..*opts };
    mass_transport_reports(&annealed_campaign(model, times, n_samples, &opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annealed::fit::fit_decay;

    #[test]
    fn constants() {
        assert_eq!(thm3_upper_constant(4), 648.0);
        assert_eq!(thm3_upper_constant(3), 405.0);
        assert_eq!(kappa_sandwich_constant(2), 7.0);
        assert_eq!(kappa_sandwich_constant(3), 15.0);
        let tail = TailParams::new(0.5, 1.0, 0.5, 0.5).unwrap();
        assert!((thm3_lower_exponent(&tail) - 3.0).abs() < 1e-15);
        let k = planar_constant(4.0);
        assert!((k - 48.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(thm3_lower_constant(4, &tail).log10() < -29.0);
    }

    #[test]
    fn brackets() {
        let (lo, hi) = corollary1_bracket(Family::HomogeneousTree, 0.1);
        assert!((lo - 0.6).abs() < 1e-12 && (hi - 3.3).abs() < 1e-12);
        let (lo, hi) = corollary1_bracket(Family::SquareLattice, 0.1);
        assert!((lo - 0.4).abs() < 1e-12 && (hi - 11.3).abs() < 1e-12);
    }

    #[test]
    fn fit_gates() {
        let ts = [10.0, 100.0, 1000.0];
        let good = fit_decay(&ts, &[0.1, 0.01, 0.001], &[0.0; 3], (10.0, 1000.0)).unwrap();
        let r = corollary1_exponent_check(&good, Family::HomogeneousTree, 0.1).unwrap();
        assert!(r.satisfied);
        let bad = fit_decay(&ts, &[0.1, 0.001, 0.05], &[0.0; 3], (10.0, 1000.0)).unwrap();
        assert!(matches!(
            corollary1_exponent_check(&bad, Family::HomogeneousTree, 0.1),
            Err(Error::FitUnreliable { .. })
        ));
    }

    #[test]
    fn family_gates() {
        let tree = PercolationModel::tree_critical(3).unwrap().with_size_cap(200);
        let est = annealed_campaign(&tree, &[20.0], 20, &CampaignOptions::default()).unwrap();
        let tail = TailParams::new(0.5, 1.0, 0.5, 0.5).unwrap();
        assert!(matches!(theorem3_lower_check(&est, 3, &tail), Err(Error::FamilyMismatch(_))));
        assert!(matches!(kappa_sandwich_check(&est, 2), Err(Error::FamilyMismatch(_))));
        assert!(theorem3_upper_check(&est, 3, 0.5, 0.5).is_err());
        assert!(mass_transport_reports(&est).is_err());
    }

    #[test]
    fn p_zero_mass_transport() {
        let m = PercolationModel::square_lattice(0.0).unwrap();
        let r = mass_transport_check(&m, &[2.0], 10, &CampaignOptions::default()).unwrap();
        assert_eq!((r[0].input("root"), r[0].input("uniform")), (Some(1.0), Some(1.0)));
        assert!(r[0].satisfied);
    }

    #[test]
    fn planar_lower_skips_small_times() {
        let m = PercolationModel::square_lattice(0.3).unwrap().with_seed(1);
        let est = annealed_campaign(&m, &[1.0, 10.0, 20.0, 100.0], 500, &CampaignOptions::default()).unwrap();
        let tail = TailParams::new(0.5, 1.0, 0.5, 0.5).unwrap();
        let r = theorem3_lower_check(&est, 4, &tail).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.satisfied && x.note.as_deref() == Some("vacuous margin")));
        assert!(kappa_sandwich_check(&est, 2).unwrap().iter().all(|x| x.satisfied));
    }
}
