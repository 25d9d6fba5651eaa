use rayon::prelude::*;

use crate::bounds::{BoundId, BoundReport, BOUND_SLACK};
use crate::error::{invalid, Error, Result};
use crate::percolation::{BoxConfiguration, Family, PercolationModel};
use crate::rng::{derive_seed, substream};
use crate::stats::RunningStats;

use super::campaign::AnnealedEstimate;

const BOX_SALT: u64 = 0x0062_6f78;

/// Seed family of box realizations, kept apart from cluster streams.
pub fn box_seed(seed: u64) -> u64 {
    derive_seed(seed, BOX_SALT)
}

/// Clusters per site on the box `{-L+1..L}²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxCount {
    pub kappa: f64,
    pub std_error: f64,
    pub half_width: usize,
    pub n_realizations: u64,
}

/// Mean over `n_realizations` of `M/|Λ|`, the number of open clusters per
/// site with free boundary. The boundary cuts clusters, so the count is
/// biased upward by `O(p/L)`.
pub fn grimmett_kappa_boxcount(model: &PercolationModel, half_width: usize, n_realizations: u64) -> Result<BoxCount> {
    if model.family != Family::SquareLattice {
        return Err(Error::FamilyMismatch("box component count is defined for Z² only".into()));
    }
    if n_realizations == 0 {
        return Err(invalid("n_realizations must be >= 1"));
    }
    let seed = box_seed(model.seed);
    let per_site: Vec<f64> = (0..n_realizations)
        .into_par_iter()
        .map(|i| {
            let b = BoxConfiguration::sample(half_width, model.p, &mut substream(seed, i))?;
            Ok(b.component_count() as f64 / b.sites() as f64)
        })
        .collect::<Result<_>>()?;
    let s: RunningStats = per_site.into_iter().collect();
    Ok(BoxCount { kappa: s.mean(), std_error: s.std_error(), half_width, n_realizations })
}

/// `|κ̂_cluster - κ̂_box| <= 3·√(σ₁² + σ₂²)`.
pub fn kappa_agreement(est: &AnnealedEstimate, boxed: &BoxCount) -> BoundReport {
    let se = (est.kappa_std_error.powi(2) + boxed.std_error.powi(2)).sqrt();
    BoundReport::check(
        BoundId::KappaBoxAgreement,
        &[("kappa_cluster", est.kappa_hat), ("kappa_box", boxed.kappa), ("L", boxed.half_width as f64), ("se", se)],
        (est.kappa_hat - boxed.kappa).abs(),
        3.0 * se,
        BOUND_SLACK,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        let m = PercolationModel::square_lattice(0.0).unwrap();
        assert_eq!(grimmett_kappa_boxcount(&m, 8, 3).unwrap().kappa, 1.0);
        let m = PercolationModel::square_lattice(1.0).unwrap();
        assert_eq!(grimmett_kappa_boxcount(&m, 8, 2).unwrap().kappa, 1.0 / 256.0);
        let t = PercolationModel::tree_critical(3).unwrap();
        assert!(grimmett_kappa_boxcount(&t, 8, 2).is_err());
    }
}
