use std::sync::Once;

use faer::{Mat, Par, Side};

use crate::error::{invalid, Error, Result};

use super::kernel::DrwKernel;
use super::operator::SymOperator;

/// Default vertex cap for dense eigendecomposition.
pub const DEFAULT_DENSE_CAP: usize = 3000;

/// Tolerance used when deciding whether an eigenvalue equals 1.
pub const UNIT_TOL: f64 = 1e-9;

/// Eigenvalues of a symmetric stochastic kernel, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    betas: Vec<f64>,
    delta: Option<usize>,
}

impl Spectrum {
    /// Sorts `betas` descending.
    pub fn from_eigenvalues(mut betas: Vec<f64>, delta: Option<usize>) -> Self {
        betas.sort_by(|a, b| b.total_cmp(a));
        Spectrum { betas, delta }
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn n(&self) -> usize {
        self.betas.len()
    }

    pub fn delta(&self) -> Option<usize> {
        self.delta
    }

    pub fn beta2(&self) -> Option<f64> {
        self.betas.get(1).copied()
    }

    /// Number of eigenvalues within [`UNIT_TOL`] of 1 (one per component).
    pub fn unit_multiplicity(&self) -> usize {
        self.betas.iter().take_while(|&&b| b >= 1.0 - UNIT_TOL).count()
    }
}

/// A spectrum together with the squared eigenvector weights at one vertex,
/// `w_j = v_j(root)^2`, so that `(e^{-t(I-P)})_{root,root} = Σ_j w_j e^{-t(1-β_j)}`.
#[derive(Debug, Clone)]
pub struct RootedSpectrum {
    pub spectrum: Spectrum,
    pub root_weights: Vec<f64>,
}

impl RootedSpectrum {
    pub fn root_return_probability(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.spectrum.betas.iter().zip(&self.root_weights).map(|(b, w)| w * (-t * (1.0 - b)).exp()).sum())
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeExceeded { n, cap });
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(invalid(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// Dense copy of `op` for faer. faer's default splits work by the size of
/// the current rayon pool, which changes rounding; sequential solves keep
/// results independent of the worker count. Callers parallelize over graphs.
fn dense(op: &SymOperator) -> Mat<f64> {
    static SEQUENTIAL: Once = Once::new();
    SEQUENTIAL.call_once(|| faer::set_global_parallelism(Par::Seq));
    op.to_dense()
}

/// All eigenvalues of a symmetric operator by dense decomposition.
pub fn operator_eigenvalues(op: &SymOperator, cap: usize) -> Result<Vec<f64>> {
    let n = op.n();
    check_cap(n, cap)?;
    if n == 1 {
        return Ok(vec![op.diag()[0]]);
    }
    dense(op).self_adjoint_eigenvalues(Side::Lower).map_err(|e| Error::Eigensolver(format!("{e:?}")))
}

pub fn exact_spectrum(k: &DrwKernel) -> Result<Spectrum> {
    exact_spectrum_capped(k, DEFAULT_DENSE_CAP)
}

pub fn exact_spectrum_capped(k: &DrwKernel, cap: usize) -> Result<Spectrum> {
    let ev = operator_eigenvalues(k.operator(), cap)?;
    Ok(Spectrum::from_eigenvalues(ev, Some(k.delta())))
}

/// Spectrum plus eigenvector weights at `root`.
pub fn rooted_spectrum(k: &DrwKernel, root: usize, cap: usize) -> Result<RootedSpectrum> {
    let n = k.n();
    if root >= n {
        return Err(invalid(format!("root {root} out of range for n={n}")));
    }
    check_cap(n, cap)?;
    if n == 1 {
        return Ok(RootedSpectrum {
            spectrum: Spectrum::from_eigenvalues(vec![k.operator().diag()[0]], Some(k.delta())),
            root_weights: vec![1.0],
        });
    }
    let evd = dense(k.operator()).self_adjoint_eigen(Side::Lower).map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let vals = evd.S().column_vector();
    let u = evd.U();
    // faer returns ascending order; flip to descending
    let betas: Vec<f64> = (0..n).rev().map(|j| vals[j]).collect();
    let root_weights = (0..n).rev().map(|j| u[(root, j)] * u[(root, j)]).collect();
    Ok(RootedSpectrum { spectrum: Spectrum { betas, delta: Some(k.delta()) }, root_weights })
}

/// Largest residual `‖P v − β v‖` over all eigenpairs.
pub fn max_eigen_residual(op: &SymOperator, cap: usize) -> Result<f64> {
    let n = op.n();
    check_cap(n, cap)?;
    let evd = dense(op).self_adjoint_eigen(Side::Lower).map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let vals = evd.S().column_vector();
    let u = evd.U();
    let mut worst = 0.0f64;
    let mut y = vec![0.0; n];
    for j in 0..n {
        let v: Vec<f64> = (0..n).map(|i| u[(i, j)]).collect();
        op.matvec(&v, &mut y);
        let r = y.iter().zip(&v).map(|(a, b)| (a - vals[j] * b).powi(2)).sum::<f64>().sqrt();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Uniform-start return probability `(1/N) Σ_j e^{-t(1-β_j)}`.
pub fn return_probability(s: &Spectrum, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(heat_trace(&s.betas, t) / s.n() as f64)
}

/// `Σ_j e^{-t(1-β_j)}` without validation.
pub(crate) fn heat_trace(betas: &[f64], t: f64) -> f64 {
    betas.iter().map(|b| (-t * (1.0 - b)).exp()).sum()
}

/// Spectral gap `1 - β_2`.
pub fn spectral_gap(s: &Spectrum) -> Result<f64> {
    let beta2 = s.beta2().ok_or_else(|| Error::DegenerateSpectrum("single-vertex graph has no gap".into()))?;
    if beta2 >= 1.0 - UNIT_TOL {
        return Err(Error::DegenerateSpectrum(format!("second eigenvalue {beta2} equals 1; graph is disconnected")));
    }
    Ok(1.0 - beta2)
}
