//! Cosine-sum estimates and the heavy-tail inverse-moment bound.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

fn check_it_args(k: usize, n: usize, t: f64) -> Result<()> {
    if n <= 3 {
        return Err(invalid(format!("need N > 3, got {n}")));
    }
    if k < 1 || k > n - 2 {
        return Err(invalid(format!("k = {k} outside 1..={}", n - 2)));
    }
    if !(t > 0.0) {
        return Err(invalid(format!("t must be positive, got {t}")));
    }
    Ok(())
}

/// `I_t(k, N) = Σ_{j=k+1}^{N-1} e^{-t(1 - cos(πj/N))}`
pub fn it_exact(k: usize, n: usize, t: f64) -> Result<f64> {
    check_it_args(k, n, t)?;
    Ok((k + 1..n).map(|j| (-t * (1.0 - (PI * j as f64 / n as f64).cos())).exp()).sum())
}

/// `½·√(π/2)·N/√t · e^{-2tk²/N²}`
pub fn it_bound_i(k: usize, n: usize, t: f64) -> Result<f64> {
    check_it_args(k, n, t)?;
    let (kf, nf) = (k as f64, n as f64);
    Ok(0.5 * (PI / 2.0).sqrt() * nf / t.sqrt() * (-2.0 * t * kf * kf / (nf * nf)).exp())
}

/// `½·N²/(kt) · e^{-2tk²/N²}`
pub fn it_bound_ii(k: usize, n: usize, t: f64) -> Result<f64> {
    check_it_args(k, n, t)?;
    let (kf, nf) = (k as f64, n as f64);
    Ok(0.5 * nf * nf / (kf * t) * (-2.0 * t * kf * kf / (nf * nf)).exp())
}

/// Two-sided power-law tail assumption `A m^{-a} <= Φ(m) <= B m^{-b}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailParams {
    pub big_a: f64,
    pub big_b: f64,
    pub a: f64,
    pub b: f64,
}

impl TailParams {
    pub fn new(big_a: f64, big_b: f64, a: f64, b: f64) -> Result<Self> {
        if !(big_a > 0.0 && big_b > 0.0 && a > 0.0) {
            return Err(invalid("A, B and a must be positive"));
        }
        if !(b > 0.0 && b < 1.0) {
            return Err(invalid(format!("b must lie in (0, 1), got {b}")));
        }
        if a == b && big_a > big_b {
            return Err(invalid("A must not exceed B when a = b"));
        }
        Ok(TailParams { big_a, big_b, a, b })
    }

    /// Exponent `a(1 + 1/b)` of the inverse-moment lower bound.
    pub fn exponent(&self) -> f64 {
        self.a * (1.0 + 1.0 / self.b)
    }
}

/// Constant `(A/2)^{1+1/b} / B^{1/b}` produced by the truncation argument:
/// cutting the tail sum at `L = (2B/A)^{1/b} m^{a/b}` leaves at least
/// `A/(2m^a)` of mass, each term weighted by at least `1/L`.
pub fn heavy_tail_constant(p: &TailParams) -> f64 {
    (p.big_a / 2.0).powf(1.0 + 1.0 / p.b) / p.big_b.powf(1.0 / p.b)
}

/// The constant as printed in the published statement, `(A/2)^{1-1/b}/B^{1/b}`.
/// It exceeds [`heavy_tail_constant`] and is violated by pure power laws; kept
/// for reporting only.
pub fn published_heavy_tail_constant(p: &TailParams) -> f64 {
    (p.big_a / 2.0).powf(1.0 - 1.0 / p.b) / p.big_b.powf(1.0 / p.b)
}

/// Lower bound `C / m^{a(1+1/b)}` on `Σ_{k>=m} φ(k)/k`.
pub fn heavy_tail_lower(p: &TailParams, m: u64) -> Result<f64> {
    if m == 0 {
        return Err(invalid("m must be >= 1"));
    }
    Ok(heavy_tail_constant(p) / (m as f64).powf(p.exponent()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn it_pins() {
        assert!((it_exact(1, 4, 1.0).unwrap() - 0.549_269_275_821_057_6).abs() < 1e-12);
        assert!((it_bound_i(1, 4, 1.0).unwrap() - 2.212_091_688_292_826).abs() < 1e-12);
        assert!((it_bound_ii(1, 4, 1.0).unwrap() - 7.059_975_220_676_764).abs() < 1e-12);
        assert!(it_exact(1, 3, 1.0).is_err());
        assert!(it_exact(3, 4, 1.0).is_err());
        assert!(it_bound_i(1, 5, 0.0).is_err());
    }

    #[test]
    fn it_vanishes_for_large_t() {
        for f in [it_exact, it_bound_i, it_bound_ii] {
            assert!(f(2, 10, 1e5).unwrap() < 1e-12);
        }
    }

    #[test]
    fn tail_params_validation() {
        assert!(TailParams::new(1.0, 1.0, 0.5, 1.0).is_err());
        assert!(TailParams::new(1.0, 1.0, 0.5, 0.0).is_err());
        assert!(TailParams::new(2.0, 1.0, 0.5, 0.5).is_err());
        assert!(TailParams::new(0.5, 1.0, 0.5, 0.5).is_ok());
    }

    #[test]
    fn heavy_tail_constants() {
        let p = TailParams::new(1.0, 1.0, 0.5, 0.5).unwrap();
        assert!((published_heavy_tail_constant(&p) - 2.0).abs() < 1e-15);
        assert!((heavy_tail_constant(&p) - 0.125).abs() < 1e-15);
        assert!((heavy_tail_lower(&p, 4).unwrap() - 0.125 / 8.0).abs() < 1e-15);
        assert!((heavy_tail_lower(&p, 1).unwrap() - heavy_tail_constant(&p)).abs() < 1e-15);
        assert!((p.exponent() - 1.5).abs() < 1e-15);
        assert!(heavy_tail_lower(&p, 0).is_err());
    }
}
