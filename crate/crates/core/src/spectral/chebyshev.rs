//! Chebyshev expansion of the heat function `x ↦ e^{-t(1-x)}` on `[-1, 1]`.
//!
//! With `e^{tx} = I_0(t) + 2 Σ_k I_k(t) T_k(x)` the coefficients are
//! `c_0 = e^{-t} I_0(t)` and `c_k = 2 e^{-t} I_k(t)`. The scaled Bessel values
//! come from Miller's backward recurrence `I_{k-1} = (2k/t) I_k + I_{k+1}`,
//! normalised by `Σ_k c_k = f(1) = 1`.

use super::operator::SymOperator;

/// Default polynomial degree for time `t`.
pub fn default_degree(t: f64) -> usize {
    30usize.max((2.0 * t).ceil() as usize + 20)
}

/// Chebyshev coefficients of a heat function, with the absolute sum of the
/// dropped tail as a sup-norm truncation bound on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct HeatChebyshev {
    pub t: f64,
    pub coeffs: Vec<f64>,
    pub truncation_bound: f64,
}

impl HeatChebyshev {
    pub fn new(t: f64, degree: usize) -> Self {
        assert!(t >= 0.0 && t.is_finite(), "time must be finite and non-negative");
        if t == 0.0 {
            let mut coeffs = vec![0.0; degree + 1];
            coeffs[0] = 1.0;
            return HeatChebyshev { t, coeffs, truncation_bound: 0.0 };
        }
        let start = degree + t.ceil() as usize + 10 * (t.sqrt().ceil() as usize) + 60;
        let mut scaled = vec![0.0f64; start + 2];
        scaled[start] = 1.0;
        for k in (1..=start).rev() {
            let prev = (2.0 * k as f64 / t) * scaled[k] + scaled[k + 1];
            scaled[k - 1] = prev;
            if prev > 1e250 {
                for v in &mut scaled[k - 1..] {
                    *v *= 1e-250;
                }
            }
        }
        let norm = scaled[0] + 2.0 * scaled[1..].iter().sum::<f64>();
        let coeff = |k: usize| if k == 0 { scaled[0] / norm } else { 2.0 * scaled[k] / norm };
        let coeffs: Vec<f64> = (0..=degree).map(coeff).collect();
        let truncation_bound = (degree + 1..=start).map(coeff).map(f64::abs).sum();
        HeatChebyshev { t, coeffs, truncation_bound }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates the truncated series at a scalar `x` (Clenshaw).
    pub fn eval(&self, x: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coeffs[0]
    }

    /// `Σ_k c_k μ_k` for precomputed moments `μ_k = zᵀ T_k(A) z`.
    pub fn contract(&self, moments: &[f64]) -> f64 {
        self.coeffs.iter().zip(moments).map(|(c, m)| c * m).sum()
    }
}

/// Moments `μ_k = zᵀ T_k(A) z` for `k = 0..=degree`, using only matrix-vector
/// products. The spectrum of `A` must lie in `[-1, 1]`.
pub fn chebyshev_moments(op: &SymOperator, z: &[f64], degree: usize) -> Vec<f64> {
    let n = op.n();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut moments = Vec::with_capacity(degree + 1);
    let mut prev = z.to_vec();
    moments.push(dot(z, &prev));
    if degree == 0 {
        return moments;
    }
    let mut cur = vec![0.0; n];
    op.matvec(&prev, &mut cur);
    moments.push(dot(z, &cur));
    let mut next = vec![0.0; n];
    for _ in 2..=degree {
        op.matvec(&cur, &mut next);
        for i in 0..n {
            next[i] = 2.0 * next[i] - prev[i];
        }
        moments.push(dot(z, &next));
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    moments
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: Chebyshev coefficients by discrete cosine transform of
    /// samples at Chebyshev nodes.
    fn dct_coefficients(f: impl Fn(f64) -> f64, degree: usize) -> Vec<f64> {
        let m = 4 * (degree + 1) + 64;
        let samples: Vec<f64> = (0..m).map(|j| f((std::f64::consts::PI * (j as f64 + 0.5) / m as f64).cos())).collect();
        (0..=degree)
            .map(|k| {
                let s: f64 = samples
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * (std::f64::consts::PI * k as f64 * (j as f64 + 0.5) / m as f64).cos())
                    .sum();
                if k == 0 {
                    s / m as f64
                } else {
                    2.0 * s / m as f64
                }
            })
            .collect()
    }

    #[test]
    fn bessel_route_matches_dct() {
        for t in [0.3, 1.0, 7.5, 40.0] {
            let degree = default_degree(t);
            let cheb = HeatChebyshev::new(t, degree);
            let dct = dct_coefficients(|x| (-t * (1.0 - x)).exp(), degree);
            for (a, b) in cheb.coeffs.iter().zip(&dct) {
                assert!((a - b).abs() < 1e-12, "t={t}: {a} vs {b}");
            }
            assert!(cheb.truncation_bound < 1e-12);
        }
    }

    #[test]
    fn series_reproduces_function() {
        for t in [0.5, 10.0, 100.0, 1000.0] {
            let cheb = HeatChebyshev::new(t, default_degree(t));
            for x in [-1.0, -0.3, 0.0, 0.5, 0.99, 1.0] {
                let exact = (-t * (1.0 - x)).exp();
                assert!((cheb.eval(x) - exact).abs() < 1e-12, "t={t} x={x}");
            }
        }
    }

    #[test]
    fn low_degree_reports_truncation() {
        let t = 50.0;
        let cheb = HeatChebyshev::new(t, 10);
        let worst = (0..=200)
            .map(|i| -1.0 + i as f64 / 100.0)
            .map(|x| (cheb.eval(x) - (-t * (1.0 - x)).exp()).abs())
            .fold(0.0, f64::max);
        assert!(cheb.truncation_bound > 1e-3);
        assert!(worst <= cheb.truncation_bound + 1e-12);
    }

    #[test]
    fn zero_time_is_constant_one() {
        let cheb = HeatChebyshev::new(0.0, 5);
        assert_eq!(cheb.coeffs, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(cheb.eval(-0.7), 1.0);
    }
}
