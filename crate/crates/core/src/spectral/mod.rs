//! Delayed-random-walk kernels, spectra and heat-kernel traces.

pub mod chebyshev;
pub mod eigen;
pub mod kernel;
pub mod operator;
pub mod trace;

pub use chebyshev::{chebyshev_moments, default_degree, HeatChebyshev};
pub use eigen::{
    exact_spectrum, exact_spectrum_capped, max_eigen_residual, operator_eigenvalues, return_probability,
    rooted_spectrum, spectral_gap, RootedSpectrum, Spectrum, DEFAULT_DENSE_CAP, UNIT_TOL,
};
pub use kernel::{drw_kernel, product_kernel, DrwKernel};
pub use operator::SymOperator;
pub use trace::{
    exact_heat_trace, root_heat_diagonal, stochastic_heat_trace, stochastic_heat_traces, TraceEstimate, TraceMethod,
};
