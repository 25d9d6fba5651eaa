//! Hutchinson trace estimation with a Chebyshev heat expansion against the
//! dense spectrum on one Z² cluster.
//!
//! cargo run --release --example stochastic_trace

use drwalk::percolation::{sample_cluster, PercolationModel};
use drwalk::spectral::{exact_heat_trace, stochastic_heat_traces, DrwKernel};

fn main() -> drwalk::Result<()> {
    let model = PercolationModel::z2_critical().with_size_cap(2000).with_seed(4);
    let c = (0..).map(|i| sample_cluster(&model, i)).find(|c| !c.censored && c.size >= 800).unwrap();
    let k = DrwKernel::new(c.graph, 4)?;
    let times = [1.0, 10.0, 100.0];
    let est = stochastic_heat_traces(&k, &times, 200, None, 9)?;
    println!("cluster with {} vertices", k.n());
    for e in est {
        let exact = exact_heat_trace(&k, e.t)?.value;
        println!(
            "t {:6.1}  exact {:.6}  estimate {:.6} ± {:.6}  degree {}  truncation {:.1e}  |diff|/se {:.2}",
            e.t,
            exact,
            e.value,
            e.std_error,
            e.cheb_degree,
            e.truncation_bound,
            (e.value - exact).abs() / e.std_error
        );
    }
    Ok(())
}
