//! Exact return probabilities on small graphs against the finite-graph upper
//! bounds, and the planar lower bound on a sampled Z² cluster.
//!
//! cargo run --release --example finite_bounds

use drwalk::bounds::{all_satisfied, thm1_lower_check, thm1_upper_sweep, SWEEP_TIMES};
use drwalk::graph::{cycle_graph, path_graph};
use drwalk::percolation::{sample_cluster, PercolationModel};
use drwalk::spectral::{exact_spectrum, return_probability, spectral_gap, DrwKernel};

fn main() -> drwalk::Result<()> {
    for (name, g) in [("C12", cycle_graph(12)?), ("P12", path_graph(12)?)] {
        let k = DrwKernel::with_max_degree(g);
        let s = exact_spectrum(&k)?;
        let reports = thm1_upper_sweep(&s, k.delta() as f64, &SWEEP_TIMES)?;
        let tightest = reports.iter().min_by(|a, b| a.margin.total_cmp(&b.margin)).unwrap();
        println!("{name}: gap {:.5}, P_1 {:.5}", spectral_gap(&s)?, return_probability(&s, 1.0)?);
        println!("  {} upper-bound reports, all hold: {}", reports.len(), all_satisfied(&reports));
        println!("  tightest: {tightest}");
    }

    // first Z² cluster with 289..=1500 vertices; walk normalized by the lattice degree
    let model = PercolationModel::z2_critical().with_size_cap(1500).with_seed(1);
    let cluster = (0..).map(|i| sample_cluster(&model, i)).find(|c| !c.censored && c.size >= 289).unwrap();
    let s = exact_spectrum(&DrwKernel::new(cluster.graph, 4)?)?;
    println!("Z² cluster with {} vertices:", cluster.size);
    for r in thm1_lower_check(&s, 4.0, &[1.0, 10.0, 100.0])? {
        println!("  {r}");
    }
    Ok(())
}
