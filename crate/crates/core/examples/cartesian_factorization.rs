//! Heat traces on Cartesian products: factorization over the factors and the
//! long-cycle comparison for `g □ C_δ`.
//!
//! cargo run --release --example cartesian_factorization

use drwalk::bounds::{eq7_cycle_comparison, factorization_check, CycleIndexing};
use drwalk::graph::{complete_graph, path_graph};
use drwalk::spectral::{DrwKernel, DEFAULT_DENSE_CAP};

fn main() -> drwalk::Result<()> {
    let kx = DrwKernel::with_max_degree(path_graph(5)?);
    let ky = DrwKernel::with_max_degree(complete_graph(4)?);
    for r in factorization_check(&kx, &ky, &[0.1, 1.0, 10.0], 1e-10, DEFAULT_DENSE_CAP)? {
        println!("{r}");
    }

    let g = path_graph(6)?;
    for indexing in [CycleIndexing::Sorted, CycleIndexing::Literal] {
        let reports = eq7_cycle_comparison(&g, 3, indexing, DEFAULT_DENSE_CAP)?;
        let bad = reports.iter().filter(|r| !r.satisfied).count();
        println!("{indexing:?}: {} comparisons, {bad} violated", reports.len());
    }
    Ok(())
}
