//! Integrated density of states on percolated boxes: zero modes against the
//! cluster count, the Laplace sum against the fixed-root annealed estimate,
//! and the small-energy slope at criticality.
//!
//! cargo run --release --example ids_window

use drwalk::annealed::{annealed_campaign, CampaignOptions};
use drwalk::ids::{ids_curve, laplace_consistency, theorem2_window_check, DEFAULT_E_WINDOW};
use drwalk::percolation::PercolationModel;

fn main() -> drwalk::Result<()> {
    let curve = ids_curve(0.3, 32, 10, 1, 3000)?;
    println!("p = 0.3: N(0) = {:.5}, zero-mode mismatches {}", curve.n_of_e(1e-9), curve.zero_mode_mismatches());
    let model = PercolationModel::square_lattice(0.3)?.with_seed(2);
    let opts = CampaignOptions { fixed_root: true, ..Default::default() };
    let est = annealed_campaign(&model, &[1.0, 10.0, 100.0], 20_000, &opts)?;
    for r in laplace_consistency(&curve, &est)? {
        println!("{r}");
    }

    let critical = ids_curve(0.5, 24, 6, 1, 3000)?;
    println!("{}", theorem2_window_check(&critical, 0.1, DEFAULT_E_WINDOW)?);
    Ok(())
}
