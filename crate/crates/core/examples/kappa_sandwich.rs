//! Clusters per site for subcritical Z² percolation: the two-sided bound by
//! `P_t` and the cross-check against full box configurations.
//!
//! cargo run --release --example kappa_sandwich

use drwalk::annealed::{
    annealed_campaign, grimmett_kappa_boxcount, kappa_agreement, kappa_sandwich_check, kappa_sandwich_constant,
    CampaignOptions,
};
use drwalk::percolation::PercolationModel;

fn main() -> drwalk::Result<()> {
    let model = PercolationModel::square_lattice(0.3)?.with_seed(5);
    let est = annealed_campaign(&model, &[10.0, 100.0, 1000.0], 20_000, &CampaignOptions::default())?;
    println!("c = {} for d = 2, chi {:.3}", kappa_sandwich_constant(2), est.chi_hat);
    for r in kappa_sandwich_check(&est, 2)? {
        println!("{r}");
    }
    let boxed = grimmett_kappa_boxcount(&model, 128, 8)?;
    println!("box count {:.5} ± {:.5}", boxed.kappa, boxed.std_error);
    println!("{}", kappa_agreement(&est, &boxed));
    Ok(())
}
