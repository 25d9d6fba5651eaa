use drwalk::annealed::{annealed_campaign, CampaignOptions};
use drwalk::ids::ids_curve;
use drwalk::percolation::{log_grid, tail_survey, PercolationModel};
use drwalk::suite::{verify_finite, FiniteSuiteConfig};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

fn campaign_csv() -> Vec<u8> {
    // clusters of a few hundred sites are large enough for the dense solver to split work
    let model = PercolationModel::z2_critical().with_size_cap(1500).with_seed(21);
    let opts = CampaignOptions { dense_cap: 800, probes: 16, fixed_root: true };
    let est = annealed_campaign(&model, &[1.0, 10.0, 100.0], 1500, &opts).unwrap();
    let mut out = Vec::new();
    est.write_csv(&mut out).unwrap();
    out
}

#[test]
fn campaign_ignores_pool_size() {
    let one = in_pool(1, campaign_csv);
    assert_eq!(one, in_pool(3, campaign_csv));
    assert_eq!(one, campaign_csv());
}

#[test]
fn other_outputs_ignore_pool_size() {
    let suite =
        |t| in_pool(t, || format!("{:?}", verify_finite(&FiniteSuiteConfig { n_graphs: 40, ..Default::default() })));
    assert_eq!(suite(1), suite(4));

    let tail = |t| {
        in_pool(t, || {
            let model = PercolationModel::tree_critical(3).unwrap().with_size_cap(1000).with_seed(2);
            let e = tail_survey(&model, 20_000, &log_grid(1, 1000, 4), (10, 100)).unwrap();
            let mut out = Vec::new();
            e.write_csv(&mut out).unwrap();
            out
        })
    };
    assert_eq!(tail(1), tail(4));

    let ids = |t| {
        in_pool(t, || {
            let mut out = Vec::new();
            ids_curve(0.4, 12, 4, 9, 2000).unwrap().write_csv(&mut out).unwrap();
            out
        })
    };
    assert_eq!(ids(1), ids(4));
}

#[test]
fn seeds_change_output() {
    let a = PercolationModel::z2_critical().with_size_cap(600).with_seed(1);
    let b = a.with_seed(2);
    let opts = CampaignOptions { dense_cap: 300, probes: 16, ..Default::default() };
    let ea = annealed_campaign(&a, &[10.0], 500, &opts).unwrap();
    let eb = annealed_campaign(&b, &[10.0], 500, &opts).unwrap();
    assert_ne!(ea.p_t_hat, eb.p_t_hat);
}
