//! Command-line front end: argument parsing, config resolution, and the
//! commands behind the `drwalk` binary.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error,
//! 3 a resource cap was exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::annealed::{
    annealed_campaign, corollary1_exponent_check, fit_exponent, geometric_grid, grimmett_kappa_boxcount,
    kappa_agreement, kappa_sandwich_check, mass_transport_reports, theorem3_lower_check, theorem3_upper_check,
    CampaignOptions,
};
use crate::bounds::{write_reports_csv, BoundId, BoundReport, TailParams, BOUND_SLACK};
use crate::config::{KeyValues, Resolver};
use crate::error::{Error, Result};
use crate::ids::{ids_curve, theorem2_window_check};
use crate::percolation::{log_grid, sample_cluster, tail_survey, Family, PercolationModel};
use crate::suite::{verify_finite, FiniteSuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "DRWALK_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "drwalk-out";

/// Name of the resolved-config echo written to every output directory.
pub const RESOLVED_CONFIG: &str = "config.resolved";

/// Allowed deviation of the critical-tree tail slope from 1/2.
pub const TREE_SLOPE_TOL: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(name = "drwalk", version, about = "Delayed random walks on finite graphs and percolation clusters")]
pub struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Output directory.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out: Option<PathBuf>,

    /// Flat key = value config file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact bound checks on random small connected graphs.
    VerifyFinite(VerifyFiniteArgs),
    /// Annealed return-probability campaign on percolation clusters.
    Annealed(AnnealedArgs),
    /// Integrated density of states on percolated boxes.
    Ids(IdsArgs),
    /// Cluster-size survival function and its power-law slope.
    Tail(TailArgs),
    /// Clusters per site from full box configurations.
    KappaBox(KappaBoxArgs),
    /// Print one sampled root cluster in the graph text format.
    DumpGraph(DumpGraphArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    TreeCritical,
    Z2Critical,
    Z2Subcritical,
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl std::str::FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Preset as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct VerifyFiniteArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n_graphs: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Negate the last term of the first upper bound; the run must then fail.
    #[arg(long)]
    pub sabotage: bool,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model preset.
    pub preset: Option<Preset>,
    /// Tree degree.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Bond retention probability; defaults to the preset's value.
    #[arg(long)]
    pub p: Option<f64>,
    /// Exploration cap; larger clusters are censored.
    #[arg(long)]
    pub size_cap: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AnnealedArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n_samples: Option<u64>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_points: Option<usize>,
    /// Largest cluster diagonalized densely; larger ones use stochastic traces.
    #[arg(long)]
    pub dense_cap: Option<usize>,
    #[arg(long)]
    pub probes: Option<usize>,
    /// Size-moment exponent of the upper decay check.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Tail decay exponent `b` of `P[|C| >= m] <= B m^-b`.
    #[arg(long)]
    pub tail_b: Option<f64>,
    /// Also estimate the fixed-root return probability.
    #[arg(long)]
    pub fixed_root: Option<bool>,
    /// Box half-width of the clusters-per-site cross-check (subcritical only).
    #[arg(long)]
    pub box_l: Option<usize>,
    #[arg(long)]
    pub box_realizations: Option<u64>,
}

#[derive(Debug, Args)]
pub struct IdsArgs {
    #[arg(long)]
    pub p: Option<f64>,
    /// Box half-width; the box has side 2L.
    #[arg(long = "L", short = 'L')]
    pub half_width: Option<usize>,
    #[arg(long)]
    pub realizations: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest single cluster diagonalized.
    #[arg(long)]
    pub dense_cap: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub e_min: Option<f64>,
    #[arg(long)]
    pub e_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TailArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n_samples: Option<u64>,
    #[arg(long)]
    pub m_max: Option<u64>,
    #[arg(long)]
    pub window_lo: Option<u64>,
    #[arg(long)]
    pub window_hi: Option<u64>,
}

#[derive(Debug, Args)]
pub struct KappaBoxArgs {
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long = "L", short = 'L')]
    pub half_width: Option<usize>,
    #[arg(long)]
    pub realizations: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DumpGraphArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Sample stream index.
    #[arg(long)]
    pub index: Option<u64>,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::SizeExceeded { .. } => EXIT_CAP,
        Error::InvalidArgument(_)
        | Error::Parse(_)
        | Error::FamilyMismatch(_)
        | Error::PreconditionViolated(_)
        | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let file = match &cli.config {
        Some(p) => KeyValues::load(p)?,
        None => KeyValues::default(),
    };
    let mut r = Resolver::new(file);
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    match &cli.command {
        Command::VerifyFinite(a) => cmd_verify_finite(a, &mut r, &out),
        Command::Annealed(a) => cmd_annealed(a, &mut r, &out),
        Command::Ids(a) => cmd_ids(a, &mut r, &out),
        Command::Tail(a) => cmd_tail(a, &mut r, &out),
        Command::KappaBox(a) => cmd_kappa_box(a, &mut r, &out),
        Command::DumpGraph(a) => cmd_dump_graph(a, &mut r),
    }
}

fn finish_config(r: &Resolver, out: &Path, command: &str) -> Result<()> {
    let unused = r.unused_keys().into_iter().filter(|k| k != "command").collect::<Vec<_>>();
    if !unused.is_empty() {
        return Err(Error::Parse(format!("unknown config keys: {}", unused.join(", "))));
    }
    fs::create_dir_all(out)?;
    let mut echo = r.resolved().clone();
    echo.insert("command", command);
    fs::write(out.join(RESOLVED_CONFIG), echo.render())?;
    Ok(())
}

fn write_reports(out: &Path, reports: &[BoundReport]) -> Result<i32> {
    write_reports_csv(fs::File::create(out.join("reports.csv"))?, reports)?;
    let failed: Vec<&BoundReport> = reports.iter().filter(|r| !r.satisfied).collect();
    println!("{} reports, {} violated", reports.len(), failed.len());
    for f in failed.iter().take(20) {
        println!("  {f}");
    }
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn write_summary(out: &Path, summary: &KeyValues) -> Result<()> {
    fs::write(out.join("summary.txt"), summary.render())?;
    print!("{}", summary.render());
    Ok(())
}

fn resolve_model(
    a: &ModelArgs,
    r: &mut Resolver,
    default_cap: impl Fn(Preset) -> usize,
) -> Result<(Preset, PercolationModel)> {
    let preset = r.required("preset", a.preset)?;
    let seed = r.value("seed", a.seed, 0u64)?;
    let cap = r.value("size_cap", a.size_cap, default_cap(preset))?;
    let model = match preset {
        Preset::TreeCritical => {
            let delta = r.value("delta", a.delta, 3usize)?;
            let p = r.value("p", a.p, PercolationModel::critical_p(Family::HomogeneousTree, delta))?;
            PercolationModel::tree(delta, p)?
        }
        Preset::Z2Critical => PercolationModel::square_lattice(r.value("p", a.p, 0.5)?)?,
        Preset::Z2Subcritical => PercolationModel::square_lattice(r.value("p", a.p, 0.3)?)?,
    };
    let model = model.with_size_cap(cap).with_seed(seed);
    model.validate()?;
    Ok((preset, model))
}

fn cmd_verify_finite(a: &VerifyFiniteArgs, r: &mut Resolver, out: &Path) -> Result<i32> {
    let cfg = FiniteSuiteConfig {
        seed: r.value("seed", a.seed, 0)?,
        n_graphs: r.value("n_graphs", a.n_graphs, 200)?,
        n_max: r.value("n_max", a.n_max, 12)?,
        sabotage: r.value("sabotage", a.sabotage.then_some(true), false)?,
    };
    finish_config(r, out, "verify-finite")?;
    let reports = verify_finite(&cfg)?;
    write_reports(out, &reports)
}

fn cmd_annealed(a: &AnnealedArgs, r: &mut Resolver, out: &Path) -> Result<i32> {
    let (preset, model) = resolve_model(&a.model, r, |p| match p {
        Preset::Z2Subcritical => 20_000,
        _ => 1000,
    })?;
    let n_samples = r.value("n_samples", a.n_samples, 20_000u64)?;
    let grid = geometric_grid(
        r.value("t_min", a.t_min, 10.0)?,
        r.value("t_max", a.t_max, 1000.0)?,
        r.value("t_points", a.t_points, 9usize)?,
    )?;
    let opts = CampaignOptions {
        dense_cap: r.value("dense_cap", a.dense_cap, 1000)?,
        probes: r.value("probes", a.probes, 64)?,
        fixed_root: r.value("fixed_root", a.fixed_root, false)?,
    };
    let default_alpha = if preset == Preset::TreeCritical { 0.4 } else { 0.1 };
    let alpha = r.value("alpha", a.alpha, default_alpha)?;
    let tail_b = r.value("tail_b", a.tail_b, if preset == Preset::TreeCritical { 0.5 } else { 0.2 })?;
    let boxed = if preset == Preset::Z2Subcritical {
        Some((r.value("box_l", a.box_l, 128usize)?, r.value("box_realizations", a.box_realizations, 8u64)?))
    } else {
        None
    };
    finish_config(r, out, "annealed")?;

    let est = annealed_campaign(&model, &grid, n_samples, &opts)?;
    est.write_csv(fs::File::create(out.join("campaign.csv"))?)?;

    let mut summary = KeyValues::default();
    summary.insert("family", model.family.as_str());
    summary.insert("p", model.p);
    summary.insert("delta", model.delta);
    summary.insert("n_samples", n_samples);
    summary.insert("censored_fraction", est.censored_fraction);
    summary.insert("kappa_hat", est.kappa_hat);
    summary.insert("kappa_std_error", est.kappa_std_error);
    summary.insert("chi_hat", est.chi_hat);
    summary.insert("n_stochastic", est.n_stochastic);

    let mut reports = theorem3_upper_check(&est, model.delta, alpha, tail_b)?;
    if model.family.is_planar() {
        let tail = TailParams::new(0.5, 1.0, 0.5, tail_b)?;
        reports.extend(theorem3_lower_check(&est, model.delta, &tail)?);
    }
    if preset != Preset::Z2Subcritical {
        match fit_exponent(&est, (grid[0], grid[grid.len() - 1])) {
            Ok(fit) => {
                summary.insert("fit_exponent", fit.exponent);
                summary.insert("fit_stderr", fit.stderr);
                summary.insert("fit_r_squared", fit.r_squared);
                summary.insert("fit_points", fit.n_points);
                match corollary1_exponent_check(&fit, model.family, alpha) {
                    Ok(rep) => reports.push(rep),
                    Err(e) => summary.insert("fit_status", e),
                }
            }
            Err(e) => summary.insert("fit_status", e),
        }
    } else {
        reports.extend(kappa_sandwich_check(&est, 2)?);
        if let Some((l, n)) = boxed {
            let b = grimmett_kappa_boxcount(&model, l, n)?;
            summary.insert("kappa_box", b.kappa);
            summary.insert("kappa_box_std_error", b.std_error);
            reports.push(kappa_agreement(&est, &b));
        }
    }
    if opts.fixed_root {
        reports.extend(mass_transport_reports(&est)?);
    }
    write_summary(out, &summary)?;
    write_reports(out, &reports)
}

fn cmd_ids(a: &IdsArgs, r: &mut Resolver, out: &Path) -> Result<i32> {
    let p = r.value("p", a.p, 0.5)?;
    let half_width = r.value("L", a.half_width, 16usize)?;
    let realizations = r.value("realizations", a.realizations, 10u64)?;
    let seed = r.value("seed", a.seed, 0u64)?;
    let cap = r.value("dense_cap", a.dense_cap, 3000usize)?;
    let alpha = r.value("alpha", a.alpha, 0.1)?;
    let window = (r.value("e_min", a.e_min, 1e-3)?, r.value("e_max", a.e_max, 1e-1)?);
    finish_config(r, out, "ids")?;

    let curve = ids_curve(p, half_width, realizations, seed, cap)?;
    curve.write_csv(fs::File::create(out.join(format!("ids_p{p}_L{half_width}.csv")))?)?;
    let mut reports = curve.zero_mode_reports();
    let mut summary = KeyValues::default();
    summary.insert("p", p);
    summary.insert("L", half_width);
    summary.insert("realizations", realizations);
    summary.insert("N_of_0", curve.n_of_e(crate::ids::ZERO_MODE_TOL));
    if (p - 0.5).abs() < 1e-12 {
        match theorem2_window_check(&curve, alpha, window) {
            Ok(rep) => {
                summary.insert("window_slope", rep.input("slope").unwrap_or(f64::NAN));
                reports.push(rep);
            }
            Err(e @ Error::InsufficientData(_)) => summary.insert("window_status", e),
            Err(e) => return Err(e),
        }
    }
    write_summary(out, &summary)?;
    write_reports(out, &reports)
}

fn cmd_tail(a: &TailArgs, r: &mut Resolver, out: &Path) -> Result<i32> {
    let (preset, model) = resolve_model(&a.model, r, |p| match p {
        Preset::TreeCritical => 100_000,
        _ => 10_000,
    })?;
    let n_samples = r.value("n_samples", a.n_samples, 100_000u64)?;
    let m_max = r.value("m_max", a.m_max, 10_000u64.min(model.size_cap as u64))?;
    let window = (r.value("window_lo", a.window_lo, 10u64)?, r.value("window_hi", a.window_hi, 1000u64.min(m_max))?);
    finish_config(r, out, "tail")?;

    let mut grid = log_grid(1, m_max, 8);
    grid.extend([window.0, window.1]);
    grid.sort_unstable();
    grid.dedup();
    let tail = tail_survey(&model, n_samples, &grid, window)?;
    tail.write_csv(fs::File::create(out.join("tail.csv"))?)?;

    let mut summary = KeyValues::default();
    summary.insert("family", model.family.as_str());
    summary.insert("p", model.p);
    summary.insert("slope", tail.slope);
    summary.insert("slope_stderr", tail.stderr);
    summary.insert("r_squared", tail.r_squared);
    summary.insert("poor_fit", tail.poor_fit);
    summary.insert("censored_fraction", tail.censored_fraction);
    summary.insert("n_samples", n_samples);

    let mut reports = Vec::new();
    match preset {
        Preset::TreeCritical if model.is_critical() => reports.push(BoundReport::check(
            BoundId::TailSlope,
            &[("slope", tail.slope), ("stderr", tail.stderr), ("target", 0.5)],
            (tail.slope - 0.5).abs(),
            TREE_SLOPE_TOL,
            0.0,
        )),
        Preset::Z2Critical if model.is_critical() => {
            for (i, &m) in tail.m_grid.iter().enumerate() {
                reports.push(BoundReport::check(
                    BoundId::TailLowerEnvelope,
                    &[("m", m as f64), ("phi_hat", tail.phi_hat[i])],
                    0.5 / (m as f64).sqrt(),
                    tail.ci_high[i],
                    BOUND_SLACK,
                ));
            }
        }
        _ => {}
    }
    write_summary(out, &summary)?;
    write_reports(out, &reports)
}

fn cmd_kappa_box(a: &KappaBoxArgs, r: &mut Resolver, out: &Path) -> Result<i32> {
    let p = r.value("p", a.p, 0.3)?;
    let half_width = r.value("L", a.half_width, 64usize)?;
    let realizations = r.value("realizations", a.realizations, 10u64)?;
    let seed = r.value("seed", a.seed, 0u64)?;
    finish_config(r, out, "kappa-box")?;
    let model = PercolationModel::square_lattice(p)?.with_seed(seed);
    let b = grimmett_kappa_boxcount(&model, half_width, realizations)?;
    let mut summary = KeyValues::default();
    summary.insert("p", p);
    summary.insert("L", half_width);
    summary.insert("realizations", realizations);
    summary.insert("kappa_box", b.kappa);
    summary.insert("kappa_box_std_error", b.std_error);
    write_summary(out, &summary)?;
    Ok(EXIT_OK)
}

fn cmd_dump_graph(a: &DumpGraphArgs, r: &mut Resolver) -> Result<i32> {
    let (_, model) = resolve_model(&a.model, r, |_| 10_000)?;
    let index = r.value("index", a.index, 0u64)?;
    let c = sample_cluster(&model, index);
    eprintln!("size {} censored {}", c.size, c.censored);
    // a closed pipe (e.g. `| head`) is not an error
    match std::io::stdout().write_all(c.to_text().as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(EXIT_OK),
    }
}
