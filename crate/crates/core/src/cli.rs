//! `supou` command-line front end.
//!
//! Exit codes: 0 success, 2 rejected configuration, 3 numerical or I/O
//! failure, 64 usage error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{ConfigError, Manifest, RunConfig, Threads, DEFAULT_OUTPUT_DIR, DEFAULT_SEED, MANIFEST_FILE};
use crate::error::SupouError;
use crate::export;
use crate::growth::{
    classify_growth, empirical_limsup, integral_test, largexi_experiment, GrowthOptions, Normalizer, Side,
};
use crate::measures::{LevyMeasureSpec, MixingMeasureSpec, Moment, MomentOrder};
use crate::pathsim::{generate_atoms, resolve_burn_in, truncation_bias, Window};
use crate::tail::{domvar_classification, eta_lambda_ratio_scan, exp_moment_classifier, geometric_grid, moment_classifier};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) | CliError::Io(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<SupouError> for CliError {
    fn from(e: SupouError) -> Self {
        match e {
            SupouError::Numerical(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "supou", version, about = "Simulation and tail/growth analysis of positive supOU processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one path: atoms.csv and path.csv
    Simulate(SimulateArgs),
    /// Tabulate λ̄, η̄ and η̄/λ̄ on a geometric grid
    Tails(TailsArgs),
    /// Moment and variation classification of λ (and π)
    Moments(MomentsArgs),
    /// Integral test for limsup X(t)/f(t)
    IntegralTest(IntegralTestArgs),
    /// Block-maxima estimate of limsup X(t)/f(t)
    Growth(ConfigArgs),
    /// Growth of sup over [0,1] as the mass of π diverges
    LargexiDemo(LargeXiArgs),
    /// Check a config file, including existence of the process
    Validate(ConfigArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Run config (TOML); a manifest from a previous run also works
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, overriding the config
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevyKind {
    Pareto,
    Exponential,
    Dirac,
    BoundedInfinite,
    SlowlyVarying,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PiKind {
    Gamma,
    Uniform,
    PointMass,
    InverseFirstMoment,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[arg(long, value_enum)]
    levy: Option<LevyKind>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    rate: Option<f64>,
    #[arg(long)]
    z0: Option<f64>,
    #[arg(long, value_enum)]
    pi: Option<PiKind>,
    #[arg(long)]
    shape: Option<f64>,
    #[arg(long)]
    uniform_a: Option<f64>,
    #[arg(long)]
    uniform_b: Option<f64>,
    #[arg(long)]
    x0: Option<f64>,
    #[arg(long)]
    upper: Option<f64>,
}

fn required(v: Option<f64>, flag: &str, kind: &str) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Config(format!("--{flag} is required for {kind}")))
}

impl MeasureArgs {
    fn levy(&self) -> CliResult<Option<LevyMeasureSpec>> {
        let spec = match self.levy {
            None => return Ok(None),
            Some(LevyKind::Pareto) => LevyMeasureSpec::Pareto { gamma: required(self.gamma, "gamma", "--levy pareto")? },
            Some(LevyKind::Exponential) => {
                LevyMeasureSpec::Exponential { rate: required(self.rate, "rate", "--levy exponential")? }
            }
            Some(LevyKind::Dirac) => LevyMeasureSpec::Dirac { z0: required(self.z0, "z0", "--levy dirac")? },
            Some(LevyKind::BoundedInfinite) => LevyMeasureSpec::BoundedInfinite,
            Some(LevyKind::SlowlyVarying) => LevyMeasureSpec::SlowlyVarying,
        };
        spec.validate().map_err(|e| CliError::Config(format!("levy: {e}")))?;
        Ok(Some(spec))
    }

    fn pi(&self) -> CliResult<Option<MixingMeasureSpec>> {
        let spec = match self.pi {
            None => return Ok(None),
            Some(PiKind::Gamma) => MixingMeasureSpec::Gamma { shape: required(self.shape, "shape", "--pi gamma")? },
            Some(PiKind::Uniform) => MixingMeasureSpec::Uniform {
                a: required(self.uniform_a, "uniform-a", "--pi uniform")?,
                b: required(self.uniform_b, "uniform-b", "--pi uniform")?,
            },
            Some(PiKind::PointMass) => {
                MixingMeasureSpec::PointMass { x0: required(self.x0, "x0", "--pi point-mass")? }
            }
            Some(PiKind::InverseFirstMoment) => MixingMeasureSpec::InverseFirstMoment {
                upper: required(self.upper, "upper", "--pi inverse-first-moment")?,
            },
        };
        spec.validate().map_err(|e| CliError::Config(format!("pi: {e}")))?;
        Ok(Some(spec))
    }
}

#[derive(Args, Debug)]
struct ConfigArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    /// Evaluation grid size on [0, T]
    #[arg(long, default_value_t = 1001)]
    points: usize,
    /// Replicate (random stream) index
    #[arg(long, default_value_t = 0)]
    replicate: u64,
}

#[derive(Args, Debug)]
struct TailsArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    measures: MeasureArgs,
    #[arg(long, default_value_t = 1.0)]
    rmin: f64,
    #[arg(long, default_value_t = 1e6)]
    rmax: f64,
    #[arg(long, default_value_t = 40)]
    points: usize,
}

#[derive(Args, Debug)]
struct MomentsArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    measures: MeasureArgs,
    /// Power moment orders β
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,3")]
    beta: Vec<f64>,
    /// Exponential moment rates a in E e^{aX}
    #[arg(long = "exp", value_delimiter = ',', default_value = "0.5,1,2")]
    exp_rates: Vec<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormalizerKind {
    Power,
    Log,
    LogOverLogLog,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Lower,
    Upper,
}

#[derive(Args, Debug)]
struct IntegralTestArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    measures: MeasureArgs,
    #[arg(long, value_enum)]
    normalizer: Option<NormalizerKind>,
    /// Exponent a of f(t) = t^a
    #[arg(long)]
    exponent: Option<f64>,
    /// Constant κ of the logarithmic normalizers
    #[arg(long)]
    kappa: Option<f64>,
    /// Constant K (lower side) or L (upper side)
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, value_enum, default_value_t = SideArg::Lower)]
    side: SideArg,
}

#[derive(Args, Debug)]
struct LargeXiArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    measures: MeasureArgs,
    /// Truncations as log M
    #[arg(long, value_delimiter = ',', default_value = "1,4,16,64")]
    log_m: Vec<f64>,
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=i64::MAX as u64))]
    seed: Option<u64>,
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let recorded = recorded_args(&args);
    match dispatch(cli.command, recorded) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("supou: {e}");
            e.code()
        }
    }
}

/// Arguments after the subcommand, without `--out`.
fn recorded_args(args: &[OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(2) {
        let a = a.to_string_lossy().into_owned();
        if skip {
            skip = false;
        } else if a == "--out" {
            skip = true;
        } else if !a.starts_with("--out=") {
            out.push(a);
        }
    }
    out
}

fn load_config(common: &Common) -> CliResult<Option<RunConfig>> {
    common.config.as_deref().map(RunConfig::load).transpose().map_err(Into::into)
}

fn require_config(common: &Common, command: &str) -> CliResult<RunConfig> {
    load_config(common)?.ok_or_else(|| CliError::Config(format!("{command} needs --config")))
}

fn with_pool<T: Send>(threads: Threads, work: impl FnOnce() -> CliResult<T> + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.resolve().unwrap_or(0))
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    pool.install(work)
}

fn output_dir(common: &Common, cfg: Option<&RunConfig>) -> PathBuf {
    common
        .out
        .clone()
        .or_else(|| cfg.map(|c| c.output_dir.clone()))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
}

fn toml_value<T: Serialize>(v: &T) -> toml::Value {
    toml::Value::try_from(v).expect("serializable as TOML")
}

fn moment_value(m: Moment) -> toml::Value {
    match m {
        Moment::Finite(v) => toml::Value::Float(v),
        Moment::Infinite => toml::Value::String("inf".into()),
    }
}

/// Collects artifacts in memory and writes them once the run has finished.
struct Artifacts {
    dir: PathBuf,
    files: Vec<(String, Vec<u8>)>,
}

impl Artifacts {
    fn new(dir: PathBuf) -> Self {
        Self { dir, files: Vec::new() }
    }

    fn csv(&mut self, name: &str, write: impl FnOnce(&mut Vec<u8>) -> csv::Result<()>) -> CliResult<()> {
        let mut buf = Vec::new();
        write(&mut buf)?;
        self.files.push((name.to_string(), buf));
        Ok(())
    }

    fn finish(self, mut manifest: Manifest) -> CliResult<()> {
        fs::create_dir_all(&self.dir)?;
        manifest.artifacts = self.files.iter().map(|(n, _)| n.clone()).collect();
        for (name, bytes) in &self.files {
            fs::write(self.dir.join(name), bytes)?;
        }
        fs::write(self.dir.join(MANIFEST_FILE), manifest.to_toml())?;
        println!("wrote {} artifact(s) and {} to {}", self.files.len(), MANIFEST_FILE, display(&self.dir));
        Ok(())
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn dispatch(command: Command, args: Vec<String>) -> CliResult<()> {
    match command {
        Command::Simulate(a) => simulate(a, args),
        Command::Tails(a) => tails(a, args),
        Command::Moments(a) => moments(a, args),
        Command::IntegralTest(a) => integral(a, args),
        Command::Growth(a) => growth(a, args),
        Command::LargexiDemo(a) => largexi(a, args),
        Command::Validate(a) => validate(a),
    }
}

fn record_burn_in(manifest: &mut Manifest, cfg: &RunConfig) -> CliResult<f64> {
    let eps = cfg.eps();
    let burn = resolve_burn_in(&cfg.pi, &cfg.levy, eps, cfg.fixed_burn_in(), cfg.burn_in_cap)?;
    manifest.diagnostic("burn_in", burn.burn_in);
    manifest.diagnostic("burn_in_bound", burn.bound.value());
    manifest.diagnostic("burn_in_capped", burn.capped);
    if let Ok(bias) = truncation_bias(&cfg.levy, &cfg.pi, eps) {
        manifest.diagnostic("truncation_bias", bias);
    }
    Ok(burn.burn_in)
}

fn simulate(a: SimulateArgs, args: Vec<String>) -> CliResult<()> {
    let cfg = require_config(&a.common, "simulate")?;
    if a.points < 2 {
        return Err(CliError::Config("--points must be at least 2".into()));
    }
    let mut manifest = Manifest::new("simulate", args);
    manifest.param("points", a.points as i64);
    manifest.param("replicate", a.replicate as i64);
    let burn_in = record_burn_in(&mut manifest, &cfg)?;
    let window = Window::new(burn_in, cfg.window.horizon)?;
    let path =
        generate_atoms(&cfg.levy, &cfg.pi, window, cfg.eps(), cfg.seed, a.replicate)?.with_prune_tol(cfg.prune_tol)?;
    let horizon = cfg.window.horizon;
    let times: Vec<f64> = (0..a.points).map(|i| horizon * i as f64 / (a.points - 1) as f64).collect();
    let eval = path.evaluate(&times)?;
    manifest.diagnostic("atoms", path.atoms().len() as i64);
    manifest.diagnostic("pruned", eval.pruned as i64);
    manifest.diagnostic("pruning_error", eval.pruning_error);
    println!(
        "{} atoms on [-{}, {}], max X on grid {}",
        path.atoms().len(),
        export::fmt_f64(burn_in),
        export::fmt_f64(horizon),
        export::fmt_f64(eval.values.iter().copied().fold(0.0, f64::max))
    );
    let mut out = Artifacts::new(output_dir(&a.common, Some(&cfg)));
    out.csv("atoms.csv", |w| export::write_atoms(w, path.atoms()))?;
    out.csv("path.csv", |w| export::write_path(w, &times, &eval))?;
    manifest.config = Some(cfg);
    out.finish(manifest)
}

fn levy_from(common: &Common, measures: &MeasureArgs) -> CliResult<(Option<RunConfig>, LevyMeasureSpec)> {
    let cfg = load_config(common)?;
    let levy = match (measures.levy()?, &cfg) {
        (Some(l), _) => l,
        (None, Some(c)) => c.levy,
        (None, None) => return Err(CliError::Config("give --levy (with its parameters) or --config".into())),
    };
    Ok((cfg, levy))
}

fn tails(a: TailsArgs, args: Vec<String>) -> CliResult<()> {
    let (cfg, levy) = levy_from(&a.common, &a.measures)?;
    let grid = geometric_grid(a.rmin, a.rmax, a.points)?;
    let table = eta_lambda_ratio_scan(&levy, &grid)?;
    let mut manifest = Manifest::new("tails", args);
    manifest.param("levy", toml_value(&levy));
    manifest.param("rmin", a.rmin);
    manifest.param("rmax", a.rmax);
    manifest.param("points", a.points as i64);
    let mut out = Artifacts::new(output_dir(&a.common, cfg.as_ref()));
    out.csv("tail_table.csv", |w| export::write_tail_table(w, &table))?;
    manifest.config = cfg;
    out.finish(manifest)
}

fn moments(a: MomentsArgs, args: Vec<String>) -> CliResult<()> {
    let (cfg, levy) = levy_from(&a.common, &a.measures)?;
    let pi = a.measures.pi()?.or(cfg.as_ref().map(|c| c.pi));
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut row = |q: &str, arg: String, v: String| rows.push(vec![q.to_string(), arg, v]);
    row("lambda_total_mass", String::new(), export::fmt_f64(levy.mass_above(0.0)));
    row("lambda_log_moment", String::new(), levy.log_moment()?.to_string());
    for &beta in &a.beta {
        row("power_moment", export::fmt_f64(beta), moment_classifier(&levy, beta)?.to_string());
    }
    for &rate in &a.exp_rates {
        row("exp_moment", export::fmt_f64(rate), exp_moment_classifier(&levy, rate)?.to_string());
    }
    let (dominated, growth) = domvar_classification(&levy);
    row("dominated_variation", String::new(), dominated.to_string());
    row("growth_condition", String::new(), growth.to_string());
    let mut manifest = Manifest::new("moments", args);
    manifest.param("levy", toml_value(&levy));
    if let Some(pi) = pi {
        for (p, order) in [(-1, MomentOrder::Inverse), (0, MomentOrder::Mass)] {
            let m = pi.moment(order);
            row("pi_moment", p.to_string(), m.to_string());
            manifest.diagnostic(&format!("pi_moment_{}", if p < 0 { "minus1" } else { "0" }), moment_value(m));
        }
        manifest.param("pi", toml_value(&pi));
    }
    for r in &rows {
        println!("{}", r.iter().filter(|c| !c.is_empty()).cloned().collect::<Vec<_>>().join(" "));
    }
    let mut out = Artifacts::new(output_dir(&a.common, cfg.as_ref()));
    out.csv("moments.csv", |w| export::write_rows(w, &["quantity", "argument", "value"], &rows))?;
    manifest.config = cfg;
    out.finish(manifest)
}

fn integral(a: IntegralTestArgs, args: Vec<String>) -> CliResult<()> {
    let (cfg, levy) = levy_from(&a.common, &a.measures)?;
    let f = match a.normalizer {
        Some(NormalizerKind::Power) => Normalizer::Power { a: required(a.exponent, "exponent", "--normalizer power")? },
        Some(NormalizerKind::Log) => Normalizer::Log { kappa: a.kappa.unwrap_or(1.0) },
        Some(NormalizerKind::LogOverLogLog) => Normalizer::LogOverLogLog { kappa: a.kappa.unwrap_or(1.0) },
        None => match &cfg {
            Some(c) => c.normalizer(),
            None => return Err(CliError::Config("give --normalizer or --config".into())),
        },
    };
    let side = match a.side {
        SideArg::Lower => Side::Lower,
        SideArg::Upper => Side::Upper,
    };
    let test = integral_test(&levy, &f, a.k, side)?;
    println!(
        "integral test ({side:?} side, K = {}, f = {}): {} (numeric check: {})",
        export::fmt_f64(a.k),
        f.label(),
        test.verdict,
        test.numeric_verdict
    );
    let mut manifest = Manifest::new("integral-test", args);
    manifest.param("levy", toml_value(&levy));
    manifest.param("normalizer", toml_value(&f));
    manifest.param("k", a.k);
    manifest.param("side", toml_value(&side));
    manifest.diagnostic("verdict", test.verdict.to_string());
    manifest.diagnostic("numeric_verdict", test.numeric_verdict.to_string());
    let rows: Vec<Vec<String>> =
        test.partial_integrals.iter().map(|(t, v)| vec![export::fmt_f64(*t), export::fmt_f64(*v)]).collect();
    let mut out = Artifacts::new(output_dir(&a.common, cfg.as_ref()));
    out.csv("integral_test.csv", |w| export::write_rows(w, &["t", "partial_integral"], &rows))?;
    manifest.config = cfg;
    out.finish(manifest)
}

fn growth(a: ConfigArgs, args: Vec<String>) -> CliResult<()> {
    let cfg = require_config(&a.common, "growth")?;
    let f = cfg.normalizer();
    let mut manifest = Manifest::new("growth", args);
    record_burn_in(&mut manifest, &cfg)?;
    let report = with_pool(cfg.threads, || {
        Ok(empirical_limsup(
            &cfg.levy,
            &cfg.pi,
            &f,
            cfg.window.horizon,
            cfg.replicates,
            cfg.seed,
            &cfg.growth_options(),
        )?)
    })?;
    let class = classify_growth(&cfg.levy)?;
    let (lower, upper) = class.bounds_with_mixing(&cfg.levy, &cfg.pi);
    let s = &report.summary;
    println!(
        "f = {}: verdict {} (diverging {}, vanishing {}, bounded-away {} of {})",
        f.label(),
        s.verdict,
        s.diverging,
        s.vanishing,
        s.bounded_away,
        report.replicates.len()
    );
    println!(
        "terminal running max: median {}, min {}, max {}; regime {:?}, band [{}, {}]",
        export::fmt_f64(s.median),
        export::fmt_f64(s.min),
        export::fmt_f64(s.max),
        class.regime,
        export::fmt_f64(lower),
        export::fmt_f64(upper)
    );
    manifest.diagnostic("verdict", s.verdict.to_string());
    manifest.diagnostic("diverging", s.diverging as i64);
    manifest.diagnostic("vanishing", s.vanishing as i64);
    manifest.diagnostic("bounded_away", s.bounded_away as i64);
    manifest.diagnostic("terminal_median", s.median);
    manifest.diagnostic("terminal_min", s.min);
    manifest.diagnostic("terminal_max", s.max);
    manifest.diagnostic("regime", format!("{:?}", class.regime));
    manifest.diagnostic("band_lower", lower);
    manifest.diagnostic("band_upper", upper);
    let mut out = Artifacts::new(output_dir(&a.common, Some(&cfg)));
    out.csv("growth_blocks.csv", |w| export::write_growth_blocks(w, &report))?;
    out.csv("growth_summary.csv", |w| export::write_growth_summary(w, &report))?;
    manifest.config = Some(cfg);
    out.finish(manifest)
}

fn largexi(a: LargeXiArgs, args: Vec<String>) -> CliResult<()> {
    let cfg = load_config(&a.common)?;
    let levy = match (a.measures.levy()?, &cfg) {
        (Some(l), _) => l,
        (None, Some(c)) => c.levy,
        (None, None) => LevyMeasureSpec::Pareto { gamma: 1.0 },
    };
    let replicates = a.replicates.or(cfg.as_ref().map(|c| c.replicates)).unwrap_or(200);
    let seed = a.seed.or(cfg.as_ref().map(|c| c.seed)).unwrap_or(DEFAULT_SEED);
    let opts = cfg.as_ref().map(RunConfig::growth_options).unwrap_or_default();
    let opts = GrowthOptions { burn_in: None, ..opts };
    let m_grid: Vec<f64> = a.log_m.iter().map(|l| l.exp()).collect();
    let threads = cfg.as_ref().map(|c| c.threads).unwrap_or_default();
    let report = with_pool(threads, || Ok(largexi_experiment(&levy, &m_grid, replicates, seed, &opts)?))?;
    if let Some(w) = &report.warning {
        eprintln!("warning: {w}");
    }
    for row in &report.rows {
        println!(
            "log M = {}: median sup_[0,1] X = {}, mean arrivals in [0,1] = {}",
            export::fmt_f64(row.mass),
            export::fmt_f64(row.median_sup),
            export::fmt_f64(row.mean_arrivals)
        );
    }
    let mut manifest = Manifest::new("largexi-demo", args);
    manifest.param("levy", toml_value(&levy));
    manifest.param("log_m", toml_value(&a.log_m));
    manifest.param("replicates", replicates as i64);
    manifest.param("seed", toml_value(&seed));
    if let Some(w) = &report.warning {
        manifest.diagnostic("warning", w.clone());
    }
    let mut out = Artifacts::new(output_dir(&a.common, cfg.as_ref()));
    out.csv("largexi.csv", |w| export::write_largexi(w, &report))?;
    manifest.config = cfg;
    out.finish(manifest)
}

fn validate(a: ConfigArgs) -> CliResult<()> {
    let cfg = require_config(&a.common, "validate")?;
    let burn = resolve_burn_in(&cfg.pi, &cfg.levy, cfg.eps(), cfg.fixed_burn_in(), cfg.burn_in_cap)?;
    println!("config ok: {} with {}", cfg.levy.description(), cfg.pi.description());
    println!(
        "burn-in B = {} (bound {}{})",
        export::fmt_f64(burn.burn_in),
        export::fmt_f64(burn.bound.value()),
        if burn.capped { ", capped" } else { "" }
    );
    print!("{}", cfg.to_toml());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run(["supou", "--bogus"]), EXIT_USAGE);
        assert_eq!(run(["supou", "tails", "--nope"]), EXIT_USAGE);
        assert_eq!(run(["supou"]), EXIT_USAGE);
        assert_eq!(run(["supou", "--help"]), EXIT_OK);
    }

    #[test]
    fn missing_measure_parameter_is_config_error() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        assert_eq!(run(["supou", "tails", "--levy", "pareto", "--out", out]), EXIT_CONFIG);
    }

    #[test]
    fn recorded_args_drop_out_dir() {
        let args: Vec<OsString> =
            ["supou", "tails", "--levy", "pareto", "--out", "x", "--gamma", "2", "--out=y"].map(Into::into).to_vec();
        assert_eq!(recorded_args(&args), vec!["--levy", "pareto", "--gamma", "2"]);
    }
}
