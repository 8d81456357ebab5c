//! Almost-sure growth experiments.
//!
//! Integral tests decide, per catalog jump measure and normalizer `f`,
//! whether `limsup X(t)/f(t)` is forced up or down. The empirical side
//! estimates the same limsup from simulated paths through dyadic block
//! maxima of `X(t)/f(t)` and a Theil–Sen trend test.

use std::f64::consts::E;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::measures::{LevyMeasureSpec, MixingMeasureSpec, MomentOrder};
use crate::pathsim::{self, generate_atoms, resolve_burn_in, Window, DEFAULT_BURN_IN_CAP, DEFAULT_PRUNE_TOL};
use crate::quad;
use crate::tail::eta_bar;

/// Slope tolerance of the trend test, per dyadic block, on `ln` ratios.
pub const TREND_TOL: f64 = 0.05;
/// Default first dyadic block exponent.
pub const DEFAULT_J0: u32 = 4;

/// Normalizing function `f` in `limsup X(t)/f(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Normalizer {
    /// `t^a`
    Power { a: f64 },
    /// `κ log t`
    Log { kappa: f64 },
    /// `κ log t / log log t`
    LogOverLogLog { kappa: f64 },
}

/// Family of a [`Normalizer`] without its constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizerFamily {
    Power,
    Log,
    LogOverLogLog,
}

impl Normalizer {
    pub fn validate(&self) -> Result<()> {
        let v = match *self {
            Normalizer::Power { a } => a,
            Normalizer::Log { kappa } | Normalizer::LogOverLogLog { kappa } => kappa,
        };
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(domain(format!("normalizer constant must be positive, got {self:?}")))
        }
    }

    pub fn family(&self) -> NormalizerFamily {
        match self {
            Normalizer::Power { .. } => NormalizerFamily::Power,
            Normalizer::Log { .. } => NormalizerFamily::Log,
            Normalizer::LogOverLogLog { .. } => NormalizerFamily::LogOverLogLog,
        }
    }

    /// Start `t₀` of the range where `f` is positive and nondecreasing.
    pub fn domain_start(&self) -> f64 {
        match self {
            Normalizer::Power { .. } => 1.0,
            Normalizer::Log { .. } => E,
            // d/dt (log t / log log t) > 0 only past t = e^e
            Normalizer::LogOverLogLog { .. } => E.powf(E),
        }
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Normalizer::Power { a } => t.powf(a),
            Normalizer::Log { kappa } => kappa * t.ln(),
            Normalizer::LogOverLogLog { kappa } => {
                let l = t.ln();
                kappa * l / l.ln()
            }
        }
    }

    /// Strictly increasing, differentiable, with submultiplicative inverse.
    pub fn satisfies_converse_hypotheses(&self) -> bool {
        matches!(self, Normalizer::Power { .. } | Normalizer::Log { .. })
    }

    /// Solution of `f(t) = y` when available in closed form.
    fn inverse(&self, y: f64) -> Option<f64> {
        match *self {
            Normalizer::Power { a } => Some(y.powf(1.0 / a)),
            Normalizer::Log { kappa } => Some((y / kappa).exp()),
            Normalizer::LogOverLogLog { .. } => None,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Normalizer::Power { a } => format!("t^{a}"),
            Normalizer::Log { kappa } => format!("{kappa}*log(t)"),
            Normalizer::LogOverLogLog { kappa } => format!("{kappa}*log(t)/log(log(t))"),
        }
    }
}

/// Which half of the integral test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `∫ λ̄(K f(t)) dt = ∞` forces `limsup X/f ≥ K`.
    Lower,
    /// `∫ (λ̄ + η̄)(L f(t)) dt < ∞` forces `limsup X/f ≤ 2L`.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    Diverges,
    Converges,
}

impl fmt::Display for Convergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convergence::Diverges => "diverges",
            Convergence::Converges => "converges",
        })
    }
}

/// Verdict of an integral test with its numeric cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralTest {
    pub verdict: Convergence,
    /// `(t, ∫_{t₀}^t g)` at `t = 1e4, 1e8, 1e12`.
    pub partial_integrals: Vec<(f64, f64)>,
    pub numeric_verdict: Convergence,
}

impl IntegralTest {
    pub fn numeric_agrees(&self) -> bool {
        self.verdict == self.numeric_verdict
    }
}

const PARTIAL_HORIZONS: [f64; 3] = [1e4, 1e8, 1e12];

fn analytic_verdict(levy: &LevyMeasureSpec, f: &Normalizer, k: f64) -> Convergence {
    use Convergence::*;
    match (*levy, *f) {
        (LevyMeasureSpec::Pareto { gamma }, Normalizer::Power { a }) => {
            if a * gamma <= 1.0 {
                Diverges
            } else {
                Converges
            }
        }
        (LevyMeasureSpec::Pareto { .. }, _) => Diverges,
        (LevyMeasureSpec::Exponential { .. }, Normalizer::Power { .. }) => Converges,
        (LevyMeasureSpec::Exponential { rate }, Normalizer::Log { kappa }) => {
            // λ̄(K κ log t) = t^{-cKκ}; η̄ only adds a lower-order factor
            if rate * k * kappa <= 1.0 {
                Diverges
            } else {
                Converges
            }
        }
        (LevyMeasureSpec::Exponential { .. }, Normalizer::LogOverLogLog { .. }) => Diverges,
        (LevyMeasureSpec::Dirac { .. } | LevyMeasureSpec::BoundedInfinite, _) => Converges,
        (LevyMeasureSpec::SlowlyVarying, _) => Diverges,
    }
}

/// Integral test for `limsup X(t)/f(t)` against the constant `k`.
///
/// The verdict is analytic. The numeric check compares the growth of the
/// partial integrals over `[1e4, 1e8]` and `[1e8, 1e12]`, so it can disagree
/// when the asymptotic behavior only sets in beyond `t = 1e12`.
pub fn integral_test(levy: &LevyMeasureSpec, f: &Normalizer, k: f64, side: Side) -> Result<IntegralTest> {
    levy.validate()?;
    f.validate()?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(domain(format!("integral test constant must be positive, got {k}")));
    }
    let integrand = |t: f64| -> f64 {
        let y = k * f.eval(t);
        let lam = levy.mass_above(y.max(0.0));
        match side {
            Side::Lower => lam,
            Side::Upper => lam + eta_bar(levy, y).unwrap_or(f64::INFINITY),
        }
    };
    let t0 = f.domain_start().max(1.0);
    let v0 = t0.ln();
    // discontinuities of λ̄ ∘ (K f), mapped to v = ln t
    let breaks: Vec<f64> = levy
        .breakpoints()
        .into_iter()
        .filter_map(|b| f.inverse(b / k))
        .filter(|t| t.is_finite() && *t > t0)
        .map(f64::ln)
        .collect();

    let mut partial_integrals = Vec::with_capacity(PARTIAL_HORIZONS.len());
    let mut acc = 0.0;
    let mut lo = v0;
    for &horizon in &PARTIAL_HORIZONS {
        let hi = horizon.ln();
        let q = quad::integrate(|v: f64| integrand(v.exp()) * v.exp(), lo, hi, &breaks, 1e-8, 1e-300)?;
        acc += q.value;
        partial_integrals.push((horizon, acc));
        lo = hi;
    }
    let d1 = partial_integrals[1].1 - partial_integrals[0].1;
    let d2 = partial_integrals[2].1 - partial_integrals[1].1;
    let numeric_verdict = if d2 > 0.0 && d2 >= 0.5 * d1 { Convergence::Diverges } else { Convergence::Converges };

    Ok(IntegralTest { verdict: analytic_verdict(levy, f, k), partial_integrals, numeric_verdict })
}

/// Almost-sure growth regime of a catalog jump measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `limsup X/f ∈ {0, ∞}` for every admissible `f`.
    HeavyDichotomy,
    /// `limsup X/log t` is bounded away from 0 and ∞.
    ExponentialTail,
    /// `limsup X log log t / log t` is bounded away from 0 and ∞.
    BoundedJumps,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthClass {
    pub regime: Regime,
    pub normalizer: NormalizerFamily,
    /// Power `1/γ` separating `limsup X/t^a = ∞` (below) from `0` (above);
    /// infinite when every power diverges.
    pub critical_exponent: Option<f64>,
    /// Bounds on the limsup for the natural normalizer with unit constant.
    /// For `Dirac(z0)` the lower bound is `z0 e^{-ε}` for any `ε` with
    /// `π((0, ε)) > 0`; this field carries the `ε → 0` value `z0`.
    pub lower: f64,
    pub upper: f64,
}

impl GrowthClass {
    /// Bounds specialized to a mixing measure (only the Dirac lower bound
    /// depends on `π`, through the bottom of its support).
    pub fn bounds_with_mixing(&self, levy: &LevyMeasureSpec, pi: &MixingMeasureSpec) -> (f64, f64) {
        match levy {
            LevyMeasureSpec::Dirac { .. } => {
                let bottom = match *pi {
                    MixingMeasureSpec::Gamma { .. } => 0.0,
                    MixingMeasureSpec::Uniform { a, .. } => a,
                    MixingMeasureSpec::PointMass { x0 } => x0,
                    MixingMeasureSpec::InverseFirstMoment { .. } => 1.0,
                };
                (self.lower * (-bottom).exp(), self.upper)
            }
            _ => (self.lower, self.upper),
        }
    }
}

pub fn classify_growth(levy: &LevyMeasureSpec) -> Result<GrowthClass> {
    levy.validate()?;
    Ok(match *levy {
        LevyMeasureSpec::Pareto { gamma } => GrowthClass {
            regime: Regime::HeavyDichotomy,
            normalizer: NormalizerFamily::Power,
            critical_exponent: Some(1.0 / gamma),
            lower: 0.0,
            upper: f64::INFINITY,
        },
        LevyMeasureSpec::SlowlyVarying => GrowthClass {
            regime: Regime::HeavyDichotomy,
            normalizer: NormalizerFamily::Power,
            critical_exponent: Some(f64::INFINITY),
            lower: 0.0,
            upper: f64::INFINITY,
        },
        LevyMeasureSpec::Exponential { rate } => GrowthClass {
            regime: Regime::ExponentialTail,
            normalizer: NormalizerFamily::Log,
            critical_exponent: None,
            lower: 1.0 / rate,
            upper: 2.0 / rate,
        },
        LevyMeasureSpec::Dirac { z0 } => GrowthClass {
            regime: Regime::BoundedJumps,
            normalizer: NormalizerFamily::LogOverLogLog,
            critical_exponent: None,
            lower: z0,
            upper: 2.0 * z0,
        },
        LevyMeasureSpec::BoundedInfinite => GrowthClass {
            regime: Regime::BoundedJumps,
            normalizer: NormalizerFamily::LogOverLogLog,
            critical_exponent: None,
            lower: 0.0,
            upper: f64::INFINITY,
        },
    })
}

/// Trend of the block maxima.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrendVerdict {
    Diverging,
    Vanishing,
    BoundedAway,
}

impl fmt::Display for TrendVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrendVerdict::Diverging => "diverging",
            TrendVerdict::Vanishing => "vanishing",
            TrendVerdict::BoundedAway => "bounded-away",
        })
    }
}

/// Theil–Sen slope: median of pairwise slopes.
pub fn theil_sen_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let mut slopes = Vec::with_capacity(x.len() * x.len() / 2);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[j] != x[i] {
                slopes.push((y[j] - y[i]) / (x[j] - x[i]));
            }
        }
    }
    if slopes.is_empty() {
        return None;
    }
    slopes.sort_by(f64::total_cmp);
    let n = slopes.len();
    Some(if n % 2 == 1 { slopes[n / 2] } else { 0.5 * (slopes[n / 2 - 1] + slopes[n / 2]) })
}

fn trend_verdict(slope: f64, tol: f64) -> TrendVerdict {
    if slope < -tol {
        TrendVerdict::Vanishing
    } else if slope > tol {
        TrendVerdict::Diverging
    } else {
        TrendVerdict::BoundedAway
    }
}

/// Simulation settings for the growth experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthOptions {
    pub j0: u32,
    /// Small-jump truncation; `None` uses [`pathsim::default_eps`].
    pub eps: Option<f64>,
    /// Burn-in `B`; `None` chooses it by bisection.
    pub burn_in: Option<f64>,
    pub burn_in_cap: f64,
    pub prune_tol: f64,
    pub trend_tol: f64,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        Self {
            j0: DEFAULT_J0,
            eps: None,
            burn_in: None,
            burn_in_cap: DEFAULT_BURN_IN_CAP,
            prune_tol: DEFAULT_PRUNE_TOL,
            trend_tol: TREND_TOL,
        }
    }
}

/// Block maxima of one replicate.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateRecord {
    pub block_max_ratio: Vec<f64>,
    pub running_max: Vec<f64>,
    pub slope: f64,
    pub verdict: TrendVerdict,
    pub pruning_error: f64,
    pub atoms: usize,
}

impl ReplicateRecord {
    pub fn terminal_running_max(&self) -> f64 {
        *self.running_max.last().expect("at least one block")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSummary {
    pub median: f64,
    pub min: f64,
    pub max: f64,
    pub diverging: usize,
    pub vanishing: usize,
    pub bounded_away: usize,
    pub verdict: TrendVerdict,
}

/// Block-maxima record of `X(t)/f(t)` across replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub normalizer: Normalizer,
    pub j0: u32,
    pub block_starts: Vec<f64>,
    pub block_ends: Vec<f64>,
    pub burn_in: f64,
    pub burn_in_bound: f64,
    pub burn_in_capped: bool,
    pub eps: f64,
    pub replicates: Vec<ReplicateRecord>,
    pub summary: GrowthSummary,
}

impl GrowthReport {
    pub fn count(&self, verdict: TrendVerdict) -> usize {
        self.replicates.iter().filter(|r| r.verdict == verdict).count()
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn dyadic_blocks(j0: u32, horizon: f64) -> (Vec<f64>, Vec<f64>) {
    let mut starts = Vec::new();
    let mut ends = Vec::new();
    let mut j = j0;
    loop {
        let s = 2f64.powi(j as i32);
        if s >= horizon {
            break;
        }
        starts.push(s);
        ends.push((2.0 * s).min(horizon));
        j += 1;
    }
    (starts, ends)
}

/// Empirical limsup of `X(t)/f(t)`; see [`empirical_limsup_many`].
pub fn empirical_limsup(
    levy: &LevyMeasureSpec,
    pi: &MixingMeasureSpec,
    f: &Normalizer,
    horizon: f64,
    replicates: usize,
    seed: u64,
    opts: &GrowthOptions,
) -> Result<GrowthReport> {
    let mut reports = empirical_limsup_many(levy, pi, std::slice::from_ref(f), horizon, replicates, seed, opts)?;
    Ok(reports.remove(0))
}

/// Simulates `replicates` paths on `[-B, T]` and, for each normalizer,
/// records the exact supremum of `X(t)/f(t)` over each dyadic block
/// `[2^j, 2^{j+1}]`. Between arrivals `X` decays while `f` does not
/// decrease, so the block supremum is attained at the block start or at an
/// arrival. Replicate `r` uses stream `r` of `seed`; replicates run on the
/// current rayon pool and the result does not depend on its size.
pub fn empirical_limsup_many(
    levy: &LevyMeasureSpec,
    pi: &MixingMeasureSpec,
    normalizers: &[Normalizer],
    horizon: f64,
    replicates: usize,
    seed: u64,
    opts: &GrowthOptions,
) -> Result<Vec<GrowthReport>> {
    levy.validate()?;
    pi.validate()?;
    if matches!(pi, MixingMeasureSpec::InverseFirstMoment { .. }) {
        return Err(domain(
            "mixing measures with divergent mass are not supported here; use largexi_experiment",
        ));
    }
    if pi.moment(MomentOrder::Inverse).value().is_none() {
        return Err(domain("m_{-1}(pi) is infinite: the process does not exist"));
    }
    if normalizers.is_empty() || replicates == 0 {
        return Err(domain("need at least one normalizer and one replicate"));
    }
    let first_block = 2f64.powi(opts.j0 as i32);
    if !(horizon >= 16.0 * first_block) {
        return Err(domain(format!(
            "horizon too short: T = {horizon} < 2^(j0+4) = {}",
            16.0 * first_block
        )));
    }
    for f in normalizers {
        f.validate()?;
        if first_block < f.domain_start() {
            return Err(domain(format!(
                "first block 2^{} starts before the domain of {} (t0 = {})",
                opts.j0,
                f.label(),
                f.domain_start()
            )));
        }
    }

    let eps = opts.eps.unwrap_or_else(|| pathsim::default_eps(levy));
    let auto = resolve_burn_in(pi, levy, eps, opts.burn_in, opts.burn_in_cap)?;
    let (burn_in, burn_in_bound, burn_in_capped) = (auto.burn_in, auto.bound.value(), auto.capped);
    let window = Window::new(burn_in, horizon)?;
    let (starts, ends) = dyadic_blocks(opts.j0, horizon);
    let js: Vec<f64> = (0..starts.len()).map(|i| (opts.j0 as usize + i) as f64).collect();

    let per_replicate: Vec<Vec<ReplicateRecord>> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| -> Result<Vec<ReplicateRecord>> {
            let path = generate_atoms(levy, pi, window, eps, seed, r)?.with_prune_tol(opts.prune_tol)?;
            let atoms = path.atoms();
            let mut sweep = path.sweep();
            let mut block_max = vec![vec![0.0f64; starts.len()]; normalizers.len()];
            let mut idx = atoms.partition_point(|a| a.tau <= starts[0]);
            for (b, (&s, &e)) in starts.iter().zip(&ends).enumerate() {
                let x = sweep.value_at(s);
                for (k, f) in normalizers.iter().enumerate() {
                    block_max[k][b] = x / f.eval(s);
                }
                while idx < atoms.len() && atoms[idx].tau <= e {
                    let t = atoms[idx].tau;
                    let x = sweep.value_at(t);
                    for (k, f) in normalizers.iter().enumerate() {
                        let ratio = x / f.eval(t);
                        if ratio > block_max[k][b] {
                            block_max[k][b] = ratio;
                        }
                    }
                    idx += 1;
                }
            }
            let pruning_error = sweep.error_bound();
            Ok(block_max
                .into_iter()
                .map(|bm| {
                    let mut running = Vec::with_capacity(bm.len());
                    let mut m = 0.0f64;
                    for &v in &bm {
                        m = m.max(v);
                        running.push(m);
                    }
                    let logs: Vec<f64> = bm.iter().map(|&v| v.max(1e-300).ln()).collect();
                    let slope = theil_sen_slope(&js, &logs).unwrap_or(0.0);
                    ReplicateRecord {
                        block_max_ratio: bm,
                        running_max: running,
                        slope,
                        verdict: trend_verdict(slope, opts.trend_tol),
                        pruning_error,
                        atoms: atoms.len(),
                    }
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let reports = normalizers
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let records: Vec<ReplicateRecord> = per_replicate.iter().map(|recs| recs[k].clone()).collect();
            let mut terminal: Vec<f64> = records.iter().map(ReplicateRecord::terminal_running_max).collect();
            let min = terminal.iter().copied().fold(f64::INFINITY, f64::min);
            let max = terminal.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let med = median(&mut terminal);
            let count = |v| records.iter().filter(|r| r.verdict == v).count();
            let (diverging, vanishing, bounded_away) =
                (count(TrendVerdict::Diverging), count(TrendVerdict::Vanishing), count(TrendVerdict::BoundedAway));
            let verdict = if diverging > vanishing.max(bounded_away) {
                TrendVerdict::Diverging
            } else if vanishing > diverging.max(bounded_away) {
                TrendVerdict::Vanishing
            } else {
                TrendVerdict::BoundedAway
            };
            GrowthReport {
                normalizer: *f,
                j0: opts.j0,
                block_starts: starts.clone(),
                block_ends: ends.clone(),
                burn_in,
                burn_in_bound,
                burn_in_capped,
                eps,
                replicates: records,
                summary: GrowthSummary { median: med, min, max, diverging, vanishing, bounded_away, verdict },
            }
        })
        .collect();
    Ok(reports)
}

/// One truncation level of the divergent-mass experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct LargeXiRow {
    pub upper: f64,
    /// `m_0(π_M) = log M`.
    pub mass: f64,
    pub burn_in: f64,
    pub median_sup: f64,
    /// Mean number of atoms arriving in `[0, 1]`.
    pub mean_arrivals: f64,
    /// Standard error of `mean_arrivals`.
    pub arrivals_se: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LargeXiReport {
    pub rows: Vec<LargeXiRow>,
    pub warning: Option<String>,
}

/// Median of `sup_{[0,1]} X` under `π = InverseFirstMoment(M)` for each `M`
/// in `m_grid`. As `M` grows, `m_0(π_M) = log M` grows and so does the
/// number of unbounded jumps landing in `[0, 1]`.
pub fn largexi_experiment(
    levy: &LevyMeasureSpec,
    m_grid: &[f64],
    replicates: usize,
    seed: u64,
    opts: &GrowthOptions,
) -> Result<LargeXiReport> {
    levy.validate()?;
    if m_grid.is_empty() || replicates == 0 {
        return Err(domain("need a nonempty M grid and at least one replicate"));
    }
    if m_grid.windows(2).any(|w| !(w[0] < w[1])) || !(m_grid[0] > 1.0) {
        return Err(domain("M grid must be strictly increasing and above 1"));
    }
    let warning = levy.has_bounded_support().then(|| {
        format!(
            "{} has bounded jumps: sup over [0,1] stays bounded by the support edge, \
             the unboundedness conclusion needs unbounded jump sizes",
            levy.description()
        )
    });
    let eps = opts.eps.unwrap_or_else(|| pathsim::default_eps(levy));
    let mut rows = Vec::with_capacity(m_grid.len());
    for (i, &upper) in m_grid.iter().enumerate() {
        let pi = MixingMeasureSpec::InverseFirstMoment { upper };
        let burn_in = resolve_burn_in(&pi, levy, eps, opts.burn_in, opts.burn_in_cap)?.burn_in;
        let window = Window::new(burn_in, 1.0)?;
        let base = i as u64 * replicates as u64;
        let results: Vec<(f64, usize)> = (0..replicates as u64)
            .into_par_iter()
            .map(|r| -> Result<(f64, usize)> {
                let path = generate_atoms(levy, &pi, window, eps, seed, base + r)?.with_prune_tol(opts.prune_tol)?;
                let arrivals = path.atoms().iter().filter(|a| a.tau >= 0.0 && a.tau <= 1.0).count();
                Ok((path.sup(0.0, 1.0)?, arrivals))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sups: Vec<f64> = results.iter().map(|r| r.0).collect();
        let n = results.len() as f64;
        let mean = results.iter().map(|r| r.1 as f64).sum::<f64>() / n;
        let var = results.iter().map(|r| (r.1 as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
        rows.push(LargeXiRow {
            upper,
            mass: upper.ln(),
            burn_in,
            median_sup: median(&mut sups),
            mean_arrivals: mean,
            arrivals_se: (var / n).sqrt(),
        });
    }
    Ok(LargeXiReport { rows, warning })
}
