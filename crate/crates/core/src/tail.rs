//! Tail functionals of the marginal Lévy measure.
//!
//! The marginal Lévy measure `η` of `X(t)` has tail
//! `η̄(r) = ∫_r^∞ λ̄(z)/z dz = ∫_0^∞ λ̄(r e^u) du`. This module computes it,
//! compares it with `λ̄`, classifies dominated variation and moments, and
//! evaluates the log-mgf `Φ(s)` and Chernoff bounds for bounded jumps.

use std::f64::consts::LN_2;

use crate::error::{domain, Result};
use crate::measures::{LevyMeasureSpec, MixingMeasureSpec, MomentOrder};
use crate::quad;

/// Relative tolerance for `η̄` and `Φ` quadratures.
pub const TAIL_REL_TOL: f64 = 1e-8;
/// Ratios are only reported where `λ̄(r)` is at least this large.
pub const RATIO_FLOOR: f64 = 1e-300;

/// `η̄(r)` for `r > 0`.
pub fn eta_bar(levy: &LevyMeasureSpec, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("eta_bar requires r > 0, got {r}")));
    }
    levy.validate()?;
    let value = match *levy {
        LevyMeasureSpec::Pareto { gamma } => {
            if r >= 1.0 {
                r.powf(-gamma) / gamma
            } else {
                -r.ln() + 1.0 / gamma
            }
        }
        LevyMeasureSpec::Dirac { z0 } => {
            if r < z0 {
                (z0 / r).ln()
            } else {
                0.0
            }
        }
        LevyMeasureSpec::BoundedInfinite => {
            if r < 1.0 {
                0.5 * r.ln().powi(2)
            } else {
                0.0
            }
        }
        LevyMeasureSpec::SlowlyVarying => {
            if r >= std::f64::consts::E {
                1.0 / r.ln()
            } else {
                2.0 - r.ln()
            }
        }
        LevyMeasureSpec::Exponential { .. } => eta_bar_quadrature(levy, r)?,
    };
    Ok(value)
}

/// `η̄(r)` by quadrature in `u` of `λ̄(r e^u)`, for any catalog member.
pub fn eta_bar_quadrature(levy: &LevyMeasureSpec, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("eta_bar requires r > 0, got {r}")));
    }
    levy.tail_log_integral(r, TAIL_REL_TOL)
}

/// Geometric grid of `n ≥ 2` points from `rmin` to `rmax`.
pub fn geometric_grid(rmin: f64, rmax: f64, n: usize) -> Result<Vec<f64>> {
    if !(rmin > 0.0 && rmax > rmin && n >= 2) {
        return Err(domain(format!("bad geometric grid: rmin={rmin}, rmax={rmax}, n={n}")));
    }
    let step = (rmax / rmin).ln() / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { rmax } else { rmin * (step * i as f64).exp() })
        .collect())
}

fn check_geometric(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(domain("grid needs at least two points"));
    }
    let q = grid[1] / grid[0];
    if !(q > 1.0) || grid.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        return Err(domain("grid must be positive and increasing"));
    }
    for w in grid.windows(2) {
        if ((w[1] / w[0]) / q - 1.0).abs() > 1e-6 {
            return Err(domain("grid must be geometric"));
        }
    }
    Ok(())
}

/// Table of `λ̄`, `η̄` and their ratio over a level grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TailTable {
    pub r_grid: Vec<f64>,
    pub lambda_bar: Vec<f64>,
    pub eta_bar: Vec<f64>,
    /// `η̄(r)/λ̄(r)`, absent where `λ̄(r) < RATIO_FLOOR`.
    pub ratio: Vec<Option<f64>>,
}

pub fn eta_lambda_ratio_scan(levy: &LevyMeasureSpec, r_grid: &[f64]) -> Result<TailTable> {
    check_geometric(r_grid)?;
    if r_grid[0] < 1.0 {
        return Err(domain(format!("ratio scan needs r_min >= 1, got {}", r_grid[0])));
    }
    let mut table = TailTable {
        r_grid: r_grid.to_vec(),
        lambda_bar: Vec::with_capacity(r_grid.len()),
        eta_bar: Vec::with_capacity(r_grid.len()),
        ratio: Vec::with_capacity(r_grid.len()),
    };
    for &r in r_grid {
        let lb = levy.tail(r)?;
        let eb = eta_bar(levy, r)?;
        table.lambda_bar.push(lb);
        table.eta_bar.push(eb);
        table.ratio.push((lb >= RATIO_FLOOR).then(|| eb / lb));
    }
    Ok(table)
}

/// Dominated-variation diagnostics of `λ̄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomVarIndex {
    /// `max_grid λ̄(x)/λ̄(2x)`; infinite when the tail dies between `x` and `2x`.
    pub ratio_sup: f64,
    /// Catalog classification of `λ̄ ∈ D`.
    pub is_dominated: bool,
    /// Catalog classification of `limsup λ̄(2r)/λ̄(r) < 1`.
    pub growth_condition_holds: bool,
    /// Same two questions answered from the grid alone.
    pub numeric_is_dominated: bool,
    pub numeric_growth_condition: bool,
}

impl DomVarIndex {
    pub fn agrees(&self) -> bool {
        self.is_dominated == self.numeric_is_dominated && self.growth_condition_holds == self.numeric_growth_condition
    }
}

/// Catalog answer to `(λ̄ ∈ D, limsup λ̄(2r)/λ̄(r) < 1)`.
pub fn domvar_classification(levy: &LevyMeasureSpec) -> (bool, bool) {
    match levy {
        LevyMeasureSpec::Pareto { .. } => (true, true),
        LevyMeasureSpec::Exponential { .. } => (false, true),
        LevyMeasureSpec::Dirac { .. } | LevyMeasureSpec::BoundedInfinite => (false, false),
        LevyMeasureSpec::SlowlyVarying => (true, false),
    }
}

pub fn domvar_index(levy: &LevyMeasureSpec, r_grid: &[f64]) -> Result<DomVarIndex> {
    check_geometric(r_grid)?;
    if r_grid[r_grid.len() - 1] / r_grid[0] < 1e4 * (1.0 - 1e-12) {
        return Err(domain("domvar scan needs a grid spanning at least 4 decades"));
    }
    let mut doubling = Vec::with_capacity(r_grid.len());
    let mut halving = Vec::with_capacity(r_grid.len());
    let mut vanishes = false;
    let support = levy.support_sup();
    for &x in r_grid {
        if x >= support {
            vanishes = true;
            continue;
        }
        let (a, b) = (levy.tail(x)?, levy.tail(2.0 * x)?);
        if a == 0.0 {
            // underflow inside the support: the tail decays faster than any ratio
            doubling.push(f64::INFINITY);
            halving.push(0.0);
            continue;
        }
        doubling.push(if b == 0.0 { f64::INFINITY } else { a / b });
        halving.push(b / a);
    }
    let ratio_sup = doubling.iter().copied().fold(f64::NAN, f64::max);
    let half = doubling.len() / 2;

    let numeric_is_dominated = !vanishes && !doubling.is_empty() && doubling.iter().all(|q| q.is_finite()) && {
        let lower = doubling[..half.max(1)].iter().copied().fold(0.0, f64::max);
        let upper = doubling[half..].iter().copied().fold(0.0, f64::max);
        upper <= 1.5 * lower
    };
    let numeric_growth_condition = !vanishes && !halving.is_empty() && {
        let upper = &halving[half..];
        let mid = upper[0];
        let last = upper[upper.len() - 1];
        upper.iter().all(|&g| g < 1.0) && last <= mid + 1e-12
    };

    let (is_dominated, growth_condition_holds) = domvar_classification(levy);
    Ok(DomVarIndex {
        ratio_sup,
        is_dominated,
        growth_condition_holds,
        numeric_is_dominated,
        numeric_growth_condition,
    })
}

/// Constants `(lower, upper)` with `lower·λ̄(r) ≤ η̄(r) ≤ upper·λ̄(r)` from the
/// dominated-variation argument with doubling constant `c1 = sup λ̄(x)/λ̄(2x)`
/// and contraction `1 - δ = sup λ̄(2r)/λ̄(r)`. `upper` is `None` when the
/// contraction fails.
pub fn domination_constants(levy: &LevyMeasureSpec, r_grid: &[f64]) -> Result<(f64, Option<f64>)> {
    let idx = domvar_index(levy, r_grid)?;
    if !idx.is_dominated {
        return Err(domain(format!("{} is not dominatedly varying", levy.description())));
    }
    let c1 = idx.ratio_sup;
    let lower = LN_2 / c1;
    let upper = if idx.growth_condition_holds {
        let contraction = r_grid
            .iter()
            .map(|&r| Ok(levy.tail(2.0 * r)? / levy.tail(r)?))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        Some(LN_2 / (1.0 - contraction))
    } else {
        None
    };
    Ok((lower, upper))
}

/// Finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    Infinite,
}

impl Finiteness {
    fn of(finite: bool) -> Self {
        if finite {
            Finiteness::Finite
        } else {
            Finiteness::Infinite
        }
    }
}

impl std::fmt::Display for Finiteness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Finiteness::Finite => "finite",
            Finiteness::Infinite => "infinite",
        })
    }
}

/// Whether `E X(t)^β < ∞`, i.e. `∫_1^∞ y^{β-1} λ̄(y) dy < ∞`.
pub fn moment_classifier(levy: &LevyMeasureSpec, beta: f64) -> Result<Finiteness> {
    if !(beta > 0.0) {
        return Err(domain(format!("moment order beta must be > 0, got {beta}")));
    }
    levy.validate()?;
    let finite = match *levy {
        LevyMeasureSpec::Pareto { gamma } => beta < gamma,
        LevyMeasureSpec::Exponential { .. } | LevyMeasureSpec::Dirac { .. } | LevyMeasureSpec::BoundedInfinite => {
            true
        }
        LevyMeasureSpec::SlowlyVarying => false,
    };
    Ok(Finiteness::of(finite))
}

/// Whether `∫_{(1,∞)} e^{a z} λ(dz) < ∞`.
pub fn exp_moment_classifier(levy: &LevyMeasureSpec, a: f64) -> Result<Finiteness> {
    if !(a > 0.0) {
        return Err(domain(format!("exponential moment rate must be > 0, got {a}")));
    }
    levy.validate()?;
    let finite = match *levy {
        LevyMeasureSpec::Exponential { rate } => a < rate,
        LevyMeasureSpec::Dirac { .. } | LevyMeasureSpec::BoundedInfinite => true,
        LevyMeasureSpec::Pareto { .. } | LevyMeasureSpec::SlowlyVarying => false,
    };
    Ok(Finiteness::of(finite))
}

/// `Φ(s) = ∫_0^∞ λ̄(z) (e^{sz} - 1)/z dz` for jump measures with bounded support.
///
/// This is the log-mgf of `X(t)` when `m_{-1}(π) = 1`; in general the
/// log-mgf is `m_{-1}(π) Φ(s)`.
pub fn mgf_log(levy: &LevyMeasureSpec, s: f64) -> Result<f64> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(domain(format!("mgf argument must be finite and >= 0, got {s}")));
    }
    levy.validate()?;
    if !levy.has_bounded_support() {
        return Err(domain(format!(
            "the mgf of X(t) is infinite for unbounded jump support ({})",
            levy.description()
        )));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let top = levy.support_sup();
    let q = quad::integrate(
        |z: f64| levy.mass_above(z) * (s * z).exp_m1() / z,
        0.0,
        top,
        &levy.breakpoints(),
        TAIL_REL_TOL,
        0.0,
    )?;
    Ok(q.value)
}

/// `m_{-1}(π) Φ(s)`, the log-mgf of `X(t)`.
pub fn process_mgf_log(levy: &LevyMeasureSpec, pi: &MixingMeasureSpec, s: f64) -> Result<f64> {
    let m = pi
        .moment(MomentOrder::Inverse)
        .value()
        .ok_or_else(|| domain("m_{-1}(pi) is infinite"))?;
    Ok(m * mgf_log(levy, s)?)
}

/// Markov bound `P(X(t) > d) ≤ exp(Φ(s) - s d)`.
pub fn chernoff_tail_bound(levy: &LevyMeasureSpec, d: f64, s: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(domain(format!("Chernoff level must be > 0, got {d}")));
    }
    Ok((mgf_log(levy, s)? - s * d).exp().min(1.0))
}

/// Chernoff bound minimized over `s` by golden-section search; returns
/// `(s*, bound)`. The exponent `Φ(s) - s d` is convex in `s`.
pub fn optimal_chernoff_bound(levy: &LevyMeasureSpec, d: f64) -> Result<(f64, f64)> {
    if !(d > 0.0) {
        return Err(domain(format!("Chernoff level must be > 0, got {d}")));
    }
    let exponent = |s: f64| -> Result<f64> { Ok(mgf_log(levy, s)? - s * d) };
    let top = levy.support_sup();
    if !top.is_finite() {
        return Err(domain("Chernoff bound needs bounded jump support"));
    }
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0, 60.0 / top);
    let mut c = b - inv_phi * (b - a);
    let mut e = a + inv_phi * (b - a);
    let (mut fc, mut fe) = (exponent(c)?, exponent(e)?);
    for _ in 0..80 {
        if fc < fe {
            b = e;
            e = c;
            fe = fc;
            c = b - inv_phi * (b - a);
            fc = exponent(c)?;
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + inv_phi * (b - a);
            fe = exponent(e)?;
        }
    }
    let s = 0.5 * (a + b);
    Ok((s, exponent(s)?.exp().min(1.0)))
}

/// `(T m_0(π) + γ^{-1} m_{-1}(π)) λ̄(r)`, the asymptotic tail of
/// `sup_{[0,T]} X` for a Pareto jump measure.
pub fn sup_tail_prediction(levy: &LevyMeasureSpec, pi: &MixingMeasureSpec, horizon: f64, r: f64) -> Result<f64> {
    let LevyMeasureSpec::Pareto { gamma } = *levy else {
        return Err(domain(format!(
            "supremum tail prediction needs a regularly varying (Pareto) tail, got {}",
            levy.description()
        )));
    };
    levy.validate()?;
    if !(horizon >= 0.0 && r > 0.0) {
        return Err(domain(format!("need T >= 0 and r > 0, got T={horizon}, r={r}")));
    }
    let m0 = pi.moment(MomentOrder::Mass).value().ok_or_else(|| domain("m_0(pi) is infinite"))?;
    let m_inv = pi
        .moment(MomentOrder::Inverse)
        .value()
        .ok_or_else(|| domain("m_{-1}(pi) is infinite"))?;
    Ok((horizon * m0 + m_inv / gamma) * levy.tail(r)?)
}
