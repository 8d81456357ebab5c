//! Poisson-atom simulation of supOU sample paths.
//!
//! A path is the finite sum `X(t) = Σ_{τ_k ≤ t} ζ_k e^{-ξ_k (t - τ_k)}` over
//! the atoms of the Poisson random measure with intensity
//! `π(dx) ds λ(dz)` on a window `[-B, T]`, with jumps at or below `eps`
//! dropped. Evaluation is a single forward sweep over atoms sorted by arrival
//! time with an active set that sheds atoms once their contribution falls
//! under `prune_tol`.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{domain, Result, SupouError};
use crate::measures::{JumpSampler, LevyMeasureSpec, MixingMeasureSpec, MomentOrder, RateSampler};
use crate::rng::{stream_rng, StreamRng};

pub const DEFAULT_PRUNE_TOL: f64 = 1e-12;
/// Target for the automatically chosen burn-in.
pub const BURN_IN_TARGET: f64 = 1e-3;
/// Largest burn-in the bisection will consider.
pub const BURN_IN_MAX: f64 = 1e6;
/// Default jump cap for the burn-in bound of infinite-mean jump laws.
pub const DEFAULT_BURN_IN_CAP: f64 = 1e3;

/// Default small-jump truncation: none for finite-mass `λ`.
pub fn default_eps(levy: &LevyMeasureSpec) -> f64 {
    match levy {
        LevyMeasureSpec::BoundedInfinite => 1e-4,
        _ => 0.0,
    }
}

/// One Poisson point: arrival time, decay rate, jump size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub tau: f64,
    pub xi: f64,
    pub zeta: f64,
}

impl Atom {
    /// Contribution of this atom at time `t ≥ tau`.
    #[inline]
    pub fn contribution(&self, t: f64) -> f64 {
        self.zeta * (-self.xi * (t - self.tau)).exp()
    }
}

/// Simulation window `[-burn_in, horizon]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub burn_in: f64,
    pub horizon: f64,
}

impl Window {
    pub fn new(burn_in: f64, horizon: f64) -> Result<Self> {
        if !(burn_in >= 0.0 && burn_in.is_finite()) {
            return Err(domain(format!("burn-in B must be finite and >= 0, got {burn_in}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(domain(format!("horizon T must be finite and > 0, got {horizon}")));
        }
        Ok(Self { burn_in, horizon })
    }

    pub fn length(&self) -> f64 {
        self.burn_in + self.horizon
    }
}

/// Atoms of one realization together with the metadata needed to reproduce
/// and certify it.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    atoms: Vec<Atom>,
    window: Window,
    eps: f64,
    seed: u64,
    stream: u64,
    prune_tol: f64,
}

/// Values of a path at query times, with the pruning error certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub values: Vec<f64>,
    /// Number of atoms dropped from the active set during the sweep.
    pub pruned: usize,
    /// `prune_tol × pruned`; bounds the absolute error of every value.
    pub pruning_error: f64,
}

/// Simulates the atoms of `μ` on `window` with jumps above `eps`.
///
/// The atom count is `Poisson(m_0(π) (T + B) λ̄(eps))` and the marks are
/// independent: `τ ~ U[-B, T]`, `ξ ~ π / m_0(π)`, `ζ ~ λ|_{(eps,∞)} / λ̄(eps)`.
/// The result is a pure function of its arguments.
pub fn generate_atoms(
    levy: &LevyMeasureSpec,
    pi: &MixingMeasureSpec,
    window: Window,
    eps: f64,
    seed: u64,
    stream: u64,
) -> Result<SamplePath> {
    let mut rng = stream_rng(seed, stream);
    let atoms = draw_atoms(levy, pi, -window.burn_in, window.horizon, eps, &mut rng)?;
    Ok(SamplePath { atoms, window, eps, seed, stream, prune_tol: DEFAULT_PRUNE_TOL })
}

fn atom_rate(levy: &LevyMeasureSpec, pi: &MixingMeasureSpec, eps: f64) -> Result<(f64, JumpSampler, RateSampler)> {
    let jumps = match JumpSampler::new(*levy, eps) {
        Err(SupouError::EmptyRestriction { eps }) => {
            return Err(SupouError::Domain(format!("no jumps above truncation eps = {eps}")))
        }
        other => other?,
    };
    let rates = RateSampler::new(*pi)?;
    let m0 = pi.moment(MomentOrder::Mass).value().ok_or_else(|| {
        SupouError::InfiniteMass("m_0(pi) is infinite; use a truncated mixing measure".into())
    })?;
    Ok((m0 * jumps.mass(), jumps, rates))
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<usize> {
    if mean == 0.0 {
        return Ok(0);
    }
    if !mean.is_finite() || mean > 1e12 {
        return Err(domain(format!("expected atom count {mean} is not simulable")));
    }
    let dist = Poisson::new(mean).map_err(|e| domain(format!("poisson({mean}): {e}")))?;
    Ok(dist.sample(rng) as usize)
}

fn draw_atoms<R: Rng + ?Sized>(
    levy: &LevyMeasureSpec,
    pi: &MixingMeasureSpec,
    start: f64,
    end: f64,
    eps: f64,
    rng: &mut R,
) -> Result<Vec<Atom>> {
    let (rate, jumps, rates) = atom_rate(levy, pi, eps)?;
    let n = poisson_count(rate * (end - start), rng)?;
    let mut atoms = Vec::with_capacity(n);
    let span = end - start;
    for _ in 0..n {
        let tau = start + span * rng.random::<f64>();
        let xi = rates.sample(rng);
        let zeta = jumps.sample(rng);
        atoms.push(Atom { tau, xi, zeta });
    }
    atoms.sort_by(|a, b| a.tau.total_cmp(&b.tau));
    Ok(atoms)
}

/// One draw of `X(0)` on a burn-in window `[-burn_in, 0]` without
/// materializing or sorting the atoms. Same law as generating a path and
/// evaluating it at the origin.
pub fn sample_value_at_origin<R: Rng + ?Sized>(
    levy: &LevyMeasureSpec,
    pi: &MixingMeasureSpec,
    burn_in: f64,
    eps: f64,
    rng: &mut R,
) -> Result<f64> {
    let (rate, jumps, rates) = atom_rate(levy, pi, eps)?;
    let n = poisson_count(rate * burn_in, rng)?;
    let mut x = 0.0;
    for _ in 0..n {
        let age = burn_in * rng.random::<f64>();
        let xi = rates.sample(rng);
        let zeta = jumps.sample(rng);
        x += zeta * (-xi * age).exp();
    }
    Ok(x)
}

impl SamplePath {
    /// Builds a path from explicit atoms; they are sorted by arrival time.
    pub fn from_atoms(mut atoms: Vec<Atom>, window: Window, eps: f64) -> Result<Self> {
        for a in &atoms {
            if !(a.xi > 0.0 && a.zeta > 0.0 && a.tau.is_finite()) {
                return Err(domain(format!("invalid atom {a:?}")));
            }
        }
        atoms.sort_by(|a, b| a.tau.total_cmp(&b.tau));
        Ok(Self { atoms, window, eps, seed: 0, stream: 0, prune_tol: DEFAULT_PRUNE_TOL })
    }

    pub fn with_prune_tol(mut self, prune_tol: f64) -> Result<Self> {
        if !(prune_tol >= 0.0) {
            return Err(domain(format!("prune_tol must be >= 0, got {prune_tol}")));
        }
        self.prune_tol = prune_tol;
        Ok(self)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }
    pub fn window(&self) -> Window {
        self.window
    }
    pub fn eps(&self) -> f64 {
        self.eps
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn stream(&self) -> u64 {
        self.stream
    }
    pub fn prune_tol(&self) -> f64 {
        self.prune_tol
    }

    /// A forward cursor over the path.
    pub fn sweep(&self) -> PathSweep<'_> {
        PathSweep {
            atoms: &self.atoms,
            next: 0,
            active: Vec::new(),
            pruned: 0,
            prune_tol: self.prune_tol,
            last_t: f64::NEG_INFINITY,
        }
    }

    /// `X(t_i)` for ascending query times.
    pub fn evaluate(&self, times: &[f64]) -> Result<Evaluation> {
        if times.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(SupouError::Contract("query times must be sorted ascending".into()));
        }
        let mut sweep = self.sweep();
        let values = times.iter().map(|&t| sweep.value_at(t)).collect();
        Ok(Evaluation { values, pruned: sweep.pruned(), pruning_error: sweep.error_bound() })
    }

    /// Exact supremum of the evaluated path over `[u, v]`.
    ///
    /// The path only moves up at arrival times and decays in between, so the
    /// maximum is attained at `u` or at an arrival in `(u, v]`.
    pub fn sup(&self, u: f64, v: f64) -> Result<f64> {
        if !(u < v) {
            return Err(domain(format!("sup needs u < v, got [{u}, {v}]")));
        }
        let mut sweep = self.sweep();
        let mut best = sweep.value_at(u);
        let first = self.atoms.partition_point(|a| a.tau <= u);
        for atom in self.atoms[first..].iter().take_while(|a| a.tau <= v) {
            best = best.max(sweep.value_at(atom.tau));
        }
        Ok(best)
    }
}

/// Forward cursor that evaluates a path at nondecreasing times.
#[derive(Debug)]
pub struct PathSweep<'a> {
    atoms: &'a [Atom],
    next: usize,
    active: Vec<Atom>,
    pruned: usize,
    prune_tol: f64,
    last_t: f64,
}

impl PathSweep<'_> {
    /// `X(t)`. Panics if `t` is smaller than a previous query.
    pub fn value_at(&mut self, t: f64) -> f64 {
        assert!(t >= self.last_t, "sweep queries must be nondecreasing");
        self.last_t = t;
        while let Some(atom) = self.atoms.get(self.next) {
            if atom.tau > t {
                break;
            }
            self.active.push(*atom);
            self.next += 1;
        }
        let tol = self.prune_tol;
        let mut sum = 0.0;
        let before = self.active.len();
        self.active.retain(|a| {
            let c = a.contribution(t);
            if c < tol {
                false
            } else {
                sum += c;
                true
            }
        });
        self.pruned += before - self.active.len();
        sum
    }

    /// Index of the next atom not yet admitted.
    pub fn next_atom(&self) -> usize {
        self.next
    }

    pub fn active_len(&self) -> usize {
        self.active.len()
    }

    pub fn pruned(&self) -> usize {
        self.pruned
    }

    pub fn error_bound(&self) -> f64 {
        self.prune_tol * self.pruned as f64
    }
}

/// Mean of the pre-window contribution omitted by starting at `-B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BurnInBound {
    /// Exact mean `m_1(λ|_{(eps,∞)}) ∫ x^{-1} e^{-x(t+B)} π(dx)`.
    Mean(f64),
    /// Infinite-mean jump law: mean contribution of omitted jumps in
    /// `(eps, cap]` plus the discounted expected count of omitted jumps
    /// above `cap`.
    Capped { cap: f64, small_mean: f64, large_count: f64 },
}

impl BurnInBound {
    pub fn value(&self) -> f64 {
        match *self {
            BurnInBound::Mean(v) => v,
            BurnInBound::Capped { small_mean, large_count, .. } => small_mean + large_count,
        }
    }
}

pub fn burn_in_bound(
    pi: &MixingMeasureSpec,
    levy: &LevyMeasureSpec,
    eps: f64,
    burn_in: f64,
    t: f64,
    cap: f64,
) -> Result<BurnInBound> {
    if !(t >= 0.0 && burn_in >= 0.0) {
        return Err(domain(format!("burn-in bound needs t >= 0 and B >= 0, got t={t}, B={burn_in}")));
    }
    let discount = if burn_in.is_infinite() { 0.0 } else { pi.discounted_inverse_moment(t + burn_in)? };
    let m1 = levy.first_moment_between(eps, f64::INFINITY)?;
    if m1.is_finite() {
        return Ok(BurnInBound::Mean(m1 * discount));
    }
    if !(cap > eps && cap.is_finite()) {
        return Err(domain(format!("burn-in cap must be finite and above eps, got {cap}")));
    }
    Ok(BurnInBound::Capped {
        cap,
        small_mean: levy.first_moment_between(eps, cap)? * discount,
        large_count: levy.mass_above(cap) * discount,
    })
}

/// Burn-in chosen by bisection so that the bound at `t = 0` is at most
/// [`BURN_IN_TARGET`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutoBurnIn {
    pub burn_in: f64,
    pub bound: BurnInBound,
    /// The search hit [`BURN_IN_MAX`] without meeting the target.
    pub capped: bool,
}

pub fn auto_burn_in(pi: &MixingMeasureSpec, levy: &LevyMeasureSpec, eps: f64, cap: f64) -> Result<AutoBurnIn> {
    let at = |b: f64| burn_in_bound(pi, levy, eps, b, 0.0, cap);
    let zero = at(0.0)?;
    if zero.value() <= BURN_IN_TARGET {
        return Ok(AutoBurnIn { burn_in: 0.0, bound: zero, capped: false });
    }
    let top = at(BURN_IN_MAX)?;
    if top.value() > BURN_IN_TARGET {
        return Ok(AutoBurnIn { burn_in: BURN_IN_MAX, bound: top, capped: true });
    }
    let (mut lo, mut hi) = (0.0, BURN_IN_MAX);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-9 * hi {
            break;
        }
        if at(mid)?.value() <= BURN_IN_TARGET {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(AutoBurnIn { burn_in: hi, bound: at(hi)?, capped: false })
}

/// Fixed burn-in with its bound, or [`auto_burn_in`] when `burn_in` is `None`.
pub fn resolve_burn_in(
    pi: &MixingMeasureSpec,
    levy: &LevyMeasureSpec,
    eps: f64,
    burn_in: Option<f64>,
    cap: f64,
) -> Result<AutoBurnIn> {
    match burn_in {
        Some(b) => Ok(AutoBurnIn { burn_in: b, bound: burn_in_bound(pi, levy, eps, b, 0.0, cap)?, capped: false }),
        None => auto_burn_in(pi, levy, eps, cap),
    }
}

/// Stationary mean of the dropped small jumps, `m_{-1}(π) ∫_{(0,eps]} z λ(dz)`.
pub fn truncation_bias(levy: &LevyMeasureSpec, pi: &MixingMeasureSpec, eps: f64) -> Result<f64> {
    if !(eps >= 0.0) {
        return Err(domain(format!("eps must be >= 0, got {eps}")));
    }
    let m_inv = pi
        .moment(MomentOrder::Inverse)
        .value()
        .ok_or_else(|| SupouError::InfiniteMass("m_{-1}(pi) is infinite".into()))?;
    Ok(m_inv * levy.first_moment_between(0.0, eps)?)
}

/// Generator for replicate `index` of a run seeded with `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> StreamRng {
    stream_rng(seed, index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_atom(tau: f64, xi: f64, zeta: f64) -> Atom {
        Atom { tau, xi, zeta }
    }

    fn window() -> Window {
        Window::new(0.0, 10.0).unwrap()
    }

    #[test]
    fn empty_path_is_zero() {
        let p = SamplePath::from_atoms(vec![], window(), 0.0).unwrap();
        let e = p.evaluate(&[0.0, 1.0, 5.0]).unwrap();
        assert_eq!(e.values, vec![0.0, 0.0, 0.0]);
        assert_eq!(e.pruning_error, 0.0);
    }

    #[test]
    fn single_atom_closed_form() {
        let p = SamplePath::from_atoms(vec![one_atom(0.0, 1.0, 2.0)], window(), 0.0).unwrap();
        let v = p.evaluate(&[1.0]).unwrap().values[0];
        assert!((v - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((v - 0.73576).abs() < 1e-5);
    }

    #[test]
    fn unsorted_times_are_rejected() {
        let p = SamplePath::from_atoms(vec![], window(), 0.0).unwrap();
        assert!(matches!(p.evaluate(&[1.0, 0.5]), Err(SupouError::Contract(_))));
    }

    #[test]
    fn sup_examples() {
        let decaying = SamplePath::from_atoms(vec![one_atom(-1.0, 1.0, 3.0 * 1f64.exp())], window(), 0.0).unwrap();
        assert!((decaying.sup(0.0, 1.0).unwrap() - 3.0).abs() < 1e-12);

        let jump = SamplePath::from_atoms(vec![one_atom(0.5, 1.0, 4.0)], window(), 0.0).unwrap();
        assert_eq!(jump.sup(0.0, 1.0).unwrap(), 4.0);

        let two =
            SamplePath::from_atoms(vec![one_atom(0.0, 1.0, 2.0), one_atom(1.0, 1.0, 2.0)], window(), 0.0).unwrap();
        let s = two.sup(0.0, 2.0).unwrap();
        assert!((s - (2.0 * (-1.0f64).exp() + 2.0)).abs() < 1e-15);
        assert!((s - 2.73576).abs() < 1e-5);
        assert!(two.sup(1.0, 1.0).is_err());
    }

    #[test]
    fn pruning_error_is_reported() {
        let atoms = vec![one_atom(0.0, 50.0, 1.0), one_atom(0.0, 0.01, 1.0)];
        let p = SamplePath::from_atoms(atoms, window(), 0.0).unwrap().with_prune_tol(1e-6).unwrap();
        let e = p.evaluate(&[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(e.pruned, 1);
        assert_eq!(e.pruning_error, 1e-6);
        assert!((e.values[2] - (-0.02f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn expected_atom_count_dirac_gamma() {
        let levy = LevyMeasureSpec::Dirac { z0: 1.0 };
        let pi = MixingMeasureSpec::Gamma { shape: 2.0 };
        let w = Window::new(5.0, 10.0).unwrap();
        let n = 10_000;
        let total: usize = (0..n).map(|s| generate_atoms(&levy, &pi, w, 0.5, 99, s).unwrap().atoms().len()).sum();
        let mean = total as f64 / n as f64;
        assert!((mean - 15.0).abs() < 0.4, "{mean}");
    }

    #[test]
    fn pareto_jumps_exceed_one() {
        let levy = LevyMeasureSpec::Pareto { gamma: 2.0 };
        let pi = MixingMeasureSpec::Uniform { a: 1.0, b: 3.0 };
        let p = generate_atoms(&levy, &pi, Window::new(3.0, 50.0).unwrap(), 1.0, 1, 0).unwrap();
        assert!(!p.atoms().is_empty());
        assert!(p.atoms().iter().all(|a| a.zeta > 1.0));
        assert!(p.atoms().windows(2).all(|w| w[0].tau <= w[1].tau));
        assert!(p.atoms().iter().all(|a| a.tau >= -3.0 && a.tau <= 50.0));
    }

    #[test]
    fn generation_is_deterministic() {
        let levy = LevyMeasureSpec::Exponential { rate: 1.0 };
        let pi = MixingMeasureSpec::Gamma { shape: 2.0 };
        let w = Window::new(10.0, 100.0).unwrap();
        let a = generate_atoms(&levy, &pi, w, 0.0, 42, 0).unwrap();
        let b = generate_atoms(&levy, &pi, w, 0.0, 42, 0).unwrap();
        assert_eq!(a, b);
        let c = generate_atoms(&levy, &pi, w, 0.0, 42, 1).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generation_errors() {
        let pi = MixingMeasureSpec::PointMass { x0: 1.0 };
        let w = window();
        let err = generate_atoms(&LevyMeasureSpec::Dirac { z0: 1.0 }, &pi, w, 2.0, 0, 0).unwrap_err();
        assert!(err.to_string().contains("no jumps above truncation"));
        assert!(generate_atoms(&LevyMeasureSpec::BoundedInfinite, &pi, w, 0.0, 0, 0).is_err());
    }

    #[test]
    fn burn_in_examples() {
        let pm = MixingMeasureSpec::PointMass { x0: 1.0 };
        let dirac = LevyMeasureSpec::Dirac { z0: 1.0 };
        let b = burn_in_bound(&pm, &dirac, 0.5, 10.0, 0.0, DEFAULT_BURN_IN_CAP).unwrap();
        assert!((b.value() - (-10.0f64).exp()).abs() < 1e-18);
        let inf = burn_in_bound(&pm, &dirac, 0.5, f64::INFINITY, 0.0, DEFAULT_BURN_IN_CAP).unwrap();
        assert_eq!(inf.value(), 0.0);

        let gamma = MixingMeasureSpec::Gamma { shape: 2.0 };
        let exp = LevyMeasureSpec::Exponential { rate: 1.0 };
        for b in [0.0, 3.0, 100.0] {
            let v = burn_in_bound(&gamma, &exp, 0.0, b, 0.0, DEFAULT_BURN_IN_CAP).unwrap().value();
            assert!((v - 1.0 / (1.0 + b)).abs() < 1e-12);
        }
    }

    #[test]
    fn burn_in_capped_for_infinite_mean() {
        let gamma = MixingMeasureSpec::Gamma { shape: 2.0 };
        let pareto = LevyMeasureSpec::Pareto { gamma: 1.0 };
        let b = burn_in_bound(&gamma, &pareto, 0.0, 99.0, 0.0, 1e3).unwrap();
        match b {
            BurnInBound::Capped { small_mean, large_count, .. } => {
                assert!((small_mean - 1e3f64.ln() / 100.0).abs() < 1e-12);
                assert!((large_count - 1e-3 / 100.0).abs() < 1e-15);
            }
            other => panic!("expected capped bound, got {other:?}"),
        }
    }

    #[test]
    fn auto_burn_in_meets_target() {
        let cases = [
            (MixingMeasureSpec::PointMass { x0: 1.0 }, LevyMeasureSpec::Dirac { z0: 1.0 }),
            (MixingMeasureSpec::Gamma { shape: 2.0 }, LevyMeasureSpec::Pareto { gamma: 1.5 }),
            (MixingMeasureSpec::Uniform { a: 1.0, b: 3.0 }, LevyMeasureSpec::Pareto { gamma: 1.0 }),
            (MixingMeasureSpec::InverseFirstMoment { upper: 1e10 }, LevyMeasureSpec::Exponential { rate: 1.0 }),
        ];
        for (pi, levy) in cases {
            let auto = auto_burn_in(&pi, &levy, 0.0, DEFAULT_BURN_IN_CAP).unwrap();
            assert!(!auto.capped);
            assert!(auto.bound.value() <= BURN_IN_TARGET);
            let tighter = burn_in_bound(&pi, &levy, 0.0, 0.99 * auto.burn_in, 0.0, DEFAULT_BURN_IN_CAP).unwrap();
            assert!(tighter.value() > BURN_IN_TARGET * 0.999);
        }
        // heavy gamma mixing with α close to one needs an enormous window
        let slow = auto_burn_in(
            &MixingMeasureSpec::Gamma { shape: 1.1 },
            &LevyMeasureSpec::Pareto { gamma: 1.0 },
            0.0,
            DEFAULT_BURN_IN_CAP,
        )
        .unwrap();
        assert!(slow.capped);
        assert_eq!(slow.burn_in, BURN_IN_MAX);
    }

    #[test]
    fn truncation_bias_examples() {
        let pm = MixingMeasureSpec::PointMass { x0: 1.0 };
        let g = MixingMeasureSpec::Gamma { shape: 2.0 };
        assert_eq!(truncation_bias(&LevyMeasureSpec::Pareto { gamma: 2.0 }, &g, 1.0).unwrap(), 0.0);
        let b = truncation_bias(&LevyMeasureSpec::BoundedInfinite, &pm, 0.1).unwrap();
        assert!((b - 0.1).abs() < 1e-15);
        let e = truncation_bias(&LevyMeasureSpec::Exponential { rate: 1.0 }, &g, 1.0).unwrap();
        assert!((e - (1.0 - 2.0 * (-1.0f64).exp())).abs() < 1e-14);
    }
}
