//! Catalog of jump measures `λ` and mixing measures `π`.
//!
//! The catalog is closed so that every functional has either a closed form
//! or a quadrature with known breakpoints and tails.

use std::f64::consts::E;
use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SupouError};
use crate::quad;
use crate::rng::open_unit;

/// Relative tolerance for first-moment style quadratures.
pub const MOMENT_REL_TOL: f64 = 1e-10;
/// Relative tolerance for the log-moment quadrature.
pub const LOG_MOMENT_REL_TOL: f64 = 1e-8;

/// A moment or integral that is either finite or divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment {
    Finite(f64),
    Infinite,
}

impl Moment {
    pub fn is_finite(&self) -> bool {
        matches!(self, Moment::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            Moment::Finite(v) => Some(v),
            Moment::Infinite => None,
        }
    }

    fn from_value(v: f64) -> Self {
        if v.is_finite() {
            Moment::Finite(v)
        } else {
            Moment::Infinite
        }
    }
}

impl fmt::Display for Moment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Moment::Finite(v) => write!(f, "{v}"),
            Moment::Infinite => f.write_str("inf"),
        }
    }
}

/// Jump (Lévy) measure on `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LevyMeasureSpec {
    /// `γ z^{-γ-1} dz` on `(1, ∞)`.
    Pareto { gamma: f64 },
    /// `c e^{-cz} dz` on `(0, ∞)`.
    Exponential { rate: f64 },
    /// Unit point mass at `z0`.
    Dirac { z0: f64 },
    /// `z^{-1} dz` on `(0, 1]`; infinite total mass.
    BoundedInfinite,
    /// Tail `(log z)^{-2}` for `z ≥ e`, total mass one.
    SlowlyVarying,
}

impl LevyMeasureSpec {
    pub fn description(&self) -> String {
        match *self {
            LevyMeasureSpec::Pareto { gamma } => format!("Pareto(gamma={gamma})"),
            LevyMeasureSpec::Exponential { rate } => format!("Exponential(c={rate})"),
            LevyMeasureSpec::Dirac { z0 } => format!("Dirac(z0={z0})"),
            LevyMeasureSpec::BoundedInfinite => "BoundedInfinite(z^-1 dz on (0,1])".to_string(),
            LevyMeasureSpec::SlowlyVarying => "SlowlyVarying((log z)^-2)".to_string(),
        }
    }

    /// Checks parameter constraints.
    pub fn validate(&self) -> Result<()> {
        let (name, v) = match *self {
            LevyMeasureSpec::Pareto { gamma } => ("gamma", gamma),
            LevyMeasureSpec::Exponential { rate } => ("rate", rate),
            LevyMeasureSpec::Dirac { z0 } => ("z0", z0),
            _ => return Ok(()),
        };
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(domain(format!("levy.{name} must be a positive finite number, got {v}")))
        }
    }

    /// `λ̄(z) = λ((z, ∞))` for `z > 0`.
    pub fn tail(&self, z: f64) -> Result<f64> {
        if !(z > 0.0) {
            return Err(domain(format!("lambda_tail requires z > 0, got {z}")));
        }
        Ok(self.mass_above(z))
    }

    /// `λ((eps, ∞))` for `eps ≥ 0`; at `eps = 0` this is the total mass.
    pub fn mass_above(&self, eps: f64) -> f64 {
        match *self {
            LevyMeasureSpec::Pareto { gamma } => {
                if eps <= 1.0 {
                    1.0
                } else {
                    eps.powf(-gamma)
                }
            }
            LevyMeasureSpec::Exponential { rate } => (-rate * eps).exp(),
            LevyMeasureSpec::Dirac { z0 } => {
                if eps < z0 {
                    1.0
                } else {
                    0.0
                }
            }
            LevyMeasureSpec::BoundedInfinite => {
                if eps <= 0.0 {
                    f64::INFINITY
                } else if eps < 1.0 {
                    -eps.ln()
                } else {
                    0.0
                }
            }
            LevyMeasureSpec::SlowlyVarying => {
                if eps < E {
                    1.0
                } else {
                    eps.ln().powi(-2)
                }
            }
        }
    }

    /// Points where `λ̄` has a jump or kink.
    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            LevyMeasureSpec::Pareto { .. } => vec![1.0],
            LevyMeasureSpec::Exponential { .. } => vec![],
            LevyMeasureSpec::Dirac { z0 } => vec![z0],
            LevyMeasureSpec::BoundedInfinite => vec![1.0],
            LevyMeasureSpec::SlowlyVarying => vec![E],
        }
    }

    /// Right end of the support, `inf{y : λ̄(y) = 0}`.
    pub fn support_sup(&self) -> f64 {
        match *self {
            LevyMeasureSpec::Dirac { z0 } => z0,
            LevyMeasureSpec::BoundedInfinite => 1.0,
            _ => f64::INFINITY,
        }
    }

    pub fn has_bounded_support(&self) -> bool {
        self.support_sup().is_finite()
    }

    /// `∫_{(lo, hi]} z λ(dz)` for `0 ≤ lo ≤ hi ≤ ∞`.
    pub fn first_moment_between(&self, lo: f64, hi: f64) -> Result<f64> {
        if !(lo >= 0.0 && hi >= lo) {
            return Err(domain(format!("first moment needs 0 <= lo <= hi, got ({lo}, {hi}]")));
        }
        if lo == hi {
            return Ok(0.0);
        }
        let value = match *self {
            LevyMeasureSpec::Pareto { gamma } => {
                let a = lo.max(1.0);
                if hi <= a {
                    0.0
                } else if (gamma - 1.0).abs() < 1e-12 {
                    (hi / a).ln()
                } else if hi.is_infinite() {
                    if gamma > 1.0 {
                        gamma / (gamma - 1.0) * a.powf(1.0 - gamma)
                    } else {
                        f64::INFINITY
                    }
                } else {
                    gamma / (1.0 - gamma) * (hi.powf(1.0 - gamma) - a.powf(1.0 - gamma))
                }
            }
            LevyMeasureSpec::Exponential { rate } => {
                // ∫ z c e^{-cz} dz = -(z + 1/c) e^{-cz}
                let anti = |z: f64| if z.is_infinite() { 0.0 } else { -(z + 1.0 / rate) * (-rate * z).exp() };
                anti(hi) - anti(lo)
            }
            LevyMeasureSpec::Dirac { z0 } => {
                if lo < z0 && z0 <= hi {
                    z0
                } else {
                    0.0
                }
            }
            LevyMeasureSpec::BoundedInfinite => (hi.min(1.0) - lo.min(1.0)).max(0.0),
            LevyMeasureSpec::SlowlyVarying => {
                if hi.is_infinite() {
                    f64::INFINITY
                } else {
                    let a = lo.max(E);
                    if hi <= a {
                        0.0
                    } else {
                        // density 2 (log z)^{-3} / z, so z λ(dz) = 2 (log z)^{-3} dz;
                        // integrate in u = log z.
                        let q = quad::integrate(
                            |u: f64| 2.0 * u.powi(-3) * u.exp(),
                            a.ln(),
                            hi.ln(),
                            &[],
                            MOMENT_REL_TOL,
                            0.0,
                        )?;
                        q.value
                    }
                }
            }
        };
        Ok(value)
    }

    /// Mean of the small jumps, `∫_{(0, eps]} z λ(dz)`, for `0 < eps ≤ 1`.
    pub fn small_jump_mean(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(domain(format!("small-jump mean requires 0 < eps <= 1, got {eps}")));
        }
        self.first_moment_between(0.0, eps)
    }

    /// `∫_{[1, ∞)} log z λ(dz)`, computed by quadrature of the layer-cake
    /// form `∫_0^∞ λ̄(e^u) du`.
    pub fn log_moment(&self) -> Result<Moment> {
        self.validate()?;
        let value = self.tail_log_integral(1.0, LOG_MOMENT_REL_TOL)?;
        Ok(Moment::from_value(value))
    }

    /// `∫_0^∞ λ̄(r e^u) du = ∫_r^∞ λ̄(z)/z dz` by quadrature in `u` with an
    /// analytic remainder beyond the cutoff.
    pub(crate) fn tail_log_integral(&self, r: f64, rel_tol: f64) -> Result<f64> {
        let base = self.mass_above(r);
        if base == 0.0 {
            return Ok(0.0);
        }
        let ln_r = r.ln();
        let breaks: Vec<f64> = self
            .breakpoints()
            .into_iter()
            .filter(|&b| b > r)
            .map(|b| (b / r).ln())
            .collect();

        // Cutoff where λ̄(r e^u) < 1e-16 λ̄(r), or the end of the support.
        let mut cutoff = 1.0_f64;
        let support = self.support_sup();
        if support.is_finite() {
            cutoff = (support / r).ln().max(0.0);
        } else {
            while self.mass_above(r * cutoff.exp()) >= 1e-16 * base && cutoff < 64.0 {
                cutoff *= 2.0;
            }
        }
        let body = quad::integrate(|u| self.mass_above(r * u.exp()), 0.0, cutoff, &breaks, rel_tol, 0.0)?;
        let edge = r * cutoff.exp();
        let remainder = match *self {
            LevyMeasureSpec::Pareto { gamma } => edge.max(1.0).powf(-gamma) / gamma,
            LevyMeasureSpec::Exponential { rate } => exp_integral_tail(rate * edge),
            LevyMeasureSpec::SlowlyVarying => {
                if edge >= E {
                    1.0 / (ln_r + cutoff)
                } else {
                    // unreachable with the doubling cutoff, kept exact anyway
                    (E / edge).ln() + 1.0
                }
            }
            LevyMeasureSpec::Dirac { .. } | LevyMeasureSpec::BoundedInfinite => 0.0,
        };
        Ok(body.value + remainder)
    }
}

/// `E₁(y)` for large `y` from its asymptotic series; only used for remainders
/// that are already below `1e-16` of the total.
fn exp_integral_tail(y: f64) -> f64 {
    if y <= 0.0 {
        return f64::INFINITY;
    }
    let inv = 1.0 / y;
    (-y).exp() * inv * (1.0 - inv + 2.0 * inv * inv - 6.0 * inv.powi(3))
}

/// Order of a mixing-measure moment `m_p(π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentOrder {
    /// `m_{-1}(π) = ∫ x^{-1} π(dx)`
    Inverse,
    /// `m_0(π)`, the total mass
    Mass,
}

impl MomentOrder {
    pub fn from_exponent(p: i32) -> Result<Self> {
        match p {
            -1 => Ok(MomentOrder::Inverse),
            0 => Ok(MomentOrder::Mass),
            _ => Err(domain(format!("mixing moments are defined for p in {{-1, 0}}, got {p}"))),
        }
    }
}

/// Mixing (decay-rate) measure on `(0, ∞)`.
///
/// `Gamma`, `Uniform` and `PointMass` are probability measures.
/// `InverseFirstMoment` has density `x^{-1}` on `(1, upper)` and total mass
/// `log upper`, which diverges as the truncation is lifted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MixingMeasureSpec {
    Gamma { shape: f64 },
    Uniform { a: f64, b: f64 },
    PointMass { x0: f64 },
    InverseFirstMoment { upper: f64 },
}

impl MixingMeasureSpec {
    pub fn description(&self) -> String {
        match *self {
            MixingMeasureSpec::Gamma { shape } => format!("Gamma(alpha={shape}, rate=1)"),
            MixingMeasureSpec::Uniform { a, b } => format!("Uniform({a},{b})"),
            MixingMeasureSpec::PointMass { x0 } => format!("PointMass({x0})"),
            MixingMeasureSpec::InverseFirstMoment { upper } => format!("InverseFirstMoment(M={upper})"),
        }
    }

    /// Parameter constraints. Existence of `m_{-1}` is checked separately.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            MixingMeasureSpec::Gamma { shape } => shape.is_finite() && shape > 0.0,
            MixingMeasureSpec::Uniform { a, b } => a.is_finite() && b.is_finite() && a > 0.0 && b > a,
            MixingMeasureSpec::PointMass { x0 } => x0.is_finite() && x0 > 0.0,
            MixingMeasureSpec::InverseFirstMoment { upper } => upper.is_finite() && upper > 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(domain(format!("invalid mixing measure parameters: {}", self.description())))
        }
    }

    /// `m_p(π)` for `p ∈ {-1, 0}` in closed form.
    pub fn moment(&self, order: MomentOrder) -> Moment {
        match (*self, order) {
            (_, MomentOrder::Mass) => match *self {
                MixingMeasureSpec::InverseFirstMoment { upper } => Moment::Finite(upper.ln()),
                _ => Moment::Finite(1.0),
            },
            (MixingMeasureSpec::Gamma { shape }, MomentOrder::Inverse) => {
                // Γ(α-1)/Γ(α) = 1/(α-1) for α > 1
                if shape > 1.0 {
                    Moment::Finite(1.0 / (shape - 1.0))
                } else {
                    Moment::Infinite
                }
            }
            (MixingMeasureSpec::Uniform { a, b }, MomentOrder::Inverse) => Moment::Finite((b / a).ln() / (b - a)),
            (MixingMeasureSpec::PointMass { x0 }, MomentOrder::Inverse) => Moment::Finite(1.0 / x0),
            (MixingMeasureSpec::InverseFirstMoment { upper }, MomentOrder::Inverse) => {
                Moment::Finite(1.0 - 1.0 / upper)
            }
        }
    }

    /// Whether `m_0` diverges as the truncation parameter `upper` is lifted.
    pub fn mass_diverges_with_truncation(&self) -> bool {
        matches!(self, MixingMeasureSpec::InverseFirstMoment { .. })
    }

    /// `∫ x^{-1} e^{-x h} π(dx)` for `h ≥ 0`; at `h = 0` this is `m_{-1}(π)`.
    pub fn discounted_inverse_moment(&self, h: f64) -> Result<f64> {
        if !(h >= 0.0) {
            return Err(domain(format!("discount horizon must be >= 0, got {h}")));
        }
        match *self {
            MixingMeasureSpec::PointMass { x0 } => Ok((-x0 * h).exp() / x0),
            MixingMeasureSpec::Gamma { shape } => {
                if shape <= 1.0 {
                    return Ok(f64::INFINITY);
                }
                Ok((1.0 + h).powf(1.0 - shape) / (shape - 1.0))
            }
            MixingMeasureSpec::Uniform { a, b } => {
                let q = quad::integrate(|x: f64| (-x * h).exp() / x, a, b, &[], MOMENT_REL_TOL, 0.0)?;
                Ok(q.value / (b - a))
            }
            MixingMeasureSpec::InverseFirstMoment { upper } => {
                // x = e^v turns x^{-2} e^{-xh} dx into e^{-v} e^{-h e^v} dv.
                let q = quad::integrate(
                    |v: f64| (-v - h * v.exp()).exp(),
                    0.0,
                    upper.ln(),
                    &[],
                    MOMENT_REL_TOL,
                    0.0,
                )?;
                Ok(q.value)
            }
        }
    }
}

/// Sampler for `λ` restricted to `(eps, ∞)` and normalized by `λ̄(eps)`.
#[derive(Debug, Clone, Copy)]
pub struct JumpSampler {
    spec: LevyMeasureSpec,
    eps: f64,
    mass: f64,
}

impl JumpSampler {
    pub fn new(spec: LevyMeasureSpec, eps: f64) -> Result<Self> {
        spec.validate()?;
        if !(eps >= 0.0) {
            return Err(domain(format!("eps must be >= 0, got {eps}")));
        }
        let mass = spec.mass_above(eps);
        if mass == 0.0 {
            return Err(SupouError::EmptyRestriction { eps });
        }
        if !mass.is_finite() {
            return Err(SupouError::InfiniteMass(format!(
                "{} has infinite mass above eps = {eps}; use eps > 0",
                spec.description()
            )));
        }
        Ok(Self { spec, eps, mass })
    }

    /// `λ̄(eps)`, the intensity of jumps kept by the sampler.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Inverse-CDF draw from a uniform `u ∈ (0, 1]`: solves `λ̄(z) = u λ̄(eps)`.
    pub fn from_uniform(&self, u: f64) -> f64 {
        let level = u * self.mass;
        match self.spec {
            LevyMeasureSpec::Pareto { gamma } => level.powf(-1.0 / gamma),
            LevyMeasureSpec::Exponential { rate } => self.eps - u.ln() / rate,
            LevyMeasureSpec::Dirac { z0 } => z0,
            LevyMeasureSpec::BoundedInfinite => (-level).exp(),
            LevyMeasureSpec::SlowlyVarying => (1.0 / level.sqrt()).exp(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.from_uniform(open_unit(rng))
    }
}

/// One draw from `λ|_{(eps,∞)} / λ̄(eps)`.
pub fn lambda_sample_jump<R: Rng + ?Sized>(spec: &LevyMeasureSpec, eps: f64, rng: &mut R) -> Result<f64> {
    Ok(JumpSampler::new(*spec, eps)?.sample(rng))
}

/// Sampler for the normalized mixing measure `π / m_0(π)`.
#[derive(Debug, Clone, Copy)]
pub struct RateSampler {
    spec: MixingMeasureSpec,
    gamma: Option<Gamma<f64>>,
}

impl RateSampler {
    pub fn new(spec: MixingMeasureSpec) -> Result<Self> {
        spec.validate()?;
        let gamma = match spec {
            MixingMeasureSpec::Gamma { shape } => {
                Some(Gamma::new(shape, 1.0).map_err(|e| domain(format!("gamma sampler: {e}")))?)
            }
            _ => None,
        };
        Ok(Self { spec, gamma })
    }

    /// Inverse-CDF draw for the non-Gamma members.
    pub fn from_uniform(&self, u: f64) -> Option<f64> {
        match self.spec {
            MixingMeasureSpec::Gamma { .. } => None,
            MixingMeasureSpec::Uniform { a, b } => Some(a + (b - a) * u),
            MixingMeasureSpec::PointMass { x0 } => Some(x0),
            MixingMeasureSpec::InverseFirstMoment { upper } => Some(upper.powf(u)),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match (&self.gamma, self.spec) {
            (Some(g), _) => loop {
                let x = g.sample(rng);
                if x > 0.0 {
                    break x;
                }
            },
            (None, MixingMeasureSpec::PointMass { x0 }) => x0,
            (None, _) => {
                let u = rng.random::<f64>();
                self.from_uniform(u).expect("non-gamma member")
            }
        }
    }
}

/// One draw from `π / m_0(π)`.
pub fn pi_sample<R: Rng + ?Sized>(spec: &MixingMeasureSpec, rng: &mut R) -> Result<f64> {
    Ok(RateSampler::new(*spec)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    const CATALOG: [LevyMeasureSpec; 5] = [
        LevyMeasureSpec::Pareto { gamma: 1.5 },
        LevyMeasureSpec::Exponential { rate: 1.0 },
        LevyMeasureSpec::Dirac { z0: 1.0 },
        LevyMeasureSpec::BoundedInfinite,
        LevyMeasureSpec::SlowlyVarying,
    ];

    #[test]
    fn tail_examples() {
        let p = LevyMeasureSpec::Pareto { gamma: 2.0 };
        assert!((p.tail(10.0).unwrap() - 0.01).abs() < 1e-15);
        assert_eq!(LevyMeasureSpec::Dirac { z0: 1.0 }.tail(1.0).unwrap(), 0.0);
        let b = LevyMeasureSpec::BoundedInfinite.tail((-1.0f64).exp()).unwrap();
        assert!((b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tail_rejects_nonpositive() {
        for spec in CATALOG {
            assert!(matches!(spec.tail(0.0), Err(SupouError::Domain(_))));
            assert!(matches!(spec.tail(-1.0), Err(SupouError::Domain(_))));
        }
    }

    #[test]
    fn tail_is_nonincreasing_on_grid() {
        for spec in CATALOG {
            let mut prev = f64::INFINITY;
            for i in 0..400 {
                let z = 1e-3 * 1.05f64.powi(i);
                let t = spec.tail(z).unwrap();
                assert!(t <= prev, "{} not monotone at {z}", spec.description());
                prev = t;
            }
            assert!(spec.mass_above(1e300) < 1e-2);
        }
    }

    #[test]
    fn pareto_doubling_ratio_is_exact() {
        for gamma in [0.5, 1.0, 1.5, 3.0] {
            let p = LevyMeasureSpec::Pareto { gamma };
            for x in [1.0, 3.7, 100.0, 1e5] {
                let ratio = p.tail(x).unwrap() / p.tail(2.0 * x).unwrap();
                assert!((ratio - 2f64.powf(gamma)).abs() < 1e-12 * ratio);
            }
        }
    }

    #[test]
    fn levy_measure_integrability_by_quadrature() {
        // ∫ (1 ∧ z²) λ(dz) = ∫_0^∞ 2 min(z,1) λ̄(z) dz via layer cake.
        for spec in CATALOG {
            let near = quad::integrate(|z| 2.0 * z * spec.mass_above(z), 0.0, 1.0, &spec.breakpoints(), 1e-10, 0.0)
                .unwrap()
                .value;
            assert!(near.is_finite());
            let small = spec.first_moment_between(0.0, 1.0).unwrap();
            assert!(small.is_finite(), "{}", spec.description());
        }
    }

    #[test]
    fn small_jump_mean_examples() {
        assert_eq!(LevyMeasureSpec::Pareto { gamma: 2.0 }.small_jump_mean(1.0).unwrap(), 0.0);
        let b = LevyMeasureSpec::BoundedInfinite.small_jump_mean(0.5).unwrap();
        assert!((b - 0.5).abs() < 1e-15);
        let e = LevyMeasureSpec::Exponential { rate: 1.0 }.small_jump_mean(1.0).unwrap();
        assert!((e - (1.0 - 2.0 * (-1.0f64).exp())).abs() < 1e-14);
        assert!((e - 0.26424).abs() < 1e-5);
        assert!(LevyMeasureSpec::BoundedInfinite.small_jump_mean(0.0).is_err());
        assert!(LevyMeasureSpec::BoundedInfinite.small_jump_mean(1.5).is_err());
    }

    #[test]
    fn log_moment_examples() {
        assert_eq!(LevyMeasureSpec::Dirac { z0: 1.0 }.log_moment().unwrap(), Moment::Finite(0.0));
        let p = LevyMeasureSpec::Pareto { gamma: 1.0 }.log_moment().unwrap().value().unwrap();
        assert!((p - 1.0).abs() < 1e-8);
        // ∫_1^e dz/z + ∫_e^∞ (log z)^{-2}/z dz = 2
        let s = LevyMeasureSpec::SlowlyVarying.log_moment().unwrap().value().unwrap();
        assert!((s - 2.0).abs() < 1e-8, "{s}");
        for spec in CATALOG {
            assert!(spec.log_moment().unwrap().is_finite());
        }
    }

    #[test]
    fn slowly_varying_first_moment_matches_direct_quadrature() {
        let s = LevyMeasureSpec::SlowlyVarying;
        let v = s.first_moment_between(0.0, 100.0).unwrap();
        // layer cake: ∫_{(0,b]} z λ(dz) = ∫_0^b λ̄(z) dz - b λ̄(b)
        let lc = quad::integrate(|z| s.mass_above(z), 0.0, 100.0, &[E], 1e-12, 0.0).unwrap().value
            - 100.0 * s.mass_above(100.0);
        assert!((v - lc).abs() < 1e-8 * lc);
    }

    #[test]
    fn pi_moment_examples() {
        assert_eq!(MixingMeasureSpec::PointMass { x0: 2.0 }.moment(MomentOrder::Inverse), Moment::Finite(0.5));
        assert_eq!(MixingMeasureSpec::Gamma { shape: 2.0 }.moment(MomentOrder::Inverse), Moment::Finite(1.0));
        assert_eq!(MixingMeasureSpec::Gamma { shape: 0.5 }.moment(MomentOrder::Inverse), Moment::Infinite);
        let ifm = MixingMeasureSpec::InverseFirstMoment { upper: E * E };
        assert!((ifm.moment(MomentOrder::Mass).value().unwrap() - 2.0).abs() < 1e-15);
        assert!(ifm.mass_diverges_with_truncation());
        assert!(MomentOrder::from_exponent(1).is_err());
    }

    #[test]
    fn discounted_inverse_moment_at_zero_is_m_minus_one() {
        for pi in [
            MixingMeasureSpec::Gamma { shape: 2.5 },
            MixingMeasureSpec::Uniform { a: 1.0, b: 3.0 },
            MixingMeasureSpec::PointMass { x0: 0.7 },
            MixingMeasureSpec::InverseFirstMoment { upper: 50.0 },
        ] {
            let m = pi.moment(MomentOrder::Inverse).value().unwrap();
            let d = pi.discounted_inverse_moment(0.0).unwrap();
            assert!((m - d).abs() < 1e-9 * m, "{}", pi.description());
        }
    }

    #[test]
    fn gamma_discount_matches_quadrature() {
        // α = 2: ∫ x^{-1} e^{-xh} x e^{-x} dx = 1/(1+h)
        let pi = MixingMeasureSpec::Gamma { shape: 2.0 };
        for h in [0.0, 0.5, 10.0] {
            let q = quad::integrate(|x: f64| (-x * (1.0 + h)).exp(), 0.0, 60.0, &[], 1e-12, 0.0).unwrap().value;
            assert!((pi.discounted_inverse_moment(h).unwrap() - q).abs() < 1e-10);
        }
    }

    #[test]
    fn jump_sampler_examples() {
        let mut rng = stream_rng(3, 0);
        let d = LevyMeasureSpec::Dirac { z0: 1.0 };
        for _ in 0..10 {
            assert_eq!(lambda_sample_jump(&d, 0.5, &mut rng).unwrap(), 1.0);
        }
        let p = JumpSampler::new(LevyMeasureSpec::Pareto { gamma: 1.0 }, 1.0).unwrap();
        for u in [0.1, 0.5, 0.9, 1.0] {
            assert!((p.from_uniform(u) - 1.0 / u).abs() < 1e-12);
        }
        let e = JumpSampler::new(LevyMeasureSpec::Exponential { rate: 1.0 }, 0.0).unwrap();
        for u in [0.1, 0.5, 0.9] {
            assert!((e.from_uniform(u) + u.ln()).abs() < 1e-15);
        }
        assert!(matches!(
            JumpSampler::new(d, 1.0),
            Err(SupouError::EmptyRestriction { .. })
        ));
        assert!(matches!(
            JumpSampler::new(LevyMeasureSpec::BoundedInfinite, 0.0),
            Err(SupouError::InfiniteMass(_))
        ));
    }

    #[test]
    fn rate_sampler_examples() {
        let mut rng = stream_rng(5, 1);
        assert_eq!(pi_sample(&MixingMeasureSpec::PointMass { x0: 0.7 }, &mut rng).unwrap(), 0.7);
        let u = RateSampler::new(MixingMeasureSpec::Uniform { a: 1.0, b: 3.0 }).unwrap();
        assert_eq!(u.from_uniform(0.5), Some(2.0));
        let m = RateSampler::new(MixingMeasureSpec::InverseFirstMoment { upper: 10.0 }).unwrap();
        assert!((m.from_uniform(0.3).unwrap() - 10f64.powf(0.3)).abs() < 1e-12);
        assert!(RateSampler::new(MixingMeasureSpec::Gamma { shape: -1.0 }).is_err());
    }

    /// Two-sample-free KS check against the analytic restricted tail.
    fn ks_statistic(spec: LevyMeasureSpec, eps: f64, n: usize) -> f64 {
        let sampler = JumpSampler::new(spec, eps).unwrap();
        let mut rng = stream_rng(11, 0);
        let mut draws: Vec<f64> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
        draws.sort_by(f64::total_cmp);
        let mass = spec.mass_above(eps);
        let mut d: f64 = 0.0;
        for (i, &z) in draws.iter().enumerate() {
            let cdf = 1.0 - spec.mass_above(z) / mass;
            let lo = i as f64 / n as f64;
            let hi = (i + 1) as f64 / n as f64;
            d = d.max((cdf - lo).abs()).max((hi - cdf).abs());
        }
        d
    }

    #[test]
    fn sampler_matches_restricted_tail() {
        for (spec, eps) in [
            (LevyMeasureSpec::Pareto { gamma: 1.5 }, 0.0),
            (LevyMeasureSpec::Pareto { gamma: 2.0 }, 3.0),
            (LevyMeasureSpec::Exponential { rate: 1.0 }, 0.0),
            (LevyMeasureSpec::Exponential { rate: 2.0 }, 0.7),
            (LevyMeasureSpec::BoundedInfinite, 1e-4),
            (LevyMeasureSpec::SlowlyVarying, 0.0),
        ] {
            let d = ks_statistic(spec, eps, 100_000);
            assert!(d < 0.02, "{} eps={eps}: KS {d}", spec.description());
        }
    }

    #[test]
    fn config_schema_round_trip() {
        let spec: LevyMeasureSpec = toml::from_str("kind = \"pareto\"\ngamma = 2.0\n").unwrap();
        assert_eq!(spec, LevyMeasureSpec::Pareto { gamma: 2.0 });
        assert!(toml::from_str::<LevyMeasureSpec>("kind = \"pareto\"\ngama = 2.0\n").is_err());
        let pi: MixingMeasureSpec = toml::from_str("kind = \"uniform\"\na = 1.0\nb = 3.0\n").unwrap();
        assert_eq!(pi, MixingMeasureSpec::Uniform { a: 1.0, b: 3.0 });
    }
}
