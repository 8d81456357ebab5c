//! C ABI for `supou`.
//!
//! Every fallible function returns a [`SupouStatus`]; on failure the message
//! is kept per thread and read back with [`supou_last_error_message`].
//! Paths and growth reports are opaque handles owned by the caller and
//! released with their `_free` function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use supou::growth::{empirical_limsup, GrowthOptions, GrowthReport, Normalizer, TrendVerdict};
use supou::measures::{LevyMeasureSpec, MixingMeasureSpec};
use supou::pathsim::{default_eps, generate_atoms, resolve_burn_in, SamplePath, Window, DEFAULT_BURN_IN_CAP};
use supou::tail::{eta_bar, moment_classifier, Finiteness};
use supou::SupouError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupouStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Numerical = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupouLevyKind {
    Pareto = 0,
    Exponential = 1,
    Dirac = 2,
    BoundedInfinite = 3,
    SlowlyVarying = 4,
}

/// Jump measure; `param` is γ, the rate c or z0 and is ignored otherwise.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SupouLevySpec {
    pub kind: SupouLevyKind,
    pub param: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupouMixingKind {
    Gamma = 0,
    Uniform = 1,
    PointMass = 2,
    InverseFirstMoment = 3,
}

/// Mixing measure; `p1` is the shape, `a`, `x0` or the upper truncation,
/// `p2` is `b` for the uniform law.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SupouMixingSpec {
    pub kind: SupouMixingKind,
    pub p1: f64,
    pub p2: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupouNormalizerKind {
    Power = 0,
    Log = 1,
    LogOverLogLog = 2,
}

/// Normalizer `f`; `param` is the exponent `a` or the constant κ.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SupouNormalizerSpec {
    pub kind: SupouNormalizerKind,
    pub param: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupouVerdict {
    Diverging = 0,
    Vanishing = 1,
    BoundedAway = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SupouGrowthSummary {
    pub median: f64,
    pub min: f64,
    pub max: f64,
    pub diverging: usize,
    pub vanishing: usize,
    pub bounded_away: usize,
    pub replicates: usize,
}

/// Simulated sample path.
pub struct SupouPath(SamplePath);

/// Block-maxima growth report.
pub struct SupouGrowthReport(GrowthReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: SupouError) -> SupouStatus {
    let status = match e {
        SupouError::Numerical(_) => SupouStatus::Numerical,
        _ => SupouStatus::InvalidArgument,
    };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> Result<(), SupouStatus>) -> SupouStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SupouStatus::Ok,
        Ok(Err(s)) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SupouStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), SupouStatus> {
    if p.is_null() {
        set_error(format!("{name} is null"));
        Err(SupouStatus::NullPointer)
    } else {
        Ok(())
    }
}

impl SupouLevySpec {
    fn to_spec(self) -> Result<LevyMeasureSpec, SupouStatus> {
        let spec = match self.kind {
            SupouLevyKind::Pareto => LevyMeasureSpec::Pareto { gamma: self.param },
            SupouLevyKind::Exponential => LevyMeasureSpec::Exponential { rate: self.param },
            SupouLevyKind::Dirac => LevyMeasureSpec::Dirac { z0: self.param },
            SupouLevyKind::BoundedInfinite => LevyMeasureSpec::BoundedInfinite,
            SupouLevyKind::SlowlyVarying => LevyMeasureSpec::SlowlyVarying,
        };
        spec.validate().map_err(status_of)?;
        Ok(spec)
    }
}

impl SupouMixingSpec {
    fn to_spec(self) -> Result<MixingMeasureSpec, SupouStatus> {
        let spec = match self.kind {
            SupouMixingKind::Gamma => MixingMeasureSpec::Gamma { shape: self.p1 },
            SupouMixingKind::Uniform => MixingMeasureSpec::Uniform { a: self.p1, b: self.p2 },
            SupouMixingKind::PointMass => MixingMeasureSpec::PointMass { x0: self.p1 },
            SupouMixingKind::InverseFirstMoment => MixingMeasureSpec::InverseFirstMoment { upper: self.p1 },
        };
        spec.validate().map_err(status_of)?;
        Ok(spec)
    }
}

impl SupouNormalizerSpec {
    fn to_spec(self) -> Result<Normalizer, SupouStatus> {
        let f = match self.kind {
            SupouNormalizerKind::Power => Normalizer::Power { a: self.param },
            SupouNormalizerKind::Log => Normalizer::Log { kappa: self.param },
            SupouNormalizerKind::LogOverLogLog => Normalizer::LogOverLogLog { kappa: self.param },
        };
        f.validate().map_err(status_of)?;
        Ok(f)
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn supou_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Length in bytes of the last error message on this thread, without the
/// terminating NUL; 0 when there is none.
#[no_mangle]
pub extern "C" fn supou_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |s| s.as_bytes().len()))
}

/// Copies the last error message, NUL-terminated, into `buf`.
///
/// # Safety
/// `buf` must be valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn supou_last_error_message(buf: *mut c_char, len: usize) -> SupouStatus {
    if buf.is_null() {
        return SupouStatus::NullPointer;
    }
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_ref().map_or(&[][..], |s| s.as_bytes());
        if bytes.len() + 1 > len {
            return SupouStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast(), bytes.len());
        *buf.add(bytes.len()) = 0;
        SupouStatus::Ok
    })
}

/// Jump tail `λ̄(z)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn supou_lambda_bar(levy: SupouLevySpec, z: f64, out: *mut f64) -> SupouStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = levy.to_spec()?.tail(z).map_err(status_of)?;
        Ok(())
    })
}

/// Marginal tail `η̄(r) = ∫_r^∞ λ̄(z)/z dz`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn supou_eta_bar(levy: SupouLevySpec, r: f64, out: *mut f64) -> SupouStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = eta_bar(&levy.to_spec()?, r).map_err(status_of)?;
        Ok(())
    })
}

/// Writes 1 to `finite` when `E X^β < ∞`, else 0.
///
/// # Safety
/// `finite` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn supou_moment_finite(levy: SupouLevySpec, beta: f64, finite: *mut i32) -> SupouStatus {
    guard(|| {
        non_null(finite, "finite")?;
        let f = moment_classifier(&levy.to_spec()?, beta).map_err(status_of)?;
        *finite = i32::from(f == Finiteness::Finite);
        Ok(())
    })
}

/// Simulates the atoms of one path on `[-B, horizon]`.
///
/// A negative `burn_in` selects `B` automatically, a negative `eps` the
/// default truncation of the jump measure. The handle is written to `out`
/// and must be released with [`supou_path_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn supou_path_generate(
    levy: SupouLevySpec,
    pi: SupouMixingSpec,
    burn_in: f64,
    horizon: f64,
    eps: f64,
    seed: u64,
    stream: u64,
    out: *mut *mut SupouPath,
) -> SupouStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let levy = levy.to_spec()?;
        let pi = pi.to_spec()?;
        let eps = if eps < 0.0 { default_eps(&levy) } else { eps };
        let fixed = (burn_in >= 0.0).then_some(burn_in);
        let b = resolve_burn_in(&pi, &levy, eps, fixed, DEFAULT_BURN_IN_CAP).map_err(status_of)?.burn_in;
        let window = Window::new(b, horizon).map_err(status_of)?;
        let path = generate_atoms(&levy, &pi, window, eps, seed, stream).map_err(status_of)?;
        *out = Box::into_raw(Box::new(SupouPath(path)));
        Ok(())
    })
}

/// # Safety
/// `path` must come from [`supou_path_generate`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn supou_path_free(path: *mut SupouPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// # Safety
/// `path` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn supou_path_atom_count(path: *const SupouPath, out: *mut usize) -> SupouStatus {
    guard(|| {
        non_null(path, "path")?;
        non_null(out, "out")?;
        *out = (*path).0.atoms().len();
        Ok(())
    })
}

/// Burn-in `B` actually used by the path.
///
/// # Safety
/// `path` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn supou_path_burn_in(path: *const SupouPath, out: *mut f64) -> SupouStatus {
    guard(|| {
        non_null(path, "path")?;
        non_null(out, "out")?;
        *out = (*path).0.window().burn_in;
        Ok(())
    })
}

/// Copies the atoms, sorted by arrival, into three arrays of length `len`.
///
/// # Safety
/// Each array must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn supou_path_atoms(
    path: *const SupouPath,
    tau: *mut f64,
    xi: *mut f64,
    zeta: *mut f64,
    len: usize,
) -> SupouStatus {
    guard(|| {
        non_null(path, "path")?;
        non_null(tau, "tau")?;
        non_null(xi, "xi")?;
        non_null(zeta, "zeta")?;
        let atoms = (*path).0.atoms();
        if len < atoms.len() {
            set_error(format!("need room for {} atoms, got {len}", atoms.len()));
            return Err(SupouStatus::BufferTooSmall);
        }
        for (i, a) in atoms.iter().enumerate() {
            *tau.add(i) = a.tau;
            *xi.add(i) = a.xi;
            *zeta.add(i) = a.zeta;
        }
        Ok(())
    })
}

/// Evaluates `X` at `n` nondecreasing times. `pruning_error` may be null.
///
/// # Safety
/// `times` must be valid for `n` reads, `values` for `n` writes.
#[no_mangle]
pub unsafe extern "C" fn supou_path_evaluate(
    path: *const SupouPath,
    times: *const f64,
    n: usize,
    values: *mut f64,
    pruning_error: *mut f64,
) -> SupouStatus {
    guard(|| {
        non_null(path, "path")?;
        if n == 0 {
            return Ok(());
        }
        non_null(times, "times")?;
        non_null(values, "values")?;
        let times = std::slice::from_raw_parts(times, n);
        let eval = (*path).0.evaluate(times).map_err(status_of)?;
        std::slice::from_raw_parts_mut(values, n).copy_from_slice(&eval.values);
        if !pruning_error.is_null() {
            *pruning_error = eval.pruning_error;
        }
        Ok(())
    })
}

/// `sup_{[u, v]} X`.
///
/// # Safety
/// `path` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn supou_path_sup(path: *const SupouPath, u: f64, v: f64, out: *mut f64) -> SupouStatus {
    guard(|| {
        non_null(path, "path")?;
        non_null(out, "out")?;
        *out = (*path).0.sup(u, v).map_err(status_of)?;
        Ok(())
    })
}

/// Runs the block-maxima growth experiment with default options.
///
/// # Safety
/// `out` must be valid for writes; release the handle with
/// [`supou_growth_free`].
#[no_mangle]
pub unsafe extern "C" fn supou_growth_run(
    levy: SupouLevySpec,
    pi: SupouMixingSpec,
    normalizer: SupouNormalizerSpec,
    horizon: f64,
    replicates: usize,
    seed: u64,
    out: *mut *mut SupouGrowthReport,
) -> SupouStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let report = empirical_limsup(
            &levy.to_spec()?,
            &pi.to_spec()?,
            &normalizer.to_spec()?,
            horizon,
            replicates,
            seed,
            &GrowthOptions::default(),
        )
        .map_err(status_of)?;
        *out = Box::into_raw(Box::new(SupouGrowthReport(report)));
        Ok(())
    })
}

/// # Safety
/// `report` must come from [`supou_growth_run`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn supou_growth_free(report: *mut SupouGrowthReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn supou_growth_summary(
    report: *const SupouGrowthReport,
    out: *mut SupouGrowthSummary,
) -> SupouStatus {
    guard(|| {
        non_null(report, "report")?;
        non_null(out, "out")?;
        let r = &(*report).0;
        let s = &r.summary;
        *out = SupouGrowthSummary {
            median: s.median,
            min: s.min,
            max: s.max,
            diverging: s.diverging,
            vanishing: s.vanishing,
            bounded_away: s.bounded_away,
            replicates: r.replicates.len(),
        };
        Ok(())
    })
}

/// Trend verdict of replicate `index`.
///
/// # Safety
/// `report` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn supou_growth_verdict(
    report: *const SupouGrowthReport,
    index: usize,
    out: *mut SupouVerdict,
) -> SupouStatus {
    guard(|| {
        non_null(report, "report")?;
        non_null(out, "out")?;
        let report = &(*report).0;
        let Some(rec) = report.replicates.get(index) else {
            set_error(format!("replicate index {index} out of range"));
            return Err(SupouStatus::InvalidArgument);
        };
        *out = match rec.verdict {
            TrendVerdict::Diverging => SupouVerdict::Diverging,
            TrendVerdict::Vanishing => SupouVerdict::Vanishing,
            TrendVerdict::BoundedAway => SupouVerdict::BoundedAway,
        };
        Ok(())
    })
}

/// Terminal running maxima, one per replicate.
///
/// # Safety
/// `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn supou_growth_terminal_maxima(
    report: *const SupouGrowthReport,
    out: *mut f64,
    len: usize,
) -> SupouStatus {
    guard(|| {
        non_null(report, "report")?;
        non_null(out, "out")?;
        let recs = &(*report).0.replicates;
        if len < recs.len() {
            set_error(format!("need room for {} values, got {len}", recs.len()));
            return Err(SupouStatus::BufferTooSmall);
        }
        for (i, r) in recs.iter().enumerate() {
            *out.add(i) = r.terminal_running_max();
        }
        Ok(())
    })
}
