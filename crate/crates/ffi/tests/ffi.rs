use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use supou::measures::{LevyMeasureSpec, MixingMeasureSpec};
use supou::pathsim::{generate_atoms, resolve_burn_in, Window, DEFAULT_BURN_IN_CAP};
use supou_ffi::*;

const PARETO: SupouLevySpec = SupouLevySpec { kind: SupouLevyKind::Pareto, param: 1.5 };
const POINT_MASS: SupouMixingSpec = SupouMixingSpec { kind: SupouMixingKind::PointMass, p1: 1.0, p2: 0.0 };

fn last_error() -> String {
    let n = supou_last_error_length();
    let mut buf = vec![0 as std::ffi::c_char; n + 1];
    assert_eq!(unsafe { supou_last_error_message(buf.as_mut_ptr(), buf.len()) }, SupouStatus::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(supou_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn tails_match_closed_forms() {
    let mut out = 0.0;
    assert_eq!(unsafe { supou_eta_bar(PARETO, 8.0, &mut out) }, SupouStatus::Ok);
    assert!((out - 8f64.powf(-1.5) / 1.5).abs() < 1e-15);
    assert_eq!(unsafe { supou_lambda_bar(PARETO, 8.0, &mut out) }, SupouStatus::Ok);
    assert!((out - 8f64.powf(-1.5)).abs() < 1e-15);
    let mut finite = -1;
    assert_eq!(unsafe { supou_moment_finite(PARETO, 1.5, &mut finite) }, SupouStatus::Ok);
    assert_eq!(finite, 0);
    assert_eq!(unsafe { supou_moment_finite(PARETO, 1.0, &mut finite) }, SupouStatus::Ok);
    assert_eq!(finite, 1);
}

#[test]
fn errors_are_reported_with_messages() {
    let mut out = 0.0;
    let bad = SupouLevySpec { kind: SupouLevyKind::Pareto, param: -1.0 };
    assert_eq!(unsafe { supou_eta_bar(bad, 2.0, &mut out) }, SupouStatus::InvalidArgument);
    assert!(last_error().contains("gamma"), "{}", last_error());
    assert_eq!(unsafe { supou_eta_bar(PARETO, 2.0, ptr::null_mut()) }, SupouStatus::NullPointer);
    assert!(last_error().contains("null"));
    assert_eq!(unsafe { supou_eta_bar(PARETO, 2.0, &mut out) }, SupouStatus::Ok);
    assert_eq!(supou_last_error_length(), 0);
    let mut tiny = [0 as std::ffi::c_char; 1];
    assert_eq!(unsafe { supou_eta_bar(bad, 2.0, &mut out) }, SupouStatus::InvalidArgument);
    assert_eq!(unsafe { supou_last_error_message(tiny.as_mut_ptr(), 1) }, SupouStatus::BufferTooSmall);
}

#[test]
fn path_handle_matches_core() {
    let mut path: *mut SupouPath = ptr::null_mut();
    let status = unsafe { supou_path_generate(PARETO, POINT_MASS, -1.0, 50.0, -1.0, 11, 3, &mut path) };
    assert_eq!(status, SupouStatus::Ok);
    assert!(!path.is_null());

    let levy = LevyMeasureSpec::Pareto { gamma: 1.5 };
    let pi = MixingMeasureSpec::PointMass { x0: 1.0 };
    let b = resolve_burn_in(&pi, &levy, 0.0, None, DEFAULT_BURN_IN_CAP).unwrap().burn_in;
    let reference = generate_atoms(&levy, &pi, Window::new(b, 50.0).unwrap(), 0.0, 11, 3).unwrap();

    let mut n = 0usize;
    assert_eq!(unsafe { supou_path_atom_count(path, &mut n) }, SupouStatus::Ok);
    assert_eq!(n, reference.atoms().len());
    let mut burn_in = 0.0;
    assert_eq!(unsafe { supou_path_burn_in(path, &mut burn_in) }, SupouStatus::Ok);
    assert_eq!(burn_in, b);

    let (mut tau, mut xi, mut zeta) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    assert_eq!(
        unsafe { supou_path_atoms(path, tau.as_mut_ptr(), xi.as_mut_ptr(), zeta.as_mut_ptr(), n) },
        SupouStatus::Ok
    );
    for (i, a) in reference.atoms().iter().enumerate() {
        assert_eq!((tau[i], xi[i], zeta[i]), (a.tau, a.xi, a.zeta));
    }
    if n > 0 {
        let status = unsafe { supou_path_atoms(path, tau.as_mut_ptr(), xi.as_mut_ptr(), zeta.as_mut_ptr(), n - 1) };
        assert_eq!(status, SupouStatus::BufferTooSmall);
    }

    let times: Vec<f64> = (0..=50).map(f64::from).collect();
    let mut values = vec![0.0; times.len()];
    let mut err = -1.0;
    let status = unsafe { supou_path_evaluate(path, times.as_ptr(), times.len(), values.as_mut_ptr(), &mut err) };
    assert_eq!(status, SupouStatus::Ok);
    assert_eq!(values, reference.evaluate(&times).unwrap().values);
    assert!(err >= 0.0);

    let unsorted = [2.0, 1.0];
    let status = unsafe { supou_path_evaluate(path, unsorted.as_ptr(), 2, values.as_mut_ptr(), ptr::null_mut()) };
    assert_eq!(status, SupouStatus::InvalidArgument);

    let mut sup = 0.0;
    assert_eq!(unsafe { supou_path_sup(path, 0.0, 50.0, &mut sup) }, SupouStatus::Ok);
    assert_eq!(sup, reference.sup(0.0, 50.0).unwrap());
    assert!(values.iter().all(|v| *v <= sup));

    unsafe { supou_path_free(path) };
    unsafe { supou_path_free(ptr::null_mut()) };
}

#[test]
fn growth_report_handle() {
    let levy = SupouLevySpec { kind: SupouLevyKind::Exponential, param: 1.0 };
    let f = SupouNormalizerSpec { kind: SupouNormalizerKind::Log, param: 1.0 };
    let mut report: *mut SupouGrowthReport = ptr::null_mut();
    assert_eq!(unsafe { supou_growth_run(levy, POINT_MASS, f, 1024.0, 4, 5, &mut report) }, SupouStatus::Ok);
    let mut summary = SupouGrowthSummary::default();
    assert_eq!(unsafe { supou_growth_summary(report, &mut summary) }, SupouStatus::Ok);
    assert_eq!(summary.replicates, 4);
    assert_eq!(summary.diverging + summary.vanishing + summary.bounded_away, 4);
    assert!(summary.min <= summary.median && summary.median <= summary.max);
    let mut maxima = [0.0; 4];
    assert_eq!(unsafe { supou_growth_terminal_maxima(report, maxima.as_mut_ptr(), 4) }, SupouStatus::Ok);
    assert!(maxima.iter().all(|m| *m >= summary.min && *m <= summary.max));
    let mut verdict = SupouVerdict::Diverging;
    assert_eq!(unsafe { supou_growth_verdict(report, 3, &mut verdict) }, SupouStatus::Ok);
    assert_eq!(unsafe { supou_growth_verdict(report, 4, &mut verdict) }, SupouStatus::InvalidArgument);
    unsafe { supou_growth_free(report) };

    let short = unsafe { supou_growth_run(levy, POINT_MASS, f, 100.0, 4, 5, &mut report) };
    assert_eq!(short, SupouStatus::InvalidArgument);
    assert!(report.is_null());
    assert!(last_error().contains("horizon"));
}

#[test]
fn header_declares_the_api() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/supou.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "supou_version",
        "supou_last_error_message",
        "supou_eta_bar",
        "supou_path_generate",
        "supou_path_evaluate",
        "supou_path_free",
        "supou_growth_run",
        "supou_growth_free",
        "typedef struct SupouPath SupouPath",
        "SUPOU_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
    // compile check when a C compiler is around
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
