//! CSV artifacts.
//!
//! Floats are written in shortest round-trip form, switching to exponent
//! notation outside `[1e-4, 1e15)`, so the same values always produce the
//! same bytes.

use std::io;

use crate::growth::{GrowthReport, LargeXiReport};
use crate::pathsim::{Atom, Evaluation};
use crate::tail::TailTable;

pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn writer<W: io::Write>(w: W, header: &[&str]) -> csv::Result<csv::Writer<W>> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(w);
    out.write_record(header)?;
    Ok(out)
}

/// `tau,xi,zeta`
pub fn write_atoms<W: io::Write>(w: W, atoms: &[Atom]) -> csv::Result<()> {
    let mut out = writer(w, &["tau", "xi", "zeta"])?;
    for a in atoms {
        out.write_record([fmt_f64(a.tau), fmt_f64(a.xi), fmt_f64(a.zeta)])?;
    }
    out.flush()?;
    Ok(())
}

/// `t,X`
pub fn write_path<W: io::Write>(w: W, times: &[f64], eval: &Evaluation) -> csv::Result<()> {
    let mut out = writer(w, &["t", "X"])?;
    for (t, x) in times.iter().zip(&eval.values) {
        out.write_record([fmt_f64(*t), fmt_f64(*x)])?;
    }
    out.flush()?;
    Ok(())
}

/// `r,lambda_bar,eta_bar,ratio`; `ratio` is empty where the tail vanishes.
pub fn write_tail_table<W: io::Write>(w: W, table: &TailTable) -> csv::Result<()> {
    let mut out = writer(w, &["r", "lambda_bar", "eta_bar", "ratio"])?;
    for i in 0..table.r_grid.len() {
        out.write_record([
            fmt_f64(table.r_grid[i]),
            fmt_f64(table.lambda_bar[i]),
            fmt_f64(table.eta_bar[i]),
            table.ratio[i].map(fmt_f64).unwrap_or_default(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `replicate,j,block_start,block_max_ratio,running_max`
pub fn write_growth_blocks<W: io::Write>(w: W, report: &GrowthReport) -> csv::Result<()> {
    let mut out = writer(w, &["replicate", "j", "block_start", "block_max_ratio", "running_max"])?;
    for (r, rec) in report.replicates.iter().enumerate() {
        for (b, start) in report.block_starts.iter().enumerate() {
            out.write_record([
                r.to_string(),
                (report.j0 as usize + b).to_string(),
                fmt_f64(*start),
                fmt_f64(rec.block_max_ratio[b]),
                fmt_f64(rec.running_max[b]),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// `replicate,terminal_running_max,slope,verdict,atoms,pruning_error`
pub fn write_growth_summary<W: io::Write>(w: W, report: &GrowthReport) -> csv::Result<()> {
    let mut out = writer(w, &["replicate", "terminal_running_max", "slope", "verdict", "atoms", "pruning_error"])?;
    for (r, rec) in report.replicates.iter().enumerate() {
        out.write_record([
            r.to_string(),
            fmt_f64(rec.terminal_running_max()),
            fmt_f64(rec.slope),
            rec.verdict.to_string(),
            rec.atoms.to_string(),
            fmt_f64(rec.pruning_error),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `M,log_M,burn_in,median_sup,mean_arrivals,arrivals_se`
pub fn write_largexi<W: io::Write>(w: W, report: &LargeXiReport) -> csv::Result<()> {
    let mut out = writer(w, &["M", "log_M", "burn_in", "median_sup", "mean_arrivals", "arrivals_se"])?;
    for row in &report.rows {
        out.write_record([
            fmt_f64(row.upper),
            fmt_f64(row.mass),
            fmt_f64(row.burn_in),
            fmt_f64(row.median_sup),
            fmt_f64(row.mean_arrivals),
            fmt_f64(row.arrivals_se),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Generic two-or-more column table of preformatted cells.
pub fn write_rows<W: io::Write>(w: W, header: &[&str], rows: &[Vec<String>]) -> csv::Result<()> {
    let mut out = writer(w, header)?;
    for row in rows {
        out.write_record(row)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::LevyMeasureSpec;
    use crate::tail::{eta_lambda_ratio_scan, geometric_grid};

    #[test]
    fn float_format_round_trips() {
        for v in [0.0, 1.0, 0.5, 1e-300, 123456.789, 6.2e27, -3.25e-7, 1e15, 9.99e-5] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
            assert!(s.len() < 30, "{s}");
        }
        assert_eq!(fmt_f64(1e-300), "1e-300");
        assert_eq!(fmt_f64(0.5), "0.5");
    }

    #[test]
    fn tail_table_csv() {
        let grid = geometric_grid(1.0, 1e6, 7).unwrap();
        let table = eta_lambda_ratio_scan(&LevyMeasureSpec::Pareto { gamma: 2.0 }, &grid).unwrap();
        let mut buf = Vec::new();
        write_tail_table(&mut buf, &table).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("r,lambda_bar,eta_bar,ratio"));
        for line in lines {
            assert!(line.ends_with(",0.5"), "{line}");
        }
    }

    #[test]
    fn atoms_csv_header() {
        let atoms = [Atom { tau: -1.0, xi: 2.0, zeta: 3.5 }];
        let mut buf = Vec::new();
        write_atoms(&mut buf, &atoms).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "tau,xi,zeta\r\n-1,2,3.5\r\n");
    }
}
