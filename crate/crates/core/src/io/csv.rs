//! CSV encodings for sinograms, simulator traces and comparison reports.

use std::fmt::Write;

use thiserror::Error;

use crate::analysis::CompareReport;
use crate::approx::{Octant, OctantSinogram};
use crate::exact::ExactSinogram;
use crate::pipeline::TraceEvent;

/// Formats a real with 9 significant digits, shortest form.
pub fn fmt_real(v: f64) -> String {
    let rounded: f64 = format!("{v:.8e}").parse().unwrap_or(v);
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:?}")
}

/// Octant sinogram as `k,slope,angle_deg,b0,...`; `angle_deg` is the native
/// angle `atan(slope)` before octant remapping.
pub fn write_sinogram_csv(sino: &OctantSinogram) -> Vec<u8> {
    let mut out = String::from("k,slope,angle_deg");
    for b in 0..sino.bin_count() {
        let _ = write!(out, ",b{b}");
    }
    out.push('\n');
    for (k, row) in sino.rows.iter().enumerate() {
        let _ = write!(
            out,
            "{k},{},{}",
            fmt_real(sino.slope(k)),
            fmt_real(sino.native_angle_deg(k))
        );
        for v in row {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Exact sinogram as `angle_deg,r0,...`, one row per angle in input order.
pub fn write_exact_csv(sino: &ExactSinogram) -> Vec<u8> {
    let mut out = String::from("angle_deg");
    for r in 0..sino.rho_count() {
        let _ = write!(out, ",r{r}");
    }
    out.push('\n');
    for (angle, row) in sino.angles.iter().zip(&sino.values) {
        out.push_str(&fmt_real(*angle));
        for v in row {
            let _ = write!(out, ",{}", fmt_real(*v));
        }
        out.push('\n');
    }
    out.into_bytes()
}

pub fn write_trace_csv(trace: &[TraceEvent]) -> Vec<u8> {
    let mut events = trace.to_vec();
    events.sort_by_key(|e| (e.cycle, e.stage));
    let mut out = String::from("cycle,stage,row,shift_bit\n");
    for e in events {
        let _ = writeln!(out, "{},{},{},{}", e.cycle, e.stage, e.row, e.shift_bit);
    }
    out.into_bytes()
}

pub fn write_report_csv(reports: &[CompareReport]) -> Vec<u8> {
    let mut out = String::from("octant,k,slope,angle_deg,lag,rmse,max_abs_diff,pearson\n");
    for report in reports {
        for r in &report.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                report.octant,
                r.k,
                fmt_real(r.slope),
                fmt_real(r.angle_deg),
                r.lag,
                fmt_real(r.rmse),
                fmt_real(r.max_abs_diff),
                fmt_real(r.pearson)
            );
        }
    }
    out.into_bytes()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("missing or malformed header")]
    BadHeader,
    #[error("line {line}: {msg}")]
    BadRow { line: usize, msg: String },
}

/// Parses [`write_sinogram_csv`] output back into bins. The octant is not
/// part of the file and must be supplied.
pub fn parse_sinogram_csv(text: &str, octant: Octant) -> Result<OctantSinogram, CsvError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(CsvError::BadHeader)?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 4 || cols[..3] != ["k", "slope", "angle_deg"] {
        return Err(CsvError::BadHeader);
    }
    let bins = cols.len() - 3;
    if bins.is_multiple_of(2) {
        return Err(CsvError::BadHeader);
    }
    let n = bins.div_ceil(2);
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let bad = |msg: String| CsvError::BadRow { line: i + 2, msg };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != cols.len() {
            return Err(bad(format!(
                "expected {} fields, got {}",
                cols.len(),
                fields.len()
            )));
        }
        let k: usize = fields[0]
            .parse()
            .map_err(|_| bad(format!("bad index `{}`", fields[0])))?;
        if k != rows.len() {
            return Err(bad(format!("angle index {k} out of order")));
        }
        let row = fields[3..]
            .iter()
            .map(|f| f.parse::<u64>().map_err(|_| bad(format!("bad bin `{f}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CsvError::BadRow {
            line: rows.len() + 2,
            msg: format!("expected {n} rows, got {}", rows.len()),
        });
    }
    Ok(OctantSinogram { n, octant, rows })
}
