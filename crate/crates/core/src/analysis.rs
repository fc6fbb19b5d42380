//! Numeric comparison of approximate octant projections against the exact
//! reference.

use crate::approx::OctantSinogram;
use crate::error::{RadonError, Result};
use crate::exact::ExactSinogram;
use crate::image::Image;

/// Angles closer than this (degrees) are treated as the same projection.
pub const ANGLE_MATCH_TOL: f64 = 1e-9;

pub fn rmse(a: &[f64], b: &[f64]) -> Result<f64> {
    check_lengths(a, b, 1)?;
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    Ok((sum / a.len() as f64).sqrt())
}

/// Pearson correlation coefficient.
///
/// When exactly one input is constant the coefficient is taken as 0; when
/// both are constant it is undefined.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    check_lengths(a, b, 2)?;
    let len = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / len;
    let mean_b = b.iter().sum::<f64>() / len;
    let (mut cov, mut var_a, mut var_b) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - mean_a, y - mean_b);
        cov += dx * dy;
        var_a += dx * dx;
        var_b += dy * dy;
    }
    match (var_a > 0.0, var_b > 0.0) {
        (false, false) => Err(RadonError::UndefinedCorrelation),
        (true, true) => Ok((cov / (var_a * var_b).sqrt()).clamp(-1.0, 1.0)),
        _ => Ok(0.0),
    }
}

fn check_lengths(a: &[f64], b: &[f64], min: usize) -> Result<()> {
    if a.len() != b.len() {
        return Err(RadonError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < min {
        return Err(RadonError::TooShort { min, got: a.len() });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alignment {
    pub lag: i64,
    pub rmse: f64,
    pub max_abs_diff: f64,
    pub pearson: f64,
}

/// `approx` moved `lag` bins toward higher index and laid over `len` bins,
/// zero where it has no data.
fn shifted(approx: &[f64], lag: i64, len: usize) -> Vec<f64> {
    (0..len as i64)
        .map(|j| {
            let src = j - lag;
            if src >= 0 && (src as usize) < approx.len() {
                approx[src as usize]
            } else {
                0.0
            }
        })
        .collect()
}

/// Finds the integer lag in `[-max_lag, max_lag]` at which `approx_row`,
/// shifted into the index frame of `exact_row`, correlates best with it.
///
/// Lags are visited as 0, -1, +1, -2, +2, ...; only a strictly higher
/// correlation replaces the current best, so ties go to the smaller |lag| and
/// then to the negative one.
pub fn align_and_compare(
    approx_row: &[f64],
    exact_row: &[f64],
    max_lag: usize,
) -> Result<Alignment> {
    if approx_row.is_empty() || exact_row.is_empty() {
        return Err(RadonError::TooShort { min: 1, got: 0 });
    }
    let len = exact_row.len();
    let mut best: Option<(i64, f64)> = None;
    let mut failure = None;
    let lags = std::iter::once(0).chain((1..=max_lag as i64).flat_map(|l| [-l, l]));
    for lag in lags {
        let candidate = shifted(approx_row, lag, len);
        match pearson(&candidate, exact_row) {
            Ok(r) => {
                if best.is_none_or(|(_, top)| r > top) {
                    best = Some((lag, r));
                }
            }
            Err(e) => failure = Some(e),
        }
    }
    let Some((lag, pearson)) = best else {
        return Err(failure.unwrap_or(RadonError::UndefinedCorrelation));
    };
    let candidate = shifted(approx_row, lag, len);
    let max_abs_diff = candidate
        .iter()
        .zip(exact_row)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(Alignment {
        lag,
        rmse: rmse(&candidate, exact_row)?,
        max_abs_diff,
        pearson,
    })
}

/// Per-angle comparison record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleRecord {
    pub k: usize,
    pub slope: f64,
    /// Exact-transform angle in degrees.
    pub angle_deg: f64,
    pub lag: i64,
    pub rmse: f64,
    pub max_abs_diff: f64,
    pub pearson: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub octant: crate::approx::Octant,
    pub records: Vec<AngleRecord>,
    pub mean_pearson: f64,
}

/// Exact-transform angles that line up with the rows of `octant`'s band.
pub fn octant_exact_angles(sino: &OctantSinogram) -> Vec<f64> {
    (0..sino.n).map(|k| sino.exact_angle(k).0).collect()
}

/// Compares every angle row of `sino` with the exact row at its equivalent
/// angle, searching lags up to `n`. Rows whose bin order runs against rho are
/// reversed first.
pub fn compare_octant(
    img: &Image,
    sino: &OctantSinogram,
    exact: &ExactSinogram,
) -> Result<CompareReport> {
    compare_octant_with_lag(img, sino, exact, sino.n)
}

pub fn compare_octant_with_lag(
    img: &Image,
    sino: &OctantSinogram,
    exact: &ExactSinogram,
    max_lag: usize,
) -> Result<CompareReport> {
    if img.n() != sino.n {
        return Err(RadonError::SizeMismatch {
            what: "octant sinogram",
            expected: sino.n,
            got: img.n(),
        });
    }
    let mut records = Vec::with_capacity(sino.n);
    for (k, row) in sino.rows.iter().enumerate() {
        let (angle, reversed) = sino.exact_angle(k);
        let exact_row = exact
            .row_at(angle, ANGLE_MATCH_TOL)
            .ok_or(RadonError::MissingAngle(angle))?;
        let mut approx: Vec<f64> = row.iter().map(|&v| v as f64).collect();
        if reversed {
            approx.reverse();
        }
        let a = align_and_compare(&approx, exact_row, max_lag)?;
        records.push(AngleRecord {
            k,
            slope: sino.slope(k),
            angle_deg: angle,
            lag: a.lag,
            rmse: a.rmse,
            max_abs_diff: a.max_abs_diff,
            pearson: a.pearson,
        });
    }
    let mean_pearson = records.iter().map(|r| r.pearson).sum::<f64>() / records.len() as f64;
    Ok(CompareReport {
        octant: sino.octant,
        records,
        mean_pearson,
    })
}
