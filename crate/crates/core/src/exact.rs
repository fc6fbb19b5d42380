//! Fractional-weight discrete Radon transform used as the accuracy reference.
//!
//! Every pixel is split into four subpixels at `(+-1/4, +-1/4)` around its
//! center, each carrying a quarter of the intensity. A subpixel projects to
//! `rho = x cos(theta) + y sin(theta)` (origin at the image center, x right,
//! y down) and its mass is shared linearly between the two neighbouring
//! unit-spaced rho bins.

use rayon::prelude::*;

use crate::error::{RadonError, Result};
use crate::image::Image;

const SUBPIXEL_OFFSETS: [(f64, f64); 4] =
    [(-0.25, -0.25), (0.25, -0.25), (-0.25, 0.25), (0.25, 0.25)];

/// Real-valued sinogram on a `(theta, rho)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSinogram {
    /// Projection angles in degrees, each in `[0, 180)`.
    pub angles: Vec<f64>,
    /// Unit-spaced rho bin centers, symmetric about 0.
    pub rho_centers: Vec<f64>,
    /// One row per angle, `rho_centers.len()` values each.
    pub values: Vec<Vec<f64>>,
}

impl ExactSinogram {
    pub fn rho_count(&self) -> usize {
        self.rho_centers.len()
    }

    /// Row for the angle within `tol` degrees of `angle`, if any.
    pub fn row_at(&self, angle: f64, tol: f64) -> Option<&[f64]> {
        self.angles
            .iter()
            .position(|&a| (a - angle).abs() <= tol)
            .map(|i| self.values[i].as_slice())
    }
}

/// Unit-spaced rho bin centers for an `n`-sided image: `2 * ceil(n / sqrt 2) + 3`
/// bins, enough for the image diagonal plus one guard bin on each side.
pub fn rho_axis(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(RadonError::ImageTooSmall(n));
    }
    let half = (n as f64 * std::f64::consts::SQRT_2 / 2.0).ceil() as i64 + 1;
    Ok((-half..=half).map(|r| r as f64).collect())
}

/// Number of subpixel projections the exact method performs.
pub fn op_count_estimate(n: usize, p: usize) -> u64 {
    4 * p as u64 * (n as u64) * (n as u64)
}

pub fn exact_radon(img: &Image, angles: &[f64]) -> Result<ExactSinogram> {
    exact_radon_counted(img, angles).map(|(sino, _)| sino)
}

/// [`exact_radon`] that also reports how many subpixel projections it ran.
pub fn exact_radon_counted(img: &Image, angles: &[f64]) -> Result<(ExactSinogram, u64)> {
    if let Some(&bad) = angles.iter().find(|a| !(0.0..180.0).contains(*a)) {
        return Err(RadonError::AngleOutOfRange(bad));
    }
    let n = img.n();
    let rho_centers = rho_axis(n)?;

    let rows: Vec<(Vec<f64>, u64)> = angles
        .par_iter()
        .map(|&theta| project_angle(img, theta, rho_centers.len()))
        .collect();

    let ops = rows.iter().map(|(_, ops)| ops).sum();
    let values = rows.into_iter().map(|(row, _)| row).collect();
    Ok((
        ExactSinogram {
            angles: angles.to_vec(),
            rho_centers,
            values,
        },
        ops,
    ))
}

fn project_angle(img: &Image, theta_deg: f64, rho_count: usize) -> (Vec<f64>, u64) {
    let n = img.n();
    let (sin, cos) = theta_deg.to_radians().sin_cos();
    let center = (n as f64 - 1.0) / 2.0;
    let origin = (rho_count as f64 - 1.0) / 2.0;
    let mut row = vec![0.0f64; rho_count];
    let mut ops = 0u64;

    for r in 0..n {
        for c in 0..n {
            let p = img.get(r, c);
            let weight = f64::from(p) / 4.0;
            for (dx, dy) in SUBPIXEL_OFFSETS {
                ops += 1;
                if p == 0 {
                    continue;
                }
                let x = c as f64 + dx - center;
                let y = r as f64 + dy - center;
                let pos = x * cos + y * sin + origin;
                let lower = pos.floor();
                let frac = pos - lower;
                let lower = lower as usize;
                row[lower] += weight * (1.0 - frac);
                if frac > 0.0 {
                    row[lower + 1] += weight * frac;
                }
            }
        }
    }
    (row, ops)
}
