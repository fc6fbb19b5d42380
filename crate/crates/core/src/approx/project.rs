use super::shift::ShiftTable;
use crate::error::{RadonError, Result};
use crate::image::Image;

fn check_args(img: &Image, table: &ShiftTable, k: usize) -> Result<()> {
    table.check_image(img.n())?;
    if k >= img.n() {
        return Err(RadonError::IndexOutOfRange {
            name: "angle index",
            value: k,
            bound: img.n(),
        });
    }
    Ok(())
}

/// Projection at angle index `k` by shearing: row `d` is displaced by
/// `table[d][k]` pixels toward higher bin index and the columns of the
/// sheared raster are summed. Returns `2n - 1` bins.
pub fn shear_project_octant(img: &Image, table: &ShiftTable, k: usize) -> Result<Vec<u64>> {
    check_args(img, table, k)?;
    let n = img.n();
    let mut bins = vec![0u64; 2 * n - 1];
    for (d, row) in img.rows().enumerate() {
        let shift = table.get(d, k);
        for (dst, &p) in bins[shift..shift + n].iter_mut().zip(row) {
            *dst += u64::from(p);
        }
    }
    Ok(bins)
}

/// Same projection computed line by line.
///
/// Each bin `b` owns one discrete line that starts at row 0, column `b` and
/// descends one row per step, moving either straight down or down-left.
/// The step choice comes from a midpoint error accumulator on the slope
/// `k / (n - 1)`, so the table is consulted only for its size.
pub fn discrete_line_project(img: &Image, table: &ShiftTable, k: usize) -> Result<Vec<u64>> {
    check_args(img, table, k)?;
    let n = img.n();
    let den = 2 * (n - 1);
    let mut bins = vec![0u64; 2 * n - 1];
    for (b, bin) in bins.iter_mut().enumerate() {
        // Column is tracked as `b - drift`; `rem` starts at the half-pixel bias.
        let mut drift = 0usize;
        let mut rem = n - 1;
        let mut sum = 0u64;
        for row in 0..n {
            if row > 0 {
                rem += 2 * k;
                if rem >= den {
                    rem -= den;
                    drift += 1;
                }
            }
            if let Some(col) = b.checked_sub(drift) {
                if col < n {
                    sum += u64::from(img.get(row, col));
                }
            }
        }
        *bin = sum;
    }
    Ok(bins)
}
