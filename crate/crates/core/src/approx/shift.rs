//! Discrete-line shift schedule.
//!
//! Angle index `k` of an `n`-sided image selects the line slope
//! `t_k = k / (n - 1)`. A row `d` rows below the top is displaced by
//! `round_half_up(d * t_k)` whole pixels, so slope 0 keeps columns intact and
//! slope 1 follows the anti-diagonal.

use crate::error::{RadonError, Result};

fn check_index(name: &'static str, value: usize, bound: usize) -> Result<()> {
    if value < bound {
        Ok(())
    } else {
        Err(RadonError::IndexOutOfRange { name, value, bound })
    }
}

/// Cumulative displacement of row offset `d` at angle index `k`:
/// `floor(d * k / (n - 1) + 1/2)`, evaluated in exact integer arithmetic.
pub fn total_shift(d: usize, k: usize, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(RadonError::ImageTooSmall(n));
    }
    check_index("row offset", d, n)?;
    check_index("angle index", k, n)?;
    Ok(shift_unchecked(d, k, n))
}

#[inline]
fn shift_unchecked(d: usize, k: usize, n: usize) -> usize {
    let den = 2 * (n - 1);
    (2 * d * k + (n - 1)) / den
}

/// Slope `k / (n - 1)` of the discrete lines at angle index `k`.
pub fn slope(k: usize, n: usize) -> f64 {
    k as f64 / (n - 1) as f64
}

/// Tabulated [`total_shift`] for every `(d, k)` of an `n`-sided image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftTable {
    n: usize,
    shifts: Vec<usize>,
}

impl ShiftTable {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(RadonError::ImageTooSmall(n));
        }
        let mut shifts = Vec::with_capacity(n * n);
        for d in 0..n {
            for k in 0..n {
                shifts.push(shift_unchecked(d, k, n));
            }
        }
        Ok(Self { n, shifts })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Shift of row offset `d` at angle index `k`. Panics when out of range.
    #[inline]
    pub fn get(&self, d: usize, k: usize) -> usize {
        assert!(d < self.n && k < self.n, "shift table index out of range");
        self.shifts[d * self.n + k]
    }

    /// Shifts of every row for angle index `k`.
    pub fn column(&self, k: usize) -> Vec<usize> {
        (0..self.n).map(|d| self.get(d, k)).collect()
    }

    pub(crate) fn check_image(&self, n: usize) -> Result<()> {
        if self.n == n {
            Ok(())
        } else {
            Err(RadonError::SizeMismatch {
                what: "shift table",
                expected: self.n,
                got: n,
            })
        }
    }
}

pub fn build_shift_table(n: usize) -> Result<ShiftTable> {
    ShiftTable::new(n)
}
