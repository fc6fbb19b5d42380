use crate::error::{RadonError, Result};

/// Square 8-bit grayscale raster, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    n: usize,
    pixels: Vec<u8>,
}

impl Image {
    /// Wraps a row-major buffer of `n * n` intensities.
    pub fn new(n: usize, pixels: Vec<u8>) -> Result<Self> {
        if n < 2 {
            return Err(RadonError::ImageTooSmall(n));
        }
        if pixels.len() != n * n {
            return Err(RadonError::PixelCount {
                expected: n * n,
                got: pixels.len(),
            });
        }
        Ok(Self { n, pixels })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, vec![0; n * n])
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                pixels.push(f(r, c));
            }
        }
        Self::new(n, pixels)
    }

    /// Builds an image from nested rows; the rows must form a square.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let height = rows.len();
        let mut pixels = Vec::with_capacity(height * height);
        for row in rows {
            let row = row.as_ref();
            if row.len() != height {
                return Err(RadonError::NotSquare {
                    width: row.len(),
                    height,
                });
            }
            pixels.extend_from_slice(row);
        }
        Self::new(height, pixels)
    }

    /// Zero-pads a `width x height` buffer on the right and bottom to a square.
    pub fn pad_to_square(width: usize, height: usize, pixels: &[u8]) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(RadonError::PixelCount {
                expected: width * height,
                got: pixels.len(),
            });
        }
        let n = width.max(height);
        let mut out = vec![0u8; n * n];
        for (r, row) in pixels.chunks_exact(width.max(1)).enumerate().take(height) {
            out[r * n..r * n + width].copy_from_slice(row);
        }
        Self::new(n, out)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.pixels[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.pixels.chunks_exact(self.n)
    }

    /// Sum of all intensities.
    pub fn mass(&self) -> u64 {
        self.pixels.iter().map(|&p| u64::from(p)).sum()
    }

    /// Horizontal mirror: pixel `(r, c)` moves to `(r, n - 1 - c)`.
    pub fn mirror_h(&self) -> Self {
        let mut pixels = self.pixels.clone();
        for row in pixels.chunks_exact_mut(self.n) {
            row.reverse();
        }
        Self { n: self.n, pixels }
    }

    /// Transpose: pixel `(r, c)` moves to `(c, r)`.
    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut pixels = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                pixels[c * n + r] = self.pixels[r * n + c];
            }
        }
        Self { n, pixels }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_sizes() {
        assert_eq!(Image::new(1, vec![0]), Err(RadonError::ImageTooSmall(1)));
        assert_eq!(Image::new(0, vec![]), Err(RadonError::ImageTooSmall(0)));
        assert!(matches!(
            Image::new(3, vec![0; 8]),
            Err(RadonError::PixelCount {
                expected: 9,
                got: 8
            })
        ));
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let err = Image::from_rows(&[vec![1u8, 2, 3], vec![4, 5, 6]]).unwrap_err();
        assert!(matches!(
            err,
            RadonError::NotSquare {
                width: 3,
                height: 2
            }
        ));
    }

    #[test]
    fn mirror_and_transpose_small_case() {
        let img = Image::from_rows(&[[1u8, 2], [3, 4]]).unwrap();
        assert_eq!(
            img.mirror_h(),
            Image::from_rows(&[[2u8, 1], [4, 3]]).unwrap()
        );
        assert_eq!(
            img.transpose(),
            Image::from_rows(&[[1u8, 3], [2, 4]]).unwrap()
        );
        assert_eq!(img.mirror_h().mirror_h(), img);
        assert_eq!(img.transpose().transpose(), img);
    }

    #[test]
    fn uniform_image_is_mirror_fixed_point() {
        let img = Image::new(5, vec![77; 25]).unwrap();
        assert_eq!(img.mirror_h(), img);
        assert_eq!(img.transpose(), img);
    }

    #[test]
    fn pad_to_square_fills_right_and_bottom() {
        let img = Image::pad_to_square(3, 2, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(
            img,
            Image::from_rows(&[[1u8, 2, 3], [4, 5, 6], [0, 0, 0]]).unwrap()
        );
        let img = Image::pad_to_square(2, 3, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(
            img,
            Image::from_rows(&[[1u8, 2, 0], [3, 4, 0], [5, 6, 0]]).unwrap()
        );
    }
}
