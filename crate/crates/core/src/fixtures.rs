//! Synthetic test images.

use crate::error::Result;
use crate::image::Image;

/// Centered disk of the given radius and intensity, with the main diagonal
/// (a 45 degree line) drawn over it at `line_level`.
pub fn disk_with_diagonal(n: usize, radius: f64, disk_level: u8, line_level: u8) -> Result<Image> {
    let center = (n as f64 - 1.0) / 2.0;
    Image::from_fn(n, |r, c| {
        if r == c {
            return line_level;
        }
        let (dy, dx) = (r as f64 - center, c as f64 - center);
        if dx * dx + dy * dy <= radius * radius {
            disk_level
        } else {
            0
        }
    })
}

/// The 64x64 comparison fixture: disk of radius 20 at 200 plus a diagonal at 255.
pub fn comparison_fixture() -> Image {
    disk_with_diagonal(64, 20.0, 200, 255).expect("64 is a valid side")
}
