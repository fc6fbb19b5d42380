//! Octant bands and the full four-band approximate transform.
//!
//! The native computation covers slopes 0..=1. The other three 45 degree
//! bands are reduced to it by preprocessing the image:
//!
//! | band          | preprocessing              | exact angle of index `k`  | bin order vs. rho |
//! |---------------|----------------------------|---------------------------|-------------------|
//! | `Deg0to45`    | none                       | `atan(t_k)`               | increasing        |
//! | `Deg45to90`   | transpose                  | `90 - atan(t_k)`          | increasing        |
//! | `Deg90to135`  | transpose, then mirror     | `90 + atan(t_k)`          | decreasing        |
//! | `Deg135to180` | mirror                     | `180 - atan(t_k)`         | increasing        |
//!
//! Angles follow the frame used by [`crate::exact`]: origin at the image
//! center, x to the right, y downward, `rho = x cos(theta) + y sin(theta)`.
//! `180 - atan(0)` is folded to 0 degrees, which flips the bin order.

use std::fmt;
use std::str::FromStr;

use super::project::shear_project_octant;
use super::shift::{slope, ShiftTable};
use crate::error::Result;
use crate::image::Image;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Octant {
    Deg0to45,
    Deg45to90,
    Deg90to135,
    Deg135to180,
}

impl Octant {
    pub const ALL: [Octant; 4] = [
        Octant::Deg0to45,
        Octant::Deg45to90,
        Octant::Deg90to135,
        Octant::Deg135to180,
    ];

    /// Short lowercase tag used in file names and CSV columns.
    pub fn tag(self) -> &'static str {
        match self {
            Octant::Deg0to45 => "deg0to45",
            Octant::Deg45to90 => "deg45to90",
            Octant::Deg90to135 => "deg90to135",
            Octant::Deg135to180 => "deg135to180",
        }
    }

    /// Brings `img` into the orientation the native 0..45 degree band expects.
    pub fn preprocess(self, img: &Image) -> Image {
        match self {
            Octant::Deg0to45 => img.clone(),
            Octant::Deg45to90 => img.transpose(),
            Octant::Deg90to135 => img.transpose().mirror_h(),
            Octant::Deg135to180 => img.mirror_h(),
        }
    }

    /// Exact-transform angle in `[0, 180)` degrees for native angle `atan_deg`,
    /// and whether bin order runs opposite to rho at that angle.
    pub fn exact_angle(self, atan_deg: f64) -> (f64, bool) {
        match self {
            Octant::Deg0to45 => (atan_deg, false),
            Octant::Deg45to90 => (90.0 - atan_deg, false),
            Octant::Deg90to135 => (90.0 + atan_deg, true),
            Octant::Deg135to180 => {
                let theta = 180.0 - atan_deg;
                if theta >= 180.0 {
                    (theta - 180.0, true)
                } else {
                    (theta, false)
                }
            }
        }
    }
}

impl fmt::Display for Octant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Octant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "deg0to45" | "0-45" => Ok(Octant::Deg0to45),
            "deg45to90" | "45-90" => Ok(Octant::Deg45to90),
            "deg90to135" | "90-135" => Ok(Octant::Deg90to135),
            "deg135to180" | "135-180" => Ok(Octant::Deg135to180),
            other => Err(format!("unknown octant `{other}`")),
        }
    }
}

/// `n` projections of `2n - 1` integer bins for one octant band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OctantSinogram {
    pub n: usize,
    pub octant: Octant,
    pub rows: Vec<Vec<u64>>,
}

impl OctantSinogram {
    /// Slope `k / (n - 1)` of angle index `k`.
    pub fn slope(&self, k: usize) -> f64 {
        slope(k, self.n)
    }

    /// Native angle `atan(t_k)` in degrees, before octant remapping.
    pub fn native_angle_deg(&self, k: usize) -> f64 {
        self.slope(k).atan().to_degrees()
    }

    /// Exact-transform angle of index `k` and its bin-order flag.
    pub fn exact_angle(&self, k: usize) -> (f64, bool) {
        self.octant.exact_angle(self.native_angle_deg(k))
    }

    pub fn bin_count(&self) -> usize {
        2 * self.n - 1
    }
}

/// Projects an already-preprocessed image at every angle index of the band.
pub fn project_octant(prepared: &Image, octant: Octant) -> Result<OctantSinogram> {
    let n = prepared.n();
    let table = ShiftTable::new(n)?;
    let rows = (0..n)
        .map(|k| shear_project_octant(prepared, &table, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(OctantSinogram { n, octant, rows })
}

/// One octant of the approximate transform of `img`.
pub fn approx_octant(img: &Image, octant: Octant) -> Result<OctantSinogram> {
    project_octant(&octant.preprocess(img), octant)
}

/// All four octant bands, in [`Octant::ALL`] order.
pub fn full_approx_radon(img: &Image) -> Result<[OctantSinogram; 4]> {
    Ok([
        approx_octant(img, Octant::Deg0to45)?,
        approx_octant(img, Octant::Deg45to90)?,
        approx_octant(img, Octant::Deg90to135)?,
        approx_octant(img, Octant::Deg135to180)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_image_has_one_spike_per_angle() {
        let img = Image::from_fn(7, |r, c| if (r, c) == (2, 5) { 9 } else { 0 }).unwrap();
        for sino in full_approx_radon(&img).unwrap() {
            for row in &sino.rows {
                let nonzero: Vec<_> = row.iter().filter(|&&v| v != 0).collect();
                assert_eq!(nonzero, vec![&9], "{}", sino.octant);
            }
        }
    }

    #[test]
    fn mirror_band_is_native_band_of_mirrored_image() {
        let img = Image::from_fn(6, |r, c| (r * 31 + c * 7) as u8).unwrap();
        let [native, _, _, mirrored] = full_approx_radon(&img).unwrap();
        let expected = approx_octant(&img.mirror_h(), Octant::Deg0to45).unwrap();
        assert_eq!(mirrored.rows, expected.rows);
        assert_eq!(mirrored.octant, Octant::Deg135to180);
        assert_eq!(native.octant, Octant::Deg0to45);
    }

    #[test]
    fn three_by_three_native_band() {
        let img = Image::from_rows(&[[1u8, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        let sino = approx_octant(&img, Octant::Deg0to45).unwrap();
        assert_eq!(sino.rows[1], vec![1, 13, 16, 15, 0]);
        assert_eq!(sino.slope(1), 0.5);
        assert!((sino.native_angle_deg(2) - 45.0).abs() < 1e-12);
    }

    #[test]
    fn mass_is_conserved_in_every_band() {
        let img = Image::from_fn(9, |r, c| ((r * 13) ^ (c * 29)) as u8).unwrap();
        let mass = img.mass();
        for sino in full_approx_radon(&img).unwrap() {
            assert_eq!(sino.rows.len(), 9);
            for row in &sino.rows {
                assert_eq!(row.len(), 17);
                assert_eq!(row.iter().sum::<u64>(), mass);
            }
        }
    }

    #[test]
    fn exact_angle_mapping() {
        assert_eq!(Octant::Deg0to45.exact_angle(0.0), (0.0, false));
        assert_eq!(Octant::Deg45to90.exact_angle(0.0), (90.0, false));
        assert_eq!(Octant::Deg45to90.exact_angle(45.0), (45.0, false));
        assert_eq!(Octant::Deg90to135.exact_angle(45.0), (135.0, true));
        assert_eq!(Octant::Deg135to180.exact_angle(0.0), (0.0, true));
        assert_eq!(Octant::Deg135to180.exact_angle(45.0), (135.0, false));
    }

    #[test]
    fn octant_names_parse() {
        for o in Octant::ALL {
            assert_eq!(o.tag().parse::<Octant>().unwrap(), o);
        }
        assert_eq!("90-135".parse::<Octant>().unwrap(), Octant::Deg90to135);
        assert!("sideways".parse::<Octant>().is_err());
    }
}
