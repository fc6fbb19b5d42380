//! Shear-based approximate discrete Radon transform.
//!
//! * [`approx`]: shift schedule, shear projection, line-walk oracle, octant driver.
//! * [`exact`]: fractional-weight reference transform.
//! * [`pipeline`]: clock-level model of the row pipeline.
//! * [`analysis`]: alignment and error metrics between the two transforms.
//! * [`io`] and [`cli`]: PGM/CSV formats and the command-line front end.

pub mod analysis;
pub mod approx;
pub mod cli;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod image;
pub mod io;
pub mod pipeline;

pub use error::{RadonError, Result};
pub use image::Image;
