//! Shear-based approximate discrete Radon transform.

mod octant;
mod project;
mod shift;

pub use octant::{approx_octant, full_approx_radon, project_octant, Octant, OctantSinogram};
pub use project::{discrete_line_project, shear_project_octant};
pub use shift::{build_shift_table, slope, total_shift, ShiftTable};
