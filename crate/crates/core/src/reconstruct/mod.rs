//! Reconstruction of a surface from its determining functions
//! `(ν1, ν2, λ, μ)` in canonical principal parameters, and rigid alignment.

mod align;
mod cauchy;
mod compat;
mod data;
mod frame;
mod pipeline;

pub use align::{align_rigid, RigidMotion};
pub use cauchy::{cauchy_residual, f_fields_on, g_initial, initial_lines, solve_cauchy, subsample};
pub use compat::{compatibility_residual, recover_beta, CompatResidual, FrameCoefficients};
pub use data::{refine, refine_values, DeterminingData, FieldSource, JetFn};
pub use frame::{integrate_frame, FrameGrid, InitialFrame};
pub use pipeline::{reconstruct, valid_region, ReconstructOptions, Reconstruction, ValidRegion};
