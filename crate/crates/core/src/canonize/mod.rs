//! Canonical principal parameters: the f-fields, the scale functions
//! `φ`, `ψ`, the canonical test and the reparametrization that achieves it.

mod ffields;
mod rotation;
mod scale;
mod special;
mod transform;

pub use ffields::{
    determining_jets_grid, f_fields, f_fields_unchecked, line_integrands, metric_ode_residual, DeterminingJet, FFields,
};
pub use rotation::principal_rotation;
pub use scale::{
    integrands_at, phi_psi, resolve_constants, Axis, CanonicalReport, Convention, ScaleConstants, ScaleFunction, SLICES,
};
pub use special::{manufactured_pnmcv, pnmcv_check, PnmcvReport};
pub use transform::{canonical_maps, canonize_transform, Canonization, MonotoneMap, Reparametrized};
