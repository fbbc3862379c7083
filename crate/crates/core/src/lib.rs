//! Invariants, canonical principal parameters and reconstruction of
//! surfaces in Euclidean 4-space.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod canonize;
pub mod catalog;
pub mod dual;
pub mod error;
pub mod expr;
pub mod geomfun;
pub mod lattice;
pub mod quadrature;
pub mod reconstruct;
pub mod scalar;
pub mod stencil;
pub mod surface;
pub mod tolerance;
pub mod vec4;

pub use dual::Dual;
pub use error::{Error, Result};
pub use expr::{parse, Expression, Jet3};
pub use scalar::{Number, Real};
pub use vec4::Vec4;

/// Double-precision aliases.
pub type Chart64 = surface::Chart<f64>;
pub type Lattice64 = lattice::Lattice<f64>;
pub type GeometricFunctions64 = geomfun::GeometricFunctions<f64>;
pub type DeterminingData64 = reconstruct::DeterminingData<f64>;
pub type FrameGrid64 = reconstruct::FrameGrid<f64>;
pub type RigidMotion64 = reconstruct::RigidMotion<f64>;

/// Single-precision aliases.
pub type Chart32 = surface::Chart<f32>;
pub type Lattice32 = lattice::Lattice<f32>;
pub type GeometricFunctions32 = geomfun::GeometricFunctions<f32>;
pub type DeterminingData32 = reconstruct::DeterminingData<f32>;
pub type FrameGrid32 = reconstruct::FrameGrid<f32>;
pub type RigidMotion32 = reconstruct::RigidMotion<f32>;
