//! Built-in charts and determining data.
//!
//! Every entry is stored as expression strings so the command-line tool can
//! print it as a definition file.

use crate::error::{Error, Result};
use crate::expr::parse;
use crate::lattice::{Lattice, Rect};
use crate::reconstruct::{DeterminingData, FieldSource};
use crate::scalar::Real;
use crate::surface::{Chart, Orientation};

/// A named chart with its reference point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatalogSurface {
    pub name: &'static str,
    pub description: &'static str,
    pub coords: [&'static str; 4],
    /// `[u_min, u_max, v_min, v_max]`.
    pub domain: [f64; 4],
    pub orientation: i32,
    pub base: (f64, f64),
    /// The parameters are principal.
    pub principal: bool,
    /// The parameters are canonical principal at `base` with the
    /// constants that normalize the metric there.
    pub canonical: bool,
}

impl CatalogSurface {
    pub fn chart<T: Real>(&self) -> Result<Chart<T>> {
        let [a, b, c, d] = self.domain.map(T::of);
        Chart::parse(self.coords, Rect::new(a, b, c, d), Orientation::from_sign(self.orientation)?)
    }

    pub fn bounds<T: Real>(&self) -> Rect<T> {
        let [a, b, c, d] = self.domain.map(T::of);
        Rect::new(a, b, c, d)
    }
}

/// Named determining data `(ν1, ν2, λ, μ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatalogData {
    pub name: &'static str,
    pub description: &'static str,
    pub fields: [&'static str; 4],
    pub domain: [f64; 4],
    pub base: (f64, f64),
    pub c1: f64,
    pub c2: f64,
}

impl CatalogData {
    /// The data on an `nu × nv` lattice over its domain.
    pub fn data<T: Real>(&self, nu: usize, nv: usize) -> Result<DeterminingData<T>> {
        let e = [0, 1, 2, 3].map(|k| parse(self.fields[k]));
        let [a, b, c, d] = e;
        let fields = [a?, b?, c?, d?];
        let [u0, u1, v0, v1] = self.domain.map(T::of);
        let lattice = Lattice::new(nu, nv, Rect::new(u0, u1, v0, v1))?;
        Ok(DeterminingData::new(FieldSource::Expressions(Box::new(fields)), lattice, (T::of(self.base.0), T::of(self.base.1)))
            .with_constants(T::of(self.c1), T::of(self.c2)))
    }
}

const SQ: [f64; 4] = [-1.0, 1.0, -1.0, 1.0];

pub const SURFACES: &[CatalogSurface] = &[
    CatalogSurface {
        name: "plane",
        description: "coordinate plane; principal but totally geodesic",
        coords: ["u", "v", "0", "0"],
        domain: SQ,
        orientation: 1,
        base: (0.0, 0.0),
        principal: true,
        canonical: false,
    },
    CatalogSurface {
        name: "example1_surface",
        description: "surface determined by nu1 = nu2 = mu = 1, lambda = 0",
        coords: ["sin(u)*cos(v)", "cos(u)*sin(v)", "1 - cos(u)*cos(v)", "sin(u)*sin(v)"],
        domain: SQ,
        orientation: 1,
        base: (0.0, 0.0),
        principal: true,
        canonical: true,
    },
    CatalogSurface {
        name: "example2",
        description: "rotational surface with E = 1, G = 1 + u^2",
        coords: ["u*cos(v)", "u*sin(v)", "cos(v)", "sin(v)"],
        domain: [0.0, 1.0, 0.0, 1.0],
        orientation: 1,
        base: (0.0, 0.0),
        principal: true,
        canonical: true,
    },
    CatalogSurface {
        name: "example3_raw",
        description: "rotational surface, conformal but not principal",
        coords: ["cosh(u)*cos(v)", "cosh(u)*sin(v)", "cos(u)", "sin(u)"],
        domain: SQ,
        orientation: 1,
        base: (0.0, 0.0),
        principal: false,
        canonical: false,
    },
    CatalogSurface {
        name: "example3_rotated",
        description: "example3_raw in the principal parameters u + v, u - v",
        coords: ["cosh(u+v)*cos(u-v)", "cosh(u+v)*sin(u-v)", "cos(u+v)", "sin(u+v)"],
        domain: [-0.5, 0.5, -0.5, 0.5],
        orientation: 1,
        base: (0.0, 0.0),
        principal: true,
        canonical: false,
    },
    CatalogSurface {
        name: "example3_canonical",
        description: "example3_rotated after u = asinh(u'/sqrt(2)), v = asinh(v'/sqrt(2))",
        coords: [
            "cosh(ln(u/sqrt(2) + sqrt(u^2/2 + 1)) + ln(v/sqrt(2) + sqrt(v^2/2 + 1)))*cos(ln(u/sqrt(2) + sqrt(u^2/2 + 1)) - ln(v/sqrt(2) + sqrt(v^2/2 + 1)))",
            "cosh(ln(u/sqrt(2) + sqrt(u^2/2 + 1)) + ln(v/sqrt(2) + sqrt(v^2/2 + 1)))*sin(ln(u/sqrt(2) + sqrt(u^2/2 + 1)) - ln(v/sqrt(2) + sqrt(v^2/2 + 1)))",
            "cos(ln(u/sqrt(2) + sqrt(u^2/2 + 1)) + ln(v/sqrt(2) + sqrt(v^2/2 + 1)))",
            "sin(ln(u/sqrt(2) + sqrt(u^2/2 + 1)) + ln(v/sqrt(2) + sqrt(v^2/2 + 1)))",
        ],
        domain: [-0.7, 0.7, -0.7, 0.7],
        orientation: 1,
        base: (0.0, 0.0),
        principal: true,
        canonical: true,
    },
    CatalogSurface {
        name: "example4_raw",
        description: "Clifford-type torus, not principal",
        coords: ["cos(u)", "sin(u)", "sin(v)", "cos(v)"],
        domain: SQ,
        orientation: 1,
        base: (0.0, 0.0),
        principal: false,
        canonical: false,
    },
    CatalogSurface {
        name: "example4_rotated",
        description: "example4_raw in the principal parameters u + v, u - v",
        coords: ["cos(u+v)", "sin(u+v)", "sin(u-v)", "cos(u-v)"],
        domain: SQ,
        orientation: 1,
        base: (0.0, 0.0),
        principal: true,
        canonical: true,
    },
    CatalogSurface {
        name: "example4_scaled",
        description: "example4_rotated divided by sqrt(2), congruent to example1_surface",
        coords: ["cos(u+v)/sqrt(2)", "sin(u+v)/sqrt(2)", "sin(u-v)/sqrt(2)", "cos(u-v)/sqrt(2)"],
        domain: SQ,
        orientation: 1,
        base: (0.0, 0.0),
        principal: true,
        canonical: true,
    },
    CatalogSurface {
        name: "example4_opposite",
        description: "torus with the opposite orientation, mu changes sign",
        coords: ["cos(u+v)/sqrt(2)", "sin(u+v)/sqrt(2)", "cos(u-v)/sqrt(2)", "sin(u-v)/sqrt(2)"],
        domain: SQ,
        orientation: 1,
        base: (0.0, 0.0),
        principal: true,
        canonical: true,
    },
];

pub const DATA: &[CatalogData] = &[
    CatalogData {
        name: "example1_data",
        description: "nu1 = nu2 = mu = 1, lambda = 0",
        fields: ["1", "1", "0", "1"],
        domain: SQ,
        base: (0.0, 0.0),
        c1: 0.0,
        c2: 0.0,
    },
    CatalogData {
        name: "example2_data",
        description: "functions of example2",
        fields: ["0", "1/(1+u^2)", "0", "1/(1+u^2)"],
        domain: [0.0, 1.0, 0.0, 1.0],
        base: (0.0, 0.0),
        c1: 0.0,
        c2: 0.0,
    },
    CatalogData {
        name: "example4_data",
        description: "functions of example4_rotated, E = G = 2",
        fields: ["1/sqrt(2)", "1/sqrt(2)", "0", "1/sqrt(2)"],
        domain: SQ,
        base: (0.0, 0.0),
        c1: -0.34657359027997264,
        c2: -0.34657359027997264,
    },
];

pub fn surface(name: &str) -> Result<&'static CatalogSurface> {
    SURFACES.iter().find(|s| s.name == name).ok_or_else(|| Error::InvalidInput(format!("unknown catalog surface '{name}'")))
}

pub fn data(name: &str) -> Result<&'static CatalogData> {
    DATA.iter().find(|s| s.name == name).ok_or_else(|| Error::InvalidInput(format!("unknown catalog data '{name}'")))
}
