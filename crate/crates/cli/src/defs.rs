//! Input documents: surface definitions and determining data.

use std::path::Path;

use serde::{Deserialize, Serialize};

use canon4::catalog::{CatalogData, CatalogSurface};
use canon4::expr::parse;
use canon4::lattice::{Lattice, Rect};
use canon4::reconstruct::{DeterminingData, FieldSource, InitialFrame};
use canon4::surface::{Chart, Frame, Orientation};
use canon4::{Error, Result, Vec4};

pub const SCHEMA: &str = "canon4/v1";

fn check_schema(schema: &str) -> Result<()> {
    if schema == SCHEMA {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("expected schema \"{SCHEMA}\", found \"{schema}\"")))
    }
}

pub fn read_json<D: for<'de> Deserialize<'de>>(path: &Path) -> Result<D> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn default_orientation() -> i32 {
    1
}

/// A chart with its reference data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDefinition {
    pub schema: String,
    pub name: String,
    pub coords: [String; 4],
    pub domain: [f64; 4],
    #[serde(default = "default_orientation")]
    pub orientation: i32,
    #[serde(default)]
    pub base_point: [f64; 2],
    #[serde(default)]
    pub c1: f64,
    #[serde(default)]
    pub c2: f64,
    #[serde(default)]
    pub c: Option<f64>,
}

impl SurfaceDefinition {
    pub fn load(path: &Path) -> Result<Self> {
        let d: SurfaceDefinition = read_json(path)?;
        check_schema(&d.schema)?;
        Ok(d)
    }

    pub fn from_catalog(s: &CatalogSurface) -> Self {
        SurfaceDefinition {
            schema: SCHEMA.into(),
            name: s.name.into(),
            coords: s.coords.map(String::from),
            domain: s.domain,
            orientation: s.orientation,
            base_point: [s.base.0, s.base.1],
            c1: 0.0,
            c2: 0.0,
            c: None,
        }
    }

    pub fn bounds(&self) -> Rect<f64> {
        let [a, b, c, d] = self.domain;
        Rect::new(a, b, c, d)
    }

    pub fn chart(&self) -> Result<Chart<f64>> {
        let b = self.bounds();
        b.validate()?;
        let c = [&self.coords[0], &self.coords[1], &self.coords[2], &self.coords[3]].map(|s| s.as_str());
        Chart::parse(c, b, Orientation::from_sign(self.orientation)?)
    }
}

/// One determining function: an expression or samples on the lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldValue {
    Expression(String),
    Values(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fields {
    pub nu1: FieldValue,
    pub nu2: FieldValue,
    pub lambda: FieldValue,
    pub mu: FieldValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialDefinition {
    pub position: [f64; 4],
    /// Rows `x, y, b, l`.
    pub frame: [[f64; 4]; 4],
}

/// Input of `reconstruct`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DataDefinition {
    pub schema: String,
    #[serde(default)]
    pub name: String,
    pub fields: Fields,
    pub domain: [f64; 4],
    /// Lattice shape; required for sampled fields.
    #[serde(default)]
    pub grid: Option<[usize; 2]>,
    #[serde(default)]
    pub base_point: [f64; 2],
    #[serde(default)]
    pub c1: f64,
    #[serde(default)]
    pub c2: f64,
    #[serde(default)]
    pub c: Option<f64>,
    #[serde(default)]
    pub initial: Option<InitialDefinition>,
}

impl DataDefinition {
    pub fn load(path: &Path) -> Result<Self> {
        let d: DataDefinition = read_json(path)?;
        check_schema(&d.schema)?;
        Ok(d)
    }

    pub fn from_catalog(d: &CatalogData) -> Self {
        let e = |k: usize| FieldValue::Expression(d.fields[k].into());
        DataDefinition {
            schema: SCHEMA.into(),
            name: d.name.into(),
            fields: Fields { nu1: e(0), nu2: e(1), lambda: e(2), mu: e(3) },
            domain: d.domain,
            grid: None,
            base_point: [d.base.0, d.base.1],
            c1: d.c1,
            c2: d.c2,
            c: None,
            initial: None,
        }
    }

    pub fn initial_frame(&self) -> Result<InitialFrame<f64>> {
        let Some(init) = &self.initial else {
            return Ok(InitialFrame::default());
        };
        let rows = init.frame.map(Vec4);
        let frame = Frame::from_rows(rows);
        if frame.gram_deviation() > 1e-10 {
            return Err(Error::InvalidInput("initial frame is not orthonormal".into()));
        }
        Ok(InitialFrame { position: Vec4(init.position), frame })
    }

    /// The data on the given lattice (or the file's own grid).
    pub fn data(&self, grid: Option<(usize, usize)>, bounds: Option<Rect<f64>>) -> Result<DeterminingData<f64>> {
        let fields = [&self.fields.nu1, &self.fields.nu2, &self.fields.lambda, &self.fields.mu];
        let sampled = fields.iter().any(|f| matches!(f, FieldValue::Values(_)));
        let [a, b, c, d] = self.domain;
        let own = Rect::new(a, b, c, d);
        own.validate()?;
        let (nu, nv) = if sampled {
            let [nu, nv] = self.grid.ok_or_else(|| Error::InvalidInput("sampled fields need \"grid\": [nu, nv]".into()))?;
            if grid.is_some_and(|g| g != (nu, nv)) || bounds.is_some_and(|r| r != own) {
                return Err(Error::ShapeMismatch("sampled data fixes its own lattice".into()));
            }
            (nu, nv)
        } else {
            grid.or(self.grid.map(|[a, b]| (a, b))).unwrap_or((41, 41))
        };
        let lattice = Lattice::new(nu, nv, bounds.unwrap_or(own))?;
        let source = if sampled {
            let mut out: [Vec<f64>; 4] = Default::default();
            for (k, f) in fields.iter().enumerate() {
                out[k] = match f {
                    FieldValue::Values(v) => v.clone(),
                    FieldValue::Expression(s) => {
                        let e = parse(s)?;
                        lattice.points().into_iter().map(|(u, v)| e.eval(u, v)).collect::<Result<_>>()?
                    }
                };
            }
            FieldSource::Grid(Box::new(out))
        } else {
            let e = |f: &FieldValue| match f {
                FieldValue::Expression(s) => parse(s),
                FieldValue::Values(_) => unreachable!("checked above"),
            };
            FieldSource::Expressions(Box::new([e(fields[0])?, e(fields[1])?, e(fields[2])?, e(fields[3])?]))
        };
        let mut data =
            DeterminingData::new(source, lattice, (self.base_point[0], self.base_point[1])).with_constants(self.c1, self.c2);
        data.c = self.c;
        Ok(data)
    }
}
