//! Determining data `(ν1, ν2, λ, μ)` and its sampling on lattices.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::canonize::{determining_jets_grid, Convention, DeterminingJet};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::geomfun::{geometric_functions, geometric_functions_jet};
use crate::lattice::Lattice;
use crate::scalar::Real;
use crate::surface::Surface;
use crate::tolerance::Tolerances;

/// Point evaluator returning the jet of the determining functions.
pub type JetFn<T> = Arc<dyn Fn(T, T) -> Result<DeterminingJet<T>> + Send + Sync>;

/// Where the determining functions come from.
#[derive(Clone)]
pub enum FieldSource<T> {
    /// Closed forms in `u`, `v`, in the order `ν1, ν2, λ, μ`.
    Expressions(Box<[Expression; 4]>),
    /// Samples on the output lattice, in the order `ν1, ν2, λ, μ`.
    Grid(Box<[Vec<T>; 4]>),
    /// Any evaluator, e.g. the functions of a known chart.
    Function(JetFn<T>),
}

impl<T: fmt::Debug> fmt::Debug for FieldSource<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSource::Expressions(e) => f.debug_tuple("Expressions").field(e).finish(),
            FieldSource::Grid(g) => f.debug_tuple("Grid").field(g).finish(),
            FieldSource::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Input of the reconstruction.
#[derive(Clone, Debug)]
pub struct DeterminingData<T> {
    pub source: FieldSource<T>,
    pub lattice: Lattice<T>,
    pub base: (T, T),
    /// Ratio `√E/√G` along the base line; defaults to `e^{c2 - c1}`.
    pub c: Option<T>,
    pub c1: T,
    pub c2: T,
    pub convention: Convention,
}

impl<T: Real> DeterminingData<T> {
    pub fn new(source: FieldSource<T>, lattice: Lattice<T>, base: (T, T)) -> Self {
        DeterminingData { source, lattice, base, c: None, c1: T::zero(), c2: T::zero(), convention: Convention::default() }
    }

    pub fn with_constants(mut self, c1: T, c2: T) -> Self {
        self.c1 = c1;
        self.c2 = c2;
        self
    }

    /// The functions of a principal chart, with `c1`, `c2` chosen so that
    /// `e^{-c1} = √E` and `e^{-c2} = √G` at the base point. For canonical
    /// parameters this reproduces the chart's own metric.
    pub fn from_surface<S: Surface<T> + Send + 'static>(
        surface: Arc<S>,
        lattice: Lattice<T>,
        base: (T, T),
        tol: &Tolerances,
    ) -> Result<Self> {
        let gf = geometric_functions(surface.as_ref(), base.0, base.1, tol)?;
        let tol = *tol;
        let f: JetFn<T> = Arc::new(move |u, v| {
            Ok(DeterminingJet::from_geometric(&geometric_functions_jet(surface.as_ref(), u, v, &tol)?))
        });
        let half = T::of(0.5);
        Ok(DeterminingData::new(FieldSource::Function(f), lattice, base).with_constants(-(gf.e.ln() * half), -(gf.g.ln() * half)))
    }

    /// Constant `e^{c2 - c1}` unless set explicitly.
    pub fn ratio(&self) -> T {
        self.c.unwrap_or_else(|| (self.c2 - self.c1).exp())
    }

    /// Base node indices.
    pub fn base_node(&self) -> Result<(usize, usize)> {
        self.lattice.node_of(self.base.0, self.base.1)
    }

    /// The data multiplied by `factor` (all four functions).
    pub fn scaled(&self, factor: f64) -> Self {
        (0..4).fold(self.clone(), |d, k| d.scaled_field(k, factor))
    }

    /// One function (`0..4` in the order `ν1, ν2, λ, μ`) multiplied by
    /// `factor`.
    pub fn scaled_field(&self, field: usize, factor: f64) -> Self {
        let source = match &self.source {
            FieldSource::Expressions(e) => {
                let mut e = e.clone();
                e[field] = e[field].clone().scaled(factor);
                FieldSource::Expressions(e)
            }
            FieldSource::Grid(g) => {
                let mut g = g.clone();
                let k = T::of(factor);
                g[field].iter_mut().for_each(|x| *x = *x * k);
                FieldSource::Grid(g)
            }
            FieldSource::Function(f) => {
                let f = f.clone();
                let k = T::of(factor);
                FieldSource::Function(Arc::new(move |u, v| {
                    let mut j = f(u, v)?;
                    let d = [&mut j.nu1, &mut j.nu2, &mut j.lambda, &mut j.mu];
                    let x = d.into_iter().nth(field).expect("field index below 4");
                    *x = Dual::new(x.re * k, x.du * k, x.dv * k);
                    Ok(j)
                }))
            }
        };
        DeterminingData { source, ..self.clone() }
    }

    /// Jets at every node of `self.lattice` refined by `factor`.
    pub fn sample(&self, factor: usize, stencil_order: usize) -> Result<Vec<DeterminingJet<T>>> {
        let fine = refine(&self.lattice, factor)?;
        match &self.source {
            FieldSource::Expressions(e) => {
                let pts = fine.points();
                pts.par_iter()
                    .map(|&(u, v)| DeterminingJet::from_expressions([&e[0], &e[1], &e[2], &e[3]], u, v))
                    .collect()
            }
            FieldSource::Function(f) => fine.points().par_iter().map(|&(u, v)| f(u, v)).collect(),
            FieldSource::Grid(g) => {
                let n = self.lattice.len();
                if g.iter().any(|f| f.len() != n) {
                    return Err(Error::ShapeMismatch(format!("grid fields must have {n} values")));
                }
                let coarse = determining_jets_grid([&g[0], &g[1], &g[2], &g[3]], &self.lattice, stencil_order);
                if factor == 1 {
                    return Ok(coarse);
                }
                // Cubic interpolation of the twelve jet components.
                let comps: Vec<Vec<T>> = (0..12)
                    .map(|c| {
                        let vals: Vec<T> = coarse.iter().map(|j| jet_component(j, c)).collect();
                        refine_values(&vals, &self.lattice, factor)
                    })
                    .collect();
                Ok((0..fine.len())
                    .map(|k| {
                        let d = |f: usize| Dual::new(comps[3 * f][k], comps[3 * f + 1][k], comps[3 * f + 2][k]);
                        DeterminingJet { nu1: d(0), nu2: d(1), lambda: d(2), mu: d(3) }
                    })
                    .collect())
            }
        }
    }
}

fn jet_component<T: Real>(j: &DeterminingJet<T>, c: usize) -> T {
    let d = [j.nu1, j.nu2, j.lambda, j.mu][c / 3];
    [d.re, d.du, d.dv][c % 3]
}

/// The lattice with `factor - 1` extra nodes in every interval.
pub fn refine<T: Real>(lattice: &Lattice<T>, factor: usize) -> Result<Lattice<T>> {
    let r = |n: usize| if n < 2 { n } else { (n - 1) * factor + 1 };
    Lattice::new(r(lattice.nu), r(lattice.nv), lattice.bounds)
}

/// Lagrange weights at fractional position `x` (in node units) from a
/// window of up to four nodes.
fn cubic_window(x: f64, n: usize) -> (usize, Vec<f64>) {
    let width = n.min(4);
    let start = ((x.floor() as isize) - 1).clamp(0, (n - width) as isize) as usize;
    let w = (0..width)
        .map(|a| {
            let xa = (start + a) as f64;
            (0..width).filter(|&b| b != a).fold(1.0, |p, b| {
                let xb = (start + b) as f64;
                p * (x - xb) / (xa - xb)
            })
        })
        .collect();
    (start, w)
}

/// Tensor cubic interpolation of lattice values onto the refined lattice.
pub fn refine_values<T: Real>(values: &[T], lattice: &Lattice<T>, factor: usize) -> Vec<T> {
    let fine = match refine(lattice, factor) {
        Ok(l) => l,
        Err(_) => return values.to_vec(),
    };
    let mut out = Vec::with_capacity(fine.len());
    for jj in 0..fine.nv {
        let (sv, wv) = cubic_window(jj as f64 / factor as f64, lattice.nv);
        for ii in 0..fine.nu {
            let (su, wu) = cubic_window(ii as f64 / factor as f64, lattice.nu);
            let mut acc = T::zero();
            for (b, wb) in wv.iter().enumerate() {
                for (a, wa) in wu.iter().enumerate() {
                    acc = acc + values[lattice.idx(su + a, sv + b)] * T::of(wa * wb);
                }
            }
            out.push(acc);
        }
    }
    out
}
