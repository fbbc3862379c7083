//! The scale functions `φ(u)`, `ψ(v)` and the canonical-parameter test.

use std::sync::Arc;

use rayon::prelude::*;

use super::ffields::{f_fields, line_integrands, DeterminingJet};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::geomfun::geometric_functions_jet;
use crate::lattice::Lattice;
use crate::quadrature::line_integrals;
use crate::scalar::{Number, Real};
use crate::surface::{first_jet, Surface};
use crate::tolerance::Tolerances;

/// How the base-line integrals enter `φ` and `ψ`.
///
/// `Separate` keeps only the integral along the moving line:
/// `φ(u) = √E(u, v0) e^{c1}` and `ψ(v) = √G(u0, v) e^{c2}`. This is the
/// reading under which the worked examples (Examples 2 and 3) come out
/// as stated. `Coupled` also applies the cross integral along the base
/// line, `φ(u) = √E(u, v0) √G(u0, v0)/√G(u, v0) e^{c1}`, matching the
/// displayed definition literally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Separate,
    Coupled,
}

/// Choice of the free constants `c1`, `c2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScaleConstants<T> {
    Fixed { c1: T, c2: T },
    /// Pick `c1`, `c2` so that `φ(u0) = ψ(v0) = 1`.
    NormalizeAtBase,
}

impl<T: Real> Default for ScaleConstants<T> {
    fn default() -> Self {
        ScaleConstants::Fixed { c1: T::zero(), c2: T::zero() }
    }
}

/// Parameter axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    U,
    V,
}

/// `|z_u|` and `|z_v|` at a point.
fn metric_roots<T: Real, S: Surface<T>, N: Number<Scalar = T>>(s: &S, u: N, v: N) -> Result<(N, N)> {
    let [_, zu, zv] = first_jet(s, u, v)?;
    Ok((zu.norm(), zv.norm()))
}

/// Resolve `c1`, `c2` for a chart and base point.
pub fn resolve_constants<T: Real, S: Surface<T>>(s: &S, base: (T, T), constants: ScaleConstants<T>) -> Result<(T, T)> {
    match constants {
        ScaleConstants::Fixed { c1, c2 } => Ok((c1, c2)),
        ScaleConstants::NormalizeAtBase => {
            let (se, sg) = metric_roots(s, base.0, base.1)?;
            Ok((-se.ln(), -sg.ln()))
        }
    }
}

/// Closed form of `φ` (axis `U`) or `ψ` (axis `V`) that follows from the
/// metric along the base lines. It can be evaluated in any number type,
/// which is what the canonical reparametrization needs.
#[derive(Clone, Debug)]
pub struct ScaleFunction<T, S> {
    surface: Arc<S>,
    axis: Axis,
    base: (T, T),
    convention: Convention,
    factor: T,
}

impl<T: Real, S: Surface<T>> ScaleFunction<T, S> {
    pub fn new(surface: Arc<S>, axis: Axis, base: (T, T), c: T, convention: Convention) -> Result<Self> {
        let mut factor = c.exp();
        if convention == Convention::Coupled {
            let (se, sg) = metric_roots(surface.as_ref(), base.0, base.1)?;
            factor = factor * if axis == Axis::U { sg } else { se };
        }
        Ok(ScaleFunction { surface, axis, base, convention, factor })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn eval<N: Number<Scalar = T>>(&self, t: N) -> Result<N> {
        let s = self.surface.as_ref();
        let (along, across) = match self.axis {
            Axis::U => metric_roots(s, t, N::constant(self.base.1))?,
            Axis::V => {
                let (se, sg) = metric_roots(s, N::constant(self.base.0), t)?;
                (sg, se)
            }
        };
        let raw = match self.convention {
            Convention::Separate => along,
            Convention::Coupled => along / across,
        };
        Ok(raw.scale(self.factor))
    }

    /// `[f(t0), f'(t0), ..., f^(order)(t0)]`, `order <= 5`.
    pub fn derivatives(&self, t0: T, order: usize) -> Result<Vec<T>> {
        type D<N> = Dual<N>;
        fn tail1<T: Real>(x: D<T>) -> Vec<T> {
            vec![x.re, x.du]
        }
        fn tail2<T: Real>(x: D<D<T>>) -> Vec<T> {
            let mut v = vec![x.re.re];
            v.extend(tail1(x.du));
            v
        }
        fn tail3<T: Real>(x: D<D<D<T>>>) -> Vec<T> {
            let mut v = vec![x.value()];
            v.extend(tail2(x.du));
            v
        }
        fn tail4<T: Real>(x: D<D<D<D<T>>>>) -> Vec<T> {
            let mut v = vec![x.value()];
            v.extend(tail3(x.du));
            v
        }
        fn tail5<T: Real>(x: D<D<D<D<D<T>>>>>) -> Vec<T> {
            let mut v = vec![x.value()];
            v.extend(tail4(x.du));
            v
        }
        let s1 = D::var_u(t0);
        let s2 = D::var_u(s1);
        let s3 = D::var_u(s2);
        let s4 = D::var_u(s3);
        let s5 = D::var_u(s4);
        Ok(match order {
            0 => vec![self.eval(t0)?],
            1 => tail1(self.eval(s1)?),
            2 => tail2(self.eval(s2)?),
            3 => tail3(self.eval(s3)?),
            4 => tail4(self.eval(s4)?),
            5 => tail5(self.eval(s5)?),
            _ => return Err(Error::InvalidInput(format!("derivative order {order} exceeds 5"))),
        })
    }
}

/// Samples of `φ` and `ψ` with diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalReport<T> {
    pub u_samples: Vec<T>,
    /// `φ` at each `u` sample, averaged over the `v` slices.
    pub phi: Vec<T>,
    /// Largest relative spread of `φ` across the slices.
    pub phi_spread: T,
    pub v_samples: Vec<T>,
    pub psi: Vec<T>,
    pub psi_spread: T,
    pub c1: T,
    pub c2: T,
    pub base_point: (T, T),
    pub convention: Convention,
    pub is_canonical: bool,
    pub max_deviation: T,
}

/// Line integrands `(f1 + f2√G/√E, f3√E/√G + f4, √E, √G)` at a point.
pub fn integrands_at<T: Real, S: Surface<T>>(s: &S, u: T, v: T, tol: &Tolerances) -> Result<[T; 4]> {
    let gf = geometric_functions_jet(s, u, v, tol)?;
    let f = f_fields(&DeterminingJet::from_geometric(&gf), u.as_f64(), v.as_f64(), tol.eps_denom)?;
    let (se, sg) = (gf.e.re.sqrt(), gf.g.re.sqrt());
    let (gv, gu) = line_integrands(&f, se, sg);
    Ok([gv, gu, se, sg])
}

fn slices<T: Real>(a: T, b: T, at: T, count: usize) -> Vec<T> {
    if a == b {
        return vec![at];
    }
    (0..count).map(|k| a + (b - a) * T::of(k as f64 / (count - 1) as f64)).collect()
}

fn mean_and_spread<T: Real>(xs: &[T]) -> (T, T) {
    let n = T::of(xs.len() as f64);
    let mean = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let lo = xs.iter().fold(xs[0], |a, &x| a.min(x));
    let hi = xs.iter().fold(xs[0], |a, &x| a.max(x));
    (mean, (hi - lo) / mean.abs().max(T::epsilon()))
}

/// Number of slices along which the line independence of `φ` and `ψ` is
/// checked.
pub const SLICES: usize = 5;

/// Evaluate `φ` at every `u` node and `ψ` at every `v` node of `lattice`
/// by quadrature of the f-fields. `φ` is computed on [`SLICES`] distinct
/// `v` lines; their average is reported and a spread above `tol_spread`
/// is an error.
pub fn phi_psi<T: Real, S: Surface<T>>(
    s: &S,
    lattice: &Lattice<T>,
    base: (T, T),
    constants: ScaleConstants<T>,
    convention: Convention,
    tol: &Tolerances,
) -> Result<CanonicalReport<T>> {
    let dom = s.domain();
    let b = lattice.bounds;
    for (u, v) in [(base.0, base.1), (b.u_min, b.v_min), (b.u_max, b.v_max)] {
        if !dom.contains(u, v) {
            return Err(Error::IntegrationDomain { u: u.as_f64(), v: v.as_f64() });
        }
    }
    let (c1, c2) = resolve_constants(s, base, constants)?;
    let qtol = T::of(tol.tol_quad);
    let (u0, v0) = base;
    let us = lattice.us();
    let vs = lattice.vs();
    let vslices = slices(b.v_min, b.v_max, v0, SLICES);
    let uslices = slices(b.u_min, b.u_max, u0, SLICES);
    let coupled = convention == Convention::Coupled;

    // Base-line integrals, shared by every node.
    let base_u = if coupled {
        line_integrals(|t| Ok(integrands_at(s, t, v0, tol)?[1]), u0, &us, qtol)?
    } else {
        vec![T::zero(); us.len()]
    };
    let base_v = if coupled {
        line_integrals(|t| Ok(integrands_at(s, u0, t, tol)?[0]), v0, &vs, qtol)?
    } else {
        vec![T::zero(); vs.len()]
    };

    let phi_rows: Vec<Result<(T, T)>> = (0..us.len())
        .into_par_iter()
        .map(|i| {
            let u = us[i];
            let ints = line_integrals(|t| Ok(integrands_at(s, u, t, tol)?[0]), v0, &vslices, qtol)?;
            let vals: Result<Vec<T>> = vslices
                .iter()
                .zip(&ints)
                .map(|(&v, &iv)| Ok(integrands_at(s, u, v, tol)?[2] * (c1 - iv - base_u[i]).exp()))
                .collect();
            Ok(mean_and_spread(&vals?))
        })
        .collect();
    let psi_rows: Vec<Result<(T, T)>> = (0..vs.len())
        .into_par_iter()
        .map(|j| {
            let v = vs[j];
            let ints = line_integrals(|t| Ok(integrands_at(s, t, v, tol)?[1]), u0, &uslices, qtol)?;
            let vals: Result<Vec<T>> = uslices
                .iter()
                .zip(&ints)
                .map(|(&u, &iu)| Ok(integrands_at(s, u, v, tol)?[3] * (c2 - iu - base_v[j]).exp()))
                .collect();
            Ok(mean_and_spread(&vals?))
        })
        .collect();
    let phi_rows: Vec<(T, T)> = phi_rows.into_iter().collect::<Result<_>>()?;
    let psi_rows: Vec<(T, T)> = psi_rows.into_iter().collect::<Result<_>>()?;

    let spread = |rows: &[(T, T)]| rows.iter().fold(T::zero(), |m, r| m.max(r.1));
    let (phi_spread, psi_spread) = (spread(&phi_rows), spread(&psi_rows));
    let limit = T::of(tol.tol_spread);
    if phi_spread > limit {
        return Err(Error::LineDependence { name: "phi", spread: phi_spread.as_f64(), tol: tol.tol_spread });
    }
    if psi_spread > limit {
        return Err(Error::LineDependence { name: "psi", spread: psi_spread.as_f64(), tol: tol.tol_spread });
    }
    let phi: Vec<T> = phi_rows.iter().map(|r| r.0).collect();
    let psi: Vec<T> = psi_rows.iter().map(|r| r.0).collect();
    let max_deviation = phi.iter().chain(&psi).fold(T::zero(), |m, &x| m.max((x - T::one()).abs()));
    Ok(CanonicalReport {
        u_samples: us,
        phi,
        phi_spread,
        v_samples: vs,
        psi,
        psi_spread,
        c1,
        c2,
        base_point: base,
        convention,
        is_canonical: max_deviation < T::of(tol.tol_canon),
        max_deviation,
    })
}
