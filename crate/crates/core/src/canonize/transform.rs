//! Reparametrization into canonical principal parameters.

use std::sync::Arc;

use super::scale::{phi_psi, resolve_constants, Axis, CanonicalReport, Convention, ScaleConstants, ScaleFunction};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Rect};
use crate::quadrature::GL5;
use crate::scalar::{Number, Real};
use crate::surface::{Orientation, Surface};
use crate::tolerance::Tolerances;
use crate::vec4::Vec4;

/// Knot intervals per map.
const KNOTS: usize = 128;

/// Increasing map `t -> t0 + ∫_{t0}^t f` for a positive scale function
/// `f`, with knots for fast inversion.
#[derive(Clone, Debug)]
pub struct MonotoneMap<T, S> {
    scale: ScaleFunction<T, S>,
    knots: Vec<T>,
    values: Vec<T>,
    slopes: Vec<T>,
}

impl<T: Real, S: Surface<T>> MonotoneMap<T, S> {
    /// Build over `[a, b]`, anchored so that `t0` is fixed.
    pub fn new(scale: ScaleFunction<T, S>, a: T, b: T, t0: T) -> Result<Self> {
        let name = if scale.axis() == Axis::U { "phi" } else { "psi" };
        let n = if a == b { 1 } else { KNOTS };
        let h = (b - a) / T::of(n as f64);
        let knots: Vec<T> = (0..=n).map(|k| if k == n { b } else { a + h * T::of(k as f64) }).collect();
        let mut slopes = Vec::with_capacity(n + 1);
        for &t in &knots {
            let s = scale.eval(t)?;
            if !(s > T::zero()) {
                return Err(Error::NonMonotone { name, at: t.as_f64(), value: s.as_f64() });
            }
            slopes.push(s);
        }
        let mut values = vec![T::zero(); n + 1];
        for k in 0..n {
            values[k + 1] = values[k] + gl5(&scale, knots[k], knots[k + 1])?;
        }
        let mut map = MonotoneMap { scale, knots, values, slopes };
        let shift = t0 - map.forward(t0)?;
        for v in &mut map.values {
            *v = *v + shift;
        }
        Ok(map)
    }

    fn interval(&self, t: T) -> usize {
        let n = self.knots.len() - 1;
        if n == 0 || t <= self.knots[0] {
            return 0;
        }
        let h = (self.knots[n] - self.knots[0]) / T::of(n as f64);
        let k = ((t - self.knots[0]) / h).floor().as_f64();
        (k.max(0.0) as usize).min(n - 1)
    }

    pub fn range(&self) -> (T, T) {
        (self.values[0], self.values[self.values.len() - 1])
    }

    pub fn domain(&self) -> (T, T) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    /// The derivative of the map (the scale function).
    pub fn slope(&self, t: T) -> Result<T> {
        self.scale.eval(t)
    }

    /// `t0 + ∫_{t0}^t f`, exact up to a 5-point Gauss rule on a sub-knot
    /// interval.
    pub fn forward(&self, t: T) -> Result<T> {
        let k = self.interval(t);
        Ok(self.values[k] + gl5(&self.scale, self.knots[k], t)?)
    }

    /// Inverse by cubic Hermite interpolation of the knot data, polished by
    /// Newton steps on the exact map.
    pub fn inverse(&self, x: T) -> Result<T> {
        let (lo, hi) = self.range();
        let slack = T::of(1e-12) * (T::one() + lo.abs().max(hi.abs()));
        if x < lo - slack || x > hi + slack {
            return Err(Error::IntegrationDomain { u: x.as_f64(), v: f64::NAN });
        }
        let n = self.knots.len() - 1;
        if n == 0 || self.knots[0] == self.knots[n] {
            return Ok(self.knots[0]);
        }
        let k = self.values.partition_point(|&v| v <= x).clamp(1, n) - 1;
        let (t0, t1) = (self.knots[k], self.knots[k + 1]);
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let h = t1 - t0;
        let (m0, m1) = (self.slopes[k] * h, self.slopes[k + 1] * h);
        // Hermite cubic in s in [0, 1] and its derivative.
        let herm = |s: T| {
            let (s2, s3) = (s * s, s * s * s);
            let two = T::of(2.0);
            let three = T::of(3.0);
            let p = (two * s3 - three * s2 + T::one()) * y0
                + (s3 - two * s2 + s) * m0
                + (three * s2 - two * s3) * y1
                + (s3 - s2) * m1;
            let dp = (T::of(6.0) * s2 - T::of(6.0) * s) * y0
                + (three * s2 - T::of(4.0) * s + T::one()) * m0
                + (T::of(6.0) * s - T::of(6.0) * s2) * y1
                + (three * s2 - two * s) * m1;
            (p, dp)
        };
        let mut s = ((x - y0) / (y1 - y0)).max(T::zero()).min(T::one());
        for _ in 0..8 {
            let (p, dp) = herm(s);
            s = (s - (p - x) / dp).max(T::zero()).min(T::one());
        }
        let mut t = t0 + s * h;
        for _ in 0..6 {
            let step = (self.forward(t)? - x) / self.scale.eval(t)?;
            t = t - step;
            if step.abs() <= T::epsilon() * (T::one() + t.abs()) {
                break;
            }
        }
        Ok(t)
    }

    /// Inverse evaluated in any number type. Derivatives follow from the
    /// Taylor series of the map at the primal preimage.
    pub fn inverse_n<N: Number<Scalar = T>>(&self, x: N) -> Result<N> {
        let p = x.value();
        let tp = self.inverse(p)?;
        let depth = N::DEPTH;
        if depth == 0 {
            return Ok(N::constant(tp));
        }
        let c = self.scale.derivatives(tp, depth - 1)?;
        let delta = x - N::constant(p);
        // Solve Σ c_k w^{k+1}/(k+1)! = δ for the nilpotent increment w.
        let mut w = delta / N::constant(c[0]);
        for _ in 0..depth {
            let (mut f, mut df) = (N::zero(), N::zero());
            let mut pw = N::one();
            let mut fact = T::one();
            for (k, &ck) in c.iter().enumerate() {
                df = df + pw.scale(ck / fact);
                fact = fact * T::of((k + 1) as f64);
                pw = pw * w;
                f = f + pw.scale(ck / fact);
            }
            w = w - (f - delta) / df;
        }
        Ok(N::constant(tp) + w)
    }
}

fn gl5<T: Real, S: Surface<T>>(f: &ScaleFunction<T, S>, a: T, b: T) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let h = b - a;
    let mut acc = T::zero();
    for (x, w) in GL5.0.iter().zip(GL5.1) {
        acc = acc + f.eval(a + h * T::of(*x))? * T::of(w);
    }
    Ok(acc * h)
}

/// A chart composed with the inverses of the canonical maps:
/// `z̄(ū, v̄) = z(u(ū), v(v̄))`.
#[derive(Clone, Debug)]
pub struct Reparametrized<T, S> {
    pub surface: Arc<S>,
    pub u_map: MonotoneMap<T, S>,
    pub v_map: MonotoneMap<T, S>,
}

impl<T: Real, S: Surface<T> + Send> Surface<T> for Reparametrized<T, S> {
    fn eval<N: Number<Scalar = T>>(&self, u: N, v: N) -> Result<Vec4<N>> {
        self.surface.eval(self.u_map.inverse_n(u)?, self.v_map.inverse_n(v)?)
    }

    fn domain(&self) -> Rect<T> {
        let (a, b) = self.u_map.range();
        let (c, d) = self.v_map.range();
        Rect::new(a, b, c, d)
    }

    fn orientation(&self) -> Orientation {
        self.surface.orientation()
    }
}

/// The canonical maps `ū(u)`, `v̄(v)` over the lattice bounds.
pub fn canonical_maps<T: Real, S: Surface<T>>(
    s: Arc<S>,
    lattice: &Lattice<T>,
    base: (T, T),
    constants: ScaleConstants<T>,
    convention: Convention,
) -> Result<(MonotoneMap<T, S>, MonotoneMap<T, S>)> {
    let (c1, c2) = resolve_constants(s.as_ref(), base, constants)?;
    let b = lattice.bounds;
    let phi = ScaleFunction::new(s.clone(), Axis::U, base, c1, convention)?;
    let psi = ScaleFunction::new(s, Axis::V, base, c2, convention)?;
    Ok((MonotoneMap::new(phi, b.u_min, b.u_max, base.0)?, MonotoneMap::new(psi, b.v_min, b.v_max, base.1)?))
}

/// Result of [`canonize_transform`].
#[derive(Clone, Debug)]
pub struct Canonization<T, S> {
    pub chart: Reparametrized<T, S>,
    /// Lattice of the same shape over the image rectangle.
    pub lattice: Lattice<T>,
    pub before: CanonicalReport<T>,
    pub after: CanonicalReport<T>,
}

/// Reparametrize a principal chart so that `φ = ψ = 1`, and report the
/// canonical test before and after.
pub fn canonize_transform<T: Real, S: Surface<T> + Send>(
    s: Arc<S>,
    lattice: &Lattice<T>,
    base: (T, T),
    constants: ScaleConstants<T>,
    convention: Convention,
    tol: &Tolerances,
) -> Result<Canonization<T, S>> {
    let before = phi_psi(s.as_ref(), lattice, base, constants, convention, tol)?;
    let fixed = ScaleConstants::Fixed { c1: before.c1, c2: before.c2 };
    let (u_map, v_map) = canonical_maps(s.clone(), lattice, base, fixed, convention)?;
    let chart = Reparametrized { surface: s, u_map, v_map };
    let new_lattice = Lattice::new(lattice.nu, lattice.nv, chart.domain())?;
    let after = phi_psi(&chart, &new_lattice, base, fixed, convention, tol)?;
    Ok(Canonization { chart, lattice: new_lattice, before, after })
}
