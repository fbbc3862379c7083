//! Integration of the Frenet-type equations over a lattice.

use rayon::prelude::*;

use super::compat::FrameCoefficients;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::scalar::Real;
use crate::surface::Frame;
use crate::tolerance::Tolerances;
use crate::vec4::Vec4;

/// Position and frame at the base point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialFrame<T> {
    pub position: Vec4<T>,
    pub frame: Frame<T>,
}

impl<T: Real> Default for InitialFrame<T> {
    fn default() -> Self {
        InitialFrame { position: Vec4::zero(), frame: Frame::standard() }
    }
}

/// Reconstructed positions and frames with the fields that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameGrid<T> {
    pub lattice: Lattice<T>,
    pub positions: Vec<Vec4<T>>,
    pub frames: Vec<Frame<T>>,
    pub phi: Vec<T>,
    pub psi: Vec<T>,
    pub beta1: Vec<T>,
    pub beta2: Vec<T>,
    /// Largest gap between row-first and column-first positions.
    pub commutation: T,
    /// Largest correction applied by re-orthonormalization.
    pub max_projection: T,
    /// Largest Gram deviation of the stored frames.
    pub max_gram_deviation: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct State<T> {
    r: [Vec4<T>; 4],
    z: Vec4<T>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    U,
    V,
}

fn lerp_coefficients<T: Real>(line: &[FrameCoefficients<T>], x: T) -> FrameCoefficients<T> {
    let n = line.len();
    let xf = x.as_f64();
    if xf.fract() == 0.0 {
        return line[(xf as usize).min(n - 1)];
    }
    let width = n.min(4);
    let start = ((xf.floor() as isize) - 1).clamp(0, (n - width) as isize) as usize;
    let mut out = FrameCoefficients::default();
    for a in 0..width {
        let xa = (start + a) as f64;
        let w = (0..width).filter(|&b| b != a).fold(1.0, |p, b| p * (xf - (start + b) as f64) / (xa - (start + b) as f64));
        let c = &line[start + a];
        let w = T::of(w);
        out.nu1 = out.nu1 + c.nu1 * w;
        out.nu2 = out.nu2 + c.nu2 * w;
        out.lambda = out.lambda + c.lambda * w;
        out.mu = out.mu + c.mu * w;
        out.phi = out.phi + c.phi * w;
        out.psi = out.psi + c.psi * w;
        out.gamma1 = out.gamma1 + c.gamma1 * w;
        out.gamma2 = out.gamma2 + c.gamma2 * w;
        out.beta1 = out.beta1 + c.beta1 * w;
        out.beta2 = out.beta2 + c.beta2 * w;
    }
    out
}

fn derivative<T: Real>(dir: Dir, c: &FrameCoefficients<T>, s: &State<T>) -> State<T> {
    let o = T::zero();
    let (scale, m) = match dir {
        Dir::U => (
            c.phi,
            [
                [o, c.gamma1, c.nu1, o],
                [-c.gamma1, o, c.lambda, c.mu],
                [-c.nu1, -c.lambda, o, c.beta1],
                [o, -c.mu, -c.beta1, o],
            ],
        ),
        Dir::V => (
            c.psi,
            [
                [o, -c.gamma2, c.lambda, c.mu],
                [c.gamma2, o, c.nu2, o],
                [-c.lambda, -c.nu2, o, c.beta2],
                [-c.mu, o, -c.beta2, o],
            ],
        ),
    };
    let mut r = [Vec4::zero(); 4];
    for a in 0..4 {
        for b in 0..4 {
            if m[a][b] != o {
                r[a] = r[a] + s.r[b].scale(m[a][b] * scale);
            }
        }
    }
    let z = match dir {
        Dir::U => s.r[0].scale(c.phi),
        Dir::V => s.r[1].scale(c.psi),
    };
    State { r, z }
}

fn axpy<T: Real>(s: &State<T>, k: &State<T>, h: T) -> State<T> {
    State { r: std::array::from_fn(|a| s.r[a] + k.r[a].scale(h)), z: s.z + k.z.scale(h) }
}

/// One Newton-Schulz step towards the nearest orthonormal rows.
fn project<T: Real>(r: [Vec4<T>; 4]) -> [Vec4<T>; 4] {
    let g: [[T; 4]; 4] = std::array::from_fn(|a| std::array::from_fn(|b| r[a].dot(&r[b])));
    std::array::from_fn(|a| {
        let mut acc = r[a].scale(T::of(1.5));
        for b in 0..4 {
            acc = acc - r[b].scale(T::of(0.5) * g[a][b]);
        }
        acc
    })
}

struct LineResult<T> {
    states: Vec<State<T>>,
    projection: T,
}

/// March along one line of coefficients (fine samples, `stride` per coarse
/// step) from coarse node `start`.
#[allow(clippy::too_many_arguments)]
fn march<T: Real>(
    line: &[FrameCoefficients<T>],
    h: T,
    stride: usize,
    dir: Dir,
    start: usize,
    init: State<T>,
    tol: &Tolerances,
    at: impl Fn(usize) -> (f64, f64),
) -> Result<LineResult<T>> {
    let n = (line.len() - 1) / stride + 1;
    let mut states = vec![init; n];
    let mut projection = T::zero();
    let s = T::of(stride as f64);
    for forward in [true, false] {
        let mut cur = init;
        let steps: Vec<usize> = if forward { (start + 1..n).collect() } else { (0..start).rev().collect() };
        for c in steps {
            let prev = if forward { c - 1 } else { c + 1 };
            let x0 = T::of((prev * stride) as f64);
            let sign = if forward { T::one() } else { -T::one() };
            let step = h * s * sign;
            let mid = x0 + sign * s * T::of(0.5);
            let x1 = T::of((c * stride) as f64);
            let (c0, cm, c1) = (lerp_coefficients(line, x0), lerp_coefficients(line, mid), lerp_coefficients(line, x1));
            let k1 = derivative(dir, &c0, &cur);
            let k2 = derivative(dir, &cm, &axpy(&cur, &k1, step * T::of(0.5)));
            let k3 = derivative(dir, &cm, &axpy(&cur, &k2, step * T::of(0.5)));
            let k4 = derivative(dir, &c1, &axpy(&cur, &k3, step));
            let sixth = step / T::of(6.0);
            let mut next = State {
                r: std::array::from_fn(|a| {
                    cur.r[a] + (k1.r[a] + k2.r[a].scale(T::of(2.0)) + k3.r[a].scale(T::of(2.0)) + k4.r[a]).scale(sixth)
                }),
                z: cur.z + (k1.z + k2.z.scale(T::of(2.0)) + k3.z.scale(T::of(2.0)) + k4.z).scale(sixth),
            };
            let (u, v) = at(c);
            if !(next.z.all_finite() && next.r.iter().all(|x| x.all_finite())) || next.z.norm().as_f64() > 1e12 {
                return Err(Error::BlowUp { u, v });
            }
            let drift = Frame::from_rows(next.r).gram_deviation().as_f64();
            if drift > tol.max_drift {
                return Err(Error::OrthonormalityDrift { u, v, drift });
            }
            let before = next.r;
            next.r = project(project(next.r));
            let moved = (0..4).fold(T::zero(), |m, a| m.max((next.r[a] - before[a]).norm()));
            projection = projection.max(moved);
            states[c] = next;
            cur = next;
        }
    }
    Ok(LineResult { states, projection })
}

/// Integrate positions and frames over the coarse lattice obtained by
/// taking every `stride`-th node of `fine`. With `stride = 2` the RK4
/// midpoints are exact samples; with `stride = 1` they are interpolated.
/// The base row is integrated first, then every column; the opposite
/// order is computed only to measure path dependence.
pub fn integrate_frame<T: Real>(
    coef: &[FrameCoefficients<T>],
    fine: &Lattice<T>,
    stride: usize,
    base: (usize, usize),
    initial: &InitialFrame<T>,
    tol: &Tolerances,
) -> Result<FrameGrid<T>> {
    if coef.len() != fine.len() || stride == 0 {
        return Err(Error::ShapeMismatch("frame coefficients do not match the lattice".into()));
    }
    let nu = (fine.nu - 1) / stride + 1;
    let nv = (fine.nv - 1) / stride + 1;
    let lattice = Lattice::new(nu, nv, fine.bounds)?;
    let (i0, j0) = base;
    let init = State { r: initial.frame.rows(), z: initial.position };
    let fine_row = |j: usize| -> Vec<FrameCoefficients<T>> { (0..fine.nu).map(|i| coef[fine.idx(i, j * stride)]).collect() };
    let fine_col = |i: usize| -> Vec<FrameCoefficients<T>> { (0..fine.nv).map(|j| coef[fine.idx(i * stride, j)]).collect() };
    let (hu, hv) = (fine.hu(), fine.hv());

    // Main path: base row, then columns.
    let base_row = march(&fine_row(j0), hu, stride, Dir::U, i0, init, tol, |i| (lattice.u(i).as_f64(), lattice.v(j0).as_f64()))?;
    let cols: Vec<Result<LineResult<T>>> = (0..nu)
        .into_par_iter()
        .map(|i| march(&fine_col(i), hv, stride, Dir::V, j0, base_row.states[i], tol, |j| (lattice.u(i).as_f64(), lattice.v(j).as_f64())))
        .collect();
    let cols: Vec<LineResult<T>> = cols.into_iter().collect::<Result<_>>()?;

    // Alternative path: base column, then rows.
    let base_col = march(&fine_col(i0), hv, stride, Dir::V, j0, init, tol, |j| (lattice.u(i0).as_f64(), lattice.v(j).as_f64()))?;
    let rows: Vec<Result<LineResult<T>>> = (0..nv)
        .into_par_iter()
        .map(|j| march(&fine_row(j), hu, stride, Dir::U, i0, base_col.states[j], tol, |i| (lattice.u(i).as_f64(), lattice.v(j).as_f64())))
        .collect();
    let rows: Vec<LineResult<T>> = rows.into_iter().collect::<Result<_>>()?;

    let mut positions = vec![Vec4::zero(); lattice.len()];
    let mut frames = vec![Frame::standard(); lattice.len()];
    let mut commutation = T::zero();
    let mut gram = T::zero();
    for j in 0..nv {
        for i in 0..nu {
            let k = lattice.idx(i, j);
            let s = cols[i].states[j];
            positions[k] = s.z;
            frames[k] = Frame::from_rows(s.r);
            gram = gram.max(frames[k].gram_deviation());
            commutation = commutation.max((s.z - rows[j].states[i].z).norm());
        }
    }
    let max_projection = cols.iter().chain(&rows).chain([&base_row, &base_col]).fold(T::zero(), |m, l| m.max(l.projection));
    let pick = |f: fn(&FrameCoefficients<T>) -> T| -> Vec<T> {
        (0..lattice.len())
            .map(|k| {
                let (i, j) = lattice.ij(k);
                f(&coef[fine.idx(i * stride, j * stride)])
            })
            .collect()
    };
    Ok(FrameGrid {
        lattice,
        positions,
        frames,
        phi: pick(|c| c.phi),
        psi: pick(|c| c.psi),
        beta1: pick(|c| c.beta1),
        beta2: pick(|c| c.beta2),
        commutation,
        max_projection,
        max_gram_deviation: gram,
    })
}
