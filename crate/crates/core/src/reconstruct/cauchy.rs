//! The Cauchy problem `φ_v = f1 φ + f2 ψ`, `ψ_u = f3 φ + f4 ψ` with
//! `φ(·, v0) = g1`, `ψ(u0, ·) = g2`.

use rayon::prelude::*;

use super::data::DeterminingData;
use crate::canonize::{f_fields, Convention, DeterminingJet, FFields};
use crate::error::{Error, Result};
use crate::lattice::{column, row, Lattice};
use crate::quadrature::cumulative;
use crate::scalar::Real;
use crate::stencil::{d_du, d_dv};
use crate::tolerance::Tolerances;

/// f-fields at every node, failing on a vanishing `μ` or denominator.
pub fn f_fields_on<T: Real>(jets: &[DeterminingJet<T>], lattice: &Lattice<T>, tol: &Tolerances) -> Result<Vec<FFields<T>>> {
    jets.par_iter()
        .enumerate()
        .map(|(k, j)| {
            let (i, jj) = lattice.ij(k);
            let (u, v) = (lattice.u(i).as_f64(), lattice.v(jj).as_f64());
            let norm = j.mu.re.abs().as_f64();
            if !(norm > tol.eps_min) {
                return Err(Error::MinimalPoint { u, v, norm });
            }
            f_fields(j, u, v, tol.eps_denom)
        })
        .collect()
}

/// Initial lines `g1(u)` on the `u` nodes and `g2(v)` on the `v` nodes.
///
/// Under [`Convention::Coupled`] these are the integrals
/// `g1 = exp(∫(c f3 + f4)(t, v0) dt - c1)` and
/// `g2 = exp(∫(f1 + f2/c)(u0, t) dt - c2)`; under
/// [`Convention::Separate`] canonical parameters have constant metric
/// along the base lines, so `g1 = e^{-c1}` and `g2 = e^{-c2}`.
#[allow(clippy::too_many_arguments)]
pub fn initial_lines<T: Real>(
    f: &[FFields<T>],
    lattice: &Lattice<T>,
    base: (usize, usize),
    convention: Convention,
    c: T,
    c1: T,
    c2: T,
    order: usize,
) -> (Vec<T>, Vec<T>) {
    let (i0, j0) = base;
    match convention {
        Convention::Separate => (vec![(-c1).exp(); lattice.nu], vec![(-c2).exp(); lattice.nv]),
        Convention::Coupled => {
            let gu: Vec<T> = row(f, lattice.nu, j0).iter().map(|x| c * x.f3 + x.f4).collect();
            let gv: Vec<T> = column(f, lattice.nu, lattice.nv, i0).iter().map(|x| x.f1 + x.f2 / c).collect();
            let iu = cumulative(&gu, lattice.hu(), i0, order);
            let iv = cumulative(&gv, lattice.hv(), j0, order);
            (iu.into_iter().map(|x| (x - c1).exp()).collect(), iv.into_iter().map(|x| (x - c2).exp()).collect())
        }
    }
}

/// `(g1, g2)` for the data on its own lattice.
pub fn g_initial<T: Real>(data: &DeterminingData<T>, tol: &Tolerances) -> Result<(Vec<T>, Vec<T>)> {
    let base = data.base_node()?;
    let jets = data.sample(1, tol.stencil_order)?;
    let f = f_fields_on(&jets, &data.lattice, tol)?;
    Ok(initial_lines(&f, &data.lattice, base, data.convention, data.ratio(), data.c1, data.c2, tol.stencil_order))
}

/// Visit order: columns outward from `i0`, and inside each column rows
/// outward from `j0`, so every node follows its marching predecessors.
fn outward(n: usize, start: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (start..n).collect();
    v.extend((0..start).rev());
    v
}

/// Trapezoidal marching. Each node couples one step in `v` for `φ` with
/// one step in `u` for `ψ`; the resulting 2x2 linear system is solved
/// exactly, which is the fixed point a sweep iteration would converge to.
pub fn solve_cauchy<T: Real>(
    f: &[FFields<T>],
    lattice: &Lattice<T>,
    base: (usize, usize),
    g1: &[T],
    g2: &[T],
) -> Result<(Vec<T>, Vec<T>)> {
    let (i0, j0) = base;
    let n = lattice.len();
    if f.len() != n || g1.len() != lattice.nu || g2.len() != lattice.nv {
        return Err(Error::ShapeMismatch("Cauchy data does not match the lattice".into()));
    }
    let mut phi = vec![T::zero(); n];
    let mut psi = vec![T::zero(); n];
    let half = T::of(0.5);
    for i in outward(lattice.nu, i0) {
        for j in outward(lattice.nv, j0) {
            let k = lattice.idx(i, j);
            let fk = f[k];
            // φ step along v from (i, jp); ψ step along u from (ip, j).
            let phi_step = (j != j0).then(|| {
                let jp = if j > j0 { j - 1 } else { j + 1 };
                let kp = lattice.idx(i, jp);
                let a = (lattice.v(j) - lattice.v(jp)) * half;
                (a, phi[kp] + a * (f[kp].f1 * phi[kp] + f[kp].f2 * psi[kp]))
            });
            let psi_step = (i != i0).then(|| {
                let ip = if i > i0 { i - 1 } else { i + 1 };
                let kp = lattice.idx(ip, j);
                let b = (lattice.u(i) - lattice.u(ip)) * half;
                (b, psi[kp] + b * (f[kp].f3 * phi[kp] + f[kp].f4 * psi[kp]))
            });
            let (p, q) = match (phi_step, psi_step) {
                (None, None) => (g1[i], g2[j]),
                (None, Some((b, rb))) => {
                    let p = g1[i];
                    (p, (rb + b * fk.f3 * p) / (T::one() - b * fk.f4))
                }
                (Some((a, ra)), None) => {
                    let q = g2[j];
                    ((ra + a * fk.f2 * q) / (T::one() - a * fk.f1), q)
                }
                (Some((a, ra)), Some((b, rb))) => {
                    // [1 - a f1, -a f2; -b f3, 1 - b f4] [φ, ψ] = [ra, rb]
                    let (m11, m12) = (T::one() - a * fk.f1, -(a * fk.f2));
                    let (m21, m22) = (-(b * fk.f3), T::one() - b * fk.f4);
                    let det = m11 * m22 - m12 * m21;
                    if !(det.abs() > T::of(1e-14)) {
                        return Err(Error::NonConvergence {
                            u: lattice.u(i).as_f64(),
                            v: lattice.v(j).as_f64(),
                            reason: "singular trapezoid step".into(),
                        });
                    }
                    ((ra * m22 - m12 * rb) / det, (m11 * rb - m21 * ra) / det)
                }
            };
            let (u, v) = (lattice.u(i).as_f64(), lattice.v(j).as_f64());
            if !(p.is_finite() && q.is_finite()) {
                return Err(Error::NonConvergence { u, v, reason: "non-finite value".into() });
            }
            if !(p > T::zero()) {
                return Err(Error::NonPositiveMetric { name: "phi", u, v, value: p.as_f64() });
            }
            if !(q > T::zero()) {
                return Err(Error::NonPositiveMetric { name: "psi", u, v, value: q.as_f64() });
            }
            phi[k] = p;
            psi[k] = q;
        }
    }
    Ok((phi, psi))
}

/// Subsample every `stride`-th node of a refined lattice.
pub fn subsample<V: Copy>(values: &[V], fine: &Lattice<impl Real>, stride: usize) -> Vec<V> {
    let nu = (fine.nu - 1) / stride + 1;
    let nv = (fine.nv - 1) / stride + 1;
    let mut out = Vec::with_capacity(nu * nv);
    for j in 0..nv {
        for i in 0..nu {
            out.push(values[fine.idx(i * stride, j * stride)]);
        }
    }
    out
}

/// Largest PDE residual on the lattice with stencil derivatives.
pub fn cauchy_residual<T: Real>(f: &[FFields<T>], lattice: &Lattice<T>, phi: &[T], psi: &[T], order: usize) -> T {
    let pv = d_dv(phi, lattice, order);
    let qu = d_du(psi, lattice, order);
    (0..phi.len()).fold(T::zero(), |m, k| {
        let r1 = pv[k] - (f[k].f1 * phi[k] + f[k].f2 * psi[k]);
        let r2 = qu[k] - (f[k].f3 * phi[k] + f[k].f4 * psi[k]);
        m.max(r1.abs()).max(r2.abs())
    })
}
