//! Checks for surfaces with parallel normalized mean curvature vector
//! field (`β1 = β2 = 0`, `ν1 = ν2`).

use super::ffields::{determining_jets_grid, f_fields, line_integrands};
use crate::error::{Error, Result};
use crate::geomfun::GeometricFunctions;
use crate::lattice::{column, row, Grid};
use crate::quadrature::cumulative;
use crate::scalar::Real;
use crate::stencil::{d_du, d_dv};
use crate::tolerance::Tolerances;

/// Outcome of [`pnmcv_check`]. Residuals are maxima over the lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PnmcvReport<T> {
    /// `f1 + (√G/√E) f2 + μ_v/(2μ)` and `(√E/√G) f3 + f4 + μ_u/(2μ)`.
    pub identity_residual: [T; 2],
    /// The same with `μ_v/μ`, `μ_u/μ` in place of the halves.
    pub literal_identity_residual: [T; 2],
    /// Relative deviation of `φ` from `√E √|μ|` and of `ψ` from `√G √|μ|`.
    pub scale_residual: [T; 2],
    /// `c1 = c2 = ½ ln|μ(u0, v0)|`, the value that makes `φ = √E √|μ|`.
    pub c: T,
    pub passed: bool,
}

/// Verify the PNMCVF identities on lattice data. `φ`, `ψ` are built from
/// the displayed definition including the base-line integrals.
pub fn pnmcv_check<T: Real>(gf: &Grid<T, GeometricFunctions<T>>, base: (T, T), tol: &Tolerances) -> Result<PnmcvReport<T>> {
    let lat = gf.lattice;
    let (i0, j0) = lat.node_of(base.0, base.1)?;
    let d = &gf.data;
    let scale = d.iter().fold(T::one(), |m, g| m.max(g.nu1.abs()).max(g.nu2.abs()).max(g.mu.abs()));
    let pre = T::of(tol.tol_system) * scale;
    let beta = d.iter().fold(T::zero(), |m, g| m.max(g.beta1.abs()).max(g.beta2.abs()));
    if beta > pre {
        return Err(Error::NotPnmcv(format!("max |beta| = {:e}", beta.as_f64())));
    }
    let split = d.iter().fold(T::zero(), |m, g| m.max((g.nu1 - g.nu2).abs()));
    if split > pre {
        return Err(Error::NotPnmcv(format!("max |nu1 - nu2| = {:e}", split.as_f64())));
    }

    let order = tol.stencil_order;
    let field = |f: fn(&GeometricFunctions<T>) -> T| -> Vec<T> { d.iter().map(f).collect() };
    let (n1, n2, la, mu) = (field(|g| g.nu1), field(|g| g.nu2), field(|g| g.lambda), field(|g| g.mu));
    let jets = determining_jets_grid([&n1, &n2, &la, &mu], &lat, order);
    let (mu_u, mu_v) = (d_du(&mu, &lat, order), d_dv(&mu, &lat, order));
    let two = T::of(2.0);
    let mut gv = vec![T::zero(); d.len()];
    let mut gu = vec![T::zero(); d.len()];
    let mut ident = [T::zero(); 2];
    let mut literal = [T::zero(); 2];
    for k in 0..d.len() {
        let (i, j) = lat.ij(k);
        let f = f_fields(&jets[k], lat.u(i).as_f64(), lat.v(j).as_f64(), tol.eps_denom)?;
        let (se, sg) = (d[k].e.sqrt(), d[k].g.sqrt());
        let (a, b) = line_integrands(&f, se, sg);
        gv[k] = a;
        gu[k] = b;
        let (qv, qu) = (mu_v[k] / mu[k], mu_u[k] / mu[k]);
        ident = [ident[0].max((a + qv / two).abs()), ident[1].max((b + qu / two).abs())];
        literal = [literal[0].max((a + qv).abs()), literal[1].max((b + qu).abs())];
    }

    let c = mu[lat.idx(i0, j0)].abs().ln() / two;
    let along_u = cumulative(&row(&gu, lat.nu, j0), lat.hu(), i0, order);
    let along_v = cumulative(&column(&gv, lat.nu, lat.nv, i0), lat.hv(), j0, order);
    let mut dev = [T::zero(); 2];
    for i in 0..lat.nu {
        let col = cumulative(&column(&gv, lat.nu, lat.nv, i), lat.hv(), j0, order);
        for j in 0..lat.nv {
            let k = lat.idx(i, j);
            let phi = d[k].e.sqrt() * (c - col[j] - along_u[i]).exp();
            let target = d[k].e.sqrt() * mu[k].abs().sqrt();
            dev[0] = dev[0].max(((phi - target) / target).abs());
        }
    }
    for j in 0..lat.nv {
        let rw = cumulative(&row(&gu, lat.nu, j), lat.hu(), i0, order);
        for i in 0..lat.nu {
            let k = lat.idx(i, j);
            let psi = d[k].g.sqrt() * (c - rw[i] - along_v[j]).exp();
            let target = d[k].g.sqrt() * mu[k].abs().sqrt();
            dev[1] = dev[1].max(((psi - target) / target).abs());
        }
    }
    let limit = T::of(tol.tol_system);
    let passed = ident.iter().chain(&dev).all(|&r| r < limit);
    Ok(PnmcvReport { identity_residual: ident, literal_identity_residual: literal, scale_residual: dev, c, passed })
}

/// Manufactured PNMCVF data: `E = a(u)² e^{2w}`, `G = b(v)² e^{2w}`,
/// `μ = C e^{-2w}`, `ν1 = ν2 = ν`, `λ = m μ`, `β = 0`, which satisfy the
/// four PNMCVF relations for any smooth `w`. `γ1`, `γ2` follow from the
/// metric. The closure returns `(w, w_u, w_v)`; `a`, `b` return value and
/// derivative.
pub fn manufactured_pnmcv<T: Real>(
    lattice: &crate::lattice::Lattice<T>,
    w: impl Fn(T, T) -> (T, T, T),
    a: impl Fn(T) -> (T, T),
    b: impl Fn(T) -> (T, T),
    c: T,
    nu: T,
    m: T,
) -> Grid<T, GeometricFunctions<T>> {
    let data = lattice
        .points()
        .into_iter()
        .map(|(u, v)| {
            let (w0, wu, wv) = w(u, v);
            let ((av, _), (bv, _)) = (a(u), b(v));
            let ew = w0.exp();
            let (se, sg) = (av * ew, bv * ew);
            let mu = c * (-(w0 + w0)).exp();
            // γ1 = -(√E)_v/(√E√G), γ2 = -(√G)_u/(√E√G).
            let gamma1 = -(se * wv) / (se * sg);
            let gamma2 = -(sg * wu) / (se * sg);
            GeometricFunctions {
                nu1: nu,
                nu2: nu,
                lambda: m * mu,
                mu,
                gamma1,
                gamma2,
                beta1: T::zero(),
                beta2: T::zero(),
                e: se * se,
                g: sg * sg,
            }
        })
        .collect();
    Grid { lattice: *lattice, data }
}
