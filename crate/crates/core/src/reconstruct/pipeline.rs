//! Determining data to surface grid.

use super::cauchy::{cauchy_residual, f_fields_on, initial_lines, solve_cauchy, subsample};
use super::compat::{compatibility_residual, recover_beta, CompatResidual};
use super::data::{refine, DeterminingData};
use super::frame::{integrate_frame, FrameGrid, InitialFrame};
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Rect};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReconstructOptions<T> {
    pub initial: InitialFrame<T>,
    /// Proceed when the compatibility residual exceeds `tol_compat`.
    pub force: bool,
}

impl<T: Real> Default for ReconstructOptions<T> {
    fn default() -> Self {
        ReconstructOptions { initial: InitialFrame::default(), force: false }
    }
}

/// Largest node rectangle around the base on which every node passes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidRegion<T> {
    pub i: (usize, usize),
    pub j: (usize, usize),
    pub bounds: Rect<T>,
    /// True when the region is the whole lattice.
    pub full: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction<T> {
    pub grid: FrameGrid<T>,
    /// Compatibility residuals on the output lattice.
    pub compat: CompatResidual<T>,
    pub compat_max: T,
    /// Largest stencil residual of the Cauchy equations.
    pub pde_residual: T,
    pub valid_region: ValidRegion<T>,
    /// The compatibility gate failed and `force` overrode it.
    pub forced: bool,
}

/// Grow a rectangle from `base` while the added rows and columns pass.
pub fn valid_region<T: Real>(lattice: &Lattice<T>, base: (usize, usize), pass: impl Fn(usize) -> bool) -> ValidRegion<T> {
    let (i0, j0) = base;
    let (mut il, mut ih, mut jl, mut jh) = (i0, i0, j0, j0);
    let ok_col = |i: usize, jl: usize, jh: usize| (jl..=jh).all(|j| pass(lattice.idx(i, j)));
    let ok_row = |j: usize, il: usize, ih: usize| (il..=ih).all(|i| pass(lattice.idx(i, j)));
    if !pass(lattice.idx(i0, j0)) {
        return ValidRegion {
            i: (i0, i0),
            j: (j0, j0),
            bounds: Rect::new(lattice.u(i0), lattice.u(i0), lattice.v(j0), lattice.v(j0)),
            full: lattice.len() == 1,
        };
    }
    loop {
        let mut grew = false;
        if il > 0 && ok_col(il - 1, jl, jh) {
            il -= 1;
            grew = true;
        }
        if ih + 1 < lattice.nu && ok_col(ih + 1, jl, jh) {
            ih += 1;
            grew = true;
        }
        if jl > 0 && ok_row(jl - 1, il, ih) {
            jl -= 1;
            grew = true;
        }
        if jh + 1 < lattice.nv && ok_row(jh + 1, il, ih) {
            jh += 1;
            grew = true;
        }
        if !grew {
            break;
        }
    }
    ValidRegion {
        i: (il, ih),
        j: (jl, jh),
        bounds: Rect::new(lattice.u(il), lattice.u(ih), lattice.v(jl), lattice.v(jh)),
        full: il == 0 && jl == 0 && ih + 1 == lattice.nu && jh + 1 == lattice.nv,
    }
}

/// Refined lattice, jets, f-fields, `φ` and `ψ`.
type Solved<T> = (Lattice<T>, Vec<crate::canonize::DeterminingJet<T>>, Vec<crate::canonize::FFields<T>>, Vec<T>, Vec<T>);

fn solve_on<T: Real>(data: &DeterminingData<T>, factor: usize, tol: &Tolerances) -> Result<Solved<T>> {
    let fine = refine(&data.lattice, factor)?;
    let (i0, j0) = data.base_node()?;
    let base = (i0 * factor, j0 * factor);
    let jets = data.sample(factor, tol.stencil_order)?;
    let f = f_fields_on(&jets, &fine, tol)?;
    let (g1, g2) = initial_lines(&f, &fine, base, data.convention, data.ratio(), data.c1, data.c2, tol.stencil_order);
    let (phi, psi) = solve_cauchy(&f, &fine, base, &g1, &g2)?;
    Ok((fine, jets, f, phi, psi))
}

/// Reconstruct the surface on `data.lattice`.
///
/// The Cauchy problem is solved on the lattice refined twice and four
/// times and combined by Richardson extrapolation. `β1`, `β2` and the
/// compatibility residuals are evaluated on the twice-refined lattice,
/// whose odd nodes then serve as exact RK4 midpoints for the frame.
pub fn reconstruct<T: Real>(data: &DeterminingData<T>, opts: &ReconstructOptions<T>, tol: &Tolerances) -> Result<Reconstruction<T>> {
    let base = data.base_node()?;
    let (l2, jets, f, phi2, psi2) = solve_on(data, 2, tol)?;
    let (l4, _, _, phi4, psi4) = solve_on(data, 4, tol)?;
    let (phi4, psi4) = (subsample(&phi4, &l4, 2), subsample(&psi4, &l4, 2));
    let (three, four) = (T::of(3.0), T::of(4.0));
    let phi: Vec<T> = phi2.iter().zip(&phi4).map(|(&a, &b)| (four * b - a) / three).collect();
    let psi: Vec<T> = psi2.iter().zip(&psi4).map(|(&a, &b)| (four * b - a) / three).collect();

    let coef = recover_beta(&jets, &f, &phi, &psi, &l2)?;
    let fine_compat = compatibility_residual(&f, &coef, &l2, tol.stencil_order);
    let compat = CompatResidual { r1: subsample(&fine_compat.r1, &l2, 2), r2: subsample(&fine_compat.r2, &l2, 2) };
    let compat_max = compat.max_abs();
    let pde_residual = cauchy_residual(&f, &l2, &phi, &psi, tol.stencil_order);
    let gate = compat_max.as_f64() > tol.tol_compat || !compat_max.is_finite();
    if gate && !opts.force {
        return Err(Error::CompatibilityGate { residual: compat_max.as_f64(), tol: tol.tol_compat });
    }
    let grid = integrate_frame(&coef, &l2, 2, base, &opts.initial, tol)?;
    let limit = T::of(tol.tol_compat);
    let valid_region = valid_region(&data.lattice, base, |k| compat.at(k) <= limit);
    Ok(Reconstruction { grid, compat, compat_max, pde_residual, valid_region, forced: gate })
}
