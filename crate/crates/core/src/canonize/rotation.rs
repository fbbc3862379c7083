//! The ±45° change of parameters that turns an `E = G`, `L = N = 0` chart
//! into a principal one.

use crate::error::{Error, Result};
use crate::expr::{BinaryOp, Expression, Var};
use crate::lattice::{Lattice, Rect};
use crate::scalar::Real;
use crate::surface::{fundamental_forms, is_principal, Chart};
use crate::tolerance::Tolerances;

/// Nodes per direction of the pattern test lattice.
const TEST_NODES: usize = 7;

/// Substitute `u = ū + v̄`, `v = ū - v̄`.
///
/// The new domain is the largest square centred on the image of the old
/// centre whose preimage stays inside the old rectangle.
pub fn principal_rotation<T: Real>(chart: &Chart<T>, tol: &Tolerances) -> Result<Chart<T>> {
    let d = chart.domain;
    let lattice = Lattice::new(TEST_NODES, TEST_NODES, d)?;
    let t = |x: f64| T::of(x);
    let mut max_m = 0.0f64;
    for (u, v) in lattice.points() {
        let f = fundamental_forms(chart, u, v, tol)?;
        let (e, g) = (f.e.as_f64(), f.g.as_f64());
        let size = (f.l * f.l + f.m * f.m + f.n * f.n).sqrt().as_f64();
        let here = |msg: &str| Error::PatternNotApplicable(format!("{msg} at (u, v) = ({u}, {v}); supply a principal chart"));
        if (f.f.as_f64() / (e * g).sqrt()).abs() > tol.tol_principal {
            return Err(here("F is not zero"));
        }
        if (e - g).abs() > tol.tol_principal * (e + g) {
            return Err(here("E differs from G"));
        }
        if f.l.as_f64().abs() > tol.tol_principal * size || f.n.as_f64().abs() > tol.tol_principal * size {
            return Err(here("L or N is not zero"));
        }
        max_m = max_m.max(f.m.as_f64().abs() / f.w().as_f64().sqrt());
    }
    if !(max_m > tol.tol_principal) {
        return Err(Error::PatternNotApplicable("M vanishes, the chart is already principal".into()));
    }

    let (bu, bv) = (Expression::Var(Var::U), Expression::Var(Var::V));
    let nu = Expression::binary(BinaryOp::Add, bu.clone(), bv.clone());
    let nv = Expression::binary(BinaryOp::Sub, bu, bv);
    let coords = chart.coords.clone().map(|e| e.substitute(&nu, &nv));
    let (cu, cv) = ((d.u_min + d.u_max) / t(2.0), (d.v_min + d.v_max) / t(2.0));
    let half = ((d.u_max - d.u_min) / t(2.0)).min((d.v_max - d.v_min) / t(2.0)) / t(2.0);
    let (cx, cy) = ((cu + cv) / t(2.0), (cu - cv) / t(2.0));
    let domain = Rect::new(cx - half, cx + half, cy - half, cy + half);
    let rotated = Chart::new(coords, domain, chart.orientation)?;
    let report = is_principal(&rotated, &Lattice::new(TEST_NODES, TEST_NODES, domain)?, tol)?;
    if !report.principal {
        return Err(Error::PatternNotApplicable(format!(
            "rotated chart is not principal (residual {:e})",
            report.max_residual
        )));
    }
    Ok(rotated)
}
