//! The auxiliary fields `f1..f4` built from `ν1, ν2, λ, μ` and their
//! first partials.

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::geomfun::GeometricFunctions;
use crate::lattice::Lattice;
use crate::scalar::{Number, Real};
use crate::stencil::{d_du, d_dv};

/// `ν1, ν2, λ, μ` with first partials in `u` and `v`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct DeterminingJet<N> {
    pub nu1: Dual<N>,
    pub nu2: Dual<N>,
    pub lambda: Dual<N>,
    pub mu: Dual<N>,
}

impl<N: Number> DeterminingJet<N> {
    pub fn from_geometric(gf: &GeometricFunctions<Dual<N>>) -> Self {
        DeterminingJet { nu1: gf.nu1, nu2: gf.nu2, lambda: gf.lambda, mu: gf.mu }
    }

    /// Jet of closed-form determining functions at `(u, v)`.
    pub fn from_expressions(e: [&Expression; 4], u: N, v: N) -> Result<Self> {
        let (du, dv) = (Dual::var_u(u), Dual::var_v(v));
        Ok(DeterminingJet { nu1: e[0].eval(du, dv)?, nu2: e[1].eval(du, dv)?, lambda: e[2].eval(du, dv)?, mu: e[3].eval(du, dv)? })
    }

    /// Primal values `(ν1, ν2, λ, μ)`.
    pub fn values(&self) -> [N; 4] {
        [self.nu1.re, self.nu2.re, self.lambda.re, self.mu.re]
    }
}

/// Jets of lattice data, with partials from stencils of the given order.
pub fn determining_jets_grid<T: Real>(fields: [&[T]; 4], lattice: &Lattice<T>, order: usize) -> Vec<DeterminingJet<T>> {
    let d: Vec<Vec<Dual<T>>> = fields
        .iter()
        .map(|f| {
            let (fu, fv) = (d_du(f, lattice, order), d_dv(f, lattice, order));
            (0..f.len()).map(|k| Dual::new(f[k], fu[k], fv[k])).collect()
        })
        .collect();
    (0..lattice.len())
        .map(|k| DeterminingJet { nu1: d[0][k], nu2: d[1][k], lambda: d[2][k], mu: d[3][k] })
        .collect()
}

/// `f1..f4` and their shared denominator at one point.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FFields<N> {
    pub f1: N,
    pub f2: N,
    pub f3: N,
    pub f4: N,
    pub denom: N,
}

/// The four quotients without the denominator guard.
pub fn f_fields_unchecked<N: Number>(j: &DeterminingJet<N>) -> FFields<N> {
    let (n1, n2, la, mu) = (j.nu1, j.nu2, j.lambda, j.mu);
    let (a1, a2, l, m) = (n1.re, n2.re, la.re, mu.re);
    let half = N::lit(0.5);
    let two = N::lit(2.0);
    let three = N::lit(3.0);
    let d12 = a1 - a2;
    let (l2, m2, p) = (l * l, m * m, a1 * a2);
    let s = l2 + m2;
    let denom = N::lit(4.0) * s * s + (l2 - two * m2 - p) * d12 * d12 - N::lit(4.0) * l2 * p;

    let s2 = (la * la + mu * mu).square();
    let la2 = la * la;
    let mu2 = mu * mu;
    let n1sq = n1 * n1;
    let n2sq = n2 * n2;

    let f1 = -(half * s2.dv - la2.dv * p + two * m2 * a2 * n1.dv
        + (l2 * n1.dv - half * mu2.dv * a1 - half * n1sq.dv * a2) * d12)
        / denom;
    let f2 = (la.du * (l2 - p) * d12 + two * la.du * m2 * a2 + two * l2 * l * n2.du
        + half * l * mu2.du * (a1 - three * a2)
        + two * l * m2 * n2.du
        - l * a1 * n2sq.du)
        / denom;
    let f3 = (la.dv * (l2 - p) * (a2 - a1) + two * la.dv * m2 * a1 + two * l2 * l * n1.dv
        + half * l * mu2.dv * (a2 - three * a1)
        + two * l * m2 * n1.dv
        - l * n1sq.dv * a2)
        / denom;
    let f4 = -(half * s2.du - la2.du * p + two * m2 * a1 * n2.du
        + (l2 * n2.du - half * mu2.du * a2 - half * a1 * n2sq.du) * (a2 - a1))
        / denom;
    FFields { f1, f2, f3, f4, denom }
}

/// `f1..f4` at `(u, v)`, rejecting a denominator at or below `eps_denom`.
pub fn f_fields<N: Number>(j: &DeterminingJet<N>, u: f64, v: f64, eps_denom: f64) -> Result<FFields<N>> {
    let f = f_fields_unchecked(j);
    let value = f.denom.value().as_f64();
    if !(value.abs() > eps_denom) {
        return Err(Error::DegenerateDenominator { u, v, value });
    }
    Ok(f)
}

/// The integrands `f1 + f2 √G/√E` (along `v`) and `f3 √E/√G + f4` (along `u`).
pub fn line_integrands<N: Number>(f: &FFields<N>, sqrt_e: N, sqrt_g: N) -> (N, N) {
    (f.f1 + f.f2 * sqrt_g / sqrt_e, f.f3 * sqrt_e / sqrt_g + f.f4)
}

/// Residuals of `(ln√E)_v = f1 + f2√G/√E` and `(ln√G)_u = f3√E/√G + f4`
/// given `E`, `G` with partials.
pub fn metric_ode_residual<T: Real>(f: &FFields<T>, e: Dual<T>, g: Dual<T>) -> [T; 2] {
    let (se, sg) = (e.re.sqrt(), g.re.sqrt());
    let (gv, gu) = line_integrands(f, se, sg);
    let half = T::of(0.5);
    [half * e.dv / e.re - gv, half * g.du / g.re - gu]
}
