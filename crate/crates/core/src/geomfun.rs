//! The eight geometric functions and the compatibility system they satisfy.

use rayon::prelude::*;

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::scalar::{Number, Real};
use crate::stencil::{d_du, d_dv};
use crate::surface::{
    check_principal_point, forms_from_jet, frame_functions, second_jet, Surface, FundamentalForms,
};
use crate::tolerance::Tolerances;

/// `ν1, ν2, λ, μ, γ1, γ2, β1, β2` together with `E, G`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct GeometricFunctions<N> {
    pub nu1: N,
    pub nu2: N,
    pub lambda: N,
    pub mu: N,
    pub gamma1: N,
    pub gamma2: N,
    pub beta1: N,
    pub beta2: N,
    pub e: N,
    pub g: N,
}

/// Names of the eight functions, in storage order.
pub const FUNCTION_NAMES: [&str; 8] = ["nu1", "nu2", "lambda", "mu", "gamma1", "gamma2", "beta1", "beta2"];

impl<N: Number> GeometricFunctions<N> {
    /// The eight functions in [`FUNCTION_NAMES`] order.
    pub fn eight(&self) -> [N; 8] {
        [self.nu1, self.nu2, self.lambda, self.mu, self.gamma1, self.gamma2, self.beta1, self.beta2]
    }

    pub fn from_eight(f: [N; 8], e: N, g: N) -> Self {
        GeometricFunctions {
            nu1: f[0],
            nu2: f[1],
            lambda: f[2],
            mu: f[3],
            gamma1: f[4],
            gamma2: f[5],
            beta1: f[6],
            beta2: f[7],
            e,
            g,
        }
    }

    pub fn map<M: Number, F: Fn(N) -> M>(&self, f: F) -> GeometricFunctions<M> {
        let [a, b, c, d, e, g, h, k] = self.eight();
        GeometricFunctions::from_eight([f(a), f(b), f(c), f(d), f(e), f(g), f(h), f(k)], f(self.e), f(self.g))
    }

    /// Multiply the named function by `factor` (value and derivatives).
    pub fn perturbed(&self, name: &str, factor: N::Scalar) -> Result<Self> {
        let k = FUNCTION_NAMES
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown function `{name}`")))?;
        let mut f = self.eight();
        f[k] = f[k].scale(factor);
        Ok(GeometricFunctions::from_eight(f, self.e, self.g))
    }
}

/// Geometric functions at `(u, v)` and the alternative values of `β1, β2`
/// obtained from the `μβ` relations, evaluated in any number type.
pub fn geometric_functions_checked<T: Real, S: Surface<T>, N: Number<Scalar = T>>(
    s: &S,
    u: N,
    v: N,
    tol: &Tolerances,
) -> Result<(GeometricFunctions<N>, [N; 2])> {
    let jet = second_jet(s, Dual::var_u(u), Dual::var_v(v))?;
    let o = s.orientation();
    let primal: FundamentalForms<N> = forms_from_jet(&jet.map(|d| d.re), o);
    check_principal_point(&primal, u.value().as_f64(), v.value().as_f64(), tol)?;

    let ff = frame_functions(&jet, o);
    let re = |d: Dual<N>| d.re;
    let fr = ff.frame;
    let (x, y, l) = (fr.x.map(re), fr.y.map(re), fr.l.map(re));
    let se = ff.e.re.sqrt();
    let sg = ff.g.re.sqrt();
    let gamma1 = fr.x.map(|d| d.du).dot(&y) / se;
    let gamma2 = fr.y.map(|d| d.dv).dot(&x) / sg;
    let beta1 = fr.b.map(|d| d.du).dot(&l) / se;
    let beta2 = fr.b.map(|d| d.dv).dot(&l) / sg;
    let (nu1, nu2, lambda, mu) = (ff.nu1, ff.nu2, ff.lambda, ff.mu);
    let two = N::lit(2.0);
    let d12 = nu1.re - nu2.re;
    let mb1 = lambda.du / se - nu1.dv / sg - two * lambda.re * gamma2 + d12 * gamma1;
    let mb2 = -nu2.du / se + lambda.dv / sg - two * lambda.re * gamma1 - d12 * gamma2;
    let gf = GeometricFunctions {
        nu1: nu1.re,
        nu2: nu2.re,
        lambda: lambda.re,
        mu: mu.re,
        gamma1,
        gamma2,
        beta1,
        beta2,
        e: ff.e.re,
        g: ff.g.re,
    };
    Ok((gf, [mb1 / mu.re, mb2 / mu.re]))
}

/// Geometric functions of a principal chart at `(u, v)`.
pub fn geometric_functions<T: Real, S: Surface<T>>(
    s: &S,
    u: T,
    v: T,
    tol: &Tolerances,
) -> Result<GeometricFunctions<T>> {
    Ok(geometric_functions_checked(s, u, v, tol)?.0)
}

/// Geometric functions with their first partials.
pub fn geometric_functions_jet<T: Real, S: Surface<T>>(
    s: &S,
    u: T,
    v: T,
    tol: &Tolerances,
) -> Result<GeometricFunctions<Dual<T>>> {
    Ok(geometric_functions_checked(s, Dual::var_u(u), Dual::var_v(v), tol)?.0)
}

/// `γ1 = -(√E)_v/(√E√G)` and `γ2 = -(√G)_u/(√E√G)` from the metric alone.
pub fn gamma_from_metric<T: Real>(gf: &GeometricFunctions<Dual<T>>) -> [T; 2] {
    let se = gf.e.sqrt();
    let sg = gf.g.sqrt();
    let w = se.re * sg.re;
    [-se.dv / w, -sg.du / w]
}

/// `(k, ϰ, K)` from the closed-form identities in the geometric functions.
pub fn invariant_identities<N: Number>(gf: &GeometricFunctions<N>) -> (N, N, N) {
    let k = N::lit(-4.0) * gf.nu1 * gf.nu2 * gf.mu * gf.mu;
    let kappa = (gf.nu1 - gf.nu2) * gf.mu;
    let gauss = gf.nu1 * gf.nu2 - (gf.lambda * gf.lambda + gf.mu * gf.mu);
    (k, kappa, gauss)
}

/// The six equations of the compatibility system as `LHS - RHS`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SystemResidual<T> {
    pub r: [T; 6],
}

impl<T: Real> SystemResidual<T> {
    pub fn max_abs(&self) -> T {
        self.r.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    /// Residuals from values and first partials of the eight functions.
    pub fn from_partials(f: &GeometricFunctions<T>, du: &GeometricFunctions<T>, dv: &GeometricFunctions<T>) -> Self {
        let se = f.e.sqrt();
        let sg = f.g.sqrt();
        let two = T::of(2.0);
        let d12 = f.nu1 - f.nu2;
        let (g1, g2, b1, b2) = (f.gamma1, f.gamma2, f.beta1, f.beta2);
        let r = [
            two * f.mu * g2 + f.nu1 * b2 - f.lambda * b1 - du.mu / se,
            two * f.mu * g1 - f.lambda * b2 + f.nu2 * b1 - dv.mu / sg,
            two * f.lambda * g2 + f.mu * b1 - d12 * g1 - (du.lambda / se - dv.nu1 / sg),
            two * f.lambda * g1 + f.mu * b2 + d12 * g2 - (-du.nu2 / se + dv.lambda / sg),
            f.nu1 * f.nu2 - (f.lambda * f.lambda + f.mu * f.mu) - (du.gamma2 / se + dv.gamma1 / sg - (g1 * g1 + g2 * g2)),
            g1 * b1 - g2 * b2 + d12 * f.mu - (-du.beta2 / se + dv.beta1 / sg),
        ];
        SystemResidual { r }
    }

    /// Residuals from functions evaluated in dual numbers.
    pub fn from_jet(gf: &GeometricFunctions<Dual<T>>) -> Self {
        Self::from_partials(&gf.map(|d| d.re), &gf.map(|d| d.du), &gf.map(|d| d.dv))
    }
}

/// The quotients `μ_u/(2μγ2+ν1β2−λβ1)` and `μ_v/(2μγ1−λβ2+ν2β1)`; reported
/// for inspection only (they are 0/0 when μ is constant).
pub fn positivity_quotients<T: Real>(gf: &GeometricFunctions<Dual<T>>) -> [T; 2] {
    let f = gf.map(|d| d.re);
    let two = T::of(2.0);
    let a = two * f.mu * f.gamma2 + f.nu1 * f.beta2 - f.lambda * f.beta1;
    let b = two * f.mu * f.gamma1 - f.lambda * f.beta2 + f.nu2 * f.beta1;
    [gf.mu.du / a, gf.mu.dv / b]
}

/// Geometric functions with partials at every lattice node; minimal points
/// are masked as `None`, every other failure is an error.
pub fn sample_functions<T: Real, S: Surface<T>>(
    s: &S,
    lattice: &Lattice<T>,
    tol: &Tolerances,
) -> Result<Vec<Option<GeometricFunctions<Dual<T>>>>> {
    let pts = lattice.points();
    let out: Vec<Result<Option<_>>> = pts
        .par_iter()
        .map(|&(u, v)| match geometric_functions_jet(s, u, v, tol) {
            Ok(g) => Ok(Some(g)),
            Err(Error::MinimalPoint { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    out.into_iter().collect()
}

/// Residuals at every node from analytic partials.
pub fn basic_system_residual_jets<T: Real>(
    gf: &[Option<GeometricFunctions<Dual<T>>>],
) -> Vec<Option<SystemResidual<T>>> {
    gf.iter().map(|g| g.as_ref().map(SystemResidual::from_jet)).collect()
}

/// Residuals at every node with partials from lattice stencils. Masked
/// nodes, and nodes whose stencils touch them, give `None`.
pub fn basic_system_residual_grid<T: Real>(
    gf: &[Option<GeometricFunctions<T>>],
    lattice: &Lattice<T>,
    order: usize,
) -> Vec<Option<SystemResidual<T>>> {
    let nan = T::of(f64::NAN);
    let filled: Vec<GeometricFunctions<T>> =
        gf.iter().map(|g| g.unwrap_or_else(|| GeometricFunctions::default().map(|_: T| nan))).collect();
    let field = |k: usize| -> Vec<T> { filled.iter().map(|g| g.eight()[k]).collect() };
    let mut du = vec![[T::zero(); 8]; filled.len()];
    let mut dv = vec![[T::zero(); 8]; filled.len()];
    for k in 0..8 {
        let f = field(k);
        let fu = d_du(&f, lattice, order);
        let fv = d_dv(&f, lattice, order);
        for n in 0..filled.len() {
            du[n][k] = fu[n];
            dv[n][k] = fv[n];
        }
    }
    filled
        .iter()
        .enumerate()
        .map(|(n, f)| {
            let z = T::zero();
            let r = SystemResidual::from_partials(
                f,
                &GeometricFunctions::from_eight(du[n], z, z),
                &GeometricFunctions::from_eight(dv[n], z, z),
            );
            if r.r.iter().all(|x| x.is_finite()) {
                Some(r)
            } else {
                None
            }
        })
        .collect()
}
