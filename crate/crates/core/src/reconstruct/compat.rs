//! `β1`, `β2` from a solution of the Cauchy problem, and the two
//! compatibility equations the solution must satisfy.

use crate::canonize::{DeterminingJet, FFields};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::scalar::Real;
use crate::stencil::{d_du, d_dv};

/// Everything the frame equations need at one node.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FrameCoefficients<T> {
    pub nu1: T,
    pub nu2: T,
    pub lambda: T,
    pub mu: T,
    pub phi: T,
    pub psi: T,
    pub gamma1: T,
    pub gamma2: T,
    pub beta1: T,
    pub beta2: T,
}

/// `β1`, `β2` and `γ1`, `γ2` at every node, with `φ_v`, `ψ_u` taken from
/// the Cauchy equations.
pub fn recover_beta<T: Real>(
    jets: &[DeterminingJet<T>],
    f: &[FFields<T>],
    phi: &[T],
    psi: &[T],
    lattice: &Lattice<T>,
) -> Result<Vec<FrameCoefficients<T>>> {
    let two = T::of(2.0);
    (0..jets.len())
        .map(|k| {
            let j = &jets[k];
            let (p, q) = (phi[k], psi[k]);
            let pv = f[k].f1 * p + f[k].f2 * q;
            let qu = f[k].f3 * p + f[k].f4 * q;
            let [a1, a2, l, m] = j.values();
            let d12 = a1 - a2;
            let den = m * p * q;
            if !(den.abs() > T::of(1e-300)) || !den.is_finite() {
                let (i, jj) = lattice.ij(k);
                return Err(Error::DegenerateDenominator {
                    u: lattice.u(i).as_f64(),
                    v: lattice.v(jj).as_f64(),
                    value: den.as_f64(),
                });
            }
            let beta1 = (two * l * qu - d12 * pv + j.lambda.du * q - j.nu1.dv * p) / den;
            let beta2 = (two * l * pv + d12 * qu - j.nu2.du * q + j.lambda.dv * p) / den;
            Ok(FrameCoefficients {
                nu1: a1,
                nu2: a2,
                lambda: l,
                mu: m,
                phi: p,
                psi: q,
                gamma1: -pv / (p * q),
                gamma2: -qu / (p * q),
                beta1,
                beta2,
            })
        })
        .collect()
}

/// Normalized residuals of the two compatibility equations per node.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatResidual<T> {
    /// Gauss-type equation.
    pub r1: Vec<T>,
    /// Normal-curvature-type equation.
    pub r2: Vec<T>,
}

impl<T: Real> CompatResidual<T> {
    pub fn max_abs(&self) -> T {
        self.r1.iter().chain(&self.r2).fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn at(&self, k: usize) -> T {
        self.r1[k].abs().max(self.r2[k].abs())
    }
}

/// Residuals of
/// `ν1ν2 - (λ² + μ²) = -(p_v + q_u)/(φψ)` with `p = f1 φ/ψ + f2`,
/// `q = f3 + f4 ψ/φ`, and of
/// `φψ(ν1 - ν2)μ = (φβ1)_v - (ψβ2)_u`, each divided by
/// `max(1, sum of the magnitudes of its terms)`. Derivatives come from
/// stencils of the given order.
pub fn compatibility_residual<T: Real>(
    f: &[FFields<T>],
    coef: &[FrameCoefficients<T>],
    lattice: &Lattice<T>,
    order: usize,
) -> CompatResidual<T> {
    let n = coef.len();
    let p: Vec<T> = (0..n).map(|k| f[k].f1 * coef[k].phi / coef[k].psi + f[k].f2).collect();
    let q: Vec<T> = (0..n).map(|k| f[k].f3 + f[k].f4 * coef[k].psi / coef[k].phi).collect();
    let pb1: Vec<T> = coef.iter().map(|c| c.phi * c.beta1).collect();
    let qb2: Vec<T> = coef.iter().map(|c| c.psi * c.beta2).collect();
    let (pv, qu) = (d_dv(&p, lattice, order), d_du(&q, lattice, order));
    let (b1v, b2u) = (d_dv(&pb1, lattice, order), d_du(&qb2, lattice, order));
    let mut r1 = Vec::with_capacity(n);
    let mut r2 = Vec::with_capacity(n);
    for k in 0..n {
        let c = &coef[k];
        let w = c.phi * c.psi;
        let gauss = c.nu1 * c.nu2 - (c.lambda * c.lambda + c.mu * c.mu);
        let rhs = (pv[k] + qu[k]) / w;
        let s1 = T::one().max((c.nu1 * c.nu2).abs() + c.lambda * c.lambda + c.mu * c.mu + rhs.abs());
        r1.push((gauss + rhs) / s1);
        let lhs = w * (c.nu1 - c.nu2) * c.mu;
        let s2 = T::one().max(lhs.abs() + b1v[k].abs() + b2u[k].abs());
        r2.push((lhs - (b1v[k] - b2u[k])) / s2);
    }
    CompatResidual { r1, r2 }
}
