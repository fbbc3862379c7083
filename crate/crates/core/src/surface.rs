//! Charts, fundamental forms, invariants and the geometric frame.

use rayon::prelude::*;

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::expr::{parse, Expression};
use crate::lattice::{Lattice, Rect};
use crate::scalar::{Number, Real};
use crate::tolerance::Tolerances;
use crate::vec4::{cross, Vec4};

/// Sign convention for completing `{x, y, b}` to a frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn from_sign(s: i32) -> Result<Self> {
        match s {
            1 => Ok(Orientation::Positive),
            -1 => Ok(Orientation::Negative),
            _ => Err(Error::InvalidInput(format!("orientation must be +1 or -1, got {s}"))),
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    fn apply<N: Number>(self, x: Vec4<N>) -> Vec4<N> {
        match self {
            Orientation::Positive => x,
            Orientation::Negative => -x,
        }
    }
}

/// A parametrized patch `z(u, v)` in R^4 that can be evaluated in any
/// number type, so derivatives of every order come from dual numbers.
pub trait Surface<T: Real>: Sync {
    fn eval<N: Number<Scalar = T>>(&self, u: N, v: N) -> Result<Vec4<N>>;
    fn domain(&self) -> Rect<T>;
    fn orientation(&self) -> Orientation;
}

/// A chart given by four closed-form coordinate expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart<T> {
    pub coords: [Expression; 4],
    pub domain: Rect<T>,
    pub orientation: Orientation,
}

impl<T: Real> Chart<T> {
    pub fn new(coords: [Expression; 4], domain: Rect<T>, orientation: Orientation) -> Result<Self> {
        domain.validate()?;
        Ok(Chart { coords, domain, orientation })
    }

    /// Parse the four coordinate strings.
    pub fn parse(coords: [&str; 4], domain: Rect<T>, orientation: Orientation) -> Result<Self> {
        let [a, b, c, d] = coords;
        Chart::new([parse(a)?, parse(b)?, parse(c)?, parse(d)?], domain, orientation)
    }

    /// The homothetic chart `alpha * z`.
    pub fn scaled(&self, alpha: f64) -> Self {
        Chart { coords: self.coords.clone().map(|e| e.scaled(alpha)), ..self.clone() }
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        Chart { orientation, ..self.clone() }
    }
}

impl<T: Real> Surface<T> for Chart<T> {
    fn eval<N: Number<Scalar = T>>(&self, u: N, v: N) -> Result<Vec4<N>> {
        let c = &self.coords;
        Ok(Vec4([c[0].eval(u, v)?, c[1].eval(u, v)?, c[2].eval(u, v)?, c[3].eval(u, v)?]))
    }

    fn domain(&self) -> Rect<T> {
        self.domain
    }

    fn orientation(&self) -> Orientation {
        self.orientation
    }
}

/// Position and derivatives up to second order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecondJet<N> {
    pub z: Vec4<N>,
    pub zu: Vec4<N>,
    pub zv: Vec4<N>,
    pub zuu: Vec4<N>,
    pub zuv: Vec4<N>,
    pub zvv: Vec4<N>,
}

impl<N: Number> SecondJet<N> {
    pub fn map<M: Number, F: Fn(N) -> M + Copy>(&self, f: F) -> SecondJet<M> {
        SecondJet {
            z: self.z.map(f),
            zu: self.zu.map(f),
            zv: self.zv.map(f),
            zuu: self.zuu.map(f),
            zuv: self.zuv.map(f),
            zvv: self.zvv.map(f),
        }
    }
}

pub fn second_jet<T: Real, S: Surface<T>, N: Number<Scalar = T>>(s: &S, u: N, v: N) -> Result<SecondJet<N>> {
    let r = s.eval(Dual::var_u(Dual::var_u(u)), Dual::var_v(Dual::var_v(v)))?;
    Ok(SecondJet {
        z: r.map(|d| d.re.re),
        zu: r.map(|d| d.du.re),
        zv: r.map(|d| d.dv.re),
        zuu: r.map(|d| d.du.du),
        zuv: r.map(|d| d.du.dv),
        zvv: r.map(|d| d.dv.dv),
    })
}

/// `(z, z_u, z_v)` at a point.
pub fn first_jet<T: Real, S: Surface<T>, N: Number<Scalar = T>>(s: &S, u: N, v: N) -> Result<[Vec4<N>; 3]> {
    let r = s.eval(Dual::var_u(u), Dual::var_v(v))?;
    Ok([r.map(|d| d.re), r.map(|d| d.du), r.map(|d| d.dv)])
}

/// First and second fundamental forms at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalForms<N> {
    pub e: N,
    pub f: N,
    pub g: N,
    pub sigma_uu: Vec4<N>,
    pub sigma_uv: Vec4<N>,
    pub sigma_vv: Vec4<N>,
    pub l: N,
    pub m: N,
    pub n: N,
    /// `c[k][ij]`: coefficient of `n_{k+1}` in `sigma_ij`, `ij` in (11, 12, 22).
    pub c: [[N; 3]; 2],
    /// `christoffel[k][ij]`: `Γ^{k+1}_ij`, `ij` in (11, 12, 22).
    pub christoffel: [[N; 3]; 2],
    /// The normal pair the `c` coefficients refer to.
    pub normals: [Vec4<N>; 2],
}

impl<N: Number> FundamentalForms<N> {
    /// `EG - F^2`.
    pub fn w(&self) -> N {
        self.e * self.g - self.f * self.f
    }
}

fn tangent_basis<N: Number>(zu: &Vec4<N>, zv: &Vec4<N>) -> (Vec4<N>, Vec4<N>) {
    let t1 = zu.normalized();
    let t2 = (*zv - t1.scale(zv.dot(&t1))).normalized();
    (t1, t2)
}

/// Normal pair with `det[z_u z_v n1 n2]` of the chart's sign.
fn normal_pair<N: Number>(zu: &Vec4<N>, zv: &Vec4<N>, suu: &Vec4<N>, svv: &Vec4<N>, o: Orientation) -> [Vec4<N>; 2] {
    let (t1, t2) = tangent_basis(zu, zv);
    let eps = <N::Scalar as Real>::of(1e-8);
    let seed = if svv.norm().value() > eps {
        *svv
    } else if suu.norm().value() > eps {
        *suu
    } else {
        // Standard basis vector farthest from the tangent plane.
        let mut best = (Vec4::basis(0), <N::Scalar as Number>::zero());
        for i in 0..4 {
            let e = Vec4::<N>::basis(i);
            let r = e - t1.scale(t1[i]) - t2.scale(t2[i]);
            let nr = r.norm().value();
            if nr > best.1 {
                best = (e, nr);
            }
        }
        best.0
    };
    let n1 = (seed - t1.scale(seed.dot(&t1)) - t2.scale(seed.dot(&t2))).normalized();
    let n2 = o.apply(cross(&t1, &t2, &n1));
    [n1, n2]
}

fn det2<N: Number>(a: [N; 2], b: [N; 2]) -> N {
    a[0] * b[1] - a[1] * b[0]
}

/// Fundamental forms from a second jet.
pub fn forms_from_jet<N: Number>(j: &SecondJet<N>, o: Orientation) -> FundamentalForms<N> {
    let (zu, zv) = (j.zu, j.zv);
    let e = zu.dot(&zu);
    let f = zu.dot(&zv);
    let g = zv.dot(&zv);
    let w = e * g - f * f;
    let two = N::lit(2.0);
    let eu = two * zu.dot(&j.zuu);
    let ev = two * zu.dot(&j.zuv);
    let fu = j.zuu.dot(&zv) + zu.dot(&j.zuv);
    let fv = j.zuv.dot(&zv) + zu.dot(&j.zvv);
    let gu = two * zv.dot(&j.zuv);
    let gv = two * zv.dot(&j.zvv);
    let w2 = two * w;
    let christoffel = [
        [(g * eu - two * f * fu + f * ev) / w2, (g * ev - f * gu) / w2, (two * g * fv - g * gu - f * gv) / w2],
        [(two * e * fu - e * ev - f * eu) / w2, (e * gu - f * ev) / w2, (e * gv - two * f * fv + f * gu) / w2],
    ];
    let sigma = |z: Vec4<N>, k: usize| z - zu.scale(christoffel[0][k]) - zv.scale(christoffel[1][k]);
    let (suu, suv, svv) = (sigma(j.zuu, 0), sigma(j.zuv, 1), sigma(j.zvv, 2));
    let normals = normal_pair(&zu, &zv, &suu, &svv, o);
    let coef = |s: &Vec4<N>| [s.dot(&normals[0]), s.dot(&normals[1])];
    let (c11, c12, c22) = (coef(&suu), coef(&suv), coef(&svv));
    let sw = w.sqrt();
    FundamentalForms {
        e,
        f,
        g,
        sigma_uu: suu,
        sigma_uv: suv,
        sigma_vv: svv,
        l: two * det2(c11, c12) / sw,
        m: det2(c11, c22) / sw,
        n: two * det2(c12, c22) / sw,
        c: [[c11[0], c12[0], c22[0]], [c11[1], c12[1], c22[1]]],
        christoffel,
        normals,
    }
}

fn check_metric<N: Number>(forms: &FundamentalForms<N>, u: f64, v: f64, tol: &Tolerances) -> Result<()> {
    let det = forms.w().value().as_f64();
    if !(det > tol.eps_det) {
        return Err(Error::DegenerateMetric { u, v, det });
    }
    Ok(())
}

/// First and second fundamental forms of a chart at `(u, v)`.
pub fn fundamental_forms<T: Real, S: Surface<T>>(
    s: &S,
    u: T,
    v: T,
    tol: &Tolerances,
) -> Result<FundamentalForms<T>> {
    let forms = forms_from_jet(&second_jet(s, u, v)?, s.orientation());
    check_metric(&forms, u.as_f64(), v.as_f64(), tol)?;
    Ok(forms)
}

/// Curvature invariants at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Invariants<N> {
    pub k: N,
    pub varkappa: N,
    pub gauss: N,
    pub h: Vec4<N>,
    pub h_norm: N,
}

pub fn invariants<N: Number>(f: &FundamentalForms<N>) -> Invariants<N> {
    let w = f.w();
    let two = N::lit(2.0);
    let h = (f.sigma_uu.scale(f.g) - f.sigma_uv.scale(two * f.f) + f.sigma_vv.scale(f.e)).scale((two * w).recip());
    Invariants {
        k: (f.l * f.n - f.m * f.m) / w,
        varkappa: (f.e * f.n - two * f.f * f.m + f.g * f.l) / (two * w),
        gauss: (f.sigma_uu.dot(&f.sigma_vv) - f.sigma_uv.dot(&f.sigma_uv)) / w,
        h,
        h_norm: h.norm(),
    }
}

/// Orthonormal frame `{x, y, b, l}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame<N> {
    pub x: Vec4<N>,
    pub y: Vec4<N>,
    pub b: Vec4<N>,
    pub l: Vec4<N>,
}

impl<N: Number> Frame<N> {
    pub fn standard() -> Self {
        Frame { x: Vec4::basis(0), y: Vec4::basis(1), b: Vec4::basis(2), l: Vec4::basis(3) }
    }

    pub fn rows(&self) -> [Vec4<N>; 4] {
        [self.x, self.y, self.b, self.l]
    }

    pub fn from_rows(r: [Vec4<N>; 4]) -> Self {
        Frame { x: r[0], y: r[1], b: r[2], l: r[3] }
    }

    /// Largest entry of `|Gram - I|`.
    pub fn gram_deviation(&self) -> N::Scalar {
        let r = self.rows();
        let mut worst = <N::Scalar as Number>::zero();
        for i in 0..4 {
            for j in 0..4 {
                let target = if i == j { 1.0 } else { 0.0 };
                let d = (r[i].dot(&r[j]).value() - <N::Scalar as Real>::of(target)).abs();
                worst = worst.max(d);
            }
        }
        worst
    }
}

/// Frame and first-order frame functions, computed without any checks.
/// Evaluated in dual numbers it also yields their derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameFunctions<N> {
    pub e: N,
    pub g: N,
    pub frame: Frame<N>,
    pub nu1: N,
    pub nu2: N,
    pub lambda: N,
    pub mu: N,
    pub h_norm: N,
}

pub fn frame_functions<N: Number>(j: &SecondJet<N>, o: Orientation) -> FrameFunctions<N> {
    let forms = forms_from_jet(j, o);
    let inv = invariants(&forms);
    let (e, g) = (forms.e, forms.g);
    let x = j.zu.scale(e.sqrt().recip());
    let y = j.zv.scale(g.sqrt().recip());
    let b = inv.h.scale(inv.h_norm.recip());
    let l = o.apply(cross(&x, &y, &b));
    let seg = (e * g).sqrt();
    FrameFunctions {
        e,
        g,
        frame: Frame { x, y, b, l },
        nu1: forms.sigma_uu.dot(&b) / e,
        nu2: forms.sigma_vv.dot(&b) / g,
        lambda: forms.sigma_uv.dot(&b) / seg,
        mu: forms.sigma_uv.dot(&l) / seg,
        h_norm: inv.h_norm,
    }
}

/// Normalized principal residual `max(|F|/sqrt(EG), |M|/sqrt(EG - F^2))`.
pub fn principal_residual<N: Number>(f: &FundamentalForms<N>) -> N::Scalar {
    let a = (f.f.value() / (f.e.value() * f.g.value()).sqrt()).abs();
    let b = (f.m.value() / f.w().value().sqrt()).abs();
    a.max(b)
}

/// Checks required before frame quantities are meaningful: regular metric,
/// non-minimal, principal.
pub fn check_principal_point<N: Number>(forms: &FundamentalForms<N>, u: f64, v: f64, tol: &Tolerances) -> Result<()> {
    check_metric(forms, u, v, tol)?;
    let norm = invariants(forms).h_norm.value().as_f64();
    if !(norm > tol.eps_min) {
        return Err(Error::MinimalPoint { u, v, norm });
    }
    let residual = principal_residual(forms).as_f64();
    if !(residual < tol.tol_principal) {
        return Err(Error::NonPrincipal { u, v, residual });
    }
    Ok(())
}

/// The geometric frame at `(u, v)` of a principal chart.
pub fn geometric_frame<T: Real, S: Surface<T>>(s: &S, u: T, v: T, tol: &Tolerances) -> Result<Frame<T>> {
    let jet = second_jet(s, u, v)?;
    let forms = forms_from_jet(&jet, s.orientation());
    check_principal_point(&forms, u.as_f64(), v.as_f64(), tol)?;
    Ok(frame_functions(&jet, s.orientation()).frame)
}

/// Result of a principal-parametrization scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrincipalReport {
    pub principal: bool,
    pub max_residual: f64,
}

/// Map `f` over the lattice nodes in parallel; the first error in storage
/// order wins, so failures are reported deterministically.
pub fn par_nodes<T: Real, R: Send, F>(lattice: &Lattice<T>, f: F) -> Result<Vec<R>>
where
    F: Fn(T, T) -> Result<R> + Sync + Send,
{
    let pts = lattice.points();
    let results: Vec<Result<R>> = pts.par_iter().map(|&(u, v)| f(u, v)).collect();
    results.into_iter().collect()
}

pub fn is_principal<T: Real, S: Surface<T>>(s: &S, lattice: &Lattice<T>, tol: &Tolerances) -> Result<PrincipalReport> {
    let res = par_nodes(lattice, |u, v| {
        let f = fundamental_forms(s, u, v, tol)?;
        Ok(principal_residual(&f).as_f64())
    })?;
    let max_residual = res.into_iter().fold(0.0, f64::max);
    Ok(PrincipalReport { principal: max_residual < tol.tol_principal, max_residual })
}
