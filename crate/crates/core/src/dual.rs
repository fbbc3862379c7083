//! Bivariate forward-mode dual numbers.
//!
//! `Dual<N>` carries a value and its partials in `u` and `v`. Nesting
//! (`Dual<Dual<f64>>`, ...) gives higher partials: seed each level with
//! [`Dual::var_u`] / [`Dual::var_v`] and read mixed derivatives from the
//! nested `du`/`dv` fields.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::{Number, Real};

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Dual<N> {
    pub re: N,
    pub du: N,
    pub dv: N,
}

impl<N: Number> Dual<N> {
    pub fn new(re: N, du: N, dv: N) -> Self {
        Dual { re, du, dv }
    }

    pub fn cst(re: N) -> Self {
        Dual { re, du: N::zero(), dv: N::zero() }
    }

    /// `re` seeded as the `u` variable.
    pub fn var_u(re: N) -> Self {
        Dual { re, du: N::one(), dv: N::zero() }
    }

    /// `re` seeded as the `v` variable.
    pub fn var_v(re: N) -> Self {
        Dual { re, du: N::zero(), dv: N::one() }
    }

    #[inline]
    fn chain(self, f: N, df: N) -> Self {
        Dual { re: f, du: df * self.du, dv: df * self.dv }
    }
}

impl<N: Number> Add for Dual<N> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, du: self.du + o.du, dv: self.dv + o.dv }
    }
}

impl<N: Number> Sub for Dual<N> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, du: self.du - o.du, dv: self.dv - o.dv }
    }
}

impl<N: Number> Mul for Dual<N> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Dual {
            re: self.re * o.re,
            du: self.du * o.re + self.re * o.du,
            dv: self.dv * o.re + self.re * o.dv,
        }
    }
}

impl<N: Number> Div for Dual<N> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Dual {
            re: q,
            du: (self.du - q * o.du) / o.re,
            dv: (self.dv - q * o.dv) / o.re,
        }
    }
}

impl<N: Number> Neg for Dual<N> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Dual { re: -self.re, du: -self.du, dv: -self.dv }
    }
}

impl<N: Number> Number for Dual<N> {
    type Scalar = N::Scalar;
    const DEPTH: usize = N::DEPTH + 1;

    fn constant(c: Self::Scalar) -> Self {
        Dual::cst(N::constant(c))
    }
    fn value(&self) -> Self::Scalar {
        self.re.value()
    }
    fn all_finite(&self) -> bool {
        self.re.all_finite() && self.du.all_finite() && self.dv.all_finite()
    }
    fn scale(self, s: Self::Scalar) -> Self {
        Dual { re: self.re.scale(s), du: self.du.scale(s), dv: self.dv.scale(s) }
    }
    fn zero() -> Self {
        Dual::cst(N::zero())
    }
    fn one() -> Self {
        Dual::cst(N::one())
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.chain(s, (s + s).recip())
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.re.ln(), self.re.recip())
    }
    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin())
    }
    fn sinh(self) -> Self {
        self.chain(self.re.sinh(), self.re.cosh())
    }
    fn cosh(self) -> Self {
        self.chain(self.re.cosh(), self.re.sinh())
    }
    fn tanh(self) -> Self {
        let t = self.re.tanh();
        self.chain(t, N::one() - t * t)
    }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::one();
        }
        let d = self.re.powi(n - 1);
        self.chain(d * self.re, d.scale(<Self::Scalar as Real>::of(n as f64)))
    }
    fn powf(self, p: Self::Scalar) -> Self {
        let d = self.re.powf(p - <Self::Scalar as Number>::one());
        self.chain(d * self.re, d.scale(p))
    }
    fn abs(self) -> Self {
        if self.re.value() < <Self::Scalar as Number>::zero() {
            -self
        } else {
            self
        }
    }
}
