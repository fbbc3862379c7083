//! Scalar and generic number traits.
//!
//! [`Number`] is what every geometric routine is written against. It is
//! implemented by the plain floats and by [`Dual`](crate::dual::Dual), so the
//! same code produces values and exact derivatives. [`Real`] is a plain float.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FloatConst, FromPrimitive, ToPrimitive};

/// A number type closed under arithmetic and the elementary functions.
pub trait Number:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The underlying float.
    type Scalar: Real;
    /// Nesting depth of dual components (0 for plain floats).
    const DEPTH: usize;

    fn constant(c: Self::Scalar) -> Self;
    /// Primal part.
    fn value(&self) -> Self::Scalar;
    /// True when every component is finite.
    fn all_finite(&self) -> bool;
    fn scale(self, s: Self::Scalar) -> Self;

    fn zero() -> Self;
    fn one() -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, p: Self::Scalar) -> Self;
    /// `|x|`, differentiated as `sign(x)`.
    fn abs(self) -> Self;

    fn recip(self) -> Self {
        Self::one() / self
    }
    fn square(self) -> Self {
        self * self
    }
    /// Constant from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::constant(Self::Scalar::of(x))
    }
}

/// A real floating-point scalar (`f32` or `f64`).
pub trait Real:
    Number<Scalar = Self> + PartialOrd + Display + Default + FloatConst + FromPrimitive + ToPrimitive
{
    fn of(x: f64) -> Self;
    fn as_f64(self) -> f64;
    fn max(self, other: Self) -> Self;
    fn min(self, other: Self) -> Self;
    fn is_finite(self) -> bool;
    fn epsilon() -> Self;
    fn floor(self) -> Self;
    fn ceil(self) -> Self;
    fn round(self) -> Self;
    fn atan2(self, other: Self) -> Self;
    fn signum(self) -> Self;
}

macro_rules! impl_float {
    ($t:ident) => {
        impl Number for $t {
            type Scalar = $t;
            const DEPTH: usize = 0;

            #[inline]
            fn constant(c: $t) -> $t {
                c
            }
            #[inline]
            fn value(&self) -> $t {
                *self
            }
            #[inline]
            fn all_finite(&self) -> bool {
                $t::is_finite(*self)
            }
            #[inline]
            fn scale(self, s: $t) -> $t {
                self * s
            }
            #[inline]
            fn zero() -> $t {
                0.0
            }
            #[inline]
            fn one() -> $t {
                1.0
            }
            #[inline]
            fn sqrt(self) -> $t {
                $t::sqrt(self)
            }
            #[inline]
            fn exp(self) -> $t {
                $t::exp(self)
            }
            #[inline]
            fn ln(self) -> $t {
                $t::ln(self)
            }
            #[inline]
            fn sin(self) -> $t {
                $t::sin(self)
            }
            #[inline]
            fn cos(self) -> $t {
                $t::cos(self)
            }
            #[inline]
            fn sinh(self) -> $t {
                $t::sinh(self)
            }
            #[inline]
            fn cosh(self) -> $t {
                $t::cosh(self)
            }
            #[inline]
            fn tanh(self) -> $t {
                $t::tanh(self)
            }
            #[inline]
            fn powi(self, n: i32) -> $t {
                $t::powi(self, n)
            }
            #[inline]
            fn powf(self, p: $t) -> $t {
                $t::powf(self, p)
            }
            #[inline]
            fn abs(self) -> $t {
                $t::abs(self)
            }
            #[inline]
            fn recip(self) -> $t {
                1.0 / self
            }
        }

        impl Real for $t {
            #[inline]
            fn of(x: f64) -> $t {
                x as $t
            }
            #[inline]
            fn as_f64(self) -> f64 {
                self as f64
            }
            #[inline]
            fn max(self, other: $t) -> $t {
                $t::max(self, other)
            }
            #[inline]
            fn min(self, other: $t) -> $t {
                $t::min(self, other)
            }
            #[inline]
            fn is_finite(self) -> bool {
                $t::is_finite(self)
            }
            #[inline]
            fn epsilon() -> $t {
                $t::EPSILON
            }
            #[inline]
            fn floor(self) -> $t {
                $t::floor(self)
            }
            #[inline]
            fn ceil(self) -> $t {
                $t::ceil(self)
            }
            #[inline]
            fn round(self) -> $t {
                $t::round(self)
            }
            #[inline]
            fn atan2(self, other: $t) -> $t {
                $t::atan2(self, other)
            }
            #[inline]
            fn signum(self) -> $t {
                $t::signum(self)
            }
        }
    };
}

impl_float!(f32);
impl_float!(f64);
