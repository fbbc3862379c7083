use num_traits::FloatConst;

use super::{BinaryOp, Expression, NamedConst, UnaryOp, Var};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::scalar::{Number, Real};

/// Value and partials up to third order of a scalar function of (u, v).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet3<T> {
    pub value: T,
    pub du: T,
    pub dv: T,
    pub duu: T,
    pub duv: T,
    pub dvv: T,
    pub duuu: T,
    pub duuv: T,
    pub duvv: T,
    pub dvvv: T,
}

pub(crate) type D3<T> = Dual<Dual<Dual<T>>>;

impl<T: Real> Jet3<T> {
    pub(crate) fn seed(u: T, v: T) -> (D3<T>, D3<T>) {
        (Dual::var_u(Dual::var_u(Dual::var_u(u))), Dual::var_v(Dual::var_v(Dual::var_v(v))))
    }

    pub(crate) fn from_dual(r: D3<T>) -> Self {
        Jet3 {
            value: r.re.re.re,
            du: r.du.re.re,
            dv: r.dv.re.re,
            duu: r.du.du.re,
            duv: r.du.dv.re,
            dvv: r.dv.dv.re,
            duuu: r.du.du.du,
            duuv: r.du.du.dv,
            duvv: r.du.dv.dv,
            dvvv: r.dv.dv.dv,
        }
    }
}

struct Ctx<T> {
    u: f64,
    v: f64,
    _t: std::marker::PhantomData<T>,
}

impl<T: Real> Ctx<T> {
    fn check<N: Number<Scalar = T>>(&self, op: &'static str, x: N) -> Result<N> {
        if x.all_finite() {
            Ok(x)
        } else {
            Err(self.domain(op))
        }
    }

    fn domain(&self, op: &'static str) -> Error {
        Error::Domain { op, u: self.u, v: self.v }
    }
}

impl Expression {
    /// Evaluate at `(u, v)` in any number type. Domain violations and
    /// non-finite intermediate results are errors.
    pub fn eval<N: Number>(&self, u: N, v: N) -> Result<N> {
        let ctx = Ctx::<N::Scalar> { u: u.value().as_f64(), v: v.value().as_f64(), _t: Default::default() };
        self.eval_in(&ctx, u, v)
    }

    /// Value and all partials up to third order, by nested dual numbers.
    pub fn eval_jet3<T: Real>(&self, u: T, v: T) -> Result<Jet3<T>> {
        let (du, dv) = Jet3::seed(u, v);
        Ok(Jet3::from_dual(self.eval(du, dv)?))
    }

    fn eval_in<N: Number>(&self, ctx: &Ctx<N::Scalar>, u: N, v: N) -> Result<N> {
        let zero = <N::Scalar as Number>::zero();
        Ok(match self {
            Expression::Num(x) => N::lit(*x),
            Expression::Var(Var::U) => u,
            Expression::Var(Var::V) => v,
            Expression::Const(NamedConst::Pi) => N::constant(N::Scalar::PI()),
            Expression::Const(NamedConst::E) => N::constant(N::Scalar::E()),
            Expression::Unary(op, a) => {
                let x = a.eval_in(ctx, u, v)?;
                let p = x.value();
                let r = match op {
                    UnaryOp::Neg => -x,
                    UnaryOp::Sin => x.sin(),
                    UnaryOp::Cos => x.cos(),
                    UnaryOp::Sinh => x.sinh(),
                    UnaryOp::Cosh => x.cosh(),
                    UnaryOp::Tanh => x.tanh(),
                    UnaryOp::Exp => x.exp(),
                    UnaryOp::Ln => {
                        if !(p > zero) {
                            return Err(ctx.domain("ln"));
                        }
                        x.ln()
                    }
                    UnaryOp::Sqrt => {
                        if p < zero {
                            return Err(ctx.domain("sqrt"));
                        }
                        x.sqrt()
                    }
                    UnaryOp::Abs => {
                        if p == zero {
                            return Err(ctx.domain("abs"));
                        }
                        x.abs()
                    }
                };
                ctx.check(op.name(), r)?
            }
            Expression::Binary(op, a, b) => {
                let x = a.eval_in(ctx, u, v)?;
                let y = b.eval_in(ctx, u, v)?;
                let r = match op {
                    BinaryOp::Add => x + y,
                    BinaryOp::Sub => x - y,
                    BinaryOp::Mul => x * y,
                    BinaryOp::Div => {
                        if y.value() == zero {
                            return Err(ctx.domain("division"));
                        }
                        x / y
                    }
                };
                ctx.check("arithmetic", r)?
            }
            Expression::Pow(a, p) => {
                let x = a.eval_in(ctx, u, v)?;
                let r = if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
                    if *p < 0.0 && x.value() == zero {
                        return Err(ctx.domain("power"));
                    }
                    x.powi(*p as i32)
                } else {
                    if !(x.value() > zero) {
                        return Err(ctx.domain("power"));
                    }
                    x.powf(N::Scalar::of(*p))
                };
                ctx.check("power", r)?
            }
        })
    }
}
