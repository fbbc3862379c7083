//! Closed-form scalar expressions in `u` and `v`.
//!
//! Grammar (EBNF):
//!
//! ```text
//! expr     = term , { ( "+" | "-" ) , term } ;
//! term     = unary , { ( "*" | "/" ) , unary } ;
//! unary    = "-" , unary | power ;
//! power    = primary , { "^" , exponent } ;
//! exponent = ( "-" | "+" ) , exponent | primary ;      (* must be constant *)
//! primary  = number | "u" | "v" | "pi" | "e"
//!          | func , "(" , expr , ")" | "(" , expr , ")" ;
//! func     = "sin" | "cos" | "sinh" | "cosh" | "tanh"
//!          | "exp" | "ln" | "sqrt" | "abs" ;
//! number   = digits , [ "." , [ digits ] ] , [ ( "e" | "E" ) , [ "+" | "-" ] , digits ]
//!          | "." , digits , [ ( "e" | "E" ) , [ "+" | "-" ] , digits ] ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-u^2` is `-(u^2)`, and chains fold
//! to the left. Exponents are folded to a number at parse time.

mod eval;
mod parser;

use std::fmt;

pub use eval::Jet3;
pub use parser::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedConst {
    Pi,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl UnaryOp {
    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Sinh => "sinh",
            UnaryOp::Cosh => "cosh",
            UnaryOp::Tanh => "tanh",
            UnaryOp::Exp => "exp",
            UnaryOp::Ln => "ln",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
        }
    }

    pub(crate) fn function(name: &str) -> Option<UnaryOp> {
        Some(match name {
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "sinh" => UnaryOp::Sinh,
            "cosh" => UnaryOp::Cosh,
            "tanh" => UnaryOp::Tanh,
            "exp" => UnaryOp::Exp,
            "ln" => UnaryOp::Ln,
            "sqrt" => UnaryOp::Sqrt,
            "abs" => UnaryOp::Abs,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
        }
    }
}

/// Expression tree. Literals produced by the parser are never negative;
/// negation is always an explicit node.
#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Num(f64),
    Var(Var),
    Const(NamedConst),
    Unary(UnaryOp, Box<Expression>),
    Binary(BinaryOp, Box<Expression>, Box<Expression>),
    /// Power with a constant exponent.
    Pow(Box<Expression>, f64),
}

impl Expression {
    pub fn num(x: f64) -> Self {
        if x < 0.0 {
            Expression::Unary(UnaryOp::Neg, Box::new(Expression::Num(-x)))
        } else {
            Expression::Num(x)
        }
    }

    pub fn unary(op: UnaryOp, a: Expression) -> Self {
        Expression::Unary(op, Box::new(a))
    }

    pub fn binary(op: BinaryOp, a: Expression, b: Expression) -> Self {
        Expression::Binary(op, Box::new(a), Box::new(b))
    }

    /// `factor * self`.
    pub fn scaled(&self, factor: f64) -> Self {
        Expression::binary(BinaryOp::Mul, Expression::num(factor), self.clone())
    }

    /// Replace `u` and `v` by the given expressions.
    pub fn substitute(&self, u: &Expression, v: &Expression) -> Expression {
        match self {
            Expression::Var(Var::U) => u.clone(),
            Expression::Var(Var::V) => v.clone(),
            Expression::Num(_) | Expression::Const(_) => self.clone(),
            Expression::Unary(op, a) => Expression::unary(*op, a.substitute(u, v)),
            Expression::Binary(op, a, b) => Expression::binary(*op, a.substitute(u, v), b.substitute(u, v)),
            Expression::Pow(a, p) => Expression::Pow(Box::new(a.substitute(u, v)), *p),
        }
    }

    /// True when the tree mentions `u` or `v`.
    pub fn has_vars(&self) -> bool {
        match self {
            Expression::Var(_) => true,
            Expression::Num(_) | Expression::Const(_) => false,
            Expression::Unary(_, a) | Expression::Pow(a, _) => a.has_vars(),
            Expression::Binary(_, a, b) => a.has_vars() || b.has_vars(),
        }
    }
}

fn write_num(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x < 0.0 {
        write!(f, "(-{:?})", -x)
    } else {
        write!(f, "{:?}", x)
    }
}

/// Fully parenthesized form; parsing it gives back the same tree.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Num(x) => write_num(f, *x),
            Expression::Var(Var::U) => f.write_str("u"),
            Expression::Var(Var::V) => f.write_str("v"),
            Expression::Const(NamedConst::Pi) => f.write_str("pi"),
            Expression::Const(NamedConst::E) => f.write_str("e"),
            Expression::Unary(UnaryOp::Neg, a) => write!(f, "(-{a})"),
            Expression::Unary(op, a) => write!(f, "{}({a})", op.name()),
            Expression::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expression::Pow(a, p) => {
                write!(f, "({a})^")?;
                write_num(f, *p)
            }
        }
    }
}
