//! Closed-form scalar functions of `t`: parsing, printing, symbolic
//! differentiation and evaluation.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' exponent)*
//! exponent:= '-'? integer | '(' '-'? integer ')'
//! primary := number | 't' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | tan | sinh | cosh | tanh | exp | log | sqrt | atan | artanh
//! ```

mod diff;
mod eval;
mod parse;
mod print;

use std::fmt;
use std::ops;
use std::sync::Arc;

use thiserror::Error;

pub use diff::diff_expr;
pub use eval::eval_expr;
pub use parse::parse_expr;

/// Errors raised while parsing or evaluating expressions.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExprError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("unknown identifier {name:?} at column {column}")]
    UnknownIdentifier { name: String, column: usize },

    #[error("exponent at column {column} is not an integer literal")]
    NonIntegerExponent { column: usize },

    #[error("domain error in {expr} at t = {t}: {reason}")]
    Domain { expr: String, t: f64, reason: String },
}

/// Elementary functions of the DSL.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Atan,
    Artanh,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Atan,
        Func::Artanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
            Func::Artanh => "artanh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Apply to a real, or explain why the argument is outside the domain.
    pub(crate) fn apply(self, x: f64) -> Result<f64, &'static str> {
        let y = match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
            Func::Exp => x.exp(),
            Func::Log if x <= 0.0 => return Err("log of a non-positive number"),
            Func::Log => x.ln(),
            Func::Sqrt if x < 0.0 => return Err("sqrt of a negative number"),
            Func::Sqrt => x.sqrt(),
            Func::Atan => x.atan(),
            Func::Artanh if x.abs() >= 1.0 => return Err("artanh argument outside (-1, 1)"),
            Func::Artanh => x.atanh(),
        };
        Ok(y)
    }
}

/// AST node. Children are shared, so trees produced by differentiation are DAGs.
#[derive(Debug, PartialEq)]
pub enum Node {
    Lit(f64),
    Var,
    Neg(Expr),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Pow(Expr, i32),
    Func(Func, Expr),
}

/// An immutable, cheaply clonable expression.
#[derive(Clone)]
pub struct Expr(Arc<Node>);

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl Expr {
    /// Wrap a node without any simplification.
    pub fn raw(node: Node) -> Expr {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub(crate) fn key(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    pub(crate) fn is_shared(&self) -> bool {
        Arc::strong_count(&self.0) > 1
    }

    pub fn lit(c: f64) -> Expr {
        Expr::raw(Node::Lit(c))
    }

    pub fn var() -> Expr {
        Expr::raw(Node::Var)
    }

    pub fn as_lit(&self) -> Option<f64> {
        match *self.0 {
            Node::Lit(c) => Some(c),
            _ => None,
        }
    }

    fn is_lit(&self, c: f64) -> bool {
        self.as_lit() == Some(c)
    }

    /// Number of distinct nodes in the DAG.
    pub fn node_count(&self) -> usize {
        fn walk(e: &Expr, seen: &mut std::collections::HashSet<*const Node>) {
            if !seen.insert(e.key()) {
                return;
            }
            match e.node() {
                Node::Lit(_) | Node::Var => {}
                Node::Neg(a) | Node::Pow(a, _) | Node::Func(_, a) => walk(a, seen),
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    walk(a, seen);
                    walk(b, seen)
                }
            }
        }
        let mut seen = Default::default();
        walk(self, &mut seen);
        seen.len()
    }

    pub fn neg(a: &Expr) -> Expr {
        match a.node() {
            Node::Lit(c) => Expr::lit(-c),
            Node::Neg(inner) => inner.clone(),
            _ => Expr::raw(Node::Neg(a.clone())),
        }
    }

    pub fn add(a: &Expr, b: &Expr) -> Expr {
        match (a.as_lit(), b.as_lit()) {
            (Some(x), Some(y)) => Expr::lit(x + y),
            (Some(x), _) if x == 0.0 => b.clone(),
            (_, Some(y)) if y == 0.0 => a.clone(),
            _ => Expr::raw(Node::Add(a.clone(), b.clone())),
        }
    }

    pub fn sub(a: &Expr, b: &Expr) -> Expr {
        match (a.as_lit(), b.as_lit()) {
            (Some(x), Some(y)) => Expr::lit(x - y),
            (Some(x), _) if x == 0.0 => Expr::neg(b),
            (_, Some(y)) if y == 0.0 => a.clone(),
            _ => Expr::raw(Node::Sub(a.clone(), b.clone())),
        }
    }

    pub fn mul(a: &Expr, b: &Expr) -> Expr {
        match (a.as_lit(), b.as_lit()) {
            (Some(x), Some(y)) => Expr::lit(x * y),
            (Some(x), _) | (_, Some(x)) if x == 0.0 => Expr::lit(0.0),
            (Some(x), _) if x == 1.0 => b.clone(),
            (_, Some(y)) if y == 1.0 => a.clone(),
            (Some(x), _) if x == -1.0 => Expr::neg(b),
            (_, Some(y)) if y == -1.0 => Expr::neg(a),
            _ => Expr::raw(Node::Mul(a.clone(), b.clone())),
        }
    }

    pub fn div(a: &Expr, b: &Expr) -> Expr {
        match (a.as_lit(), b.as_lit()) {
            (Some(x), Some(y)) if y != 0.0 => Expr::lit(x / y),
            (_, Some(y)) if y == 1.0 => a.clone(),
            (Some(x), _) if x == 0.0 && !b.is_lit(0.0) => Expr::lit(0.0),
            _ => Expr::raw(Node::Div(a.clone(), b.clone())),
        }
    }

    pub fn powi(a: &Expr, n: i32) -> Expr {
        match (a.as_lit(), n) {
            (_, 0) => Expr::lit(1.0),
            (_, 1) => a.clone(),
            (Some(x), _) if x != 0.0 || n > 0 => Expr::lit(x.powi(n)),
            _ => Expr::raw(Node::Pow(a.clone(), n)),
        }
    }

    pub fn func(f: Func, a: &Expr) -> Expr {
        if let Some(x) = a.as_lit() {
            if let Ok(y) = f.apply(x) {
                if y.is_finite() {
                    return Expr::lit(y);
                }
            }
        }
        Expr::raw(Node::Func(f, a.clone()))
    }

    pub fn diff(&self, order: usize) -> Expr {
        diff_expr(self, order)
    }

    pub fn eval(&self, t: f64) -> Result<f64, ExprError> {
        eval_expr(self, t)
    }
}

impl std::str::FromStr for Expr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Expr, ExprError> {
        parse_expr(s)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $ctor:ident) => {
        impl ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$ctor(&self, &rhs)
            }
        }
        impl ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                Expr::$ctor(self, rhs)
            }
        }
        impl ops::$tr<f64> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: f64) -> Expr {
                Expr::$ctor(self, &Expr::lit(rhs))
            }
        }
        impl ops::$tr<&Expr> for f64 {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                Expr::$ctor(&Expr::lit(self), rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}
