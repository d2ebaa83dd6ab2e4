use std::fmt;

use super::{Expr, Node};

const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Add(..) | Node::Sub(..) => ADD,
        Node::Mul(..) | Node::Div(..) => MUL,
        Node::Neg(_) => NEG,
        Node::Lit(c) if c.is_sign_negative() => NEG,
        Node::Pow(..) => POW,
        Node::Lit(_) | Node::Var | Node::Func(..) => ATOM,
    }
}

fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Canonical printout. Parsing it yields a structurally identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Lit(c) => write!(f, "{c}"),
            Node::Var => f.write_str("t"),
            Node::Neg(a) => {
                f.write_str("-")?;
                // "-2" would read back as a negative literal.
                match a.node() {
                    Node::Lit(c) if !c.is_sign_negative() => write!(f, "({a})"),
                    _ => child(f, a, NEG),
                }
            }
            Node::Add(a, b) | Node::Sub(a, b) => {
                child(f, a, ADD)?;
                f.write_str(if matches!(self.node(), Node::Add(..)) { "+" } else { "-" })?;
                child(f, b, ADD + 1)
            }
            Node::Mul(a, b) | Node::Div(a, b) => {
                child(f, a, MUL)?;
                f.write_str(if matches!(self.node(), Node::Mul(..)) { "*" } else { "/" })?;
                child(f, b, MUL + 1)
            }
            Node::Pow(a, n) => {
                child(f, a, ATOM)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Node::Func(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
