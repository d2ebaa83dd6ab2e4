use std::collections::HashMap;

use super::{Expr, ExprError, Node};

struct Evaluator {
    t: f64,
    cache: HashMap<*const Node, f64>,
}

fn domain(e: &Expr, t: f64, reason: &str) -> ExprError {
    let mut text = e.to_string();
    if text.chars().count() > 80 {
        text = text.chars().take(77).collect::<String>() + "...";
    }
    ExprError::Domain { expr: text, t, reason: reason.to_string() }
}

impl Evaluator {
    fn eval(&mut self, e: &Expr) -> Result<f64, ExprError> {
        let shared = e.is_shared();
        if shared {
            if let Some(v) = self.cache.get(&e.key()) {
                return Ok(*v);
            }
        }
        let v = match e.node() {
            Node::Lit(c) => *c,
            Node::Var => self.t,
            Node::Neg(a) => -self.eval(a)?,
            Node::Add(a, b) => self.eval(a)? + self.eval(b)?,
            Node::Sub(a, b) => self.eval(a)? - self.eval(b)?,
            Node::Mul(a, b) => self.eval(a)? * self.eval(b)?,
            Node::Div(a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                if den == 0.0 {
                    return Err(domain(e, self.t, "division by zero"));
                }
                num / den
            }
            Node::Pow(a, n) => {
                let x = self.eval(a)?;
                if x == 0.0 && *n < 0 {
                    return Err(domain(e, self.t, "division by zero"));
                }
                x.powi(*n)
            }
            Node::Func(f, a) => {
                let x = self.eval(a)?;
                f.apply(x).map_err(|r| domain(e, self.t, r))?
            }
        };
        if !v.is_finite() {
            return Err(domain(e, self.t, "non-finite result"));
        }
        if shared {
            self.cache.insert(e.key(), v);
        }
        Ok(v)
    }
}

/// Evaluate at `t`. Identical trees and inputs give bit-identical results.
pub fn eval_expr(e: &Expr, t: f64) -> Result<f64, ExprError> {
    Evaluator { t, cache: HashMap::new() }.eval(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;

    #[test]
    fn examples() {
        assert_eq!(eval_expr(&parse_expr("cosh(t)").unwrap(), 0.0), Ok(1.0));
        let err = eval_expr(&parse_expr("1/t").unwrap(), 0.0).unwrap_err();
        match err {
            ExprError::Domain { expr, .. } => assert_eq!(expr, "1/t"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn domain_errors() {
        for src in ["log(t)", "sqrt(t-1)", "artanh(t+1)", "t^(-1)", "exp(t+1000)"] {
            let e = parse_expr(src).unwrap();
            assert!(
                matches!(eval_expr(&e, 0.0), Err(ExprError::Domain { .. })),
                "{src}"
            );
        }
    }
}
