use std::collections::HashMap;

use super::{Expr, Func, Node};

struct Differ {
    memo: HashMap<*const Node, Expr>,
}

impl Differ {
    fn d(&mut self, e: &Expr) -> Expr {
        if let Some(hit) = self.memo.get(&e.key()) {
            return hit.clone();
        }
        let out = match e.node() {
            Node::Lit(_) => Expr::lit(0.0),
            Node::Var => Expr::lit(1.0),
            Node::Neg(a) => Expr::neg(&self.d(a)),
            Node::Add(a, b) => Expr::add(&self.d(a), &self.d(b)),
            Node::Sub(a, b) => Expr::sub(&self.d(a), &self.d(b)),
            Node::Mul(a, b) => {
                let (da, db) = (self.d(a), self.d(b));
                Expr::add(&Expr::mul(&da, b), &Expr::mul(a, &db))
            }
            Node::Div(a, b) => {
                let (da, db) = (self.d(a), self.d(b));
                if db.as_lit() == Some(0.0) {
                    Expr::div(&da, b)
                } else {
                    let num = Expr::sub(&Expr::mul(&da, b), &Expr::mul(a, &db));
                    Expr::div(&num, &Expr::powi(b, 2))
                }
            }
            Node::Pow(a, n) => {
                let da = self.d(a);
                let inner = Expr::mul(&Expr::lit(*n as f64), &Expr::powi(a, n - 1));
                Expr::mul(&inner, &da)
            }
            Node::Func(f, a) => {
                let da = self.d(a);
                if da.as_lit() == Some(0.0) {
                    Expr::lit(0.0)
                } else {
                    chain(*f, a, e, &da)
                }
            }
        };
        self.memo.insert(e.key(), out.clone());
        out
    }
}

/// d/dt f(a) given a' (`da`) and the node `fa` = f(a) itself.
fn chain(f: Func, a: &Expr, fa: &Expr, da: &Expr) -> Expr {
    let one = Expr::lit(1.0);
    match f {
        Func::Sin => Expr::mul(&Expr::func(Func::Cos, a), da),
        Func::Cos => Expr::neg(&Expr::mul(&Expr::func(Func::Sin, a), da)),
        Func::Tan => Expr::div(da, &Expr::powi(&Expr::func(Func::Cos, a), 2)),
        Func::Sinh => Expr::mul(&Expr::func(Func::Cosh, a), da),
        Func::Cosh => Expr::mul(&Expr::func(Func::Sinh, a), da),
        Func::Tanh => Expr::div(da, &Expr::powi(&Expr::func(Func::Cosh, a), 2)),
        Func::Exp => Expr::mul(fa, da),
        Func::Log => Expr::div(da, a),
        Func::Sqrt => Expr::div(da, &Expr::mul(&Expr::lit(2.0), fa)),
        Func::Atan => Expr::div(da, &Expr::add(&one, &Expr::powi(a, 2))),
        Func::Artanh => Expr::div(da, &Expr::sub(&one, &Expr::powi(a, 2))),
    }
}

/// The `order`-th derivative with respect to `t`. Order 0 returns the input.
pub fn diff_expr(e: &Expr, order: usize) -> Expr {
    let mut cur = e.clone();
    for _ in 0..order {
        cur = Differ { memo: HashMap::new() }.d(&cur);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;

    fn d_at(src: &str, order: usize, t: f64) -> f64 {
        diff_expr(&parse_expr(src).unwrap(), order).eval(t).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(d_at("t^3", 2, 2.0), 12.0);
        assert_eq!(d_at("sinh(t)", 1, 0.0), 1.0);
        assert!((d_at("cosh(t)", 1, 1.0) - 1f64.sinh()).abs() < 1e-15);
    }

    #[test]
    fn every_function_rule() {
        let cases: [(&str, fn(f64) -> f64); 11] = [
            ("sin(t)", |t| t.cos()),
            ("cos(t)", |t| -t.sin()),
            ("tan(t)", |t| 1.0 / t.cos().powi(2)),
            ("sinh(t)", |t| t.cosh()),
            ("cosh(t)", |t| t.sinh()),
            ("tanh(t)", |t| 1.0 / t.cosh().powi(2)),
            ("exp(t)", |t| t.exp()),
            ("log(t)", |t| 1.0 / t),
            ("sqrt(t)", |t| 0.5 / t.sqrt()),
            ("atan(t)", |t| 1.0 / (1.0 + t * t)),
            ("artanh(t)", |t| 1.0 / (1.0 - t * t)),
        ];
        for (src, exact) in cases {
            let t = 0.37;
            assert!((d_at(src, 1, t) - exact(t)).abs() < 1e-14, "{src}");
        }
    }

    #[test]
    fn constants_vanish() {
        let d = diff_expr(&parse_expr("sin(2)*3").unwrap(), 1);
        assert_eq!(d.as_lit(), Some(0.0));
    }

    #[test]
    fn quotient_and_power() {
        // d/dt 1/t = -1/t^2; d/dt t^-2 = -2 t^-3
        assert!((d_at("1/t", 1, 2.0) + 0.25).abs() < 1e-15);
        assert!((d_at("t^-2", 1, 2.0) + 0.25).abs() < 1e-15);
    }
}
