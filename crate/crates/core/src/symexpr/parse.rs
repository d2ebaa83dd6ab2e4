use super::{Expr, ExprError, Func, Node};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64, String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, col });
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // Optional exponent part: e[+-]digits.
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value: f64 = text.parse().map_err(|_| ExprError::Syntax {
                column: col,
                message: format!("malformed number {text:?}"),
            })?;
            out.push(Lexed { tok: Tok::Num(value, text), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else {
            return Err(ExprError::Syntax {
                column: col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Lexed { tok: Tok::End, col: chars.len() + 1 });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn col(&self) -> usize {
        self.toks[self.pos].col
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { column: self.col(), message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ExprError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::raw(Node::Add(lhs, rhs));
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::raw(Node::Sub(lhs, rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Expr::raw(Node::Mul(lhs, rhs));
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Expr::raw(Node::Div(lhs, rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() != Tok::Minus {
            return self.power();
        }
        self.bump();
        // A minus sign directly on a bare number literal is part of the literal.
        if let Tok::Num(v, _) = *self.peek() {
            if self.toks[self.pos + 1].tok != Tok::Caret {
                self.bump();
                return Ok(Expr::lit(-v));
            }
        }
        let inner = self.unary()?;
        Ok(Expr::raw(Node::Neg(inner)))
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let n = self.exponent()?;
            base = Expr::raw(Node::Pow(base, n));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32, ExprError> {
        let col = self.col();
        let bad = ExprError::NonIntegerExponent { column: col };
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let value = match self.bump() {
            Tok::Num(v, _) => v,
            Tok::End => return self.syntax("expected exponent"),
            _ => return Err(bad),
        };
        if paren && *self.peek() != Tok::RParen {
            return Err(bad);
        }
        if paren {
            self.bump();
        }
        if value.fract() != 0.0 || value > i32::MAX as f64 {
            return Err(bad);
        }
        let n = value as i32;
        Ok(if negative { -n } else { n })
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.bump() {
            Tok::Num(v, _) => Ok(Expr::lit(v)),
            Tok::Ident(name) => {
                if name == "t" {
                    return Ok(Expr::var());
                }
                let Some(f) = Func::from_name(&name) else {
                    return Err(ExprError::UnknownIdentifier { name, column: col });
                };
                self.expect(Tok::LParen, &format!("'(' after {name}"))?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::raw(Node::Func(f, arg)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::End => Err(ExprError::Syntax {
                column: col,
                message: "unexpected end of input".into(),
            }),
            other => Err(ExprError::Syntax {
                column: col,
                message: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parse a DSL string into an expression tree. No simplification is applied.
pub fn parse_expr(source: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(source)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}
