use super::{BinaryOp, Expression, NamedConst, UnaryOp, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Next token and its byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == '.' {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest.find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).unwrap_or(rest.len());
            self.pos += len;
            return Ok((Tok::Ident(rest[..len].to_string()), start));
        }
        self.pos += c.len_utf8();
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Syntax { offset: start, message: format!("unexpected character `{c}`") });
            }
        };
        Ok((tok, start))
    }

    fn number(&mut self, start: usize) -> Result<(Tok, usize)> {
        let b = self.src.as_bytes();
        let mut i = start;
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            *i - s
        };
        let mut n = digits(&mut i);
        if i < b.len() && b[i] == b'.' {
            i += 1;
            n += digits(&mut i);
        }
        if n == 0 {
            return Err(Error::Syntax { offset: start, message: "expected digits".into() });
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            // Only treat `e` as an exponent marker when digits follow; `2e`
            // alone is left for the parser to reject.
            if digits(&mut j) > 0 {
                i = j;
            }
        }
        let text = &self.src[start..i];
        let x: f64 = text
            .parse()
            .map_err(|_| Error::Syntax { offset: start, message: format!("malformed number `{text}`") })?;
        if !x.is_finite() {
            return Err(Error::Syntax { offset: start, message: format!("number `{text}` overflows") });
        }
        self.pos = i;
        Ok((Tok::Num(x), start))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (t, p) = self.lex.next()?;
        self.tok = t;
        self.at = p;
        Ok(())
    }

    fn fail<X>(&self, expected: &str) -> Result<X> {
        let found = match &self.tok {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        };
        Err(Error::Syntax { offset: self.at, message: format!("expected {expected}, found {found}") })
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Op('+') => BinaryOp::Add,
                Tok::Op('-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Expression::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.tok {
                Tok::Op('*') => BinaryOp::Mul,
                Tok::Op('/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.unary()?;
            lhs = Expression::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expression> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            return Ok(Expression::unary(UnaryOp::Neg, self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expression> {
        let mut base = self.primary()?;
        while self.tok == Tok::Op('^') {
            self.bump()?;
            let at = self.at;
            let e = self.exponent()?;
            if e.has_vars() {
                return Err(Error::Syntax { offset: at, message: "exponent must be constant".into() });
            }
            let p: f64 = e
                .eval(0.0, 0.0)
                .map_err(|_| Error::Syntax { offset: at, message: "exponent is not a finite number".into() })?;
            base = Expression::Pow(Box::new(base), p);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Expression> {
        match self.tok {
            Tok::Op('-') => {
                self.bump()?;
                Ok(Expression::unary(UnaryOp::Neg, self.exponent()?))
            }
            Tok::Op('+') => {
                self.bump()?;
                self.exponent()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expression> {
        match self.tok.clone() {
            Tok::Num(x) => {
                self.bump()?;
                Ok(Expression::Num(x))
            }
            Tok::LParen => {
                self.bump()?;
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                match name.as_str() {
                    "u" => return Ok(Expression::Var(Var::U)),
                    "v" => return Ok(Expression::Var(Var::V)),
                    "pi" => return Ok(Expression::Const(NamedConst::Pi)),
                    "e" => return Ok(Expression::Const(NamedConst::E)),
                    _ => {}
                }
                let Some(op) = UnaryOp::function(&name) else {
                    return Err(Error::UnknownIdentifier { name, offset: at });
                };
                if self.tok != Tok::LParen {
                    return self.fail("`(` after function name");
                }
                self.bump()?;
                let arg = self.expr()?;
                self.expect_rparen()?;
                Ok(Expression::unary(op, arg))
            }
            _ => self.fail("a number, variable, function or `(`"),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        if self.tok != Tok::RParen {
            return self.fail("`)`");
        }
        self.bump()
    }
}

/// Parse an expression in `u` and `v`.
pub fn parse(source: &str) -> Result<Expression> {
    let mut p = Parser { lex: Lexer { src: source, pos: 0 }, tok: Tok::End, at: 0 };
    p.bump()?;
    if p.tok == Tok::End {
        return Err(Error::Syntax { offset: 0, message: "empty expression".into() });
    }
    let e = p.expr()?;
    if p.tok != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}
