//! Recursive-descent parser for the ideal expression language.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' '-'? int)?
//! atom    := int | 'X' | 'T' | 'M' | 'K' | '(' sum ')'
//!          | 'sqrt' '(' '-'? int ')'
//!          | ('ideal' | 'dideal') '(' sum (',' sum)* ')'
//!          | 'star' '(' op ',' sum ')'
//!          | func '(' sum ')'
//! op      := name ('(' op (',' op)? ')')?
//! ```
//!
//! `+` and `*` act on scalars and on ideals alike; which one is meant is
//! decided at evaluation time.

use std::fmt;

use num_bigint::BigInt;

/// Nesting bound; keeps adversarial inputs from exhausting the stack.
const MAX_DEPTH: usize = 200;

pub const FUNCTIONS: [&str; 10] = ["v", "t", "colon", "inv", "extT", "alpha", "beta", "gamma", "principal", "hull"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Sqrt(BigInt),
    X,
    /// `T` as an ideal of `R`.
    TRing,
    /// The conductor `M`.
    MIdeal,
    /// `k`, as a `D`-module.
    KField,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Ideal(Vec<Expr>),
    DIdeal(Vec<Expr>),
    Call(String, Box<Expr>),
    /// A star operation by its textual name, applied to an expression.
    Star(String, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, depth: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { offset: self.pos, message: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = match self.peek() {
                Some(b) if b.is_ascii_graphic() => format!("'{}'", b as char),
                Some(_) => "a non-ASCII character".into(),
                None => "end of input".into(),
            };
            Err(self.err(format!("expected '{}', found {found}", c as char)))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("expression nested too deeply"));
        }
        Ok(())
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.product()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            self.enter()?;
            let e = Expr::Neg(Box::new(self.unary()?));
            self.depth -= 1;
            return Ok(e);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let start = self.pos;
            let n = self.integer()?;
            let n: i64 = n.try_into().map_err(|_| ParseError { offset: start, message: "exponent too large".into() })?;
            return Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ASCII digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn list(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect(b'(')?;
        let mut items = vec![self.sum()?];
        while self.eat(b',') {
            items.push(self.sum()?);
        }
        self.expect(b')')?;
        Ok(items)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        if c.is_ascii_digit() {
            return Ok(Expr::Int(self.integer()?));
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.sum()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if !c.is_ascii_alphabetic() {
            return Err(self.err(if c.is_ascii_graphic() {
                format!("unexpected '{}'", c as char)
            } else {
                "unexpected character".into()
            }));
        }
        let start = self.pos;
        let name = self.ident();
        match name.as_str() {
            "X" => Ok(Expr::X),
            "T" => Ok(Expr::TRing),
            "M" => Ok(Expr::MIdeal),
            "K" => Ok(Expr::KField),
            "sqrt" => {
                self.expect(b'(')?;
                let neg = self.eat(b'-');
                let n = self.integer()?;
                self.expect(b')')?;
                Ok(Expr::Sqrt(if neg { -n } else { n }))
            }
            "ideal" => Ok(Expr::Ideal(self.list()?)),
            "dideal" => Ok(Expr::DIdeal(self.list()?)),
            "star" => {
                self.expect(b'(')?;
                self.skip_ws();
                let op_start = self.pos;
                self.op(0)?;
                let op = String::from_utf8_lossy(&self.s[op_start..self.pos]).trim().to_string();
                self.expect(b',')?;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(Expr::Star(op, Box::new(e)))
            }
            f if FUNCTIONS.contains(&f) => {
                let pos = self.pos;
                let mut args = self.list()?;
                if args.len() != 1 {
                    return Err(ParseError { offset: pos, message: format!("{f} takes 1 argument, got {}", args.len()) });
                }
                Ok(Expr::Call(f.to_string(), Box::new(args.remove(0))))
            }
            other => Err(ParseError { offset: start, message: format!("unknown name '{other}'") }),
        }
    }

    /// Skips over a star-operation term, checking only its shape; names are
    /// resolved at evaluation time, when the side is known.
    fn op(&mut self, depth: usize) -> Result<(), ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.err("operation nested too deeply"));
        }
        self.skip_ws();
        if self.ident().is_empty() {
            return Err(self.err("expected a star operation name"));
        }
        if self.eat(b'(') {
            self.op(depth + 1)?;
            if self.eat(b',') {
                self.op(depth + 1)?;
            }
            self.expect(b')')?;
        }
        Ok(())
    }
}
