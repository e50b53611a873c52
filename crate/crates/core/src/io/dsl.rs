//! Text format for Poisson structures.
//!
//! ```text
//! coords(t, x1, x2, x3)
//! x1*dx2^dx3 + x2*dx1^dx3 - x3*dx1^dx2
//! ```
//!
//! Optional `weights(1,1,2,...)` and `volume(p/q)` clauses may follow the
//! coordinate list. `#` starts a comment.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Polynomial, Scalar, WeightVector};
use crate::error::{Error, Result};
use crate::multivec::{Multivector, VolumeForm};
use crate::poisson::PoissonStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if c == '#' {
            while k < chars.len() && chars[k] != '\n' {
                k += 1;
            }
            continue;
        }
        let start = k;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            Tok::Ident(chars[start..k].iter().collect())
        } else if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            if k < chars.len() && chars[k] == '.' {
                return Err(Error::Parse {
                    line: l0,
                    column: col + (k - start),
                    token: ".".into(),
                    message: "floating-point literals are not accepted; use p/q".into(),
                });
            }
            Tok::Int(s.parse().expect("digits"))
        } else {
            k += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                _ => {
                    return Err(Error::Parse {
                        line: l0,
                        column: c0,
                        token: c.to_string(),
                        message: "unexpected character".into(),
                    })
                }
            }
        };
        col += k - start;
        out.push(Token { tok, text: chars[start..k].iter().collect(), line: l0, column: c0 });
    }
    out.push(Token { tok: Tok::Eof, text: "<end of input>".into(), line, column: col });
    Ok(out)
}

/// Expression tree with source positions.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Number(Scalar),
    Coord(usize),
    /// d{a}^d{b}
    Basis(usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Parsed declaration: coordinates, optional weights and volume, bivector tree.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureDoc {
    pub coords: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub volume: Option<Scalar>,
    pub expr: Expr,
}

enum Value {
    Poly(Polynomial),
    Biv(Multivector),
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    coords: &'a [String],
}

fn err(t: &Token, message: impl Into<String>) -> Error {
    Error::Parse { line: t.line, column: t.column, token: t.text.clone(), message: message.into() }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok != tok {
            return Err(err(&t, format!("expected {what}")));
        }
        Ok(t)
    }

    fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    /// `dX` with X a declared coordinate.
    fn basis_name(&self, t: &Token) -> Option<usize> {
        match &t.tok {
            Tok::Ident(s) => s.strip_prefix('d').and_then(|rest| self.coord_index(rest)),
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            let t = self.peek().clone();
            let make = match t.tok {
                Tok::Plus => ExprKind::Add as fn(Box<Expr>, Box<Expr>) -> ExprKind,
                Tok::Minus => ExprKind::Sub,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.product()?;
            lhs = Expr { kind: make(Box::new(lhs), Box::new(rhs)), line: t.line, column: t.column };
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            let t = self.next();
            let rhs = self.unary()?;
            lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), line: t.line, column: t.column };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            let t = self.next();
            let inner = self.unary()?;
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), line: t.line, column: t.column });
        }
        if self.peek().tok == Tok::Plus {
            self.next();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            let caret = self.next();
            let t = self.next();
            let Tok::Int(e) = &t.tok else {
                return Err(err(&t, "expected a non-negative integer exponent"));
            };
            let e: u32 = e.try_into().map_err(|_| err(&t, "exponent too large"))?;
            return Ok(Expr { kind: ExprKind::Pow(Box::new(base), e), line: caret.line, column: caret.column });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        let at = |kind| Expr { kind, line: t.line, column: t.column };
        match &t.tok {
            Tok::Int(n) => {
                if self.peek().tok == Tok::Slash {
                    self.next();
                    let d = self.next();
                    let Tok::Int(den) = &d.tok else {
                        return Err(err(&d, "expected an integer denominator"));
                    };
                    if den.is_zero() {
                        return Err(err(&d, "zero denominator"));
                    }
                    return Ok(at(ExprKind::Number(Scalar::new(n.clone(), den.clone()))));
                }
                Ok(at(ExprKind::Number(Scalar::from_integer(n.clone()))))
            }
            Tok::Ident(name) => {
                if let Some(a) = self.basis_name(&t) {
                    let second = self.peek_at(1).clone();
                    let is_coord = self.coord_index(name).is_some();
                    if self.peek().tok == Tok::Caret && (!is_coord || self.basis_name(&second).is_some()) {
                        let caret = self.next();
                        let Some(b) = self.basis_name(&second) else {
                            return Err(err(&caret, "malformed basis: expected d<coordinate> after ^"));
                        };
                        self.next();
                        return Ok(at(ExprKind::Basis(a, b)));
                    }
                }
                match self.coord_index(name) {
                    Some(i) => Ok(at(ExprKind::Coord(i))),
                    None if self.basis_name(&t).is_some() => {
                        Err(err(&t, "malformed basis: expected ^d<coordinate>"))
                    }
                    None => Err(err(&t, format!("unknown identifier `{name}`"))),
                }
            }
            Tok::LParen => {
                let inner = self.sum()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(err(&t, "unbalanced parentheses"));
                }
                Ok(inner)
            }
            Tok::RParen => Err(err(&t, "unbalanced parentheses")),
            Tok::Eof => Err(err(&t, "unexpected end of input")),
            _ => Err(err(&t, "expected a term")),
        }
    }
}

fn int_list(p: &mut Parser, what: &str) -> Result<Vec<(BigInt, Token)>> {
    p.expect(Tok::LParen, "`(`")?;
    let mut out = Vec::new();
    loop {
        let t = p.next();
        let Tok::Int(v) = &t.tok else {
            return Err(err(&t, format!("expected an integer in {what}")));
        };
        out.push((v.clone(), t.clone()));
        let sep = p.next();
        match sep.tok {
            Tok::Comma => continue,
            Tok::RParen => return Ok(out),
            _ => return Err(err(&sep, "expected `,` or `)`")),
        }
    }
}

pub fn parse_structure(text: &str) -> Result<StructureDoc> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, coords: &[] };
    let head = p.next();
    if head.tok != Tok::Ident("coords".into()) {
        return Err(err(&head, "expected `coords(...)`"));
    }
    p.expect(Tok::LParen, "`(`")?;
    let mut coords = Vec::new();
    loop {
        let t = p.next();
        let Tok::Ident(name) = &t.tok else {
            return Err(err(&t, "expected a coordinate name"));
        };
        if coords.contains(name) {
            return Err(err(&t, "duplicate coordinate"));
        }
        coords.push(name.clone());
        let sep = p.next();
        match sep.tok {
            Tok::Comma => continue,
            Tok::RParen => break,
            _ => return Err(err(&sep, "expected `,` or `)`")),
        }
    }
    let mut weights = None;
    let mut volume = None;
    loop {
        let t = p.peek().clone();
        let is_clause = |kw: &str| t.tok == Tok::Ident(kw.into()) && p.peek_at(1).tok == Tok::LParen;
        if weights.is_none() && is_clause("weights") {
            p.next();
            let list = int_list(&mut p, "weights")?;
            if list.len() != coords.len() {
                return Err(err(&t, "one weight per coordinate required"));
            }
            let mut w = Vec::new();
            for (v, tok) in list {
                match u32::try_from(&v) {
                    Ok(x) if x > 0 => w.push(x),
                    _ => return Err(err(&tok, "weights must be positive integers")),
                }
            }
            weights = Some(w);
        } else if volume.is_none() && is_clause("volume") {
            p.next();
            p.expect(Tok::LParen, "`(`")?;
            let n = p.next();
            let Tok::Int(num) = &n.tok else {
                return Err(err(&n, "expected a positive rational"));
            };
            let mut val = Scalar::from_integer(num.clone());
            if p.peek().tok == Tok::Slash {
                p.next();
                let d = p.next();
                match &d.tok {
                    Tok::Int(den) if !den.is_zero() => val /= Scalar::from_integer(den.clone()),
                    _ => return Err(err(&d, "expected a nonzero integer denominator")),
                }
            }
            if val.is_zero() {
                return Err(err(&n, "volume scale must be positive"));
            }
            p.expect(Tok::RParen, "`)`")?;
            volume = Some(val);
        } else {
            break;
        }
    }
    let coords_ref = coords.clone();
    p.coords = &coords_ref;
    let expr = p.sum()?;
    let end = p.peek().clone();
    if end.tok != Tok::Eof {
        let msg = if end.tok == Tok::RParen { "unbalanced parentheses" } else { "unexpected token" };
        return Err(err(&end, msg));
    }
    let doc = StructureDoc { coords, weights, volume, expr };
    doc.bivector()?;
    Ok(doc)
}

fn eval(e: &Expr, n: usize) -> Result<Value> {
    let type_err = |msg: &str| Error::Parse {
        line: e.line,
        column: e.column,
        token: String::new(),
        message: msg.to_string(),
    };
    Ok(match &e.kind {
        ExprKind::Number(c) => Value::Poly(Polynomial::constant(n, c.clone())),
        ExprKind::Coord(i) => Value::Poly(Polynomial::var(n, *i)),
        ExprKind::Basis(a, b) => {
            if a == b {
                Value::Biv(Multivector::zero(n, 2))
            } else {
                Value::Biv(Multivector::basis(n, &[*a, *b]))
            }
        }
        ExprKind::Neg(x) => match eval(x, n)? {
            Value::Poly(p) => Value::Poly(-p),
            Value::Biv(b) => Value::Biv(b.neg()),
        },
        ExprKind::Add(x, y) | ExprKind::Sub(x, y) => {
            let sign = if matches!(e.kind, ExprKind::Add(..)) { Scalar::one() } else { -Scalar::one() };
            match (eval(x, n)?, eval(y, n)?) {
                (Value::Poly(a), Value::Poly(b)) => {
                    let mut a = a;
                    a.add_scaled(&b, &sign);
                    Value::Poly(a)
                }
                (Value::Biv(a), Value::Biv(b)) => Value::Biv(a.add(&b.scale(&sign))),
                (Value::Poly(a), Value::Biv(b)) if a.is_zero() => Value::Biv(b.scale(&sign)),
                (Value::Biv(a), Value::Poly(b)) if b.is_zero() => Value::Biv(a),
                _ => return Err(type_err("cannot add a function and a bivector")),
            }
        }
        ExprKind::Mul(x, y) => match (eval(x, n)?, eval(y, n)?) {
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(&a * &b),
            (Value::Poly(a), Value::Biv(b)) | (Value::Biv(b), Value::Poly(a)) => Value::Biv(b.mul_poly(&a)),
            (Value::Biv(_), Value::Biv(_)) => return Err(type_err("product of two bivector terms")),
        },
        ExprKind::Pow(x, k) => match eval(x, n)? {
            Value::Poly(p) => Value::Poly(p.pow(*k)),
            Value::Biv(_) => return Err(type_err("power of a bivector term")),
        },
    })
}

impl StructureDoc {
    pub fn bivector(&self) -> Result<Multivector> {
        let n = self.coords.len();
        match eval(&self.expr, n)? {
            Value::Biv(b) => Ok(b),
            Value::Poly(p) if p.is_zero() => Ok(Multivector::zero(n, 2)),
            Value::Poly(_) => Err(Error::Parse {
                line: self.expr.line,
                column: self.expr.column,
                token: String::new(),
                message: "expected a bivector expression".into(),
            }),
        }
    }

    /// Unvalidated structure.
    pub fn to_structure(&self) -> Result<PoissonStructure> {
        let mut s = PoissonStructure::new(self.coords.clone(), self.bivector()?)?;
        if let Some(w) = &self.weights {
            s = s.with_weights(WeightVector::new(w.clone())?)?;
        }
        if let Some(v) = &self.volume {
            s = s.with_volume(VolumeForm::new(v.clone())?);
        }
        Ok(s)
    }
}

/// Polynomial over the given coordinate names.
pub fn parse_polynomial(text: &str, coords: &[String]) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, coords };
    let expr = p.sum()?;
    let end = p.peek().clone();
    if end.tok != Tok::Eof {
        return Err(err(&end, "unexpected token"));
    }
    match eval(&expr, coords.len())? {
        Value::Poly(q) => Ok(q),
        Value::Biv(_) => Err(err(&end, "expected a polynomial")),
    }
}

/// Text that parses back to the same structure.
pub fn print_structure(s: &PoissonStructure) -> String {
    let mut out = format!("coords({})\n", s.names().join(", "));
    if !s.weights().is_standard() {
        let w: Vec<String> = s.weights().as_slice().iter().map(|w| w.to_string()).collect();
        out.push_str(&format!("weights({})\n", w.join(", ")));
    }
    if !s.volume().scale().is_one() {
        out.push_str(&format!("volume({})\n", s.volume().scale()));
    }
    out.push_str(&s.bivector().format_with(s.names()));
    out.push('\n');
    out
}
