//! Lexer, expression parser and problem-file reader.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{MultiPoly, RatFunc, Rational, TermOrder};
use crate::diff_ring::{AlgIndet, CoeffField, DerivativeIndex, DiffPoly, DiffRing};
use crate::dvariety::DSpec;
use crate::heights::OdePoly;

/// A syntax or well-formedness error at a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str, start: Pos) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let pos = |i: usize| Pos {
        line: start.line,
        col: start.col + i,
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let p = pos(i);
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            d if d.is_ascii_digit() => {
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                    return Err(ParseError::at(pos(i), "expected `*` between factors"));
                }
                let digits: String = chars[s..i].iter().collect();
                out.push((Tok::Num(digits.parse().expect("digits")), p));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let s = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[s..i].iter().collect()), p));
                continue;
            }
            other => return Err(ParseError::at(p, format!("unexpected character `{other}`"))),
        };
        out.push((tok, p));
        i += 1;
    }
    out.push((Tok::End, pos(chars.len())));
    Ok(out)
}

/// Parsed expression, evaluated later against a context.
#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Num(BigInt, Pos),
    Name(String, Pos),
    /// `d<k>^e*…*u<j>` as `(k, e)` pairs and `j`.
    Deriv(Vec<(usize, u32, Pos)>, usize, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Splits `prefix<digits>` identifiers such as `u12` or `d3`.
fn indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::at(self.pos(), format!("expected {want}, found {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let p = self.pos();
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), p);
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err(ParseError::at(self.pos(), "expected `*` between factors"));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let p = self.pos();
        match self.bump() {
            (Tok::Num(n), _) => n
                .to_u32()
                .ok_or_else(|| ParseError::at(p, format!("exponent {n} is too large"))),
            (t, _) => Err(ParseError::at(
                p,
                format!("malformed exponent: expected a non-negative integer, found {t}"),
            )),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            if *self.peek() == Tok::Caret {
                return Err(ParseError::at(self.pos(), "chained exponents need parentheses"));
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let p = self.pos();
        match self.bump() {
            (Tok::Num(n), _) => Ok(Expr::Num(n, p)),
            (Tok::LParen, _) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            (Tok::Ident(name), _) => {
                if let Some(k) = indexed(&name, 'd') {
                    return self.derivative(k, p);
                }
                Ok(Expr::Name(name, p))
            }
            (t, _) => Err(ParseError::at(p, format!("expected an expression, found {t}"))),
        }
    }

    /// After `d<k>`: `[^e] * (d<k>[^e] *)* u<j>`.
    fn derivative(&mut self, first: usize, start: Pos) -> Result<Expr, ParseError> {
        let mut ops = Vec::new();
        let mut k = first;
        let mut kp = start;
        loop {
            let e = if *self.peek() == Tok::Caret {
                self.bump();
                self.exponent()?
            } else {
                1
            };
            ops.push((k, e, kp));
            if *self.peek() != Tok::Star {
                return Err(ParseError::at(self.pos(), "a derivation must be applied to an indeterminate, as in d1*u1"));
            }
            self.bump();
            let p = self.pos();
            match self.bump() {
                (Tok::Ident(name), _) => {
                    if let Some(j) = indexed(&name, 'u') {
                        return Ok(Expr::Deriv(ops, j, start));
                    }
                    match indexed(&name, 'd') {
                        Some(next) => {
                            k = next;
                            kp = p;
                        }
                        None => {
                            return Err(ParseError::at(p, format!("expected d<k> or u<j> after a derivation, found `{name}`")))
                        }
                    }
                }
                (t, _) => return Err(ParseError::at(p, format!("expected d<k> or u<j> after a derivation, found {t}"))),
            }
        }
    }
}

fn parse_tokens(text: &str, start: Pos) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: lex(text, start)?,
        i: 0,
    })
}

/// Parses one expression; positions start at `start`.
pub fn parse_expr_at(text: &str, start: Pos) -> Result<Expr, ParseError> {
    let mut p = parse_tokens(text, start)?;
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::at(p.pos(), format!("unexpected {}", p.peek())));
    }
    Ok(e)
}

/// Parses a comma-separated list of expressions.
pub fn parse_list_at(text: &str, start: Pos) -> Result<Vec<Expr>, ParseError> {
    let mut p = parse_tokens(text, start)?;
    let mut out = vec![p.expr()?];
    while *p.peek() == Tok::Comma {
        p.bump();
        out.push(p.expr()?);
    }
    if *p.peek() != Tok::End {
        return Err(ParseError::at(p.pos(), format!("unexpected {}", p.peek())));
    }
    Ok(out)
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    parse_expr_at(text, Pos { line: 1, col: 1 })
}

fn expr_pos(e: &Expr) -> Pos {
    match e {
        Expr::Num(_, p) | Expr::Name(_, p) | Expr::Deriv(_, _, p) | Expr::Div(_, _, p) => *p,
        Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) | Expr::Neg(a) | Expr::Pow(a, _) => expr_pos(a),
    }
}

/// Evaluates to a rational function; `resolve` maps names to variable indices.
pub fn eval_ratfunc(e: &Expr, nvars: usize, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<RatFunc, ParseError> {
    Ok(match e {
        Expr::Num(n, _) => RatFunc::constant(nvars, Rational::from_integer(n.clone())),
        Expr::Name(name, p) => match resolve(name) {
            Some(i) => RatFunc::var(nvars, i),
            None => return Err(ParseError::at(*p, format!("unknown name `{name}`"))),
        },
        Expr::Deriv(_, _, p) => return Err(ParseError::at(*p, "derivative terms are not allowed here")),
        Expr::Add(a, b) => &eval_ratfunc(a, nvars, resolve)? + &eval_ratfunc(b, nvars, resolve)?,
        Expr::Sub(a, b) => &eval_ratfunc(a, nvars, resolve)? - &eval_ratfunc(b, nvars, resolve)?,
        Expr::Mul(a, b) => &eval_ratfunc(a, nvars, resolve)? * &eval_ratfunc(b, nvars, resolve)?,
        Expr::Div(a, b, p) => {
            let d = eval_ratfunc(b, nvars, resolve)?;
            eval_ratfunc(a, nvars, resolve)?
                .checked_div(&d)
                .map_err(|_| ParseError::at(*p, "division by zero"))?
        }
        Expr::Neg(a) => -&eval_ratfunc(a, nvars, resolve)?,
        Expr::Pow(a, k) => eval_ratfunc(a, nvars, resolve)?.pow(*k),
    })
}

/// Names `t1..ts`, with `t` accepted for `t1` when `s = 1`.
fn param_resolver(s: usize) -> impl Fn(&str) -> Option<usize> {
    move |name: &str| {
        if s == 1 && name == "t" {
            return Some(0);
        }
        indexed(name, 't').filter(|i| (1..=s).contains(i)).map(|i| i - 1)
    }
}

/// Context for differential polynomials.
pub struct DiffContext<'a> {
    pub ring: &'a Arc<DiffRing>,
    pub named: &'a [(String, DiffPoly)],
}

impl DiffContext<'_> {
    pub fn eval(&self, e: &Expr) -> Result<DiffPoly, ParseError> {
        let ring = self.ring;
        let (m, n, s) = (ring.m(), ring.n(), ring.field().params());
        Ok(match e {
            Expr::Num(v, _) => DiffPoly::constant(ring, Rational::from_integer(v.clone())),
            Expr::Name(name, p) => {
                if let Some(j) = indexed(name, 'u') {
                    check_index(j, n, "indeterminate index", "n", *p)?;
                    return Ok(DiffPoly::u(ring, j));
                }
                if let Some(i) = param_resolver(s)(name) {
                    return Ok(DiffPoly::coeff(ring, RatFunc::var(s, i)));
                }
                if let Some(i) = indexed(name, 't') {
                    return Err(ParseError::at(
                        *p,
                        format!("parameter t{i} is not declared (coeffs={})", ring.field().describe()),
                    ));
                }
                if let Some((_, f)) = self.named.iter().find(|(k, _)| k == name) {
                    return Ok(f.clone());
                }
                return Err(ParseError::at(*p, format!("unknown name `{name}`")));
            }
            Expr::Deriv(ops, j, p) => {
                let mut exps = vec![0u32; m];
                for (k, e, kp) in ops {
                    check_index(*k, m, "derivation index", "m", *kp)?;
                    exps[k - 1] += e;
                }
                check_index(*j, n, "indeterminate index", "n", *p)?;
                DiffPoly::indet(ring, AlgIndet::new(DerivativeIndex::new(exps), *j))
            }
            Expr::Add(a, b) => &self.eval(a)? + &self.eval(b)?,
            Expr::Sub(a, b) => &self.eval(a)? - &self.eval(b)?,
            Expr::Mul(a, b) => &self.eval(a)? * &self.eval(b)?,
            Expr::Div(a, b, p) => {
                let d = self.eval(b)?;
                let Some(c) = d.constant_value() else {
                    return Err(ParseError::at(expr_pos(b), "only coefficient-field elements may divide"));
                };
                let inv = c.inv().map_err(|_| ParseError::at(*p, "division by zero"))?;
                self.eval(a)?.scale(&inv)
            }
            Expr::Neg(a) => -&self.eval(a)?,
            Expr::Pow(a, k) => self.eval(a)?.pow(*k),
        })
    }
}

fn check_index(i: usize, bound: usize, what: &str, label: &str, p: Pos) -> Result<(), ParseError> {
    if i == 0 {
        return Err(ParseError::at(p, format!("{what} must be positive")));
    }
    if i > bound {
        return Err(ParseError::at(p, format!("{what} {i} exceeds {label}={bound}")));
    }
    Ok(())
}

/// Parses a differential polynomial in `ring`.
pub fn parse_diff_poly(text: &str, ring: &Arc<DiffRing>) -> Result<DiffPoly, ParseError> {
    DiffContext { ring, named: &[] }.eval(&parse_expr(text)?)
}

/// Canonical text of a differential polynomial; `parse_diff_poly` inverts it.
pub fn print_diff_poly(f: &DiffPoly) -> String {
    f.render()
}

/// Variable names of a D-spec in `n` variables: `x1..xn`, with `x, y, z`
/// accepted for the first three.
fn dspec_resolver(n: usize) -> impl Fn(&str) -> Option<usize> {
    move |name: &str| {
        let alias = match name {
            "x" => Some(1),
            "y" => Some(2),
            "z" => Some(3),
            _ => indexed(name, 'x'),
        };
        alias.filter(|i| (1..=n).contains(i)).map(|i| i - 1)
    }
}

fn eval_polynomial(e: &Expr, n: usize, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<MultiPoly, ParseError> {
    let r = eval_ratfunc(e, n, resolve)?;
    if !r.den().is_constant() {
        return Err(ParseError::at(expr_pos(e), "expected a polynomial"));
    }
    let c = r.den().as_constant().expect("constant");
    Ok(r.num().scale(&c.recip()).with_order(TermOrder::GrevLex))
}

/// Parses a rational function of `t` (or `t1..ts`).
pub fn parse_ratfunc_in_t(text: &str, s: usize) -> Result<RatFunc, ParseError> {
    let s = s.max(1);
    eval_ratfunc(&parse_expr(text)?, s, &param_resolver(s))
}

/// Variables of an equation `P(x, y, t)`: `x, y1..ys, t1..ts` with `y`, `t`
/// accepted when `s = 1`.
fn ode_resolver(s: usize) -> impl Fn(&str) -> Option<usize> {
    move |name: &str| {
        if name == "x" {
            return Some(0);
        }
        if s == 1 && name == "y" {
            return Some(1);
        }
        if s == 1 && name == "t" {
            return Some(2);
        }
        if let Some(k) = indexed(name, 'y').filter(|k| (1..=s).contains(k)) {
            return Some(k);
        }
        indexed(name, 't').filter(|k| (1..=s).contains(k)).map(|k| s + k)
    }
}

/// Parses `P(x, y, t)` into an equation over `Q(t_1..t_s)`.
pub fn parse_ode(text: &str, s: usize, start: Pos) -> Result<OdePoly, ParseError> {
    let s = s.max(1);
    let e = parse_expr_at(text, start)?;
    let r = eval_ratfunc(&e, 1 + 2 * s, &ode_resolver(s))?;
    OdePoly::from_ratfunc(&r, s).map_err(|err| ParseError::at(start, err.to_string()))
}

/// A problem file: header, named objects and queries.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: Arc<DiffRing>,
    pub polys: Vec<(String, DiffPoly)>,
    pub systems: Vec<(String, Vec<DiffPoly>)>,
    pub dspecs: Vec<(String, DSpec)>,
    pub odes: Vec<(String, OdePoly)>,
    pub queries: Vec<(String, String)>,
}

impl ProblemFile {
    pub fn m(&self) -> usize {
        self.ring.m()
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn system(&self, name: Option<&str>) -> Option<(&str, &[DiffPoly])> {
        match name {
            Some(n) => self.systems.iter().find(|(k, _)| k == n),
            None => self.systems.first(),
        }
        .map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn dspec(&self, name: Option<&str>) -> Option<(&str, &DSpec)> {
        match name {
            Some(n) => self.dspecs.iter().find(|(k, _)| k == n),
            None => self.dspecs.first(),
        }
        .map(|(k, v)| (k.as_str(), v))
    }

    pub fn ode(&self, name: Option<&str>) -> Option<(&str, &OdePoly)> {
        match name {
            Some(n) => self.odes.iter().find(|(k, _)| k == n),
            None => self.odes.first(),
        }
        .map(|(k, v)| (k.as_str(), v))
    }

    pub fn poly(&self, name: &str) -> Option<&DiffPoly> {
        self.polys.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    fn has_name(&self, name: &str) -> bool {
        self.polys.iter().any(|(k, _)| k == name)
            || self.systems.iter().any(|(k, _)| k == name)
            || self.dspecs.iter().any(|(k, _)| k == name)
            || self.odes.iter().any(|(k, _)| k == name)
            || self.queries.iter().any(|(k, _)| k == name)
    }
}

fn is_reserved(name: &str) -> bool {
    ["u", "d", "t", "x", "y"].iter().any(|p| indexed(name, p.chars().next().unwrap()).is_some())
        || matches!(name, "t" | "x" | "y" | "z" | "end" | "on")
}

fn valid_name(name: &str) -> bool {
    let mut cs = name.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One logical line: text without the comment, its number, and the column
/// of its first character.
struct Line<'a> {
    text: &'a str,
    number: usize,
}

impl<'a> Line<'a> {
    fn pos_of(&self, sub: &str) -> Pos {
        let offset = sub.as_ptr() as usize - self.text.as_ptr() as usize;
        Pos {
            line: self.number,
            col: self.text[..offset].chars().count() + 1,
        }
    }

    fn err(&self, sub: &str, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.pos_of(sub), msg)
    }
}

/// `keyword name = rest` with positions.
fn split_def<'a>(line: &Line<'a>, body: &'a str) -> Result<(&'a str, &'a str), ParseError> {
    let Some(eq) = body.find('=') else {
        return Err(line.err(body, "expected `<name> = <expression>`"));
    };
    let name = body[..eq].trim();
    let rest = &body[eq + 1..];
    let rest = rest.trim_start();
    if !valid_name(name) {
        return Err(line.err(body, format!("invalid name `{name}`")));
    }
    if is_reserved(name) {
        return Err(line.err(body, format!("`{name}` is a reserved name")));
    }
    Ok((name, rest))
}

fn parse_header(line: &Line<'_>) -> Result<(usize, usize, usize), ParseError> {
    let (mut m, mut n, mut s) = (None, None, None);
    for word in line.text.split_whitespace() {
        let Some((key, value)) = word.split_once('=') else {
            return Err(line.err(word, format!("expected key=value in the header, found `{word}`")));
        };
        let value_pos = &word[key.len() + 1..];
        match key {
            "m" | "n" => {
                let v: usize = value
                    .parse()
                    .ok()
                    .filter(|v| *v >= 1)
                    .ok_or_else(|| line.err(value_pos, format!("{key} must be a positive integer")))?;
                if key == "m" {
                    m = Some(v)
                } else {
                    n = Some(v)
                }
            }
            "coeffs" => s = Some(parse_coeffs(value).ok_or_else(|| line.err(value_pos, "coeffs must be Q or Q(t1..ts)"))?),
            _ => return Err(line.err(word, format!("unknown header key `{key}`"))),
        }
    }
    let m = m.ok_or_else(|| line.err(line.text, "header is missing m=<int>"))?;
    let n = n.ok_or_else(|| line.err(line.text, "header is missing n=<int>"))?;
    Ok((m, n, s.unwrap_or(0)))
}

/// `Q`, `Q(t)`, `Q(t1)`, `Q(t1,t2)`, `Q(t1..t3)`.
fn parse_coeffs(v: &str) -> Option<usize> {
    if v == "Q" {
        return Some(0);
    }
    let inner = v.strip_prefix("Q(")?.strip_suffix(')')?;
    if inner == "t" {
        return Some(1);
    }
    if let Some((a, b)) = inner.split_once("..") {
        let (a, b) = (indexed(a, 't')?, indexed(b, 't')?);
        return (a == 1 && b >= 1).then_some(b);
    }
    let parts: Vec<usize> = inner.split(',').map(|p| indexed(p.trim(), 't')).collect::<Option<_>>()?;
    parts.iter().enumerate().all(|(i, &p)| p == i + 1).then_some(parts.len())
}

/// Reads a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let lines: Vec<Line<'_>> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| Line {
            text: raw.split('#').next().unwrap_or(""),
            number: i + 1,
        })
        .collect();
    let mut iter = lines.iter().filter(|l| !l.text.trim().is_empty());
    let Some(header) = iter.next() else {
        return Err(ParseError {
            line: 1,
            col: 1,
            message: "missing header `m=<int> n=<int> coeffs=...`".into(),
        });
    };
    let (m, n, s) = parse_header(header)?;
    let mut actions = vec![vec![RatFunc::zero(s); s]; m];
    let mut pf = ProblemFile {
        ring: DiffRing::new(m, n, CoeffField::rationals()),
        polys: Vec::new(),
        systems: Vec::new(),
        dspecs: Vec::new(),
        odes: Vec::new(),
        queries: Vec::new(),
    };
    let mut ring_fixed = false;
    let fix_ring = |pf: &mut ProblemFile, actions: &[Vec<RatFunc>], fixed: &mut bool| {
        if !*fixed {
            let field = if s == 0 {
                CoeffField::rationals()
            } else {
                CoeffField::rational_functions(s, m, actions.to_vec()).expect("validated actions")
            };
            pf.ring = DiffRing::new(m, n, field);
            *fixed = true;
        }
    };
    while let Some(line) = iter.next() {
        let body = line.text.trim();
        let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim_start();
        match kw {
            "action" => {
                if ring_fixed {
                    return Err(line.err(body, "action lines must precede all other statements"));
                }
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| line.err(rest, "expected `action d<k> t<i> = <expr>`"))?;
                let words: Vec<&str> = lhs.split_whitespace().collect();
                let (Some(k), Some(i)) = (
                    words.first().and_then(|w| indexed(w, 'd')),
                    words.get(1).and_then(|w| param_resolver(s)(w)),
                ) else {
                    return Err(line.err(rest, "expected `action d<k> t<i> = <expr>` with a declared t<i>"));
                };
                if words.len() != 2 {
                    return Err(line.err(rest, "expected `action d<k> t<i> = <expr>`"));
                }
                check_index(k, m, "derivation index", "m", line.pos_of(rest))?;
                let rhs = rhs.trim_start();
                let e = parse_expr_at(rhs, line.pos_of(rhs))?;
                actions[k - 1][i] = eval_ratfunc(&e, s, &param_resolver(s))?;
            }
            "poly" => {
                fix_ring(&mut pf, &actions, &mut ring_fixed);
                let (name, expr) = split_def(line, rest)?;
                if pf.has_name(name) {
                    return Err(line.err(rest, format!("duplicate name `{name}`")));
                }
                let e = parse_expr_at(expr, line.pos_of(expr))?;
                let f = DiffContext {
                    ring: &pf.ring,
                    named: &pf.polys,
                }
                .eval(&e)?;
                pf.polys.push((name.to_string(), f));
            }
            "system" => {
                fix_ring(&mut pf, &actions, &mut ring_fixed);
                let (name, list) = split_def(line, rest)?;
                if pf.has_name(name) {
                    return Err(line.err(rest, format!("duplicate name `{name}`")));
                }
                let ctx = DiffContext {
                    ring: &pf.ring,
                    named: &pf.polys,
                };
                let items = parse_list_at(list, line.pos_of(list))?
                    .iter()
                    .map(|e| ctx.eval(e))
                    .collect::<Result<Vec<_>, _>>()?;
                pf.systems.push((name.to_string(), items));
            }
            "ode" => {
                fix_ring(&mut pf, &actions, &mut ring_fixed);
                let (name, expr) = split_def(line, rest)?;
                if pf.has_name(name) {
                    return Err(line.err(rest, format!("duplicate name `{name}`")));
                }
                let ode = parse_ode(expr, s, line.pos_of(expr))?;
                pf.odes.push((name.to_string(), ode));
            }
            "query" => {
                fix_ring(&mut pf, &actions, &mut ring_fixed);
                let (name, cmd) = split_def(line, rest)?;
                if pf.has_name(name) {
                    return Err(line.err(rest, format!("duplicate name `{name}`")));
                }
                if cmd.trim().is_empty() {
                    return Err(line.err(rest, "empty query"));
                }
                pf.queries.push((name.to_string(), cmd.trim().to_string()));
            }
            "dspec" => {
                fix_ring(&mut pf, &actions, &mut ring_fixed);
                let spec = parse_dspec_block(line, rest, &mut iter)?;
                if pf.has_name(&spec.0) {
                    return Err(line.err(rest, format!("duplicate name `{}`", spec.0)));
                }
                pf.dspecs.push(spec);
            }
            _ => return Err(line.err(body, format!("unknown statement `{kw}`"))),
        }
    }
    fix_ring(&mut pf, &actions, &mut ring_fixed);
    Ok(pf)
}

fn parse_dspec_block<'a, 'b, I>(head: &Line<'a>, rest: &'a str, iter: &mut I) -> Result<(String, DSpec), ParseError>
where
    I: Iterator<Item = &'b Line<'b>>,
    'a: 'b,
{
    let mut words = rest.split_whitespace();
    let name = words.next().ok_or_else(|| head.err(rest, "expected `dspec <name> n=<int> [m=<int>]`"))?;
    if !valid_name(name) || is_reserved(name) {
        return Err(head.err(name, format!("invalid name `{name}`")));
    }
    let (mut n, mut m) = (None, None);
    for w in words {
        let parsed = w.split_once('=').and_then(|(k, v)| Some((k, v.parse::<usize>().ok().filter(|v| *v >= 1)?)));
        match parsed {
            Some(("n", v)) => n = Some(v),
            Some(("m", v)) => m = Some(v),
            _ => return Err(head.err(w, format!("expected n=<int> or m=<int>, found `{w}`"))),
        }
    }
    let n = n.ok_or_else(|| head.err(rest, "dspec needs n=<int>"))?;
    let resolve = dspec_resolver(n);
    let mut entries: Vec<(usize, usize, MultiPoly, Pos)> = Vec::new();
    let mut ideal = Vec::new();
    loop {
        let Some(line) = iter.next() else {
            return Err(head.err(rest, format!("dspec `{name}` is missing `end`")));
        };
        let body = line.text.trim();
        if body == "end" {
            break;
        }
        if let Some(expr) = body.strip_prefix("on ") {
            let expr = expr.trim_start();
            let e = parse_expr_at(expr, line.pos_of(expr))?;
            ideal.push(eval_polynomial(&e, n, &resolve)?);
            continue;
        }
        let (lhs, rhs) = body
            .split_once('=')
            .ok_or_else(|| line.err(body, "expected `d<k> <variable> = <expr>`, `on <expr>` or `end`"))?;
        let words: Vec<&str> = lhs.split_whitespace().collect();
        let k = words.first().and_then(|w| indexed(w, 'd'));
        let j = words.get(1).and_then(|w| resolve(w));
        let (Some(k), Some(j), 2) = (k, j, words.len()) else {
            return Err(line.err(body, format!("expected `d<k> <variable> = <expr>` with a variable among {}", n_names(n))));
        };
        if k == 0 {
            return Err(line.err(body, "derivation index must be positive"));
        }
        if let Some(mm) = m {
            check_index(k, mm, "derivation index", "m", line.pos_of(body))?;
        }
        let rhs = rhs.trim_start();
        let e = parse_expr_at(rhs, line.pos_of(rhs))?;
        let p = eval_polynomial(&e, n, &resolve)?;
        if entries.iter().any(|(kk, jj, _, _)| *kk == k && *jj == j) {
            return Err(line.err(body, "component defined twice"));
        }
        entries.push((k, j, p, line.pos_of(body)));
    }
    let m = m.unwrap_or_else(|| entries.iter().map(|(k, _, _, _)| *k).max().unwrap_or(1));
    let mut fields = vec![vec![MultiPoly::zero(n, TermOrder::GrevLex); n]; m];
    for (k, j, p, _) in entries {
        fields[k - 1][j] = p;
    }
    let spec = DSpec::new(n, fields, ideal).map_err(|e| head.err(rest, e.to_string()))?;
    Ok((name.to_string(), spec))
}

fn n_names(n: usize) -> String {
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend(["x", "y", "z"].iter().take(n.min(3)).map(|s| s.to_string()));
    names.join(", ")
}

/// Canonical text of a D-spec block.
pub fn print_dspec(name: &str, spec: &DSpec) -> String {
    let names = spec.var_names();
    let mut out = format!("dspec {name} n={} m={}\n", spec.n(), spec.m());
    for k in 1..=spec.m() {
        for j in 1..=spec.n() {
            let p = spec.field(k, j);
            if !p.is_zero() {
                out.push_str(&format!("  d{k} {} = {}\n", names[j - 1], p.render(&names)));
            }
        }
    }
    for g in spec.ideal() {
        out.push_str(&format!("  on {}\n", g.render(&names)));
    }
    out.push_str("end\n");
    out
}

/// Integer literal check used by argument parsing.
pub fn parse_count(s: &str) -> Option<u32> {
    s.parse::<BigInt>().ok().filter(|v| !v.is_zero() || s == "0").and_then(|v| v.to_u32())
}
