//! Expression parser.
//!
//! ```text
//! expr    = term { ("+" | "-") term }
//! term    = unary { ("*" | "/") unary }
//! unary   = "-" unary | power
//! power   = atom [ "^" exponent ]
//! exponent= ["-"] integer | "(" ["-"] integer ")"
//! atom    = integer | "x" digits | "(" expr ")"
//! ```
//!
//! Division and negative powers need a divisor of the form `c · X^m · Π (1 + X^a)^e`.
//! The factored form is tracked through products and powers; otherwise it is recovered
//! from the expanded polynomial when that is a single binomial power times a monomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ParseError;
use crate::algebra::{BinomialRationalFn, ExponentVector, LaurentPoly, Rational};

/// A parsed expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Laurent(LaurentPoly),
    Rational(BinomialRationalFn),
}

impl Parsed {
    pub fn into_fn(self) -> BinomialRationalFn {
        match self {
            Parsed::Laurent(l) => l.into(),
            Parsed::Rational(f) => f,
        }
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        match self {
            Parsed::Laurent(l) => Some(l),
            Parsed::Rational(_) => None,
        }
    }
}

/// Parses `text` over `x1..x_rank`. Variables beyond `rank` are an error.
pub fn parse_expression(text: &str, rank: usize) -> Result<Parsed, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, rank, len: text.chars().count() };
    let v = p.expr()?;
    if let Some(t) = p.tokens.get(p.pos) {
        return Err(ParseError::new(t.at, format!("unexpected {}", t.kind.describe())));
    }
    let f = v.f;
    Ok(match f.as_laurent() {
        Ok(l) => Parsed::Laurent(l),
        Err(_) => Parsed::Rational(f),
    })
}

/// Parses an expression that must be a Laurent polynomial.
pub fn parse_laurent(text: &str, rank: usize) -> Result<LaurentPoly, ParseError> {
    match parse_expression(text, rank)? {
        Parsed::Laurent(l) => Ok(l),
        Parsed::Rational(f) => Err(ParseError::new(0, format!("not a Laurent polynomial: {f}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Int(BigInt),
    Var(usize),
    Op(char),
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Int(n) => format!("number {n}"),
            Kind::Var(i) => format!("variable x{i}"),
            Kind::Op(c) => format!("'{c}'"),
            Kind::LParen => "'('".into(),
            Kind::RParen => "')'".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    at: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[at..i].iter().collect();
            out.push(Token { kind: Kind::Int(s.parse().expect("digits")), at });
        } else if c == 'x' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let idx: usize = s.parse().map_err(|_| ParseError::new(at, "expected digits after 'x'"))?;
            if idx == 0 {
                return Err(ParseError::new(at, "variables are numbered from x1"));
            }
            out.push(Token { kind: Kind::Var(idx), at });
        } else if "+-*/^".contains(c) {
            out.push(Token { kind: Kind::Op(c), at });
            i += 1;
        } else if c == '−' {
            out.push(Token { kind: Kind::Op('-'), at });
            i += 1;
        } else if c == '(' {
            out.push(Token { kind: Kind::LParen, at });
            i += 1;
        } else if c == ')' {
            out.push(Token { kind: Kind::RParen, at });
            i += 1;
        } else {
            return Err(ParseError::new(at, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// `coeff · X^mono · Π (1 + X^a)^e` with sign-normalized `a` and nonzero `e`.
#[derive(Debug, Clone)]
struct Factored {
    coeff: Rational,
    mono: ExponentVector,
    binomials: BTreeMap<ExponentVector, i64>,
}

impl Factored {
    fn monomial(coeff: Rational, mono: ExponentVector) -> Self {
        Factored { coeff, mono, binomials: BTreeMap::new() }
    }

    fn with_binomial(mut self, a: &ExponentVector, e: i64) -> Self {
        let (dir, flipped) = a.sign_normalized();
        if flipped {
            // 1 + X^{-d} = X^{-d} (1 + X^d)
            self.mono = &self.mono - &dir.scale(e);
        }
        let entry = self.binomials.entry(dir.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.binomials.remove(&dir);
        }
        self
    }

    fn mul(&self, other: &Factored) -> Factored {
        let mut out = Factored::monomial(&self.coeff * &other.coeff, &self.mono + &other.mono);
        for (a, &e) in self.binomials.iter().chain(&other.binomials) {
            out = out.with_binomial(a, e);
        }
        out
    }

    /// `None` when the value is zero.
    fn pow(&self, n: i64) -> Option<Factored> {
        if self.coeff.is_zero() && n < 0 {
            return None;
        }
        let coeff = crate::algebra::rational_pow(&self.coeff, n)?;
        let mut out = Factored::monomial(coeff, self.mono.scale(n));
        for (a, &e) in &self.binomials {
            out = out.with_binomial(a, e * n);
        }
        Some(out)
    }

    fn to_fn(&self) -> BinomialRationalFn {
        let mut num = LaurentPoly::monomial(self.mono.clone(), self.coeff.clone());
        let mut den = Vec::new();
        for (a, &e) in &self.binomials {
            if e > 0 {
                num = &num * &LaurentPoly::binomial(a).pow(e as u32);
            } else {
                den.push((a.clone(), (-e) as u32));
            }
        }
        BinomialRationalFn::new(num, den).expect("valid factors")
    }
}

/// Recovers `c · X^p · (1 + X^a)^e` from an expanded polynomial.
fn detect_factored(w: &LaurentPoly) -> Option<Factored> {
    if w.is_zero() {
        return None;
    }
    let mut terms = w.terms();
    let (low, c) = terms.next().map(|(e, c)| (e.clone(), c.clone()))?;
    let Some((high, _)) = w.terms().last() else {
        return Some(Factored::monomial(c, low));
    };
    if high == &low {
        return Some(Factored::monomial(c, low));
    }
    let d = high - &low;
    let g = d.coords().iter().fold(0i64, |acc, x| acc.gcd(x));
    for e in (1..=g).filter(|e| g % e == 0) {
        let a = ExponentVector::new(d.coords().iter().map(|x| x / e).collect());
        let candidate = Factored::monomial(c.clone(), low.clone()).with_binomial(&a, e);
        let expanded = &LaurentPoly::binomial(&a).pow(e as u32).scale(&c).shift(&low);
        if expanded == w {
            return Some(candidate);
        }
    }
    None
}

struct Value {
    f: BinomialRationalFn,
    factored: Option<Factored>,
}

impl Value {
    fn from_factored(fac: Factored) -> Self {
        Value { f: fac.to_fn(), factored: Some(fac) }
    }

    fn from_fn(f: BinomialRationalFn) -> Self {
        Value { f, factored: None }
    }

    fn factored(&self) -> Option<Factored> {
        if let Some(fac) = &self.factored {
            return Some(fac.clone());
        }
        if self.f.denominators().is_empty() {
            return detect_factored(self.f.numerator());
        }
        let num = detect_factored(self.f.numerator())?;
        let mut out = num;
        for (a, &e) in self.f.denominators() {
            out = out.with_binomial(a, -(e as i64));
        }
        Some(out)
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    rank: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Kind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn at(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.at).unwrap_or(self.len)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Kind::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sign = if self.eat_op('+') {
                1
            } else if self.eat_op('-') {
                -1
            } else {
                return Ok(acc);
            };
            let at = self.at();
            let rhs = self.term()?;
            let r = if sign > 0 { acc.f.checked_add(&rhs.f) } else { acc.f.checked_sub(&rhs.f) };
            acc = Value::from_fn(r.map_err(|e| ParseError::new(at, e.to_string()))?);
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                let rhs = self.unary()?;
                acc = match (acc.factored(), rhs.factored()) {
                    (Some(a), Some(b)) => Value::from_factored(a.mul(&b)),
                    _ => Value::from_fn(acc.f.checked_mul(&rhs.f).expect("same rank")),
                };
            } else if self.eat_op('/') {
                let at = self.at();
                let rhs = self.unary()?;
                let inv = invert(&rhs, at)?;
                acc = match &acc.factored {
                    Some(a) => Value::from_factored(a.mul(&inv)),
                    None => Value::from_fn(acc.f.checked_mul(&inv.to_fn()).expect("same rank")),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.eat_op('-') {
            let v = self.unary()?;
            let minus = Factored::monomial(-Rational::one(), ExponentVector::zero(self.rank));
            return Ok(match &v.factored {
                Some(a) => Value::from_factored(a.mul(&minus)),
                None => Value::from_fn(v.f.neg()),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let at = self.at();
        let paren = self.peek() == Some(&Kind::LParen);
        if paren {
            self.pos += 1;
        }
        let neg = self.eat_op('-');
        let n = match self.peek() {
            Some(Kind::Int(n)) => {
                let n = i64::try_from(n.clone()).map_err(|_| ParseError::new(self.at(), "exponent too large"))?;
                self.pos += 1;
                if neg {
                    -n
                } else {
                    n
                }
            }
            _ => return Err(ParseError::new(self.at(), "expected an integer exponent")),
        };
        if paren {
            self.expect_rparen()?;
        }
        if n >= 0 {
            if n > u32::MAX as i64 {
                return Err(ParseError::new(at, "exponent too large"));
            }
            return Ok(match &base.factored {
                Some(a) => Value::from_factored(a.pow(n).expect("nonnegative")),
                None => Value::from_fn(base.f.pow(n as u32)),
            });
        }
        let inv = invert(&base, at)?;
        Ok(Value::from_factored(inv.pow(-n).expect("nonzero")))
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Kind::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(self.at(), "expected ')'"))
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let at = self.at();
        match self.peek().cloned() {
            Some(Kind::Int(n)) => {
                self.pos += 1;
                Ok(Value::from_factored(Factored::monomial(
                    Rational::from_integer(n),
                    ExponentVector::zero(self.rank),
                )))
            }
            Some(Kind::Var(i)) => {
                if i > self.rank {
                    return Err(ParseError::new(at, format!("x{i} exceeds rank {}", self.rank)));
                }
                self.pos += 1;
                Ok(Value::from_factored(Factored::monomial(
                    Rational::one(),
                    ExponentVector::unit(self.rank, i - 1),
                )))
            }
            Some(Kind::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect_rparen()?;
                Ok(v)
            }
            Some(k) => Err(ParseError::new(at, format!("unexpected {}", k.describe()))),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }
}

fn invert(v: &Value, at: usize) -> Result<Factored, ParseError> {
    if v.f.is_zero() {
        return Err(ParseError::new(at, "division by zero"));
    }
    let fac = v.factored().ok_or_else(|| {
        ParseError::new(at, "unsupported denominator: divide only by monomials and powers of (1 + monomial)")
    })?;
    fac.pow(-1).ok_or_else(|| ParseError::new(at, "division by zero"))
}
