//! Bivariate polynomials `Σ u_j(x)·y^j`, rational expressions in `x, y`, and
//! their parser.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{GaussianRational, Polynomial, Rational};

type GR = GaussianRational;

/// `Σ_j u_j(x)·y^j`, stored by powers of `y` without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bivariate {
    terms: Vec<Polynomial>,
}

impl Bivariate {
    pub fn new(mut terms: Vec<Polynomial>) -> Self {
        while terms.last().is_some_and(Polynomial::is_zero) {
            terms.pop();
        }
        Bivariate { terms }
    }

    pub fn zero() -> Self {
        Bivariate { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_x(Polynomial::one())
    }

    pub fn from_x(p: Polynomial) -> Self {
        Self::new(vec![p])
    }

    pub fn constant(c: GR) -> Self {
        Self::from_x(Polynomial::constant(c))
    }

    /// The monomial `y^j`.
    pub fn y_pow(j: usize) -> Self {
        let mut terms = vec![Polynomial::zero(); j];
        terms.push(Polynomial::one());
        Bivariate { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `u_j(x)`, the coefficient of `y^j`.
    pub fn coeff(&self, j: usize) -> Polynomial {
        self.terms.get(j).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn terms(&self) -> &[Polynomial] {
        &self.terms
    }

    /// Degree in `y`; `None` for zero.
    pub fn y_degree(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    /// The constant value if `self` involves neither `x` nor `y`.
    pub fn as_constant(&self) -> Option<GR> {
        match self.terms.as_slice() {
            [] => Some(GR::zero()),
            [p] if p.degree().unwrap_or(0) == 0 => Some(p.coeff(0)),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.terms.len().max(other.terms.len());
        Self::new((0..n).map(|j| &self.coeff(j) + &other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Bivariate { terms: self.terms.iter().map(|p| -p).collect() }
    }

    pub fn scale(&self, c: &GR) -> Self {
        Self::new(self.terms.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut terms = vec![Polynomial::zero(); self.terms.len() + other.terms.len() - 1];
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in other.terms.iter().enumerate() {
                terms[i + j] = &terms[i + j] + &(a * b);
            }
        }
        Self::new(terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Reduces modulo `y^m − f(x)`.
    pub fn reduce(&self, m: usize, f: &Polynomial) -> Self {
        let mut terms = self.terms.clone();
        for j in (m..terms.len()).rev() {
            let top = std::mem::take(&mut terms[j]);
            terms[j - m] = &terms[j - m] + &(&top * f);
        }
        terms.truncate(m);
        Self::new(terms)
    }

    /// `Σ_j u_j(x0)·Y^j` as a polynomial in `Y`.
    pub fn specialize_x(&self, x0: &GR) -> Polynomial {
        Polynomial::new(self.terms.iter().map(|p| p.eval(x0)).collect())
    }
}

impl fmt::Display for Bivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, p) in self.terms.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            let term = match j {
                0 => p.to_string(),
                _ => {
                    let mono = if j == 1 { "y".to_string() } else { format!("y^{j}") };
                    if *p == Polynomial::one() {
                        mono
                    } else {
                        format!("({p})*{mono}")
                    }
                }
            };
            match (first, term.strip_prefix('-')) {
                (true, _) => write!(f, "{term}")?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Bivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bivariate({self})")
    }
}

/// A quotient `num / den` of bivariate polynomials, unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: Bivariate,
    pub den: Bivariate,
}

impl Fraction {
    fn from_poly(b: Bivariate) -> Self {
        Fraction { num: b, den: Bivariate::one() }
    }

    fn normalized(num: Bivariate, den: Bivariate) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match den.as_constant() {
            Some(c) if !c.is_one() => Ok(Fraction { num: num.scale(&c.inv()?), den: Bivariate::one() }),
            _ => Ok(Fraction { num, den }),
        }
    }

    fn add(&self, o: &Self) -> Result<Self> {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    fn neg(&self) -> Self {
        Fraction { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalized(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 {
            if self.num.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Fraction { num: self.den.clone(), den: self.num.clone() }
        } else {
            self.clone()
        };
        let e = k.unsigned_abs() as u32;
        Self::normalized(base.num.pow(e), base.den.pow(e))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    X,
    Y,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        k += 1;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => continue,
            '0'..='9' => {
                let begin = k - 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[begin..k].iter().collect();
                Token::Num(digits.parse().expect("digits"))
            }
            'x' | 'X' => Token::X,
            'y' | 'Y' => Token::Y,
            'i' | 'I' => Token::I,
            '+' => Token::Plus,
            '-' | '−' => Token::Minus,
            '*' | '·' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        };
        out.push(tok);
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Fraction> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Fraction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                Some(Token::Num(_) | Token::X | Token::Y | Token::I | Token::Open) => {
                    acc = acc.mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Fraction> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Fraction> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let (negative, wrapped) = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                (true, false)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let neg = self.peek() == Some(&Token::Minus);
                if neg {
                    self.pos += 1;
                }
                (neg, true)
            }
            _ => (false, false),
        };
        let Some(Token::Num(e)) = self.next() else {
            return Err(self.err("expected integer exponent"));
        };
        if wrapped && self.next() != Some(Token::Close) {
            return Err(self.err("expected ')' after exponent"));
        }
        let e: i64 = e.try_into().map_err(|_| self.err("exponent too large"))?;
        if e > 4096 {
            return Err(self.err("exponent too large"));
        }
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<Fraction> {
        let b = match self.next() {
            Some(Token::Num(n)) => Bivariate::constant(GR::from(Rational::from_integer(n))),
            Some(Token::X) => Bivariate::from_x(Polynomial::x()),
            Some(Token::Y) => Bivariate::y_pow(1),
            Some(Token::I) => Bivariate::constant(GR::i()),
            Some(Token::Open) => {
                let inner = self.expr()?;
                if self.next() != Some(Token::Close) {
                    return Err(self.err("expected ')'"));
                }
                return Ok(inner);
            }
            _ => return Err(self.err("expected a number, x, y, i or '('")),
        };
        Ok(Fraction::from_poly(b))
    }
}

/// Parses a rational expression in `x` and `y` with Gaussian-rational constants.
pub fn parse_fraction(s: &str) -> Result<Fraction> {
    let mut p = Parser { tokens: tokenize(s)?, pos: 0, src: s };
    if p.tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses a polynomial in `x` alone.
pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let fr = parse_fraction(s)?;
    if fr.den != Bivariate::one() {
        return Err(Error::Parse(format!("{s:?} is not a polynomial")));
    }
    match fr.num.y_degree() {
        None => Ok(Polynomial::zero()),
        Some(0) => Ok(fr.num.coeff(0)),
        Some(_) => Err(Error::Parse(format!("{s:?} involves y"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomials() {
        assert_eq!(parse_polynomial("x^7 - 1").unwrap(), Polynomial::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(parse_polynomial("x(x-1)(x+3)").unwrap(), Polynomial::from_ints(&[0, -3, 2, 1]));
        let p = Polynomial::new(vec![GR::from_ints(1, 0), GR::from_ints(1, 1)]);
        assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        assert_eq!(parse_polynomial("1/2*x").unwrap().coeff(1), "1/2".parse().unwrap());
        assert!(parse_polynomial("x*y").is_err());
        assert!(parse_polynomial("x^").is_err());
        assert!(parse_polynomial("(x").is_err());
    }

    #[test]
    fn parses_fractions() {
        let f = parse_fraction("x / y").unwrap();
        assert_eq!(f.num, Bivariate::from_x(Polynomial::x()));
        assert_eq!(f.den, Bivariate::y_pow(1));
        let g = parse_fraction("(y - i)^2").unwrap();
        assert_eq!(g.num.y_degree(), Some(2));
        let h = parse_fraction("y^-1").unwrap();
        assert_eq!(h.den, Bivariate::y_pow(1));
        assert!(parse_fraction("1/0").is_err());
    }

    #[test]
    fn reduction_and_display() {
        let f = Polynomial::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]);
        let y3 = Bivariate::y_pow(3).reduce(2, &f);
        assert_eq!(y3, Bivariate::new(vec![Polynomial::zero(), f.clone()]));
        let b = parse_fraction("x*y^2 + (1+i)*y - 3").unwrap().num;
        assert_eq!(parse_fraction(&b.to_string()).unwrap().num, b);
    }
}
