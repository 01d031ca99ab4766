//! Superelliptic curves `y^m = f(x)` over `Q(i)`: places, exact valuations,
//! divisors of functions and differentials, and torsion witnesses.

mod divisor;
mod expr;
mod local;
mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{GaussianRational, Polynomial};

pub use divisor::{
    divisor_of_differential, divisor_of_function, search_torsion_witness, stratum_of_form,
    verify_torsion_witness, norm,
};
pub use expr::{parse_fraction, parse_polynomial, Bivariate, Fraction};
pub use local::{differential_valuation, valuation};

type GR = GaussianRational;

/// Default cap on series length during valuation.
pub const DEFAULT_PRECISION_CEILING: usize = 1 << 10;

/// Smooth projective model of `y^m = f(x)` with `f` monic and squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperellipticCurve {
    m: usize,
    f: Polynomial,
    precision_ceiling: usize,
}

impl SuperellipticCurve {
    pub fn new(m: usize, f: Polynomial) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidCurve(format!("exponent {m} must be at least 2")));
        }
        let deg = f.degree().unwrap_or(0);
        if deg < 3 {
            return Err(Error::InvalidCurve(format!("deg f = {deg} must be at least 3")));
        }
        if !f.is_monic() {
            return Err(Error::InvalidCurve(format!("{f} is not monic")));
        }
        if !f.is_squarefree()? {
            return Err(Error::InvalidCurve(format!("{f} is not squarefree")));
        }
        Ok(SuperellipticCurve { m, f, precision_ceiling: DEFAULT_PRECISION_CEILING })
    }

    /// Replaces the series-length ceiling used by valuations.
    pub fn with_precision_ceiling(mut self, ceiling: usize) -> Self {
        self.precision_ceiling = ceiling.max(1);
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn deg_f(&self) -> usize {
        self.f.degree().expect("nonzero")
    }

    pub fn precision_ceiling(&self) -> usize {
        self.precision_ceiling
    }

    /// Number of places at infinity, `gcd(m, deg f)`.
    pub fn d_inf(&self) -> usize {
        self.m.gcd(&self.deg_f())
    }

    /// Genus from `2g − 2 = (m − 1)·deg f − m − gcd(m, deg f)`.
    pub fn genus(&self) -> u64 {
        let (m, n, d) = (self.m as i64, self.deg_f() as i64, self.d_inf() as i64);
        ((m - 1) * n - m - d + 2) as u64 / 2
    }

    /// `2g − 2`, the degree of a canonical divisor.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus() as i64 - 2
    }

    /// For each place at infinity, a root of unity `η ∈ Q(i)` with
    /// `y ~ η·x^{deg f/m}`. Errors when some place needs `η ∉ Q(i)`.
    pub fn infinity_branches(&self) -> Result<Vec<GR>> {
        let m_red = self.m / self.d_inf();
        let mut classes: Vec<GR> = Vec::new();
        let mut out = Vec::new();
        for eta in [GR::one(), GR::i(), -GR::one(), -GR::i()] {
            if !eta.pow(self.m as i64).expect("unit").is_one() {
                continue;
            }
            let class = eta.pow(m_red as i64).expect("unit");
            if !classes.contains(&class) {
                classes.push(class);
                out.push(eta);
            }
        }
        if out.len() != self.d_inf() {
            return Err(Error::NonRationalSupport(format!(
                "{} of the {} places at infinity are defined over Q(i)",
                out.len(),
                self.d_inf()
            )));
        }
        Ok(out)
    }

    /// Roots of `f` in `Q(i)`.
    pub fn rational_branch_points(&self) -> Result<Vec<GR>> {
        self.f.rational_roots()
    }

    /// The factor of `f` without roots in `Q(i)`.
    pub(crate) fn irrational_branch_factor(&self) -> Result<Polynomial> {
        let mut g = self.f.clone();
        for r in self.rational_branch_points()? {
            g = g.div_exact(&Polynomial::linear_root(&r))?;
        }
        Ok(g)
    }

    /// All `Q(i)`-rational places over `x = x0`.
    pub fn places_over(&self, x0: &GR) -> Vec<Place> {
        let fx = self.f.eval(x0);
        if fx.is_zero() {
            return vec![Place::Finite { x: x0.clone(), y: GR::zero() }];
        }
        fx.nth_roots(self.m as u32)
            .into_iter()
            .map(|y| Place::Finite { x: x0.clone(), y })
            .collect()
    }

    /// Checks that a place lies on the curve and is defined over `Q(i)`.
    pub fn check_place(&self, p: &Place) -> Result<()> {
        match p {
            Place::Finite { x, y } => {
                if y.pow(self.m as i64)? != self.f.eval(x) {
                    return Err(Error::InvalidInput(format!("{p} is not on the curve")));
                }
            }
            Place::Infinite(k) => {
                if *k >= self.d_inf() {
                    return Err(Error::InvalidInput(format!(
                        "the curve has {} places at infinity",
                        self.d_inf()
                    )));
                }
                self.infinity_branches()?;
            }
        }
        Ok(())
    }

    pub fn is_branch(&self, p: &Place) -> bool {
        matches!(p, Place::Finite { y, .. } if y.is_zero())
    }

    /// Parses a rational expression in `x, y` and reduces it modulo `y^m − f`.
    pub fn function(&self, s: &str) -> Result<FunctionExpr> {
        let fr = parse_fraction(s)?;
        FunctionExpr::new(self, fr.num, fr.den)
    }
}

impl fmt::Display for SuperellipticCurve {
    /// `m; f = <poly>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; f = {}", self.m, self.f)
    }
}

impl FromStr for SuperellipticCurve {
    type Err = Error;

    /// Accepts `m; f = <poly>` or `y^m = <poly>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((m, rest)) = s.split_once(';') {
            let m: usize = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {m:?}")))?;
            let rest = rest.trim();
            let poly = rest
                .strip_prefix('f')
                .and_then(|r| r.trim_start().strip_prefix('='))
                .unwrap_or(rest);
            return SuperellipticCurve::new(m, parse_polynomial(poly)?);
        }
        if let Some((lhs, rhs)) = s.split_once('=') {
            let m = lhs
                .trim()
                .strip_prefix('y')
                .and_then(|r| r.trim().strip_prefix('^'))
                .and_then(|r| r.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("expected y^m on the left of {s:?}")))?;
            return SuperellipticCurve::new(m, parse_polynomial(rhs)?);
        }
        Err(Error::Parse(format!("expected `m; f = <poly>`, got {s:?}")))
    }
}

/// A place of the curve: a finite point or one of the points at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite { x: GR, y: GR },
    Infinite(usize),
}

impl Place {
    pub fn finite(x: GR, y: GR) -> Self {
        Place::Finite { x, y }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { x, y } => write!(f, "({x}, {y})"),
            Place::Infinite(k) => write!(f, "inf_{k}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    /// `(x0, y0)`, `inf_k`, or `inf` for `inf_0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("inf") {
            let k = k.trim_start_matches('_');
            return if k.is_empty() {
                Ok(Place::Infinite(0))
            } else {
                k.parse()
                    .map(Place::Infinite)
                    .map_err(|_| Error::Parse(format!("bad place {s:?}")))
            };
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad place {s:?}")))?;
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad place {s:?}")))?;
        Ok(Place::Finite { x: x.trim().parse()?, y: y.trim().parse()? })
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A divisor: finitely many places with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, c) in terms {
            d.add(p, c);
        }
        d
    }

    pub fn add(&mut self, p: Place, c: i64) {
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn coefficient(&self, p: &Place) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<Place, i64> {
        &self.terms
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }
}

impl fmt::Display for Divisor {
    /// One `coeff * place` line per term, in place order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} * {p}")?;
        }
        Ok(())
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            place: String,
            coefficient: i64,
        }
        #[derive(Serialize)]
        struct Export {
            degree: i64,
            terms: Vec<Term>,
        }
        Export {
            degree: self.degree(),
            terms: self
                .terms
                .iter()
                .map(|(p, &c)| Term { place: p.to_string(), coefficient: c })
                .collect(),
        }
        .serialize(s)
    }
}

/// A rational function `num / den` on a curve, both parts reduced to
/// `y`-degree below `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionExpr {
    pub num: Bivariate,
    pub den: Bivariate,
}

impl FunctionExpr {
    pub fn new(c: &SuperellipticCurve, num: Bivariate, den: Bivariate) -> Result<Self> {
        let num = num.reduce(c.m, &c.f);
        let den = den.reduce(c.m, &c.f);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FunctionExpr { num, den })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Bivariate::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> SuperellipticCurve {
        s.parse().unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(curve("2; f = x^7 - 1").genus(), 3);
        assert_eq!(curve("2; f = x^6 - x").genus(), 2);
        assert_eq!(curve("4; f = x*(x-1)*(x+3)").genus(), 3);
        assert_eq!(curve("y^2 = x^5 - 1").genus(), 2);
    }

    #[test]
    fn invalid_curves() {
        assert!("2; f = x^2 - 1".parse::<SuperellipticCurve>().is_err());
        assert!("2; f = x^3*(x-1)".parse::<SuperellipticCurve>().is_err());
        assert!("2; f = 2*x^3 - 1".parse::<SuperellipticCurve>().is_err());
        assert!("1; f = x^3 - 1".parse::<SuperellipticCurve>().is_err());
    }

    #[test]
    fn infinity() {
        assert_eq!(curve("2; f = x^7 - 1").infinity_branches().unwrap(), vec![GR::one()]);
        assert_eq!(
            curve("2; f = x^6 - x").infinity_branches().unwrap(),
            vec![GR::one(), -GR::one()]
        );
        assert_eq!(curve("4; f = x^3 - x").infinity_branches().unwrap().len(), 1);
        assert!(curve("3; f = x^3 - x").infinity_branches().is_err());
    }

    #[test]
    fn places() {
        let c = curve("2; f = x^7 - 1");
        assert_eq!(
            c.places_over(&GR::zero()),
            vec![Place::finite(GR::zero(), -GR::i()), Place::finite(GR::zero(), GR::i())]
        );
        assert_eq!(c.places_over(&GR::one()), vec![Place::finite(GR::one(), GR::zero())]);
        assert!(c.check_place(&"(0, i)".parse().unwrap()).is_ok());
        assert!(c.check_place(&"(0, 1)".parse().unwrap()).is_err());
        assert!(c.check_place(&"inf_1".parse().unwrap()).is_err());
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite(0));
        assert_eq!("(1/2, -i)".parse::<Place>().unwrap().to_string(), "(1/2, -i)");
    }
}
