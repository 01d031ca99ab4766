use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rationals.
pub type Rational = BigRational;

/// Bound on `|w|²` for the integer search in [`GaussianRational::nth_roots`].
const ROOT_SEARCH_LIMIT: u64 = 1 << 40;

/// An element `re + im·i` of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(rat(re), rat(im))
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `Some(n)` when the value is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.im.is_zero() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// All `w` in `Q(i)` with `w^m = self`, sorted.
    ///
    /// Writes `self = u / d` with `u` in `Z[i]`; then `w·d` is a Gaussian integer
    /// of norm `N(u·d^(m-1))^(1/m)`, found by a two-squares search. Norms beyond
    /// an internal search bound yield an empty result, so callers treat "no
    /// root" as "no rational root certified".
    pub fn nth_roots(&self, m: u32) -> Vec<GaussianRational> {
        assert!(m >= 1);
        if self.is_zero() {
            return vec![GaussianRational::zero()];
        }
        let d = self.re.denom().lcm(self.im.denom());
        let dm1 = num_traits::pow(d.clone(), (m - 1) as usize);
        let scaled_re = (&self.re * Rational::from_integer(d.clone())).to_integer() * &dm1;
        let scaled_im = (&self.im * Rational::from_integer(d.clone())).to_integer() * &dm1;
        let norm = &scaled_re * &scaled_re + &scaled_im * &scaled_im;
        let r = norm.nth_root(m);
        if num_traits::pow(r.clone(), m as usize) != norm {
            return Vec::new();
        }
        let Some(r) = r.to_u64().filter(|&r| r <= ROOT_SEARCH_LIMIT) else {
            return Vec::new();
        };
        let target = GaussianRational::new(
            Rational::from_integer(scaled_re),
            Rational::from_integer(scaled_im),
        );
        let dq = Rational::from_integer(d);
        let mut out = Vec::new();
        let mut a: u64 = 0;
        while a * a <= r {
            let b2 = r - a * a;
            let b = b2.sqrt();
            if b * b == b2 {
                for (sa, sb) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                    let w = GaussianRational::new(
                        rat(sa) * Rational::from_integer(BigInt::from(a)),
                        rat(sb) * Rational::from_integer(BigInt::from(b)),
                    );
                    if w.pow(m as i64).expect("nonnegative power") == target {
                        let root = GaussianRational::new(&w.re / &dq, &w.im / &dq);
                        if !out.contains(&root) {
                            out.push(root);
                        }
                    }
                }
            }
            a += 1;
        }
        out.sort();
        out
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_ints(1, 0)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_ints(n, 0)
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        GaussianRational::from_rational(q)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::checked_div`] otherwise.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self.checked_div(o).expect("division by zero in Q(i)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// `3`, `-1/2`, `i`, `-2*i`, `1+i`, `1/2-3/4*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_abs = self.im.abs();
        let im_part = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rational(&im_abs))
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{im_part}")
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{im_part}", fmt_rational(&self.re))
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
    let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn parse_imag(s: &str) -> Result<Rational> {
    let body = s.strip_suffix('i').ok_or_else(|| Error::Parse(format!("bad imaginary part {s:?}")))?;
    let body = body.strip_suffix('*').unwrap_or(body);
    match body {
        "" | "+" => Ok(rat(1)),
        "-" => Ok(rat(-1)),
        b => parse_rational(b),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) format (whitespace ignored).
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        if !s.ends_with('i') {
            return Ok(GaussianRational::from_rational(parse_rational(&s)?));
        }
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => Ok(GaussianRational::new(parse_rational(&s[..k])?, parse_imag(&s[k..])?)),
            None => Ok(GaussianRational::new(Rational::zero(), parse_imag(&s)?)),
        }
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "3", "-1/2", "i", "-i", "2*i", "1+i", "1/2-3/4*i", "-5+7/3*i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("1 + 2*i"), GaussianRational::from_ints(1, 2));
        assert_eq!(g("+i"), GaussianRational::i());
        assert!("1/0".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn field_operations() {
        let a = g("1+2*i");
        let b = g("3-i");
        assert_eq!(&a * &b, g("5+5*i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(GaussianRational::i().pow(2).unwrap(), g("-1"));
        assert_eq!(a.norm(), rat(5));
        assert!(GaussianRational::zero().inv().is_err());
    }

    #[test]
    fn nth_roots_exact() {
        assert_eq!(g("-1").nth_roots(2), vec![g("-i"), g("i")]);
        assert_eq!(g("1").nth_roots(4).len(), 4);
        assert_eq!(g("2*i").nth_roots(2), vec![g("-1-i"), g("1+i")]);
        assert!(g("2").nth_roots(2).is_empty());
        assert_eq!(g("-2+2*i").nth_roots(3), vec![g("1+i")]);
        assert_eq!(g("1/4").nth_roots(2), vec![g("-1/2"), g("1/2")]);
        assert!(g("4").nth_roots(4).is_empty());
    }
}
