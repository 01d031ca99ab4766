use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gaussian::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Trial-division bound used when factoring Gaussian integers for rational roots.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 26;

/// Univariate polynomial over `Q(i)`, coefficients in ascending degree.
/// The coefficient vector never has a trailing zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x - a`.
    pub fn linear_root(a: &GaussianRational) -> Self {
        Self::new(vec![-a, GaussianRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from(k as i64))
                .collect(),
        )
    }

    /// `p(x + a)`, the Taylor shift.
    pub fn shift(&self, a: &GaussianRational) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let t = &c[k + 1] * a;
                c[k] += &t;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = d.leading().expect("nonzero").inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut q = vec![GaussianRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[k + j] -= &t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Polynomial::new(q), Polynomial::new(r)))
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => Polynomial::zero(),
        }
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Whether `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Polynomial::gcd(self, &self.derivative()).degree() == Some(0))
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &GaussianRational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let shifted = self.shift(a);
        Ok(shifted.coeffs.iter().take_while(|c| c.is_zero()).count())
    }

    /// All roots in `Q(i)`, without multiplicity, sorted.
    ///
    /// Rational root test in the UFD `Z[i]`: after clearing denominators a root
    /// `p/q` has `p | a_0` and `q | a_n`. Divisors are enumerated from trial
    /// factorisations; an error is returned if a norm is too large to factor.
    pub fn rational_roots(&self) -> Result<Vec<GaussianRational>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.coeff(0).is_zero() {
            roots.push(GaussianRational::zero());
            let k = p.coeffs.iter().take_while(|c| c.is_zero()).count();
            p = Polynomial::new(p.coeffs[k..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            roots.sort();
            return Ok(roots);
        }
        // Keep only the squarefree part to shrink coefficients.
        let g = Polynomial::gcd(&p, &p.derivative());
        if g.degree().unwrap_or(0) > 0 {
            p = p.div_exact(&g)?;
        }
        let ints = p.integral_coefficients();
        let a0 = &ints[0];
        let an = ints.last().expect("nonconstant");
        let num_divs = gaussian_divisors(a0)?;
        let den_divs = gaussian_divisors(an)?;
        let screens: Vec<ModScreen> = SCREEN_PRIMES.iter().map(|&l| ModScreen::new(l, &ints)).collect();
        let units = [(1, 0), (0, 1), (-1, 0), (0, -1)];
        for q in &den_divs {
            let qg = gi_to_gr(q);
            for pd in &num_divs {
                let base = &gi_to_gr(pd) / &qg;
                for (k, &(ur, ui)) in units.iter().enumerate() {
                    if !screens.iter().all(|sc| sc.may_vanish(pd, q, k)) {
                        continue;
                    }
                    let cand = &base * &GaussianRational::from_ints(ur, ui);
                    if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Coefficients scaled by the lcm of all denominators, as Gaussian integers `(re, im)`.
    fn integral_coefficients(&self) -> Vec<(BigInt, BigInt)> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let lq = Rational::from_integer(l);
        self.coeffs
            .iter()
            .map(|c| ((&c.re * &lq).to_integer(), (&c.im * &lq).to_integer()))
            .collect()
    }
}

/// Primes `≡ 1 mod 4`, where `i` has a square root.
const SCREEN_PRIMES: [u64; 2] = [998_244_353, 1_000_000_009];

fn mod_pow(mut b: u64, mut e: u64, l: u64) -> u64 {
    let mut r = 1u64;
    b %= l;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % l as u128) as u64;
        }
        b = (b as u128 * b as u128 % l as u128) as u64;
        e >>= 1;
    }
    r
}

/// Reduction of an integral polynomial modulo a prime split in `Z[i]`,
/// used to discard root candidates cheaply.
struct ModScreen {
    l: u64,
    sqrt_m1: u64,
    coeffs: Vec<u64>,
}

impl ModScreen {
    fn new(l: u64, ints: &[(BigInt, BigInt)]) -> Self {
        let g = (2..).find(|&g| mod_pow(g, (l - 1) / 2, l) == l - 1).expect("non-residue");
        let sqrt_m1 = mod_pow(g, (l - 1) / 4, l);
        let mut sc = ModScreen { l, sqrt_m1, coeffs: Vec::new() };
        sc.coeffs = ints.iter().map(|z| sc.reduce(z)).collect();
        sc
    }

    fn reduce(&self, (re, im): &(BigInt, BigInt)) -> u64 {
        let l = BigInt::from(self.l);
        let r = re.mod_floor(&l).to_u64().expect("reduced");
        let i = im.mod_floor(&l).to_u64().expect("reduced");
        ((r as u128 + i as u128 * self.sqrt_m1 as u128) % self.l as u128) as u64
    }

    /// False only if `unit^k·num/den` is certainly not a root.
    fn may_vanish(&self, num: &(BigInt, BigInt), den: &(BigInt, BigInt), k: usize) -> bool {
        let l = self.l as u128;
        let d = self.reduce(den);
        if d == 0 {
            return true;
        }
        let unit = mod_pow(self.sqrt_m1, k as u64, self.l) as u128;
        let c = self.reduce(num) as u128 * mod_pow(d, self.l - 2, self.l) as u128 % l * unit % l;
        let v = self.coeffs.iter().rev().fold(0u128, |acc, &a| (acc * c + a as u128) % l);
        v == 0
    }
}

fn gi_to_gr((re, im): &(BigInt, BigInt)) -> GaussianRational {
    GaussianRational::new(Rational::from_integer(re.clone()), Rational::from_integer(im.clone()))
}

fn gi_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// Exact division in `Z[i]` when possible.
fn gi_div(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> Option<(BigInt, BigInt)> {
    let n = &b.0 * &b.0 + &b.1 * &b.1;
    // a · conj(b) / N(b)
    let re = &a.0 * &b.0 + &a.1 * &b.1;
    let im = &a.1 * &b.0 - &a.0 * &b.1;
    (re.is_multiple_of(&n) && im.is_multiple_of(&n)).then(|| (re / &n, im / &n))
}

/// Gaussian primes above the rational prime `p`, up to units.
fn gaussian_primes_over(p: u64) -> Vec<(BigInt, BigInt)> {
    if p == 2 {
        return vec![(BigInt::one(), BigInt::one())];
    }
    if p % 4 == 3 {
        return vec![(BigInt::from(p), BigInt::zero())];
    }
    let mut a = 1u64;
    loop {
        let b2 = p - a * a;
        let b = b2.sqrt();
        if b * b == b2 {
            return vec![(BigInt::from(a), BigInt::from(b)), (BigInt::from(a), -BigInt::from(b))];
        }
        a += 1;
    }
}

/// All divisors of a nonzero Gaussian integer up to units.
fn gaussian_divisors(z: &(BigInt, BigInt)) -> Result<Vec<(BigInt, BigInt)>> {
    let norm = &z.0 * &z.0 + &z.1 * &z.1;
    let mut n = norm
        .to_u128()
        .ok_or_else(|| Error::NonRationalSupport("coefficient norm too large to factor".into()))?;
    let mut rational_primes = Vec::new();
    let mut p: u64 = 2;
    while (p as u128) * (p as u128) <= n {
        if p > TRIAL_DIVISION_LIMIT {
            return Err(Error::NonRationalSupport("coefficient norm too large to factor".into()));
        }
        if n % p as u128 == 0 {
            rational_primes.push(p);
            while n % p as u128 == 0 {
                n /= p as u128;
            }
        }
        p += 1;
    }
    if n > 1 {
        let big = u64::try_from(n)
            .map_err(|_| Error::NonRationalSupport("coefficient norm too large to factor".into()))?;
        rational_primes.push(big);
    }
    let mut divisors = vec![(BigInt::one(), BigInt::zero())];
    let mut rest = z.clone();
    for p in rational_primes {
        for pi in gaussian_primes_over(p) {
            let mut e = 0;
            while let Some(q) = gi_div(&rest, &pi) {
                rest = q;
                e += 1;
            }
            let mut next = Vec::with_capacity(divisors.len() * (e + 1));
            for d in &divisors {
                let mut cur = d.clone();
                next.push(cur.clone());
                for _ in 0..e {
                    cur = gi_mul(&cur, &pi);
                    next.push(cur.clone());
                }
            }
            divisors = next;
        }
    }
    debug_assert!((&rest.0 * &rest.0 + &rest.1 * &rest.1).is_one());
    Ok(divisors)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] += &t;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl fmt::Display for Polynomial {
    /// Descending-degree display, e.g. `x^7 - 1`, `(1+i)*x^2 + 1/2*x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_real() && c.re.is_negative() { (true, -c) } else { (false, c.clone()) };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if !mag.is_real() && !mag.re.is_zero() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            let mono = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            let term = match (k, mag.is_one()) {
                (0, _) => coef,
                (_, true) => mono,
                _ => format!("{coef}*{mono}"),
            };
            write!(f, "{sep}{term}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Integer `n` as a `usize` exponent, rejecting negatives.
#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn squarefree_examples() {
        // x^7 - 1: gcd with 7x^6 is 1 (roots are the distinct 7th roots of unity).
        assert!(Polynomial::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]).is_squarefree().unwrap());
        assert!(!Polynomial::from_ints(&[0, 0, 1]).is_squarefree().unwrap());
        // x(x-1)(x+3) = x^3 + 2x^2 - 3x
        let f = &(&Polynomial::x() * &Polynomial::from_ints(&[-1, 1])) * &Polynomial::from_ints(&[3, 1]);
        assert_eq!(f, Polynomial::from_ints(&[0, -3, 2, 1]));
        assert!(f.is_squarefree().unwrap());
        assert_eq!(Polynomial::zero().is_squarefree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn gcd_by_hand() {
        // (x-1)(x+1) and (x-1)(x-2): gcd x - 1
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[2, -3, 1]);
        assert_eq!(Polynomial::gcd(&a, &b), Polynomial::from_ints(&[-1, 1]));
    }

    #[test]
    fn shift_and_eval() {
        let f = Polynomial::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]);
        let a = g("1+i");
        let s = f.shift(&a);
        assert_eq!(s.eval(&GaussianRational::zero()), f.eval(&a));
        assert_eq!(s.eval(&g("2")), f.eval(&(&a + &g("2"))));
    }

    #[test]
    fn rational_roots_found() {
        let f = Polynomial::from_ints(&[0, -3, 2, 1]);
        assert_eq!(f.rational_roots().unwrap(), vec![g("-3"), g("0"), g("1")]);
        // x^2 + 1 has roots ±i
        assert_eq!(Polynomial::from_ints(&[1, 0, 1]).rational_roots().unwrap(), vec![g("-i"), g("i")]);
        // x^7 - 1 only has 1
        assert_eq!(Polynomial::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]).rational_roots().unwrap(), vec![g("1")]);
        // (2x - (1+i))^2 (x - 3/2)
        let l = Polynomial::new(vec![g("-1-i"), g("2")]);
        let f = &(&l * &l) * &Polynomial::new(vec![g("-3/2"), g("1")]);
        assert_eq!(f.rational_roots().unwrap(), vec![g("1/2+1/2*i"), g("3/2")]);
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]).to_string(), "x^7 - 1");
        assert_eq!(Polynomial::from_ints(&[0, -3, 2, 1]).to_string(), "x^3 + 2*x^2 - 3*x");
        assert_eq!(Polynomial::new(vec![g("1"), g("1+i")]).to_string(), "(1+i)*x + 1");
    }
}
