//! Local expansions of `(x, y)` at each place and exact valuations.
//!
//! Local parameters: `t = x − x0` at ordinary finite places, `t = y` at
//! branch places, and at infinity `x = t^(−m')`, `y = η·t^(−n')·(…)` with
//! `m' = m/d`, `n' = deg f/d`, `d = gcd(m, deg f)`.

use num_traits::Zero;

use super::expr::Bivariate;
use super::series::{binomial_series, reversion, Laurent, Leading};
use super::{FunctionExpr, Place, SuperellipticCurve};
use crate::error::{Error, Result};
use crate::exactmath::{GaussianRational, Polynomial, Rational};

type GR = GaussianRational;

/// How `x` depends on the local parameter.
enum XParam {
    /// `x = x0 + t`.
    Shift(GR),
    /// `x = t^(−m')`.
    Inverse(i64),
    Series(Laurent),
}

struct Expansion {
    x: XParam,
    y: Laurent,
}

impl XParam {
    /// `u(x)` as a series in `t`.
    fn substitute(&self, u: &Polynomial) -> Laurent {
        match self {
            XParam::Shift(x0) => Laurent::exact(0, u.shift(x0).coeffs().to_vec()),
            XParam::Inverse(k) => {
                let Some(deg) = u.degree() else { return Laurent::exact(0, Vec::new()) };
                let step = *k as usize;
                let mut coeffs = vec![GR::zero(); deg * step + 1];
                for (j, a) in u.coeffs().iter().enumerate() {
                    coeffs[(deg - j) * step] = a.clone();
                }
                Laurent::exact(-(deg as i64) * k, coeffs)
            }
            XParam::Series(x) => x.compose_poly(u),
        }
    }
}

fn expansion(c: &SuperellipticCurve, p: &Place, terms: usize) -> Result<Expansion> {
    let m = c.m();
    let r = Rational::new(1.into(), (m as i64).into());
    match p {
        Place::Finite { x: x0, y: y0 } if y0.is_zero() => {
            // x = x0 + S(t^m) with S the inverse of s ↦ f(x0 + s).
            let shifted = c.f().shift(x0);
            let w_terms = terms.div_ceil(m) + 1;
            let s = reversion(shifted.coeffs(), w_terms);
            let mut coeffs = vec![GR::zero(); m * (w_terms - 1) + 1];
            coeffs[0] = x0.clone();
            for (k, sk) in s.iter().enumerate().skip(1) {
                coeffs[m * k] = sk.clone();
            }
            let prec = (m * w_terms) as i64;
            Ok(Expansion { x: XParam::Series(Laurent::truncated(0, coeffs, prec)), y: Laurent::monomial(1) })
        }
        Place::Finite { x: x0, y: y0 } => {
            // y = y0·(f(x0 + t)/f(x0))^(1/m).
            let shifted = c.f().shift(x0);
            let f0 = shifted.coeff(0);
            let f0_inv = f0.inv()?;
            let mut g: Vec<GR> = shifted.coeffs().iter().map(|a| a * &f0_inv).collect();
            g[0] = GR::zero();
            let a = binomial_series(&g, &r, terms);
            let y = Laurent::truncated(0, a, terms as i64).scale(y0);
            Ok(Expansion { x: XParam::Shift(x0.clone()), y })
        }
        Place::Infinite(k) => {
            let eta = c
                .infinity_branches()?
                .get(*k)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("no place {p} on the curve")))?;
            let d = c.d_inf();
            let (m_red, n_red) = ((m / d) as i64, (c.deg_f() / d) as i64);
            let n = c.deg_f();
            // h(w) = w^n f(1/w) − 1.
            let mut h: Vec<GR> = (0..=n).map(|j| c.f().coeff(n - j)).collect();
            h[0] = GR::zero();
            let w_terms = terms.div_ceil(m_red as usize) + 1;
            let a = binomial_series(&h, &r, w_terms);
            let mut coeffs = vec![GR::zero(); m_red as usize * (w_terms - 1) + 1];
            for (k, ak) in a.into_iter().enumerate() {
                coeffs[m_red as usize * k] = ak;
            }
            let prec = -n_red + m_red * w_terms as i64;
            let y = Laurent::truncated(-n_red, coeffs, prec).scale(&eta);
            Ok(Expansion { x: XParam::Inverse(m_red), y })
        }
    }
}

fn evaluate(e: &Expansion, b: &Bivariate) -> Laurent {
    b.terms()
        .iter()
        .rev()
        .fold(Laurent::exact(0, Vec::new()), |acc, u| acc.mul(&e.y).add(&e.x.substitute(u)))
}

/// Orders of vanishing of bivariate polynomials at one place, sharing the
/// local expansion; series length doubles from `2(m + deg f)` up to the
/// curve's precision ceiling.
pub(crate) fn poly_valuations(c: &SuperellipticCurve, p: &Place, bs: &[&Bivariate]) -> Result<Vec<i64>> {
    if bs.iter().any(|b| b.is_zero()) {
        return Err(Error::ZeroFunction);
    }
    let ceiling = c.precision_ceiling();
    let mut terms = (2 * (c.m() + c.deg_f())).min(ceiling);
    let mut out: Vec<Option<i64>> = vec![None; bs.len()];
    loop {
        let e = expansion(c, p, terms)?;
        for (slot, b) in out.iter_mut().zip(bs) {
            if slot.is_some() {
                continue;
            }
            match evaluate(&e, b).leading() {
                Leading::Order(v) => *slot = Some(v),
                Leading::ExactZero => return Err(Error::ZeroFunction),
                Leading::Unknown if terms >= ceiling => return Err(Error::PrecisionExceeded(ceiling)),
                Leading::Unknown => {}
            }
        }
        if out.iter().all(Option::is_some) {
            return Ok(out.into_iter().flatten().collect());
        }
        terms = (2 * terms).min(ceiling);
    }
}

#[cfg(test)]
fn poly_valuation(c: &SuperellipticCurve, p: &Place, b: &Bivariate) -> Result<i64> {
    Ok(poly_valuations(c, p, &[b])?[0])
}

/// `v_p(num) − v_p(den)`.
pub(crate) fn quotient_valuation(c: &SuperellipticCurve, p: &Place, u: &FunctionExpr) -> Result<i64> {
    let v = poly_valuations(c, p, &[&u.num, &u.den])?;
    Ok(v[0] - v[1])
}

/// `v_p(u)` for a nonzero function `u`.
pub fn valuation(c: &SuperellipticCurve, p: &Place, u: &FunctionExpr) -> Result<i64> {
    c.check_place(p)?;
    if u.is_zero() {
        return Err(Error::ZeroFunction);
    }
    quotient_valuation(c, p, u)
}

/// `v_p(dx)`: `0` at ordinary places, `m − 1` at branch places, `−m' − 1` at infinity.
pub(crate) fn dx_valuation(c: &SuperellipticCurve, p: &Place) -> i64 {
    match p {
        Place::Finite { y, .. } if y.is_zero() => c.m() as i64 - 1,
        Place::Finite { .. } => 0,
        Place::Infinite(_) => -((c.m() / c.d_inf()) as i64) - 1,
    }
}

/// `v_p(u·dx)`.
pub fn differential_valuation(c: &SuperellipticCurve, p: &Place, u: &FunctionExpr) -> Result<i64> {
    Ok(valuation(c, p, u)? + dx_valuation(c, p))
}

/// Valuation at the branch place over a root `x0` of `f` read off from
/// orders of the coefficients: `min_j (m·ord_{x0} u_j + j)`.
#[cfg(test)]
fn branch_valuation_by_orders(m: usize, x0: &GR, b: &Bivariate) -> Result<i64> {
    let mut best: Option<i64> = None;
    for (j, u) in b.terms().iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        let v = (m * u.root_multiplicity(x0)? + j) as i64;
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    best.ok_or(Error::ZeroFunction)
}

/// `ord_q(u)` for every root of the squarefree factor `q`, if it is the same for all.
pub(crate) fn uniform_order(u: &Polynomial, q: &Polynomial) -> Option<usize> {
    let mut rest = u.clone();
    let mut k = 0;
    loop {
        let g = Polynomial::gcd(&rest, q);
        match g.degree() {
            Some(0) => return Some(k),
            _ if g == q.make_monic() => {
                rest = rest.div_exact(q).ok()?;
                k += 1;
            }
            _ => return None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn septic() -> SuperellipticCurve {
        "2; f = x^7 - 1".parse().unwrap()
    }

    #[test]
    fn paper_local_pieces() {
        let c = septic();
        let p0i: Place = "(0, i)".parse().unwrap();
        assert_eq!(valuation(&c, &p0i, &c.function("y - i").unwrap()).unwrap(), 7);
        assert_eq!(valuation(&c, &Place::Infinite(0), &c.function("x").unwrap()).unwrap(), -2);
        assert_eq!(valuation(&c, &Place::Infinite(0), &c.function("y").unwrap()).unwrap(), -7);
        let p2: Place = "(2, 0)".parse().unwrap();
        assert!(valuation(&c, &p2, &c.function("x").unwrap()).is_err());
        let q: Place = "(1, 0)".parse().unwrap();
        assert_eq!(valuation(&c, &q, &c.function("x - 1").unwrap()).unwrap(), 2);
        assert_eq!(valuation(&c, &q, &c.function("y").unwrap()).unwrap(), 1);
    }

    #[test]
    fn ordinary_uniformizer() {
        let c: SuperellipticCurve = "2; f = x^3 - x + 1".parse().unwrap();
        let p: Place = "(0, 1)".parse().unwrap();
        assert_eq!(valuation(&c, &p, &c.function("x").unwrap()).unwrap(), 1);
        assert_eq!(valuation(&c, &p, &c.function("y - 1 + x/2").unwrap()).unwrap(), 2);
    }

    #[test]
    fn branch_oracle_agrees() {
        let c: SuperellipticCurve = "4; f = x*(x-1)*(x+3)".parse().unwrap();
        for s in ["x", "y", "x*y^2 - y^3", "(x-1)^2*y + x", "x^2 + y^3"] {
            let u = c.function(s).unwrap();
            for x0 in [0, 1, -3] {
                let x0 = GR::from(x0);
                let p = Place::finite(x0.clone(), GR::zero());
                assert_eq!(
                    poly_valuation(&c, &p, &u.num).unwrap(),
                    branch_valuation_by_orders(4, &x0, &u.num).unwrap(),
                    "{s} at {p}"
                );
            }
        }
    }

    #[test]
    fn precision_ceiling_reported() {
        let c = septic().with_precision_ceiling(4);
        let p0i: Place = "(0, i)".parse().unwrap();
        assert_eq!(
            valuation(&c, &p0i, &c.function("y - i").unwrap()),
            Err(Error::PrecisionExceeded(4))
        );
    }

    #[test]
    fn infinity_cancellation() {
        let c: SuperellipticCurve = "2; f = x^6 - x".parse().unwrap();
        let u = c.function("y - x^3").unwrap();
        // y − x³ = −x/(y + x³): a zero of order 2 on the branch where y ~ x³.
        assert_eq!(valuation(&c, &Place::Infinite(0), &u).unwrap(), 2);
        assert_eq!(valuation(&c, &Place::Infinite(1), &u).unwrap(), -3);
    }
}
