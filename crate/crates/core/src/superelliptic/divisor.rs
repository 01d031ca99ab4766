//! Divisors of functions and differentials, strata of one-forms, and
//! torsion witnesses.
//!
//! Support is located through the norm `N(u) ∈ Q(i)[x]`: every finite place
//! where `u` has a zero or pole lies over a root of `N(num)·N(den)`. Places
//! over roots outside `Q(i)` are rejected, except for branch places over
//! irrational roots of `f`, where the valuation is read off uniformly from
//! the coefficient orders and must make the place drop out of the divisor.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::expr::Bivariate;
use super::local::{dx_valuation, quotient_valuation, uniform_order};
use super::{Divisor, FunctionExpr, Place, SuperellipticCurve};
use crate::error::{Error, Result};
use crate::exactmath::{GaussianRational, Polynomial};
use crate::origami::Stratum;

type GR = GaussianRational;

/// `N(b) = det(multiplication by b)` on the basis `1, y, …, y^{m−1}`,
/// by fraction-free elimination over `Q(i)[x]`.
pub fn norm(c: &SuperellipticCurve, b: &Bivariate) -> Result<Polynomial> {
    let m = c.m();
    let b = b.reduce(m, c.f());
    let mut a: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(); m]; m];
    for k in 0..m {
        let col = b.mul(&Bivariate::y_pow(k)).reduce(m, c.f());
        for (j, row) in a.iter_mut().enumerate() {
            row[k] = col.coeff(j);
        }
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..m.saturating_sub(1) {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..m).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Polynomial::zero());
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[m - 1][m - 1].clone();
    Ok(if negate { -&det } else { det })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Function,
    Differential,
}

fn order_at(p: &Polynomial, x0: &GR) -> Result<i64> {
    Ok(p.root_multiplicity(x0)? as i64)
}

/// Strips every root in `Q(i)` and every factor shared with `irr`; what
/// remains vanishes only at irrational non-branch `x`-values.
fn irrational_part(p: &Polynomial, roots: &[GR], irr: &Polynomial) -> Result<Polynomial> {
    let mut rest = p.clone();
    for r in roots {
        let lin = Polynomial::linear_root(r);
        while rest.div_rem(&lin)?.1.is_zero() {
            rest = rest.div_exact(&lin)?;
        }
    }
    loop {
        let g = Polynomial::gcd(&rest, irr);
        if g.degree().unwrap_or(0) == 0 {
            return Ok(rest);
        }
        rest = rest.div_exact(&g)?;
    }
}

/// Errors if `b` vanishes at a place over `x0` whose `y` lies outside `Q(i)`.
fn check_irrational_fiber(c: &SuperellipticCurve, x0: &GR, fx: &GR, b: &Bivariate, rational_ys: &[GR]) -> Result<()> {
    if rational_ys.len() == c.m() {
        return Ok(());
    }
    let mut fiber = Polynomial::zero();
    fiber = &fiber - &Polynomial::constant(fx.clone());
    let mut top = vec![GR::zero(); c.m() + 1];
    top[c.m()] = GR::one();
    let fiber = &fiber + &Polynomial::new(top);
    let mut g = Polynomial::gcd(&b.specialize_x(x0), &fiber);
    for y0 in rational_ys {
        let lin = Polynomial::linear_root(y0);
        if g.div_rem(&lin)?.1.is_zero() {
            g = g.div_exact(&lin)?;
        }
    }
    if g.degree().unwrap_or(0) > 0 {
        return Err(Error::NonRationalSupport(format!(
            "zero or pole at a place over x = {x0} not defined over Q(i)"
        )));
    }
    Ok(())
}

fn compute(c: &SuperellipticCurve, u: &FunctionExpr, hint: &[Place], kind: Kind) -> Result<Divisor> {
    if u.is_zero() {
        return Err(Error::ZeroFunction);
    }
    c.infinity_branches()?;
    for p in hint {
        c.check_place(p)?;
    }
    let m = c.m() as i64;
    let n_num = norm(c, &u.num)?;
    let n_den = norm(c, &u.den)?;
    let irr = c.irrational_branch_factor()?;
    let num_roots = n_num.rational_roots()?;
    let den_roots = n_den.rational_roots()?;
    for (n, roots) in [(&n_num, &num_roots), (&n_den, &den_roots)] {
        if irrational_part(n, roots, &irr)?.degree().unwrap_or(0) > 0 {
            return Err(Error::NonRationalSupport(format!(
                "norm {n} has roots outside Q(i) away from the branch points"
            )));
        }
    }

    let mut xs: BTreeSet<GR> = BTreeSet::new();
    xs.extend(num_roots);
    xs.extend(den_roots);
    xs.extend(c.rational_branch_points()?);
    for p in hint {
        if let Place::Finite { x, .. } = p {
            xs.insert(x.clone());
        }
    }

    let mut div = Divisor::zero();
    for x0 in &xs {
        let fx = c.f().eval(x0);
        let places = c.places_over(x0);
        if !fx.is_zero() {
            let ys: Vec<GR> = places
                .iter()
                .map(|p| match p {
                    Place::Finite { y, .. } => y.clone(),
                    Place::Infinite(_) => unreachable!("finite fiber"),
                })
                .collect();
            check_irrational_fiber(c, x0, &fx, &u.num, &ys)?;
            check_irrational_fiber(c, x0, &fx, &u.den, &ys)?;
        }
        let mut fiber_sum = 0;
        for p in places {
            let v = quotient_valuation(c, &p, u)?;
            fiber_sum += v;
            let v = if kind == Kind::Differential { v + dx_valuation(c, &p) } else { v };
            div.add(p, v);
        }
        let expected = order_at(&n_num, x0)? - order_at(&n_den, x0)?;
        if fiber_sum != expected {
            return Err(Error::Inconsistent(format!(
                "valuations over x = {x0} sum to {fiber_sum}, the norm predicts {expected}"
            )));
        }
    }

    if irr.degree().unwrap_or(0) > 0 {
        let uniform = |b: &Bivariate| -> Result<i64> {
            let mut best: Option<i64> = None;
            for (j, uj) in b.terms().iter().enumerate() {
                if uj.is_zero() {
                    continue;
                }
                let k = uniform_order(uj, &irr).ok_or_else(|| {
                    Error::NonRationalSupport("valuation differs across irrational branch points".into())
                })?;
                let v = m * k as i64 + j as i64;
                best = Some(best.map_or(v, |b| b.min(v)));
            }
            best.ok_or(Error::ZeroFunction)
        };
        let v = uniform(&u.num)? - uniform(&u.den)?;
        let required = if kind == Kind::Differential { 1 - m } else { 0 };
        if v != required {
            return Err(Error::NonRationalSupport(format!(
                "nonzero order {} at branch points outside Q(i)",
                v - required
            )));
        }
    }

    let mut inf_sum = 0;
    for k in 0..c.d_inf() {
        let p = Place::Infinite(k);
        let v = quotient_valuation(c, &p, u)?;
        inf_sum += v;
        let v = if kind == Kind::Differential { v + dx_valuation(c, &p) } else { v };
        div.add(p, v);
    }
    let deg = |p: &Polynomial| p.degree().expect("nonzero norm") as i64;
    if inf_sum != deg(&n_den) - deg(&n_num) {
        return Err(Error::Inconsistent(format!(
            "valuations at infinity sum to {inf_sum}, the norm predicts {}",
            deg(&n_den) - deg(&n_num)
        )));
    }

    let expected = if kind == Kind::Differential { c.canonical_degree() } else { 0 };
    if div.degree() != expected {
        return Err(Error::UnbalancedDivisor { found: div.degree(), expected });
    }
    Ok(div)
}

/// `div(u)`, of degree 0. Places in `support_hint` are always examined.
pub fn divisor_of_function(c: &SuperellipticCurve, u: &FunctionExpr, support_hint: &[Place]) -> Result<Divisor> {
    compute(c, u, support_hint, Kind::Function)
}

/// `div(u·dx)`, of degree `2g − 2`.
pub fn divisor_of_differential(c: &SuperellipticCurve, u: &FunctionExpr) -> Result<Divisor> {
    compute(c, u, &[], Kind::Differential)
}

/// The stratum of the holomorphic form `u·dx`.
pub fn stratum_of_form(c: &SuperellipticCurve, u: &FunctionExpr) -> Result<Stratum> {
    let d = divisor_of_differential(c, u)?;
    if let Some((p, k)) = d.terms().iter().find(|(_, &k)| k < 0) {
        return Err(Error::NotHolomorphic(format!("pole of order {} at {p}", -k)));
    }
    Stratum::new(d.terms().values().map(|&k| k as u32).collect())
}

/// Whether `div(w) = k·P − k·Q`.
pub fn verify_torsion_witness(
    c: &SuperellipticCurve,
    p: &Place,
    q: &Place,
    k: u64,
    w: &FunctionExpr,
) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidInput("torsion order must be at least 1".into()));
    }
    c.check_place(p)?;
    c.check_place(q)?;
    let k = k as i64;
    let target = Divisor::from_terms([(p.clone(), k), (q.clone(), -k)]);
    Ok(divisor_of_function(c, w, &[p.clone(), q.clone()])? == target)
}

/// Searches witnesses `x − x0` and `y^s − p(x)` with `p` linear through
/// `(x0, y0^s)` for `k·(P − Q)`, `1 ≤ k ≤ k_max`; returns the least `k`.
pub fn search_torsion_witness(
    c: &SuperellipticCurve,
    p: &Place,
    q: &Place,
    k_max: u64,
) -> Result<Option<(u64, FunctionExpr)>> {
    c.check_place(p)?;
    c.check_place(q)?;
    let mut candidates: Vec<Bivariate> = Vec::new();
    for place in [p, q] {
        let Place::Finite { x: x0, y: y0 } = place else { continue };
        candidates.push(Bivariate::from_x(Polynomial::linear_root(x0)));
        let units = [GR::zero(), GR::one(), -GR::one(), GR::i(), -GR::i()];
        for s in 1..c.m() {
            let ys = y0.pow(s as i64)?;
            for a in &units {
                let line = &Polynomial::constant(ys.clone())
                    + &Polynomial::linear_root(x0).scale(a);
                candidates.push(Bivariate::y_pow(s).sub(&Bivariate::from_x(line)));
            }
        }
    }
    let mut best: Option<(u64, FunctionExpr)> = None;
    for b in candidates {
        let w = FunctionExpr::new(c, b, Bivariate::one())?;
        if w.is_zero() {
            continue;
        }
        let Ok(d) = divisor_of_function(c, &w, &[p.clone(), q.clone()]) else { continue };
        let kp = d.coefficient(p);
        if kp == 0 || p == q || d.terms().len() != 2 || d.coefficient(q) != -kp {
            continue;
        }
        let (k, w) = if kp > 0 {
            (kp as u64, w)
        } else {
            ((-kp) as u64, FunctionExpr { num: w.den, den: w.num })
        };
        if k <= k_max && best.as_ref().is_none_or(|(bk, _)| k < *bk) {
            best = Some((k, w));
        }
    }
    if p == q {
        return Ok(Some((1, FunctionExpr::new(c, Bivariate::one(), Bivariate::one())?)));
    }
    Ok(best)
}
