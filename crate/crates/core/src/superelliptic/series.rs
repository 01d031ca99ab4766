//! Truncated Laurent series over `Q(i)` with tracked absolute precision.

use num_traits::{One, Zero};

use crate::exactmath::{GaussianRational, Polynomial, Rational};

type GR = GaussianRational;

/// `Σ coeffs[k]·t^(start + k) + O(t^prec)`; `prec = None` means exact.
///
/// Normalized: `coeffs[0]` is nonzero unless the known part vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Laurent {
    start: i64,
    coeffs: Vec<GR>,
    prec: Option<i64>,
}

/// Outcome of reading off a leading term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Leading {
    Order(i64),
    ExactZero,
    /// All known coefficients vanish below the precision bound.
    Unknown,
}

impl Laurent {
    pub fn exact(start: i64, coeffs: Vec<GR>) -> Self {
        Self::build(start, coeffs, None)
    }

    pub fn truncated(start: i64, coeffs: Vec<GR>, prec: i64) -> Self {
        Self::build(start, coeffs, Some(prec))
    }

    pub fn constant(c: GR) -> Self {
        Self::exact(0, vec![c])
    }

    /// The monomial `t^k`.
    pub fn monomial(k: i64) -> Self {
        Self::exact(k, vec![GR::one()])
    }

    fn build(mut start: i64, mut coeffs: Vec<GR>, prec: Option<i64>) -> Self {
        if let Some(p) = prec {
            let keep = (p - start).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        start += lead as i64;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            start = prec.unwrap_or(0);
        }
        Laurent { start, coeffs, prec }
    }

    pub fn leading(&self) -> Leading {
        match (self.coeffs.first(), self.prec) {
            (Some(_), _) => Leading::Order(self.start),
            (None, None) => Leading::ExactZero,
            (None, Some(_)) => Leading::Unknown,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let prec = min_prec(self.prec, other.prec);
        let start = self.start.min(other.start);
        let end = self.end().max(other.end());
        let end = prec.map_or(end, |p| end.min(p));
        let len = (end - start).max(0) as usize;
        let mut coeffs = vec![GR::zero(); len];
        for s in [self, other] {
            for (k, c) in s.coeffs.iter().enumerate() {
                let idx = s.start + k as i64 - start;
                if (idx as usize) < len {
                    coeffs[idx as usize] += c;
                }
            }
        }
        Self::build(start, coeffs, prec)
    }

    pub fn scale(&self, c: &GR) -> Laurent {
        if c.is_zero() {
            return Laurent::exact(0, Vec::new());
        }
        Laurent { start: self.start, coeffs: self.coeffs.iter().map(|a| a * c).collect(), prec: self.prec }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Laurent::exact(0, Vec::new());
        }
        let start = self.start + other.start;
        let prec = min_prec(
            self.prec.map(|p| p + other.start),
            other.prec.map(|p| p + self.start),
        );
        let full = self.coeffs.len() + other.coeffs.len();
        let len = match prec {
            Some(p) => ((p - start).max(0) as usize).min(full),
            None => full.saturating_sub(1),
        };
        let mut coeffs = vec![GR::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::build(start, coeffs, prec)
    }

    /// `p(self)` by Horner's rule.
    pub fn compose_poly(&self, p: &Polynomial) -> Laurent {
        p.coeffs().iter().rev().fold(Laurent::exact(0, Vec::new()), |acc, c| {
            acc.mul(self).add(&Laurent::constant(c.clone()))
        })
    }

    fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// First `terms` coefficients of `(1 + g)^r` for a power series `g` with
/// `g[0] = 0`, via `a_k = (1/k) Σ_{j=1..k} ((r+1)j − k) g_j a_{k−j}`.
pub(crate) fn binomial_series(g: &[GR], r: &Rational, terms: usize) -> Vec<GR> {
    debug_assert!(g.first().is_none_or(Zero::is_zero));
    let r1 = GR::from(r + Rational::one());
    let mut a = Vec::with_capacity(terms);
    if terms == 0 {
        return a;
    }
    a.push(GR::one());
    for k in 1..terms {
        let mut acc = GR::zero();
        for j in 1..=k.min(g.len().saturating_sub(1)) {
            if g[j].is_zero() {
                continue;
            }
            let w = &(&r1 * &GR::from(j as i64)) - &GR::from(k as i64);
            acc += &(&(&w * &g[j]) * &a[k - j]);
        }
        a.push(&acc / &GR::from(k as i64));
    }
    a
}

/// First `terms` coefficients of the compositional inverse of
/// `F(s) = Σ_{k≥1} c_k s^k` (requires `c_1 ≠ 0`).
pub(crate) fn reversion(c: &[GR], terms: usize) -> Vec<GR> {
    let c1_inv = c[1].inv().expect("simple root");
    let deg = c.len() - 1;
    // powers[k][N] = [w^N] S^k.
    let mut powers = vec![vec![GR::zero(); terms]; deg + 1];
    let mut s = vec![GR::zero(); terms];
    for n in 1..terms {
        let mut rest = GR::zero();
        for k in 2..=deg.min(n) {
            let mut acc = GR::zero();
            for j in 1..=n - (k - 1) {
                if !s[j].is_zero() && !powers[k - 1][n - j].is_zero() {
                    acc += &(&s[j] * &powers[k - 1][n - j]);
                }
            }
            if !c[k].is_zero() {
                rest += &(&c[k] * &acc);
            }
            powers[k][n] = acc;
        }
        let target = if n == 1 { GR::one() } else { GR::zero() };
        s[n] = &(&target - &rest) * &c1_inv;
        powers[1][n] = s[n].clone();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GR {
        GR::from(n)
    }

    #[test]
    fn precision_tracking() {
        let a = Laurent::truncated(0, vec![gr(1), gr(1)], 2);
        let b = Laurent::monomial(-1);
        let p = a.mul(&b);
        assert_eq!(p, Laurent::truncated(-1, vec![gr(1), gr(1)], 1));
        let diff = a.add(&Laurent::constant(gr(-1)));
        assert_eq!(diff.leading(), Leading::Order(1));
        let gone = Laurent::truncated(0, vec![gr(1)], 1).add(&Laurent::constant(gr(-1)));
        assert_eq!(gone.leading(), Leading::Unknown);
        assert_eq!(Laurent::constant(gr(0)).leading(), Leading::ExactZero);
    }

    #[test]
    fn square_root_series() {
        // (1 + t)^(1/2) squared gives 1 + t.
        let a = binomial_series(&[gr(0), gr(1)], &Rational::new(1.into(), 2.into()), 8);
        let s = Laurent::truncated(0, a, 8);
        assert_eq!(s.mul(&s), Laurent::truncated(0, vec![gr(1), gr(1)], 8));
    }

    #[test]
    fn reversion_inverts() {
        // F(s) = 2s + s^2 - s^3.
        let c = vec![gr(0), gr(2), gr(1), gr(-1)];
        let s = reversion(&c, 10);
        let f = Polynomial::new(c);
        let series = Laurent::truncated(0, s, 10);
        assert_eq!(series.compose_poly(&f), Laurent::truncated(1, vec![gr(1)], 10));
    }
}
