//! Projective orbit dimensions of highest-weight lines for the classical
//! representations `∧ʳ` of `A_n`, spin of `B_n`, standard of `C_n` and `D_n`,
//! and half-spin of `D_n`.
//!
//! The orbit of the highest-weight line is `G/P`, of dimension
//! `#{α > 0 : ⟨λ, α∨⟩ ≠ 0}`. Roots live in standard coordinates; weights
//! are doubled so that spin weights stay integral.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown root system family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rep {
    ExteriorPower(usize),
    Spin,
    HalfSpin,
    Standard,
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rep::ExteriorPower(r) => write!(f, "exterior_power({r})"),
            Rep::Spin => write!(f, "spin"),
            Rep::HalfSpin => write!(f, "half_spin"),
            Rep::Standard => write!(f, "standard"),
        }
    }
}

impl FromStr for Rep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "spin" => return Ok(Rep::Spin),
            "half_spin" | "half-spin" => return Ok(Rep::HalfSpin),
            "standard" => return Ok(Rep::Standard),
            _ => {}
        }
        let inner = s
            .strip_prefix("exterior_power(")
            .or_else(|| s.strip_prefix("wedge("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown representation {s:?}")))?;
        let r = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exterior power {inner:?}")))?;
        Ok(Rep::ExteriorPower(r))
    }
}

impl Serialize for Rep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A representation from the classical list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemQuery {
    pub family: Family,
    pub rank: usize,
    pub rep: Rep,
}

impl RootSystemQuery {
    /// Admits `A_n` (`n ≥ 1`) with `∧ʳ`, `1 ≤ r ≤ n`; spin of `B_n` and
    /// standard of `C_n` for `n ≥ 2`; standard and half-spin of `D_n` for `n ≥ 3`.
    pub fn new(family: Family, rank: usize, rep: Rep) -> Result<Self> {
        let ok = match (family, rep) {
            (Family::A, Rep::ExteriorPower(r)) => rank >= 1 && (1..=rank).contains(&r),
            (Family::B, Rep::Spin) | (Family::C, Rep::Standard) => rank >= 2,
            (Family::D, Rep::Standard | Rep::HalfSpin) => rank >= 3,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "({family}, {rank}, {rep}) is not in the classical list"
            )));
        }
        Ok(RootSystemQuery { family, rank, rep })
    }

    /// Doubled highest weight in standard coordinates.
    fn doubled_highest_weight(&self) -> Vec<i64> {
        let n = self.rank;
        match (self.family, self.rep) {
            (Family::A, Rep::ExteriorPower(r)) => (0..=n).map(|i| if i < r { 2 } else { 0 }).collect(),
            (_, Rep::Spin | Rep::HalfSpin) => vec![1; n],
            (_, Rep::Standard) => (0..n).map(|i| if i == 0 { 2 } else { 0 }).collect(),
            _ => unreachable!("validated query"),
        }
    }

    /// Dimension of the representation.
    pub fn rep_dim(&self) -> BigUint {
        let n = self.rank;
        match (self.family, self.rep) {
            (Family::A, Rep::ExteriorPower(r)) => binomial(n + 1, r),
            (Family::B, Rep::Spin) => BigUint::from(1u8) << n,
            (Family::D, Rep::HalfSpin) => BigUint::from(1u8) << (n - 1),
            (_, Rep::Standard) => BigUint::from(2 * n),
            _ => unreachable!("validated query"),
        }
    }
}

impl fmt::Display for RootSystemQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.family, self.rank, self.rep)
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::from(1u8), |acc, i| acc * (n - i) / (i + 1))
}

/// A positive root with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

pub fn positive_roots(family: Family, n: usize) -> Result<Vec<Root>> {
    let min = if family == Family::D { 3 } else { 1 };
    if n < min {
        return Err(Error::InvalidInput(format!("{family}_{n} is not a valid root system")));
    }
    let dim = if family == Family::A { n + 1 } else { n };
    let unit = |i: usize, c: i64| {
        let mut v = vec![0; dim];
        v[i] = c;
        v
    };
    let add = |a: Vec<i64>, b: Vec<i64>| a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let minus = add(unit(i, 1), unit(j, -1));
            out.push(Root { root: minus.clone(), coroot: minus });
            if family != Family::A {
                let plus = add(unit(i, 1), unit(j, 1));
                out.push(Root { root: plus.clone(), coroot: plus });
            }
        }
        match family {
            Family::B => out.push(Root { root: unit(i, 1), coroot: unit(i, 2) }),
            Family::C => out.push(Root { root: unit(i, 2), coroot: unit(i, 1) }),
            _ => {}
        }
    }
    Ok(out)
}

/// `dim G/P` for the stabilizer `P` of the highest-weight line.
pub fn orbit_dim(q: &RootSystemQuery) -> Result<usize> {
    let q = RootSystemQuery::new(q.family, q.rank, q.rep)?;
    let weight = q.doubled_highest_weight();
    Ok(positive_roots(q.family, q.rank)?
        .iter()
        .filter(|r| r.coroot.iter().zip(&weight).map(|(a, b)| a * b).sum::<i64>() != 0)
        .count())
}

/// Every query of rank at most `n_max`, in family, rank, representation order.
pub fn all_queries(n_max: usize) -> Vec<RootSystemQuery> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for r in 1..=n {
            out.push(RootSystemQuery { family: Family::A, rank: n, rep: Rep::ExteriorPower(r) });
        }
    }
    for (family, rep, min) in [
        (Family::B, Rep::Spin, 2),
        (Family::C, Rep::Standard, 2),
        (Family::D, Rep::HalfSpin, 3),
        (Family::D, Rep::Standard, 3),
    ] {
        for n in min..=n_max {
            out.push(RootSystemQuery { family, rank: n, rep });
        }
    }
    out
}

/// Queries of rank at most `n_max` whose projective orbit is a curve.
pub fn dim_one_classification(n_max: usize) -> Result<Vec<RootSystemQuery>> {
    if n_max == 0 {
        return Err(Error::OutOfRange("n_max must be at least 1".into()));
    }
    let mut out = Vec::new();
    for q in all_queries(n_max) {
        if orbit_dim(&q)? == 1 {
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(family: Family, rank: usize, rep: Rep) -> RootSystemQuery {
        RootSystemQuery::new(family, rank, rep).unwrap()
    }

    #[test]
    fn root_counts() {
        assert_eq!(positive_roots(Family::A, 1).unwrap().len(), 1);
        assert_eq!(positive_roots(Family::B, 2).unwrap().len(), 4);
        assert_eq!(positive_roots(Family::D, 3).unwrap().len(), 6);
        assert!(positive_roots(Family::D, 2).is_err());
        assert!(positive_roots(Family::A, 0).is_err());
    }

    #[test]
    fn orbit_dims() {
        assert_eq!(orbit_dim(&q(Family::A, 1, Rep::ExteriorPower(1))).unwrap(), 1);
        assert_eq!(orbit_dim(&q(Family::A, 3, Rep::ExteriorPower(2))).unwrap(), 4);
        assert_eq!(orbit_dim(&q(Family::B, 2, Rep::Spin)).unwrap(), 3);
        assert_eq!(orbit_dim(&q(Family::D, 3, Rep::HalfSpin)).unwrap(), 3);
        assert_eq!(orbit_dim(&q(Family::C, 2, Rep::Standard)).unwrap(), 3);
    }

    #[test]
    fn invalid_queries() {
        assert!(RootSystemQuery::new(Family::B, 1, Rep::Spin).is_err());
        assert!(RootSystemQuery::new(Family::C, 1, Rep::Standard).is_err());
        assert!(RootSystemQuery::new(Family::A, 2, Rep::ExteriorPower(3)).is_err());
        assert!(RootSystemQuery::new(Family::B, 3, Rep::Standard).is_err());
    }

    #[test]
    fn classification() {
        let found = dim_one_classification(8).unwrap();
        assert_eq!(found, vec![q(Family::A, 1, Rep::ExteriorPower(1))]);
    }

    #[test]
    fn rep_parsing() {
        for r in [Rep::ExteriorPower(3), Rep::Spin, Rep::HalfSpin, Rep::Standard] {
            assert_eq!(r.to_string().parse::<Rep>().unwrap(), r);
        }
        assert_eq!(q(Family::B, 3, Rep::Spin).rep_dim(), BigUint::from(8u8));
        assert_eq!(q(Family::A, 4, Rep::ExteriorPower(2)).rep_dim(), BigUint::from(10u8));
    }
}
