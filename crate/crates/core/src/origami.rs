//! Square-tiled surfaces encoded as pairs of permutations.
//!
//! Square `s` has its right edge glued to the left edge of square `h(s)` and
//! its top edge glued to the bottom edge of square `v(s)`. Permutations
//! compose right to left (see [`Permutation`]), and the commutator used for
//! the singularity profile is `c = h·v·h⁻¹·v⁻¹`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::perm::{is_transitive, parse_cycles, Permutation};
use crate::orbits::canonical_form;

/// Largest square count accepted by [`enumerate_origamis`].
pub const MAX_ENUMERATION_SQUARES: usize = 7;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

impl Origami {
    /// Pairs two permutations of equal degree `n ≥ 1`. Connectivity is not
    /// checked here; see [`validate`].
    pub fn new(h: Permutation, v: Permutation) -> Result<Self> {
        if h.degree() != v.degree() {
            return Err(Error::DegreeMismatch(h.degree(), v.degree()));
        }
        if h.degree() == 0 {
            return Err(Error::InvalidOrigami("no squares".into()));
        }
        Ok(Origami { h, v })
    }

    /// Like [`Origami::new`] but also rejects disconnected surfaces.
    pub fn connected(h: Permutation, v: Permutation) -> Result<Self> {
        let o = Self::new(h, v)?;
        o.ensure_valid()?;
        Ok(o)
    }

    /// The one-square torus.
    pub fn torus() -> Self {
        Origami { h: Permutation::identity(1), v: Permutation::identity(1) }
    }

    /// Three squares in an L: `h = (1,2)`, `v = (1,3)`.
    pub fn l_shape() -> Self {
        Origami {
            h: Permutation::cycle(3, &[1, 2]).expect("valid cycle"),
            v: Permutation::cycle(3, &[1, 3]).expect("valid cycle"),
        }
    }

    pub fn squares(&self) -> usize {
        self.h.degree()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn is_connected(&self) -> bool {
        is_transitive(self.squares(), &[&self.h, &self.v])
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::InvalidOrigami(format!("{self} is not connected")))
        }
    }

    /// `h·v·h⁻¹·v⁻¹`.
    pub fn commutator(&self) -> Permutation {
        self.h.commutator(&self.v).expect("equal degrees")
    }

    /// Simultaneous conjugation `(σhσ⁻¹, σvσ⁻¹)`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Result<Origami> {
        Origami::new(self.h.conjugate_by(sigma)?, self.v.conjugate_by(sigma)?)
    }

    /// `(h, v) ↦ (v, h)`.
    pub fn swapped(&self) -> Origami {
        Origami { h: self.v.clone(), v: self.h.clone() }
    }

    /// Vertex permutation `v·h·v⁻¹·h⁻¹` on bottom-left corner labels: two
    /// squares share their bottom-left vertex iff they lie in the same cycle.
    pub fn corner_permutation(&self) -> Permutation {
        self.v.commutator(&self.h).expect("equal degrees")
    }

    /// Number of vertices of the square tiling.
    pub fn vertex_count(&self) -> usize {
        self.commutator().cycles().len()
    }
}

impl fmt::Display for Origami {
    /// `n=<int>; h=<cycles>; v=<cycles>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; h={}; v={}", self.squares(), self.h, self.v)
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Origami({self})")
    }
}

impl FromStr for Origami {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut h = None;
        let mut v = None;
        for field in s.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))?;
            match key.trim() {
                "n" => {
                    n = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad square count {value:?}")))?,
                    )
                }
                "h" => h = Some(value.trim().to_string()),
                "v" => v = Some(value.trim().to_string()),
                other => return Err(Error::Parse(format!("unknown origami field {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing n=".into()))?;
        let h = parse_cycles(n, h.as_deref().ok_or_else(|| Error::Parse("missing h=".into()))?)?;
        let v = parse_cycles(n, v.as_deref().ok_or_else(|| Error::Parse("missing v=".into()))?)?;
        Origami::new(h, v)
    }
}

impl Serialize for Origami {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Origami {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A stratum `S_α`: the partition `α` of `2g − 2` recording zero orders.
/// `α` is stored in decreasing order; the empty partition is the torus stratum (`g = 1`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Stratum {
    alpha: Vec<u32>,
}

impl Stratum {
    pub fn new(mut alpha: Vec<u32>) -> Result<Self> {
        if alpha.contains(&0) {
            return Err(Error::InvalidInput("zero orders must be positive".into()));
        }
        if alpha.iter().map(|&a| a as u64).sum::<u64>() % 2 != 0 {
            return Err(Error::InvalidInput(format!("|α| must be even, got {alpha:?}")));
        }
        alpha.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Stratum { alpha })
    }

    pub fn torus() -> Self {
        Stratum { alpha: Vec::new() }
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    /// `|α| = Σ αᵢ`.
    pub fn total_order(&self) -> u64 {
        self.alpha.iter().map(|&a| a as u64).sum()
    }

    /// `g` with `|α| = 2g − 2`.
    pub fn genus(&self) -> u64 {
        self.total_order() / 2 + 1
    }

    /// Number of zeros `n_z`, the length of `α`.
    pub fn zero_count(&self) -> usize {
        self.alpha.len()
    }
}

impl TryFrom<Vec<u32>> for Stratum {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Stratum::new(v)
    }
}

impl From<Stratum> for Vec<u32> {
    fn from(s: Stratum) -> Vec<u32> {
        s.alpha
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alpha.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Stratum{self}")
    }
}

/// Whether `⟨h, v⟩` acts transitively on the squares.
pub fn validate(o: &Origami) -> bool {
    o.is_connected()
}

/// Zero orders of the translation structure: a commutator cycle of length `ℓ`
/// is a cone point of angle `2πℓ`, i.e. a zero of order `ℓ − 1`.
pub fn singularity_profile(o: &Origami) -> Result<Stratum> {
    o.ensure_valid()?;
    let alpha = o
        .commutator()
        .cycle_type()
        .into_iter()
        .filter(|&l| l > 1)
        .map(|l| (l - 1) as u32)
        .collect();
    Stratum::new(alpha)
}

/// Genus from `|α| = 2g − 2`, cross-checked against `V − E + F = 2 − 2g`.
pub fn genus(o: &Origami) -> Result<u64> {
    let from_profile = singularity_profile(o)?.genus();
    let from_euler = euler_genus(o);
    assert_eq!(from_profile, from_euler, "genus formulas disagree for {o}");
    Ok(from_profile)
}

/// `g = (E − V − F + 2)/2` with `E = 2n`, `F = n`.
pub(crate) fn euler_genus(o: &Origami) -> u64 {
    let n = o.squares() as i64;
    let chi = o.vertex_count() as i64 - 2 * n + n;
    ((2 - chi) / 2) as u64
}

/// All connected origamis with `n` squares, one per simultaneous-conjugacy
/// class, in canonical form and sorted.
pub fn enumerate_origamis(n: usize) -> Result<Vec<Origami>> {
    if !(1..=MAX_ENUMERATION_SQUARES).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "square count {n} outside 1..={MAX_ENUMERATION_SQUARES}"
        )));
    }
    let mut found = std::collections::BTreeSet::new();
    // Up to conjugation h may be taken to be a fixed representative of its cycle type.
    for part in partitions(n) {
        let mut cycles = Vec::new();
        let mut next = 1;
        for len in part {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        let h = Permutation::from_cycles(n, &cycles)?;
        for v in all_permutations(n) {
            let o = Origami { h: h.clone(), v };
            if o.is_connected() {
                found.insert(canonical_form(&o)?.into_origami());
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Partitions of `n` in decreasing lexicographic order, parts decreasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `n!` permutations of degree `n`, lexicographic in one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::from_images(cur.clone()).expect("identity")];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation::from_images(cur.clone()).expect("permutation"));
    }
    out
}
