use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`.
///
/// Stored 0-indexed; parsing, display and [`Permutation::one_based`] use the
/// usual 1-indexed labels. Products compose right to left: `p.compose(&q)` is
/// "apply `q` first, then `p`", so `p.compose(&q).apply(x) == p.apply(q.apply(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from 0-indexed images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-indexed one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::NotAPermutation(format!("{images:?}")));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Builds a permutation of degree `n` from 1-indexed disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || touched[x - 1] {
                    return Err(Error::NotAPermutation(format!("cycles {cycles:?} on {n} points")));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// A single cycle `(c_1 c_2 ... c_k)` on `n` points, 1-indexed.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        Self::from_cycles(n, &[cycle.to_vec()])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Commutator `self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self
            .compose_unchecked(other)
            .compose_unchecked(&self.inverse())
            .compose_unchecked(&other.inverse()))
    }

    /// `sigma · self · sigma⁻¹`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Result<Permutation> {
        if self.degree() != sigma.degree() {
            return Err(Error::DegreeMismatch(self.degree(), sigma.degree()));
        }
        Ok(sigma.compose_unchecked(self).compose_unchecked(&sigma.inverse()))
    }

    /// Disjoint cycles (0-indexed), each starting at its least element,
    /// ordered by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths sorted in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Sign of the permutation: `true` for even.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

/// Whether the group generated by `gens` acts transitively on `{0, ..., n-1}`.
pub fn is_transitive(n: usize, gens: &[&Permutation]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            // Finite groups: forward images under the generators suffice.
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted, e.g. `(1,2)(3,4,5)`; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let labels: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", labels.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation such as `(1,2)(3)` or `(1 2 3)` on `n` points.
pub fn parse_cycles(n: usize, s: &str) -> Result<Permutation> {
    let s = s.trim();
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in cycle notation {s:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let body = &open[..close];
        let labels = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                usize::from_str(t).map_err(|_| Error::Parse(format!("bad label {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !labels.is_empty() {
            cycles.push(labels);
        }
        rest = open[close + 1..].trim_start();
    }
    Permutation::from_cycles(n, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_compose(p: &[usize], q: &[usize]) -> Vec<usize> {
        (0..p.len()).map(|x| p[q[x]]).collect()
    }

    #[test]
    fn identity_is_neutral() {
        let p = Permutation::cycle(5, &[1, 3, 4]).unwrap();
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn l_shape_commutator_is_three_cycle() {
        let h = Permutation::cycle(3, &[1, 2]).unwrap();
        let v = Permutation::cycle(3, &[1, 3]).unwrap();
        // Brute force over the three points with explicit image tables.
        let hi = h.images().to_vec();
        let vi = v.images().to_vec();
        let c = brute_compose(&brute_compose(&brute_compose(&hi, &vi), &hi), &vi);
        let mut x = 0;
        let mut len = 0;
        loop {
            x = c[x];
            len += 1;
            if x == 0 {
                break;
            }
        }
        assert_eq!(len, 3);
        assert_eq!(h.commutator(&v).unwrap().cycle_type(), vec![3]);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let p = Permutation::identity(2);
        let q = Permutation::identity(3);
        assert_eq!(p.compose(&q), Err(Error::DegreeMismatch(2, 3)));
    }

    #[test]
    fn parse_and_print() {
        let p = parse_cycles(5, "(1,2)(3 5 4)").unwrap();
        assert_eq!(p.to_string(), "(1,2)(3,5,4)");
        assert_eq!(parse_cycles(5, &p.to_string()).unwrap(), p);
        assert!(parse_cycles(3, "()").unwrap().is_identity());
        assert!(parse_cycles(3, "").unwrap().is_identity());
        assert!(parse_cycles(3, "(1,4)").is_err());
        assert!(parse_cycles(3, "(1,2)(2,3)").is_err());
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_one_based(&[2, 3, 1]).is_ok());
    }
}
