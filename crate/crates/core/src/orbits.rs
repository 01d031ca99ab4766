//! Orbits of origamis under the integral shears generating `SL(2,ℤ)`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::perm::Permutation;
use crate::origami::{singularity_profile, Origami, Stratum};

/// Largest square count accepted by [`orbit`].
pub const MAX_ORBIT_SQUARES: usize = 10;

/// An origami relabeled into its canonical representative under
/// simultaneous conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CanonicalOrigami(Origami);

impl CanonicalOrigami {
    pub fn origami(&self) -> &Origami {
        &self.0
    }

    pub fn into_origami(self) -> Origami {
        self.0
    }
}

impl std::fmt::Display for CanonicalOrigami {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `(h, v) ↦ (h, v·h⁻¹)`.
pub fn act_shear_h(o: &Origami) -> Result<Origami> {
    o.ensure_valid()?;
    Origami::new(o.h().clone(), o.v().compose(&o.h().inverse())?)
}

/// `(h, v) ↦ (h·v⁻¹, v)`.
pub fn act_shear_v(o: &Origami) -> Result<Origami> {
    o.ensure_valid()?;
    Origami::new(o.h().compose(&o.v().inverse())?, o.v().clone())
}

/// Breadth-first relabeling from every start square (neighbors visited in
/// the order `h(x)`, `v(x)`); keeps the lexicographically least `(h, v)`.
pub fn canonical_form(o: &Origami) -> Result<CanonicalOrigami> {
    o.ensure_valid()?;
    let n = o.squares();
    let (h, v) = (o.h().images(), o.v().images());
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut label = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    for start in 0..n {
        label.iter_mut().for_each(|l| *l = usize::MAX);
        label[start] = 0;
        let mut next = 1;
        queue.clear();
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for y in [h[x], v[x]] {
                if label[y] == usize::MAX {
                    label[y] = next;
                    next += 1;
                    queue.push_back(y);
                }
            }
        }
        let mut nh = vec![0; n];
        let mut nv = vec![0; n];
        for x in 0..n {
            nh[label[x]] = label[h[x]];
            nv[label[x]] = label[v[x]];
        }
        let cand = (nh, nv);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    let (nh, nv) = best.expect("at least one square");
    Ok(CanonicalOrigami(Origami::new(
        Permutation::from_images(nh)?,
        Permutation::from_images(nv)?,
    )?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    /// Sorted canonical representatives.
    pub representatives: Vec<CanonicalOrigami>,
    pub size: usize,
    pub stratum: Stratum,
}

/// Closure of the canonical form of `o` under both shears.
pub fn orbit(o: &Origami) -> Result<OrbitReport> {
    o.ensure_valid()?;
    if o.squares() > MAX_ORBIT_SQUARES {
        return Err(Error::StateSpaceExceeded(format!(
            "{} squares exceeds the orbit bound {MAX_ORBIT_SQUARES}",
            o.squares()
        )));
    }
    let stratum = singularity_profile(o)?;
    let start = canonical_form(o)?;
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for next in [act_shear_h(c.origami())?, act_shear_v(c.origami())?] {
            let next = canonical_form(&next)?;
            if !seen.contains(&next) {
                debug_assert_eq!(singularity_profile(next.origami()).as_ref(), Ok(&stratum));
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let representatives: Vec<CanonicalOrigami> = seen.into_iter().collect();
    Ok(OrbitReport { size: representatives.len(), representatives, stratum })
}
