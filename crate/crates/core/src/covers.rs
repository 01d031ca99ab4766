//! Covers of the torus branched over torsion points, composition with the
//! multiplication-by-`N` isogeny, and branched covers of origamis.
//!
//! A [`MarkedTorusCover`] lists the monodromy `a`, `b` along the horizontal
//! and vertical generators of the torus and a local monodromy at each branch
//! point. At level `L` the torus is cut into an `L × L` grid; the branch
//! points become grid vertices and the cover becomes an origami with
//! `d·L²` squares, square `(sheet j, column x, row y)` having index
//! `j·L² + y·L + x`.
//!
//! Ordering convention: let `T_y` be the product of the branch permutations
//! on row `y` (points `(x, y)` taken with `x` decreasing, left to right).
//! A cover is consistent iff `[a, b] · T_0 · T_1 ⋯ = id`, with
//! `[a, b] = a·b·a⁻¹·b⁻¹`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::perm::{is_transitive, parse_cycles, Permutation};
use crate::exactmath::Rational;
use crate::homology::{build_chain_complex, RelativeHomologyBasis};
use crate::origami::{genus, singularity_profile, Origami, Stratum};

/// A torsion point `(x, y)` of `ℝ²/ℤ²` with `0 ≤ x, y < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionPoint {
    pub x: Rational,
    pub y: Rational,
}

impl TorsionPoint {
    pub fn new(x: Rational, y: Rational) -> Result<Self> {
        for c in [&x, &y] {
            if c < &Rational::zero() || c >= &Rational::one() {
                return Err(Error::OutOfRange(format!("torsion coordinate {c} outside [0, 1)")));
            }
        }
        Ok(TorsionPoint { x, y })
    }

    pub fn origin() -> Self {
        TorsionPoint { x: Rational::zero(), y: Rational::zero() }
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Least `N` with `N·P = 0`.
    pub fn order(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    /// Grid coordinates at level `level`, if `level·P` is integral.
    fn grid(&self, level: usize) -> Option<(usize, usize)> {
        let l = Rational::from_integer(level.into());
        let (gx, gy) = (&self.x * &l, &self.y * &l);
        if !gx.is_integer() || !gy.is_integer() {
            return None;
        }
        Some((to_usize(&gx.to_integer()), to_usize(&gy.to_integer())))
    }
}

fn to_usize(x: &BigInt) -> usize {
    usize::try_from(x).expect("grid coordinate fits in usize")
}

/// Row-ascending, then column-descending: the product order of the relation.
impl Ord for TorsionPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.y.cmp(&other.y).then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for TorsionPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A degree-`d` cover of the torus branched over finitely many torsion points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedTorusCover {
    degree: usize,
    a: Permutation,
    b: Permutation,
    branch: BTreeMap<TorsionPoint, Permutation>,
}

impl MarkedTorusCover {
    /// Checks degrees, the product relation and connectivity. Identity
    /// branch permutations are dropped.
    pub fn new(
        a: Permutation,
        b: Permutation,
        branch: BTreeMap<TorsionPoint, Permutation>,
    ) -> Result<Self> {
        let degree = a.degree();
        if b.degree() != degree {
            return Err(Error::DegreeMismatch(degree, b.degree()));
        }
        if degree == 0 {
            return Err(Error::InvalidCover("degree must be positive".into()));
        }
        if let Some(p) = branch.values().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, p.degree()));
        }
        let branch: BTreeMap<_, _> = branch.into_iter().filter(|(_, p)| !p.is_identity()).collect();
        let product = branch
            .values()
            .fold(a.commutator(&b)?, |acc, p| acc.compose_unchecked(p));
        if !product.is_identity() {
            return Err(Error::InvalidCover(format!(
                "monodromy relation fails: [a,b]·∏σ = {product}"
            )));
        }
        let mut gens = vec![&a, &b];
        gens.extend(branch.values());
        if !is_transitive(degree, &gens) {
            return Err(Error::InvalidCover("cover is disconnected".into()));
        }
        Ok(MarkedTorusCover { degree, a, b, branch })
    }

    /// The cover `(h, v)` branched over the origin only.
    pub fn from_origami(o: &Origami) -> Result<Self> {
        o.ensure_valid()?;
        let mut branch = BTreeMap::new();
        branch.insert(TorsionPoint::origin(), o.corner_permutation());
        Self::new(o.h().clone(), o.v().clone(), branch)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn a(&self) -> &Permutation {
        &self.a
    }

    pub fn b(&self) -> &Permutation {
        &self.b
    }

    pub fn branch(&self) -> &BTreeMap<TorsionPoint, Permutation> {
        &self.branch
    }

    /// Least common multiple of the orders of the branch points.
    pub fn level(&self) -> BigInt {
        self.branch.keys().fold(BigInt::one(), |acc, p| acc.lcm(&p.order()))
    }

    /// Local monodromy at the origin forced by the relation, given the
    /// remaining branch points.
    pub fn forced_origin(
        a: &Permutation,
        b: &Permutation,
        others: &BTreeMap<TorsionPoint, Permutation>,
    ) -> Result<Permutation> {
        let mut left = a.commutator(b)?;
        let mut right = Permutation::identity(a.degree());
        let origin = TorsionPoint::origin();
        for (pt, p) in others.iter().filter(|(pt, _)| !pt.is_origin()) {
            if *pt < origin {
                left = left.compose(p)?;
            } else {
                right = right.compose(p)?;
            }
        }
        Ok(left.inverse().compose_unchecked(&right.inverse()))
    }

    /// Realizes the cover on the `level × level` grid.
    pub fn grid_origami(&self, level: usize) -> Result<Origami> {
        if level == 0 {
            return Err(Error::InvalidInput("level must be at least 1".into()));
        }
        let mut points = Vec::new();
        for (pt, sigma) in &self.branch {
            let (x, y) = pt.grid(level).ok_or_else(|| {
                Error::InvalidInput(format!("branch point {pt} is not {level}-torsion"))
            })?;
            points.push((x, y, sigma));
        }
        let l = level;
        let d = self.degree;
        let id = Permutation::identity(d);
        // horizontal[y][x] crosses the right edge of cell (x, y), vertical[y][x] its top edge.
        let mut horizontal = vec![vec![id.clone(); l]; l];
        let mut vertical = vec![vec![id.clone(); l]; l];
        for y in 0..l {
            horizontal[y][l - 1] = self.a.clone();
        }
        for x in 0..l {
            vertical[l - 1][x] = self.b.clone();
        }
        let mut rows: Vec<Vec<(usize, &Permutation)>> = vec![Vec::new(); l];
        for &(x, y, sigma) in &points {
            if (x, y) != (0, 0) {
                rows[y].push((x, sigma));
            }
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|&(x, _)| x);
        }
        // Cut each branch point leftward along its row.
        for (y, row) in rows.iter().enumerate() {
            let below = (y + l - 1) % l;
            for x in 0..l {
                let mut cut = id.clone();
                for (_, sigma) in row.iter().filter(|(px, _)| *px > x) {
                    cut = cut.compose_unchecked(&sigma.inverse());
                }
                if !cut.is_identity() {
                    vertical[below][x] = cut.compose_unchecked(&vertical[below][x]);
                }
            }
        }
        // Then down the left column to the origin.
        let row_products: Vec<Permutation> = rows
            .iter()
            .map(|row| {
                row.iter().rev().fold(id.clone(), |acc, (_, sigma)| acc.compose_unchecked(sigma))
            })
            .collect();
        for y in 0..l {
            let above = row_products[y + 1..]
                .iter()
                .fold(id.clone(), |acc, t| acc.compose_unchecked(t));
            horizontal[y][l - 1] = above.compose_unchecked(&horizontal[y][l - 1]);
        }

        let cells = l * l;
        let index = |j: usize, x: usize, y: usize| j * cells + y * l + x;
        let mut h = vec![0; d * cells];
        let mut v = vec![0; d * cells];
        for j in 0..d {
            for y in 0..l {
                for x in 0..l {
                    h[index(j, x, y)] = index(horizontal[y][x].apply(j), (x + 1) % l, y);
                    v[index(j, x, y)] = index(vertical[y][x].apply(j), x, (y + 1) % l);
                }
            }
        }

        // Every grid vertex must carry exactly its prescribed monodromy.
        for gy in 0..l {
            for gx in 0..l {
                let (xl, yl) = ((gx + l - 1) % l, (gy + l - 1) % l);
                let around = vertical[yl][gx]
                    .compose_unchecked(&horizontal[yl][xl])
                    .compose_unchecked(&vertical[yl][xl].inverse())
                    .compose_unchecked(&horizontal[gy][xl].inverse());
                let expected = points
                    .iter()
                    .find(|&&(px, py, _)| (px, py) == (gx, gy))
                    .map_or(&id, |&(_, _, s)| s);
                if &around != expected {
                    return Err(Error::Inconsistent(format!(
                        "grid vertex ({gx}, {gy}) has monodromy {around}, expected {expected}"
                    )));
                }
            }
        }
        Origami::connected(Permutation::from_images(h)?, Permutation::from_images(v)?)
    }
}

impl fmt::Display for MarkedTorusCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}; a={}; b={}", self.degree, self.a, self.b)?;
        for (pt, p) in &self.branch {
            write!(f, "; {pt}: {p}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    degree: usize,
    a: String,
    b: String,
    #[serde(default)]
    branch: Vec<BranchJson>,
}

#[derive(Serialize, Deserialize)]
struct BranchJson {
    point: [String; 2],
    monodromy: String,
}

impl Serialize for MarkedTorusCover {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoverJson {
            degree: self.degree,
            a: self.a.to_string(),
            b: self.b.to_string(),
            branch: self
                .branch
                .iter()
                .map(|(pt, p)| BranchJson {
                    point: [pt.x.to_string(), pt.y.to_string()],
                    monodromy: p.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedTorusCover {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CoverJson::deserialize(d)?;
        let parse = || -> Result<MarkedTorusCover> {
            let a = parse_cycles(raw.degree, &raw.a)?;
            let b = parse_cycles(raw.degree, &raw.b)?;
            let mut branch = BTreeMap::new();
            for entry in &raw.branch {
                let coord = |s: &str| {
                    s.trim()
                        .parse::<Rational>()
                        .map_err(|_| Error::Parse(format!("bad coordinate {s:?}")))
                };
                let pt = TorsionPoint::new(coord(&entry.point[0])?, coord(&entry.point[1])?)?;
                let p = parse_cycles(raw.degree, &entry.monodromy)?;
                if branch.insert(pt.clone(), p).is_some() {
                    return Err(Error::InvalidCover(format!("duplicate branch point {pt}")));
                }
            }
            MarkedTorusCover::new(a, b, branch)
        };
        parse().map_err(D::Error::custom)
    }
}

/// The origami of a cover branched over the origin only.
pub fn origami_of(c: &MarkedTorusCover) -> Result<Origami> {
    if let Some(pt) = c.branch.keys().find(|pt| !pt.is_origin()) {
        return Err(Error::InvalidCover(format!("branch point {pt} away from the origin")));
    }
    c.grid_origami(1)
}

/// `[N] ∘ c`: an origami with `d·N²` squares branched over the origin only.
pub fn compose_with_isogeny(c: &MarkedTorusCover, n: usize) -> Result<Origami> {
    if n == 0 {
        return Err(Error::InvalidInput("isogeny degree must be at least 1".into()));
    }
    if let Some(pt) = c.branch.keys().find(|pt| pt.grid(n).is_none()) {
        return Err(Error::InvalidInput(format!("{n} does not kill branch point {pt}")));
    }
    c.grid_origami(n)
}

/// Pushes an edge chain of `o` onto `[N] ∘ o`: each edge of `o` becomes the
/// `N` small edges along it.
pub fn transport_chain(squares: usize, n: usize, chain: &[BigInt]) -> Vec<BigInt> {
    let cells = n * n;
    let big = squares * cells;
    let mut out = vec![BigInt::zero(); 2 * big];
    for s in 0..squares {
        for k in 0..n {
            out[s * cells + k] += &chain[s];
            out[big + s * cells + k * n] += &chain[squares + s];
        }
    }
    out
}

/// The image of a homology basis of `o` in `[N] ∘ o`, relative to the
/// singular vertices of the composite.
pub fn transported_basis(
    o: &Origami,
    n: usize,
    basis: &RelativeHomologyBasis,
) -> Result<RelativeHomologyBasis> {
    let big = compose_with_isogeny(&MarkedTorusCover::from_origami(o)?, n)?;
    let cx = build_chain_complex(&big)?;
    let marked = if basis.marked.is_empty() { Vec::new() } else { cx.singular_vertices() };
    Ok(RelativeHomologyBasis {
        cycles: basis.cycles.iter().map(|c| transport_chain(o.squares(), n, c)).collect(),
        rank: basis.rank,
        marked,
    })
}

/// Crossing permutations of a degree-`k` cover of an origami: sheet `j` of
/// square `s` continues to sheet `horizontal[s](j)` of `h(s)` and to sheet
/// `vertical[s](j)` of `v(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverData {
    pub degree: usize,
    pub horizontal: Vec<Permutation>,
    pub vertical: Vec<Permutation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Crossing {
    Right(usize),
    Up(usize),
}

impl CoverData {
    pub fn trivial(o: &Origami, degree: usize) -> Self {
        let id = Permutation::identity(degree);
        CoverData {
            degree,
            horizontal: vec![id.clone(); o.squares()],
            vertical: vec![id; o.squares()],
        }
    }

    fn check(&self, o: &Origami) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::InvalidCover("degree must be positive".into()));
        }
        if self.horizontal.len() != o.squares() || self.vertical.len() != o.squares() {
            return Err(Error::InvalidCover(format!(
                "expected {} crossing permutations in each direction",
                o.squares()
            )));
        }
        if let Some(p) = self.horizontal.iter().chain(&self.vertical).find(|p| p.degree() != self.degree) {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(())
    }

    fn crossing(&self, c: Crossing) -> &Permutation {
        match c {
            Crossing::Right(s) => &self.horizontal[s],
            Crossing::Up(s) => &self.vertical[s],
        }
    }

    /// Builds crossing data with prescribed monodromy around vertices of `o`
    /// (unlisted vertices are unbranched). Only the edges of a spanning tree
    /// rooted at vertex 0 carry nontrivial crossings, so the handles have
    /// trivial monodromy; the root's monodromy is then forced and must match.
    pub fn from_vertex_monodromy(
        o: &Origami,
        degree: usize,
        monodromy: &BTreeMap<usize, Permutation>,
    ) -> Result<Self> {
        let cx = build_chain_complex(o)?;
        let n = o.squares();
        let vcount = cx.vertex_count();
        if let Some(&w) = monodromy.keys().find(|&&w| w >= vcount) {
            return Err(Error::InvalidCover(format!("vertex {w} out of range (origami has {vcount})")));
        }
        if let Some(p) = monodromy.values().find(|p| p.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, p.degree()));
        }
        let id = Permutation::identity(degree);
        let target = |w: usize| monodromy.get(&w).unwrap_or(&id);

        // Kruskal tree over the vertex graph, lowest edge index first.
        let mut uf: Vec<usize> = (0..vcount).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vcount];
        for e in 0..cx.edge_count() {
            let (t, h) = cx.endpoints(e);
            let (a, b) = (find(&mut uf, t), find(&mut uf, h));
            if a != b {
                uf[a] = b;
                adj[t].push((h, e));
                adj[h].push((t, e));
            }
        }
        let mut parent_edge = vec![None; vcount];
        let mut order = vec![0];
        let mut seen = vec![false; vcount];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent_edge[y] = Some(e);
                    order.push(y);
                }
            }
        }

        let mut data = CoverData::trivial(o, degree);
        let edge_crossing = |e: usize| {
            if e < n {
                Crossing::Up(o.v().inverse().apply(e))
            } else {
                Crossing::Right(o.h().inverse().apply(e - n))
            }
        };
        for &w in order.iter().skip(1).rev() {
            let unknown = edge_crossing(parent_edge[w].expect("non-root vertex"));
            let factors = loop_factors(o, first_corner(&cx, w), cx.cone_angle[w]);
            let pos = factors
                .iter()
                .position(|&(c, _)| c == unknown)
                .expect("tree edge lies on the vertex loop");
            // around = after · X^± · before, with factors applied first to last.
            let before = data.product(&factors[..pos]);
            let after = data.product(&factors[pos + 1..]);
            let x = after.inverse().compose_unchecked(target(w)).compose_unchecked(&before.inverse());
            let x = if factors[pos].1 { x.inverse() } else { x };
            match unknown {
                Crossing::Right(s) => data.horizontal[s] = x,
                Crossing::Up(s) => data.vertical[s] = x,
            }
        }
        let root = data.vertex_monodromy(o, 0)?;
        if &root != target(0) {
            return Err(Error::Inconsistent(format!(
                "monodromy at vertex 0 is forced to be {root}, not {}",
                target(0)
            )));
        }
        Ok(data)
    }

    /// Composite of the factors, applied first to last; the flag marks an inverse.
    fn product(&self, factors: &[(Crossing, bool)]) -> Permutation {
        factors.iter().fold(Permutation::identity(self.degree), |acc, &(c, inv)| {
            let p = self.crossing(c);
            if inv {
                p.inverse().compose_unchecked(&acc)
            } else {
                p.compose_unchecked(&acc)
            }
        })
    }

    /// Monodromy of a counterclockwise loop around vertex `w`, based at the
    /// first square whose bottom-left corner is `w`.
    pub fn vertex_monodromy(&self, o: &Origami, w: usize) -> Result<Permutation> {
        self.check(o)?;
        let cx = build_chain_complex(o)?;
        if w >= cx.vertex_count() {
            return Err(Error::InvalidCover(format!("vertex {w} out of range")));
        }
        Ok(self.product(&loop_factors(o, first_corner(&cx, w), cx.cone_angle[w])))
    }
}

fn first_corner(cx: &crate::homology::ChainComplex, w: usize) -> usize {
    cx.corner_vertex.iter().position(|&x| x == w).expect("every vertex is a corner")
}

/// Edge crossings met by a counterclockwise loop around the bottom-left
/// corner of `start`, winding once around the full cone angle.
fn loop_factors(o: &Origami, start: usize, cone_angle: usize) -> Vec<(Crossing, bool)> {
    let (h, v) = (o.h(), o.v());
    let (hi, vi) = (h.inverse(), v.inverse());
    let mut out = Vec::with_capacity(4 * cone_angle);
    let mut s = start;
    for _ in 0..cone_angle {
        let s1 = hi.apply(s);
        let s2 = vi.apply(s1);
        let s3 = h.apply(s2);
        out.push((Crossing::Right(s1), true));
        out.push((Crossing::Up(s2), true));
        out.push((Crossing::Right(s2), false));
        out.push((Crossing::Up(s3), false));
        s = v.apply(s3);
    }
    out
}

/// The degree-`k·n` origami of a cover of `o`; square `(j, s)` has index `j·n + s`.
pub fn branched_cover(o: &Origami, data: &CoverData) -> Result<Origami> {
    o.ensure_valid()?;
    data.check(o)?;
    let n = o.squares();
    let k = data.degree;
    let mut h = vec![0; k * n];
    let mut v = vec![0; k * n];
    for j in 0..k {
        for s in 0..n {
            h[j * n + s] = data.horizontal[s].apply(j) * n + o.h().apply(s);
            v[j * n + s] = data.vertical[s].apply(j) * n + o.v().apply(s);
        }
    }
    let cover = Origami::new(Permutation::from_images(h)?, Permutation::from_images(v)?)?;
    if !cover.is_connected() {
        return Err(Error::InvalidCover("cover is disconnected".into()));
    }
    Ok(cover)
}

/// Zero orders predicted by the local rule: a point of ramification index
/// `e` over a zero of order `m` is a zero of order `e(m + 1) − 1`.
pub fn predicted_profile(o: &Origami, data: &CoverData) -> Result<Stratum> {
    let cx = build_chain_complex(o)?;
    let mut alpha = Vec::new();
    for w in 0..cx.vertex_count() {
        let angle = cx.cone_angle[w];
        for e in data.vertex_monodromy(o, w)?.cycle_type() {
            let order = e * angle - 1;
            if order > 0 {
                alpha.push(order as u32);
            }
        }
    }
    Stratum::new(alpha)
}

/// Both sides of `2g′ − 2 = k(2g − 2) + Σ(e − 1)`.
pub fn riemann_hurwitz(o: &Origami, data: &CoverData) -> Result<(i64, i64)> {
    let cover = branched_cover(o, data)?;
    let lhs = 2 * genus(&cover)? as i64 - 2;
    let cx = build_chain_complex(o)?;
    let mut ramification = 0i64;
    for w in 0..cx.vertex_count() {
        ramification += data
            .vertex_monodromy(o, w)?
            .cycle_type()
            .iter()
            .map(|&e| e as i64 - 1)
            .sum::<i64>();
    }
    let rhs = data.degree as i64 * (2 * genus(o)? as i64 - 2) + ramification;
    Ok((lhs, rhs))
}

/// Zero profile of the cover, cross-checked against the local rule.
pub fn cover_profile(o: &Origami, data: &CoverData) -> Result<Stratum> {
    let profile = singularity_profile(&branched_cover(o, data)?)?;
    let predicted = predicted_profile(o, data)?;
    if profile != predicted {
        return Err(Error::Inconsistent(format!(
            "cover profile {profile} differs from prediction {predicted}"
        )));
    }
    Ok(profile)
}
