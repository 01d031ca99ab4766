//! Cellular homology of origamis and their period vectors.
//!
//! Cells: square `s` is face `s`; edge `s` is its bottom edge (oriented left
//! to right, period `1`) and edge `n + s` its left edge (oriented bottom to
//! top, period `i`). Vertices are the classes of bottom-left corners, numbered
//! by first appearance in square order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::matrix::{free_quotient_basis, kernel_basis};
use crate::exactmath::{GaussianRational, IntMatrix};
use crate::origami::{singularity_profile, Origami, Stratum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    /// Bottom edge of a square.
    Bottom(usize),
    /// Left edge of a square.
    Left(usize),
}

impl Edge {
    pub fn from_index(e: usize, squares: usize) -> Edge {
        if e < squares {
            Edge::Bottom(e)
        } else {
            Edge::Left(e - squares)
        }
    }

    pub fn index(self, squares: usize) -> usize {
        match self {
            Edge::Bottom(s) => s,
            Edge::Left(s) => squares + s,
        }
    }

    pub fn period(self) -> GaussianRational {
        match self {
            Edge::Bottom(_) => GaussianRational::one(),
            Edge::Left(_) => GaussianRational::i(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    squares: usize,
    /// Edges → vertices, `V × 2n`.
    pub d1: IntMatrix,
    /// Faces → edges, `2n × n`.
    pub d2: IntMatrix,
    /// Vertex at the bottom-left corner of each square.
    pub corner_vertex: Vec<usize>,
    /// Cone angle of each vertex in multiples of `2π`.
    pub cone_angle: Vec<usize>,
}

impl ChainComplex {
    pub fn squares(&self) -> usize {
        self.squares
    }

    pub fn vertex_count(&self) -> usize {
        self.cone_angle.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.squares
    }

    pub fn face_count(&self) -> usize {
        self.squares
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Vertices with cone angle above `2π`, i.e. the zeros of the differential.
    pub fn singular_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&x| self.cone_angle[x] > 1).collect()
    }

    /// Endpoints `(tail, head)` of an edge.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let col = self.d1.column(e);
        let mut tail = None;
        let mut head = None;
        for (x, c) in col.iter().enumerate() {
            if c.is_negative() {
                tail = Some(x);
            } else if c.is_positive() {
                head = Some(x);
            }
        }
        match (tail, head) {
            (Some(t), Some(h)) => (t, h),
            // A loop has zero boundary; recover its vertex from the corner table.
            _ => (self.edge_tail(e), self.edge_tail(e)),
        }
    }

    fn edge_tail(&self, e: usize) -> usize {
        let s = if e < self.squares { e } else { e - self.squares };
        self.corner_vertex[s]
    }

    /// Period of an edge chain.
    pub fn period(&self, chain: &[BigInt]) -> GaussianRational {
        let n = self.squares;
        let re: BigInt = chain[..n].iter().sum();
        let im: BigInt = chain[n..].iter().sum();
        GaussianRational::new(re.into(), im.into())
    }
}

pub fn build_chain_complex(o: &Origami) -> Result<ChainComplex> {
    o.ensure_valid()?;
    let n = o.squares();
    let corners = o.corner_permutation();
    let mut corner_vertex = vec![usize::MAX; n];
    let mut cone_angle = Vec::new();
    for s in 0..n {
        if corner_vertex[s] != usize::MAX {
            continue;
        }
        let id = cone_angle.len();
        let mut x = s;
        let mut len = 0;
        while corner_vertex[x] == usize::MAX {
            corner_vertex[x] = id;
            len += 1;
            x = corners.apply(x);
        }
        cone_angle.push(len);
    }
    let vcount = cone_angle.len();
    let mut d1 = IntMatrix::zeros(vcount, 2 * n);
    let mut d2 = IntMatrix::zeros(2 * n, n);
    for s in 0..n {
        let (hs, vs) = (o.h().apply(s), o.v().apply(s));
        d1[(corner_vertex[hs], s)] += 1;
        d1[(corner_vertex[s], s)] -= 1;
        d1[(corner_vertex[vs], n + s)] += 1;
        d1[(corner_vertex[s], n + s)] -= 1;
        d2[(s, s)] += 1;
        d2[(n + hs, s)] += 1;
        d2[(vs, s)] -= 1;
        d2[(n + s, s)] -= 1;
    }
    debug_assert!(d1.checked_mul(&d2).expect("shapes").is_zero());
    Ok(ChainComplex { squares: n, d1, d2, corner_vertex, cone_angle })
}

/// A basis of `H₁(S, Z; ℤ)` given by integer edge chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeHomologyBasis {
    /// Edge chains of length `2n`.
    pub cycles: Vec<Vec<BigInt>>,
    pub rank: usize,
    /// Marked vertices `Z` (empty for absolute homology).
    pub marked: Vec<usize>,
}

impl Serialize for RelativeHomologyBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Export<'a> {
            rank: usize,
            marked: &'a [usize],
            cycles: Vec<BTreeMap<usize, String>>,
        }
        let cycles = self
            .cycles
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(e, x)| (e, x.to_string()))
                    .collect()
            })
            .collect();
        Export { rank: self.rank, marked: &self.marked, cycles }.serialize(s)
    }
}

/// Relative homology with respect to the singular vertices.
pub fn relative_homology_basis(o: &Origami) -> Result<RelativeHomologyBasis> {
    let cx = build_chain_complex(o)?;
    let marked = cx.singular_vertices();
    let basis = homology_basis(&cx, &marked)?;
    let expected = if marked.is_empty() {
        2
    } else {
        2 * singularity_profile(o)?.genus() as usize + marked.len() - 1
    };
    if basis.rank != expected {
        return Err(Error::Inconsistent(format!(
            "relative rank {} differs from expected {expected}",
            basis.rank
        )));
    }
    Ok(basis)
}

/// Absolute homology `H₁(S; ℤ)`, rank `2g`.
pub fn absolute_homology_basis(o: &Origami) -> Result<RelativeHomologyBasis> {
    let cx = build_chain_complex(o)?;
    homology_basis(&cx, &[])
}

/// Basis of `H₁(S, marked)`: collapse the marked vertices, contract a
/// spanning tree (lowest edge index first), then split off the face
/// relations by Smith normal form.
pub fn homology_basis(cx: &ChainComplex, marked: &[usize]) -> Result<RelativeHomologyBasis> {
    let vcount = cx.vertex_count();
    let ecount = cx.edge_count();
    // Collapsed graph: marked vertices share one node.
    let mut node = vec![0usize; vcount];
    let mut next = 1;
    for x in 0..vcount {
        if marked.contains(&x) || (marked.is_empty() && x == 0) {
            node[x] = 0;
        } else {
            node[x] = next;
            next += 1;
        }
    }
    let nodes = next;

    let mut uf: Vec<usize> = (0..nodes).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let up = uf[y];
            uf[y] = r;
            y = up;
        }
        r
    }
    let mut tree = Vec::new();
    let mut non_tree = Vec::new();
    for e in 0..ecount {
        let (t, h) = cx.endpoints(e);
        let (a, b) = (find(&mut uf, node[t]), find(&mut uf, node[h]));
        if a == b {
            non_tree.push(e);
        } else {
            uf[a] = b;
            tree.push(e);
        }
    }

    // Chain from the root node 0 to every node along the tree.
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); nodes];
    for &e in &tree {
        let (t, h) = cx.endpoints(e);
        adj[node[t]].push((node[h], e, 1));
        adj[node[h]].push((node[t], e, -1));
    }
    let mut path: Vec<Option<Vec<BigInt>>> = vec![None; nodes];
    path[0] = Some(vec![BigInt::zero(); ecount]);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &(y, e, sign) in &adj[x] {
            if path[y].is_none() {
                let mut p = path[x].clone().expect("visited");
                p[e] += sign;
                path[y] = Some(p);
                stack.push(y);
            }
        }
    }
    let path: Vec<Vec<BigInt>> = path
        .into_iter()
        .map(|p| p.ok_or_else(|| Error::Inconsistent("surface graph is disconnected".into())))
        .collect::<Result<_>>()?;

    let fundamental: Vec<Vec<BigInt>> = non_tree
        .iter()
        .map(|&e| {
            let (t, h) = cx.endpoints(e);
            let mut c: Vec<BigInt> =
                path[node[t]].iter().zip(&path[node[h]]).map(|(a, b)| a - b).collect();
            c[e] += 1;
            c
        })
        .collect();

    // Faces in fundamental-cycle coordinates are their non-tree entries.
    let relations = cx.d2.select_rows(&non_tree);
    let quotient = free_quotient_basis(&relations)?;
    let cycles: Vec<Vec<BigInt>> = (0..quotient.cols())
        .map(|j| {
            let mut c = vec![BigInt::zero(); ecount];
            for (k, f) in fundamental.iter().enumerate() {
                let coeff = &quotient[(k, j)];
                if !coeff.is_zero() {
                    for (ce, fe) in c.iter_mut().zip(f) {
                        *ce += coeff * fe;
                    }
                }
            }
            c
        })
        .collect();

    let rank = cycles.len();
    let cross = ecount - relative_d1(cx, marked).rank() - cx.d2.rank();
    if rank != cross {
        return Err(Error::Inconsistent(format!(
            "homology rank {rank} disagrees with rank count {cross}"
        )));
    }
    Ok(RelativeHomologyBasis { cycles, rank, marked: marked.to_vec() })
}

/// `d1` with the marked vertex rows removed.
fn relative_d1(cx: &ChainComplex, marked: &[usize]) -> IntMatrix {
    let keep: Vec<usize> = (0..cx.vertex_count()).filter(|x| !marked.contains(x)).collect();
    cx.d1.select_rows(&keep)
}

/// Exact periods of a set of chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodVector {
    pub entries: Vec<GaussianRational>,
}

impl Serialize for PeriodVector {
    /// Each entry as a `[re, im]` pair of exact rational strings.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> =
            self.entries.iter().map(|z| [z.re.to_string(), z.im.to_string()]).collect();
        pairs.serialize(s)
    }
}

impl PeriodVector {
    pub fn scaled(&self, k: &GaussianRational) -> PeriodVector {
        PeriodVector { entries: self.entries.iter().map(|z| z * k).collect() }
    }

    /// Index of the subgroup of `ℤ[i]` spanned by the entries, or `None` if
    /// some entry is not a Gaussian integer or the span has rank below 2.
    pub fn lattice_index(&self) -> Option<BigInt> {
        let mut vecs = Vec::new();
        for z in &self.entries {
            if !z.is_gaussian_integer() {
                return None;
            }
            vecs.push((z.re.to_integer(), z.im.to_integer()));
        }
        let mut g = BigInt::zero();
        for i in 0..vecs.len() {
            for j in i + 1..vecs.len() {
                let minor = &vecs[i].0 * &vecs[j].1 - &vecs[i].1 * &vecs[j].0;
                g = g.gcd(&minor);
            }
        }
        (!g.is_zero()).then_some(g)
    }
}

/// Periods of the basis cycles; errors unless every cycle is a relative
/// cycle of `o` for the recorded marked set.
pub fn period_vector(o: &Origami, b: &RelativeHomologyBasis) -> Result<PeriodVector> {
    let cx = build_chain_complex(o)?;
    if b.marked.iter().any(|&x| x >= cx.vertex_count()) {
        return Err(Error::InvalidInput("basis marks a vertex the origami lacks".into()));
    }
    let d1 = relative_d1(&cx, &b.marked);
    let mut entries = Vec::with_capacity(b.cycles.len());
    for c in &b.cycles {
        if c.len() != cx.edge_count() || !d1.mul_vec(c).iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("basis does not belong to this origami".into()));
        }
        entries.push(cx.period(c));
    }
    Ok(PeriodVector { entries })
}

/// `n_z − 1`, or `0` for the torus.
pub fn rel_space_rank(s: &Stratum) -> usize {
    s.zero_count().saturating_sub(1)
}

/// Cup-product pairing on a basis of `H¹(S; ℤ)`; a unimodular skew form of size `2g`.
pub fn intersection_form(o: &Origami) -> Result<IntMatrix> {
    let cx = build_chain_complex(o)?;
    let n = cx.squares();
    let cocycles = kernel_basis(&cx.d2.transpose());
    let coboundaries = cocycles.coords.checked_mul(&cx.d1.transpose())?;
    let classes = cocycles.basis.checked_mul(&free_quotient_basis(&coboundaries)?)?;
    let k = classes.cols();
    let mut form = IntMatrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            let mut acc = BigInt::zero();
            for s in 0..n {
                let (hs, vs) = (o.h().apply(s), o.v().apply(s));
                acc += &classes[(s, a)] * &classes[(n + hs, b)];
                acc -= &classes[(n + s, a)] * &classes[(vs, b)];
            }
            form[(a, b)] = acc;
        }
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn torus_complex() {
        let cx = build_chain_complex(&Origami::torus()).unwrap();
        assert_eq!((cx.vertex_count(), cx.edge_count(), cx.face_count()), (1, 2, 1));
        assert_eq!(cx.euler_characteristic(), 0);
        let b = relative_homology_basis(&Origami::torus()).unwrap();
        assert_eq!(b.rank, 2);
        let p = period_vector(&Origami::torus(), &b).unwrap();
        assert_eq!(p.entries, vec![gi(1, 0), gi(0, 1)]);
    }

    #[test]
    fn l_shape() {
        let l = Origami::l_shape();
        let cx = build_chain_complex(&l).unwrap();
        assert_eq!((cx.vertex_count(), cx.edge_count(), cx.face_count()), (1, 6, 3));
        assert_eq!(cx.euler_characteristic(), -2);
        let b = relative_homology_basis(&l).unwrap();
        assert_eq!(b.rank, 4);
        let p = period_vector(&l, &b).unwrap();
        assert!(p.entries.iter().all(GaussianRational::is_gaussian_integer));
        let abs = absolute_homology_basis(&l).unwrap();
        assert_eq!(abs.rank, 4);
        assert_eq!(period_vector(&l, &abs).unwrap().lattice_index(), Some(BigInt::one()));
    }

    #[test]
    fn two_zero_stratum() {
        let strata11: Vec<Origami> = crate::origami::enumerate_origamis(4)
            .unwrap()
            .into_iter()
            .filter(|o| singularity_profile(o).unwrap().alpha() == [1, 1])
            .collect();
        assert!(!strata11.is_empty());
        for o in strata11 {
            let b = relative_homology_basis(&o).unwrap();
            assert_eq!(b.rank, 5);
            assert_eq!(absolute_homology_basis(&o).unwrap().rank, 4);
            let p = period_vector(&o, &b).unwrap();
            assert!(p.entries.iter().all(GaussianRational::is_gaussian_integer));
        }
    }
    #[test]
    fn rel_ranks() {
        assert_eq!(rel_space_rank(&Stratum::new(vec![2]).unwrap()), 0);
        assert_eq!(rel_space_rank(&Stratum::new(vec![1, 1]).unwrap()), 1);
        assert_eq!(rel_space_rank(&Stratum::new(vec![1, 1, 1, 1]).unwrap()), 3);
        assert_eq!(rel_space_rank(&Stratum::torus()), 0);
    }

    #[test]
    fn intersection_forms() {
        let f = intersection_form(&Origami::torus()).unwrap();
        assert_eq!(f.rows(), 2);
        assert_eq!(f.determinant().unwrap().abs(), BigInt::one());
        let f = intersection_form(&Origami::l_shape()).unwrap();
        assert_eq!(f.rows(), 4);
        assert_eq!(f.transpose(), neg(&f));
        assert_eq!(f.determinant().unwrap(), BigInt::one());
    }

    fn neg(m: &IntMatrix) -> IntMatrix {
        let mut out = m.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = -&m[(i, j)];
            }
        }
        out
    }

    #[test]
    fn foreign_basis_rejected() {
        let b = relative_homology_basis(&Origami::l_shape()).unwrap();
        assert!(period_vector(&Origami::torus(), &b).is_err());
    }
}
