//! Dense integer matrices and the Smith normal form.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        })
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(k, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch(self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        SmithForm::compute(self).rank
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row_dst += q · row_src`
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * q;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// `col_dst += q · col_src`
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * q;
            self.data[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, other: &IntMatrix) -> IntMatrix {
        self.checked_mul(other).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `D = U·A·V` together with the inverses of the transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithForm {
    /// Classical pivoting: at each stage the nonzero entry of least absolute
    /// value in the trailing block is moved to the pivot, its row and column
    /// are cleared by Euclidean steps, and divisibility of the remaining block
    /// is enforced by folding an offending row into the pivot row.
    pub fn compute(a: &IntMatrix) -> SmithForm {
        let (m, n) = (a.rows, a.cols);
        let mut d = a.clone();
        let mut u = IntMatrix::identity(m);
        let mut u_inv = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        let mut v_inv = IntMatrix::identity(n);

        // Row and column operations are mirrored on U, U⁻¹, V, V⁻¹.
        let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst: usize, src: usize, q: &BigInt| {
            d.add_row_multiple(dst, src, q);
            u.add_row_multiple(dst, src, q);
            u_inv.add_col_multiple(src, dst, &-q);
        };
        let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst: usize, src: usize, q: &BigInt| {
            d.add_col_multiple(dst, src, q);
            v.add_col_multiple(dst, src, q);
            v_inv.add_row_multiple(src, dst, &-q);
        };

        let mut rank = 0;
        for t in 0..m.min(n) {
            let Some((pi, pj)) = min_abs_entry(&d, t) else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = round_div(&d[(i, t)], &d[(t, t)]);
                    row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
                    if !d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    if d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = round_div(&d[(t, j)], &d[(t, t)]);
                    col_add(&mut d, &mut v, &mut v_inv, j, t, &-q);
                    if !d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // Smaller remainders appeared in row/column t: re-pivot within them.
                    let (pi, pj) = min_abs_cross(&d, t);
                    d.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                    u_inv.swap_cols(t, pi);
                    d.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                    v_inv.swap_rows(t, pj);
                    continue;
                }
                let pivot = d[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => row_add(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                    None => break,
                }
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
                u_inv.negate_col(t);
            }
            rank += 1;
        }
        SmithForm { d, u, v, u_inv, v_inv, rank }
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// `smith_normal_form(A) = (D, U, V)` with `D = U·A·V`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = SmithForm::compute(a);
    (s.d, s.u, s.v)
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // Nearest-integer quotient keeps remainders at most |b|/2.
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2;
    if twice.abs() > b.abs() {
        q + BigInt::one()
    } else {
        q
    }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let a = d[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(p, _)| p)
}

fn min_abs_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = ((t, t), d[(t, t)].abs());
    let cand = (t + 1..d.rows).map(|i| (i, t)).chain((t + 1..d.cols).map(|j| (t, j)));
    for (i, j) in cand {
        let a = d[(i, j)].abs();
        if !a.is_zero() && (best.1.is_zero() || a < best.1) {
            best = ((i, j), a);
        }
    }
    best.0
}

/// A `Z`-basis of `ker(A)` (as matrix columns) and the matrix taking kernel
/// vectors to their coordinates in that basis.
pub(crate) struct KernelBasis {
    pub basis: IntMatrix,
    /// `coords · x` gives the coordinates of `x ∈ ker(A)`.
    pub coords: IntMatrix,
}

pub(crate) fn kernel_basis(a: &IntMatrix) -> KernelBasis {
    let s = SmithForm::compute(a);
    let idx: Vec<usize> = (s.rank..a.cols).collect();
    KernelBasis {
        basis: s.v.select_columns(&idx),
        coords: s.v_inv.select_rows(&idx),
    }
}

/// Free quotient `Z^k / im(M)`: returns a basis as columns of an integer
/// matrix, or an error when the quotient has torsion.
pub(crate) fn free_quotient_basis(m: &IntMatrix) -> Result<IntMatrix> {
    let s = SmithForm::compute(m);
    if let Some(f) = s.invariant_factors().iter().find(|f| !f.is_one()) {
        return Err(Error::Inconsistent(format!("quotient has torsion (invariant factor {f})")));
    }
    let idx: Vec<usize> = (s.rank..m.rows).collect();
    Ok(s.u_inv.select_columns(&idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = SmithForm::compute(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        s
    }

    #[test]
    fn identity_is_its_own_form() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        // Oracle: gcd(2,3) = 1 and the product of invariant factors is |det| = 6;
        // explicitly, adding row 2 to row 1 and column-reducing gives diag(1, 6).
        let s = check(&IntMatrix::diagonal(2, 2, &[2, 3]));
        assert_eq!(s.d, IntMatrix::diagonal(2, 2, &[1, 6]));
    }

    #[test]
    fn zero_matrix_stays_zero() {
        let s = check(&IntMatrix::zeros(3, 2));
        assert!(s.d.is_zero());
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn rectangular() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let s = check(&a);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_rows(&[vec![0, 2, 1], vec![1, 0, 0], vec![3, 1, 1]]).unwrap();
        assert_eq!(a.determinant().unwrap(), BigInt::from(-1));
    }
}
