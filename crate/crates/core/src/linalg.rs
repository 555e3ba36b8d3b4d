//! Exact linear algebra over the integers and rationals.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination over
//! arbitrary-precision integers; rational inputs are first scaled row by row
//! to clear denominators. Nothing here touches floating point.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + core::ops::Mul<Output = T> + core::ops::Add<Output = T>,
{
    /// Kronecker product with rows and columns ordered lexicographically.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] =
                            a.clone() * other[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
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
                        let prod = a.clone() * b.clone();
                        let cur = core::mem::replace(&mut out[(i, j)], T::zero());
                        out[(i, j)] = cur + prod;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl Matrix<i64> {
    pub fn to_rational(&self) -> Matrix<Rational> {
        self.map(|&v| rat(v))
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(self.map(|&v| BigInt::from(v)))
    }
}

impl Matrix<BigInt> {
    pub fn rank(&self) -> usize {
        bareiss_rank(self.clone())
    }
}

impl Matrix<Rational> {
    pub fn rank(&self) -> usize {
        bareiss_rank(clear_denominators(self))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

/// Scales each row by the lcm of its denominators.
fn clear_denominators(m: &Matrix<Rational>) -> Matrix<BigInt> {
    let mut out = Matrix::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        let row = m.row(i);
        let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        for (j, q) in row.iter().enumerate() {
            out[(i, j)] = q.numer() * (&lcm / q.denom());
        }
    }
    out
}

/// Rank by fraction-free row reduction. Every stored intermediate entry is a
/// minor of the input, so the division by the previous pivot is exact.
pub fn bareiss_rank(mut a: Matrix<BigInt>) -> usize {
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let pivot = a[(r, c)].clone();
        for i in r + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..cols {
                let v = &pivot * &a[(i, j)] - &lead * &a[(r, j)];
                a[(i, j)] = if prev.is_one() { v } else { v / &prev };
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Rank of a set of sparse vectors.
pub fn sparse_rank(vectors: &[SparseVec], dim: usize) -> usize {
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.to_dense(dim)).collect();
    if rows.is_empty() || dim == 0 {
        return 0;
    }
    Matrix::from_rows(rows).rank()
}

/// Finitely supported rational vector indexed by `usize`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec(BTreeMap<usize, Rational>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.0.insert(i, Rational::one());
        v
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec(
            values
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(i, q)| (i, q.clone()))
                .collect(),
        )
    }

    pub fn get(&self, i: usize) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_at(&mut self, i: usize, q: &Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.0.entry(i).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn axpy(&mut self, a: &Rational, x: &SparseVec) {
        if a.is_zero() {
            return;
        }
        for (&i, q) in &x.0 {
            self.add_at(i, &(a * q));
        }
    }

    pub fn scaled(&self, a: &Rational) -> SparseVec {
        let mut out = SparseVec::new();
        out.axpy(a, self);
        out
    }

    pub fn dot(&self, dense: &[Rational]) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, (&i, q)| acc + q * &dense[i])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(&i, q)| (i, q))
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (&i, q) in &self.0 {
            out[i] = q.clone();
        }
        out
    }
}

/// Square sparse rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zero(n: usize) -> Self {
        SparseMatrix { n, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// The matrix unit `e_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn from_dense(m: &Matrix<Rational>) -> Self {
        assert!(m.is_square());
        let mut out = Self::zero(m.rows());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, m[(i, j)].clone());
            }
        }
        out
    }

    pub fn from_int(m: &Matrix<i64>) -> Self {
        Self::from_dense(&m.to_rational())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, q: Rational) {
        assert!(i < self.n && j < self.n);
        if q.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), q);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, q: &Rational) {
        if q.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_insert_with(Rational::zero);
        *e += q;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.entries.iter().map(|(&k, q)| (k, q))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, a: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        if !a.is_zero() {
            for (&k, q) in &self.entries {
                out.entries.insert(k, a * q);
            }
        }
        out
    }

    pub fn axpy(&mut self, a: &Rational, x: &SparseMatrix) {
        for (&(i, j), q) in &x.entries {
            self.add_at(i, j, &(a * q));
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&Rational::one(), other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-Rational::one(), other);
        out
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            n: self.n,
            entries: self.entries.iter().map(|(&(i, j), q)| ((j, i), q.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(k, j), q) in &other.entries {
            by_row.entry(k).or_default().push((j, q));
        }
        let mut out = Self::zero(self.n);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_at(i, j, &(a * b));
                }
            }
        }
        out
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).minus(&other.mul(self))
    }

    /// `self·other + other·self`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).plus(&other.mul(self))
    }

    /// `trace(self·other)`.
    pub fn trace_product(&self, other: &Self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, (&(i, j), a)| acc + a * other.get(j, i))
    }

    pub fn to_dense(&self) -> Matrix<Rational> {
        let mut m = Matrix::zeros(self.n, self.n);
        for (&(i, j), q) in &self.entries {
            m[(i, j)] = q.clone();
        }
        m
    }

    /// Entries as a vector indexed by `i·n + j`.
    pub fn flatten(&self) -> SparseVec {
        SparseVec(self.entries.iter().map(|(&(i, j), q)| (i * self.n + j, q.clone())).collect())
    }

    pub fn unflatten(n: usize, v: &SparseVec) -> Self {
        let mut m = Self::zero(n);
        for (k, q) in v.iter() {
            m.set(k / n, k % n, q.clone());
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.to_dense().rank()
    }

    /// Conjugate `p · self · p⁻¹` given both factors.
    pub fn conjugate(&self, p: &Self, p_inv: &Self) -> Self {
        p.mul(self).mul(p_inv)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut out = Self::zero(n);
        for (&(i, j), q) in &self.entries {
            out.set(i, j, q.clone());
        }
        for (&(i, j), q) in &other.entries {
            out.set(self.n + i, self.n + j, q.clone());
        }
        out
    }
}

/// Expresses vectors in coordinates over a fixed linearly independent family.
///
/// The family is put into reduced row echelon form once, keeping the
/// transformation back to the original basis.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
    transform: Vec<SparseVec>,
}

impl SpanSolver {
    /// Returns `None` when the family is linearly dependent.
    pub fn new(basis: Vec<SparseVec>) -> Option<Self> {
        let d = basis.len();
        let mut rows: Vec<SparseVec> = basis.clone();
        let mut transform: Vec<SparseVec> = (0..d).map(SparseVec::unit).collect();
        let mut pivots = Vec::with_capacity(d);
        for r in 0..d {
            // pick the remaining row whose leading index is smallest
            let best = (r..d)
                .filter_map(|i| rows[i].0.keys().next().map(|&k| (k, i)))
                .min()?;
            rows.swap(r, best.1);
            transform.swap(r, best.1);
            let col = best.0;
            let inv = rows[r].get(col).recip();
            rows[r] = rows[r].scaled(&inv);
            transform[r] = transform[r].scaled(&inv);
            for i in 0..d {
                if i == r {
                    continue;
                }
                let f = rows[i].get(col);
                if !f.is_zero() {
                    let (pr, pt) = (rows[r].clone(), transform[r].clone());
                    rows[i].axpy(&-f.clone(), &pr);
                    transform[i].axpy(&-f, &pt);
                }
            }
            pivots.push(col);
        }
        Some(SpanSolver { basis, pivots, transform })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut coords = SparseVec::new();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = v.get(p);
            if !c.is_zero() {
                coords.axpy(&c, &self.transform[r]);
            }
        }
        let mut check = v.clone();
        for (a, q) in coords.iter() {
            check.axpy(&-q.clone(), &self.basis[a]);
        }
        check.is_zero().then_some(coords)
    }
}

/// Exact inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn inverse(m: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = Matrix::<Rational>::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
        for j in 0..n {
            a.data.swap(p * n + j, c * n + j);
            inv.data.swap(p * n + j, c * n + j);
        }
        let f = a[(c, c)].recip();
        for j in 0..n {
            a[(c, j)] = &a[(c, j)] * &f;
            inv[(c, j)] = &inv[(c, j)] * &f;
        }
        for i in 0..n {
            if i == c || a[(i, c)].is_zero() {
                continue;
            }
            let g = a[(i, c)].clone();
            for j in 0..n {
                let (x, y) = (&a[(c, j)] * &g, &inv[(c, j)] * &g);
                a[(i, j)] -= x;
                inv[(i, j)] -= y;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain rational Gaussian elimination, independent of the Bareiss path.
    fn naive_rank(m: &Matrix<Rational>) -> usize {
        let mut rows = m.to_rows();
        let cols = m.cols();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let (top, rest) = rows.split_at_mut(rank + 1);
            let pivot = &top[rank];
            for row in rest {
                let f = &row[c] / &pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * y;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_of_small_matrices() {
        let m = Matrix::from_rows(vec![vec![1i64, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::<i64>::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::<i64>::identity(5).rank(), 5);
        let q = Matrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 2), rat(1)]]);
        assert_eq!(q.rank(), 1);
    }

    #[test]
    fn span_solver_coordinates() {
        let basis = vec![
            SparseVec::from_dense(&[rat(1), rat(1), rat(0)]),
            SparseVec::from_dense(&[rat(0), rat(1), rat(-1)]),
        ];
        let solver = SpanSolver::new(basis).unwrap();
        let v = SparseVec::from_dense(&[rat(2), rat(5), rat(-3)]);
        let c = solver.coordinates(&v).unwrap();
        assert_eq!(c.get(0), rat(2));
        assert_eq!(c.get(1), rat(3));
        assert!(solver.coordinates(&SparseVec::unit(0)).is_none());
        let dependent = vec![SparseVec::unit(0), SparseVec::unit(0).scaled(&rat(2))];
        assert!(SpanSolver::new(dependent).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(-1), rat(3)]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(inverse(&Matrix::<Rational>::zeros(2, 2)).is_none());
    }

    #[test]
    fn sparse_products_match_dense() {
        let a = SparseMatrix::unit(3, 0, 1).plus(&SparseMatrix::unit(3, 1, 2).scaled(&rat(2)));
        let b = SparseMatrix::unit(3, 1, 0).plus(&SparseMatrix::unit(3, 2, 2));
        assert_eq!(a.mul(&b).to_dense(), a.to_dense().mul(&b.to_dense()));
        assert_eq!(a.trace_product(&b), rat(1));
        assert_eq!(SparseMatrix::unflatten(3, &a.flatten()), a);
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_naive_elimination(
            rows in 1usize..6,
            cols in 1usize..6,
            seed in proptest::collection::vec(-3i64..=3, 36),
            den in proptest::collection::vec(1i64..=4, 36),
        ) {
            let m = Matrix::from_rows((0..rows)
                .map(|i| (0..cols).map(|j| ratio(seed[i * 6 + j], den[i * 6 + j])).collect())
                .collect());
            prop_assert_eq!(m.rank(), naive_rank(&m));
            prop_assert_eq!(m.transpose().rank(), m.rank());
        }
    }
}
