//! Column-sparse matrices over a commutative ring.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// The ring operations matrix code needs.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

/// Each column holds its nonzero entries sorted by row.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    cols: Vec<Vec<(usize, T)>>,
}

impl<T: Ring> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (j, col) in m.cols.iter_mut().enumerate() {
            col.push((j, T::one()));
        }
        m
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); ncols];
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "entry ({i},{j}) outside {nrows}x{ncols}");
            let slot = acc[j].entry(i).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        SparseMatrix {
            nrows,
            cols: acc
                .into_iter()
                .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, T)>>) -> Self {
        let ncols = cols.len();
        Self::from_triplets(
            nrows,
            ncols,
            cols.into_iter().enumerate().flat_map(|(j, c)| c.into_iter().map(move |(i, v)| (i, j, v))),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.cols.len())
    }

    pub fn col(&self, j: usize) -> &[(usize, T)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.cols[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.ncols(), self.nrows, self.entries().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix::from_triplets(self.nrows, self.ncols(), self.entries().map(|(i, j, v)| (i, j, f(v))))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    /// `self · v` for a sparse column vector.
    pub fn apply(&self, v: &[(usize, T)]) -> Vec<(usize, T)> {
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for (k, x) in v {
            for (i, a) in &self.cols[*k] {
                let slot = acc.entry(*i).or_insert_with(T::zero);
                *slot = slot.clone() + a.clone() * x.clone();
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &SparseMatrix<T>) -> SparseMatrix<T> {
        assert_eq!(self.ncols(), rhs.nrows, "shape mismatch in product");
        SparseMatrix {
            nrows: self.nrows,
            cols: rhs.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &SparseMatrix<T>) -> SparseMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        Self::from_triplets(
            self.nrows,
            self.ncols(),
            self.entries().chain(rhs.entries()).map(|(i, j, v)| (i, j, v.clone())),
        )
    }

    pub fn sub(&self, rhs: &SparseMatrix<T>) -> SparseMatrix<T> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> SparseMatrix<T> {
        self.map(|v| -v.clone())
    }

    /// Dense copy, mainly for tests and small oracles.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.ncols()]; self.nrows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }
}

impl<T: Ring> Debug for SparseMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparseMatrix {}x{} [", self.nrows, self.ncols())?;
        for (i, j, v) in self.entries() {
            write!(f, " ({i},{j}):{v:?}")?;
        }
        write!(f, " ]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb(n: usize, m: usize) -> impl Strategy<Value = SparseMatrix<i64>> {
        proptest::collection::vec((0..n, 0..m, -3i64..4), 0..8)
            .prop_map(move |t| SparseMatrix::from_triplets(n, m, t))
    }

    #[test]
    fn identity_is_neutral() {
        let a = SparseMatrix::from_triplets(2, 3, vec![(0, 1, 2i64), (1, 2, -1)]);
        assert_eq!(SparseMatrix::identity(2).compose(&a), a);
        assert_eq!(a.compose(&SparseMatrix::identity(3)), a);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn duplicates_cancel() {
        let a = SparseMatrix::from_triplets(1, 1, vec![(0, 0, 1i64), (0, 0, -1)]);
        assert!(a.is_zero());
        assert_eq!(a.nnz(), 0);
    }

    proptest! {
        #[test]
        fn product_is_associative(a in arb(3, 4), b in arb(4, 2), c in arb(2, 3)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert_eq!(a.compose(&b).transpose(), b.transpose().compose(&a.transpose()));
        }
    }
}
