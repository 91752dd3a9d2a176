use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sparse integer vector keyed by coordinate.
pub type SparseVec = BTreeMap<usize, BigInt>;

/// `v[i] += f * w[i]` for all `i`, dropping zeros.
pub fn axpy(v: &mut SparseVec, f: &BigInt, w: &SparseVec) {
    if f.is_zero() {
        return;
    }
    for (i, x) in w {
        add_entry(v, *i, f * x);
    }
}

pub fn add_entry(v: &mut SparseVec, i: usize, x: BigInt) {
    if x.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(BigInt::zero);
    *e += x;
    if e.is_zero() {
        v.remove(&i);
    }
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> BigInt {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut s = BigInt::zero();
    for (i, x) in small {
        if let Some(y) = large.get(i) {
            s += x * y;
        }
    }
    s
}

/// Row-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    /// Builds from column vectors, each indexed by row.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = SparseMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                assert!(*i < rows, "row index {i} out of range");
                m.data[*i].insert(j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            if let Some((&j, _)) = r.iter().next_back() {
                assert!(j < cols, "column index {j} out of range");
            }
        }
        SparseMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: BigInt) {
        add_entry(&mut self.data[i], j, x);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r {
                cols[*j].insert(i, x.clone());
            }
        }
        cols
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix { rows: self.cols, cols: self.rows, data: self.columns() }
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, r) in self.data.iter().enumerate() {
            let s = dot(r, x);
            if !s.is_zero() {
                out.insert(i, s);
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, x) in r {
                axpy(&mut acc, x, &other.data[*k]);
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn identity(n: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, BigInt::one());
        }
        m
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> SparseMatrix {
        SparseMatrix {
            rows: keep.len(),
            cols: self.cols,
            data: keep.iter().map(|&i| self.data[i].clone()).collect(),
        }
    }

    /// Keeps the listed columns, renumbered in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> SparseMatrix {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, &j)| (j, a)).collect();
        let data = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .filter_map(|(j, x)| pos.get(j).map(|&a| (a, x.clone())))
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: keep.len(), data }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hcat");
        let mut out = self.clone();
        out.cols += other.cols;
        for (i, r) in other.data.iter().enumerate() {
            for (j, x) in r {
                out.data[i].insert(self.cols + j, x.clone());
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vcat");
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend(other.data.iter().cloned());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub(crate) fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }
}

/// Column-index companion used during elimination.
pub(crate) fn column_index(rows: &[SparseVec], cols: usize) -> Vec<BTreeSet<usize>> {
    let mut idx = vec![BTreeSet::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for j in r.keys() {
            idx[*j].insert(i);
        }
    }
    idx
}
