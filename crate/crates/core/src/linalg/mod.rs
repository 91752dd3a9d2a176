//! Exact integer and rational linear algebra.
//!
//! The engine is a sparse Smith normal form over arbitrary-precision
//! integers ([`Smith`]); [`IntMatrix`] is a small dense front end.

mod smith;
mod sparse;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use smith::{Ring, Smith, Track};
pub use sparse::{add_entry, axpy, dot, SparseMatrix, SparseVec};

/// Dense matrix of big integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
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
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
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

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix::from_rows(self.cols, rows)
    }

    pub fn from_sparse(m: &SparseMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for (j, x) in m.row(i) {
                out[(i, *j)] = x.clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let w = cells.iter().map(|s| s.len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> =
                (0..self.cols).map(|j| format!("{:>w$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// `(U, D, V)` with `U M V = D`, `D` diagonal with `d_i | d_{i+1}`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = Smith::compute(&m.to_sparse(), Track { u: true, u_inv: false, v: true, v_inv: false });
    let mut row_order: Vec<usize> = s.pivot_rows().to_vec();
    row_order.extend(s.non_pivot_rows());
    let mut col_order: Vec<usize> = s.pivot_cols().to_vec();
    col_order.extend(s.non_pivot_cols());

    let mut u = IntMatrix::zeros(m.rows, m.rows);
    for (new, &old) in row_order.iter().enumerate() {
        for (j, x) in s.u_row(old) {
            u[(new, *j)] = x.clone();
        }
    }
    let mut v = IntMatrix::zeros(m.cols, m.cols);
    for (new, &old) in col_order.iter().enumerate() {
        for (i, x) in s.v_col(old) {
            v[(*i, new)] = x.clone();
        }
    }
    let mut d = IntMatrix::zeros(m.rows, m.cols);
    for (k, f) in s.factors().iter().enumerate() {
        d[(k, k)] = f.clone();
    }
    debug_assert_eq!(u.mul(m).mul(&v), d);
    (u, d, v)
}

pub fn rank(m: &IntMatrix) -> usize {
    Smith::compute(&m.to_sparse(), Track::NONE).rank()
}

/// Primitive integer basis of the right kernel.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = Smith::compute(&m.to_sparse(), Track { u: false, u_inv: false, v: true, v_inv: false });
    s.kernel_basis().iter().map(|v| densify(v, m.cols)).collect()
}

/// Solution of `M x = b`, as rationals (integral whenever `ring` is the integers).
pub fn solve(m: &IntMatrix, b: &[BigInt], ring: Ring) -> Result<Vec<BigRational>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(b.len(), m.rows));
    }
    let s = Smith::compute(&m.to_sparse(), Track::SOLVE);
    let bs = sparsify(b);
    match ring {
        Ring::Integers => s
            .solve_int(&bs)
            .map(|x| densify(&x, m.cols).into_iter().map(BigRational::from_integer).collect())
            .ok_or(Error::NoSolution),
        Ring::Rationals => s.solve_rat(&bs).ok_or(Error::NoSolution),
    }
}

pub fn densify(v: &SparseVec, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparsify(v: &[BigInt]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Homology of a chain complex of free modules, by Smith normal form.
pub mod complex {
    use super::*;

    /// One degree of homology: free rank, torsion coefficients, and cycle
    /// representatives in the complex's own coordinates (free generators first).
    #[derive(Clone, Debug)]
    pub struct Degree {
        pub rank: usize,
        pub torsion: Vec<BigInt>,
        pub generators: Vec<SparseVec>,
    }

    /// Cycles, boundary presentation and reduction data for one degree.
    pub struct DegreeSolver {
        dim: usize,
        // kernel of the outgoing differential
        outgoing: Smith,
        cycles: Vec<SparseVec>,
        cycle_cols: Vec<usize>,
        // boundaries written in cycle coordinates
        incoming: Smith,
        free_rows: Vec<usize>,
        torsion_rows: Vec<(usize, BigInt)>,
        generators: Vec<SparseVec>,
    }

    impl DegreeSolver {
        /// `d_out: C_i -> C_{i-1}` and `d_in: C_{i+1} -> C_i`, either may be absent.
        pub fn new(dim: usize, d_out: Option<&SparseMatrix>, d_in: Option<&SparseMatrix>) -> Self {
            let outgoing = match d_out {
                Some(m) => {
                    assert_eq!(m.cols(), dim);
                    Smith::compute(m, Track::KERNEL)
                }
                None => Smith::compute(&SparseMatrix::zeros(0, dim), Track::KERNEL),
            };
            let cycle_cols = outgoing.non_pivot_cols();
            let cycles: Vec<SparseVec> = cycle_cols.iter().map(|&j| outgoing.v_col(j).clone()).collect();
            let z = cycles.len();
            // rows of V^{-1} at non-pivot columns give cycle coordinates
            let mut in_coords: Vec<SparseVec> = Vec::new();
            if let Some(m) = d_in {
                assert_eq!(m.rows(), dim);
                for col in m.columns() {
                    let y = outgoing.apply_v_inv(&col);
                    let mut c = SparseVec::new();
                    for (a, &j) in cycle_cols.iter().enumerate() {
                        if let Some(x) = y.get(&j) {
                            c.insert(a, x.clone());
                        }
                    }
                    in_coords.push(c);
                }
            }
            let presentation = SparseMatrix::from_columns(z, &in_coords);
            let incoming = Smith::compute(&presentation, Track { u: true, u_inv: true, v: false, v_inv: false });
            let free_rows = incoming.non_pivot_rows();
            let torsion_rows: Vec<(usize, BigInt)> = incoming
                .pivot_rows()
                .iter()
                .zip(incoming.factors())
                .filter(|(_, f)| !f.is_one())
                .map(|(r, f)| (*r, f.clone()))
                .collect();
            let expand = |coords: &SparseVec| {
                let mut v = SparseVec::new();
                for (a, x) in coords {
                    axpy(&mut v, x, &cycles[*a]);
                }
                v
            };
            let mut generators: Vec<SparseVec> = free_rows.iter().map(|&r| expand(incoming.u_inv_col(r))).collect();
            generators.extend(torsion_rows.iter().map(|(r, _)| expand(incoming.u_inv_col(*r))));
            DegreeSolver { dim, outgoing, cycles, cycle_cols, incoming, free_rows, torsion_rows, generators }
        }

        pub fn degree(&self) -> Degree {
            Degree {
                rank: self.free_rows.len(),
                torsion: self.torsion_rows.iter().map(|(_, f)| f.clone()).collect(),
                generators: self.generators.clone(),
            }
        }

        pub fn dim(&self) -> usize {
            self.dim
        }

        pub fn cycle_basis(&self) -> &[SparseVec] {
            &self.cycles
        }

        /// Coordinates of the class of cycle `z` against [`Degree::generators`]:
        /// integers for free generators, residues for torsion generators.
        /// `None` if `z` is not a cycle.
        pub fn class_of(&self, z: &SparseVec) -> Option<Vec<BigInt>> {
            let y = self.outgoing.apply_v_inv(z);
            let mut coords = SparseVec::new();
            for (j, x) in &y {
                match self.cycle_cols.binary_search(j) {
                    Ok(a) => {
                        coords.insert(a, x.clone());
                    }
                    Err(_) => return None,
                }
            }
            let w = self.incoming.apply_u(&coords);
            let mut out: Vec<BigInt> =
                self.free_rows.iter().map(|r| w.get(r).cloned().unwrap_or_default()).collect();
            for (r, f) in &self.torsion_rows {
                let x = w.get(r).cloned().unwrap_or_default();
                out.push(num_integer::Integer::mod_floor(&x, f));
            }
            Some(out)
        }
    }

    impl DegreeSolver {
        pub fn is_boundary(&self, z: &SparseVec) -> bool {
            self.class_of(z).is_some_and(|c| c.iter().all(|x| x.is_zero()))
        }
    }
}
