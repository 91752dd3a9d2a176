use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::sparse::{axpy, column_index, SparseMatrix, SparseVec};

/// Which transforms to record alongside `U M V = D`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
    pub const SOLVE: Track = Track { u: true, u_inv: false, v: true, v_inv: false };
    pub const KERNEL: Track = Track { u: false, u_inv: false, v: true, v_inv: true };
}

/// Coefficient ring for [`Smith::solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
}

/// Sparse Smith normal form `U M V = D`.
///
/// Pivots keep their original row and column positions; `D` has its
/// non-zero entries at `(pivot_rows[k], pivot_cols[k])` with values
/// `factors[k]`, positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    rows: usize,
    cols: usize,
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    factors: Vec<BigInt>,
    // U and V^{-1} are stored by rows, U^{-1} and V by columns
    u: Option<Vec<SparseVec>>,
    u_inv: Option<Vec<SparseVec>>,
    v: Option<Vec<SparseVec>>,
    v_inv: Option<Vec<SparseVec>>,
}

struct Engine {
    m: Vec<SparseVec>,
    col_idx: Vec<BTreeSet<usize>>,
    row_done: Vec<bool>,
    col_done: Vec<bool>,
    u: Option<Vec<SparseVec>>,
    u_inv: Option<Vec<SparseVec>>,
    v: Option<Vec<SparseVec>>,
    v_inv: Option<Vec<SparseVec>>,
}

fn unit_lines(n: usize) -> Vec<SparseVec> {
    (0..n).map(|i| SparseVec::from([(i, BigInt::one())])).collect()
}

fn is_unit(x: &BigInt) -> bool {
    x.magnitude().is_one()
}

impl Engine {
    /// row_dst += f * row_src
    fn row_op(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        let src_row = self.m[src].clone();
        for (j, x) in &src_row {
            let e = self.m[dst].entry(*j).or_insert_with(BigInt::zero);
            let was_zero = e.is_zero();
            *e += f * x;
            if e.is_zero() {
                self.m[dst].remove(j);
                self.col_idx[*j].remove(&dst);
            } else if was_zero {
                self.col_idx[*j].insert(dst);
            }
        }
        if let Some(u) = &mut self.u {
            let s = u[src].clone();
            axpy(&mut u[dst], f, &s);
        }
        if let Some(ui) = &mut self.u_inv {
            let s = ui[dst].clone();
            axpy(&mut ui[src], &-f, &s);
        }
    }

    /// col_dst += f * col_src
    fn col_op(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        let rows: Vec<usize> = self.col_idx[src].iter().copied().collect();
        for i in rows {
            let x = self.m[i][&src].clone();
            let e = self.m[i].entry(dst).or_insert_with(BigInt::zero);
            let was_zero = e.is_zero();
            *e += f * x;
            if e.is_zero() {
                self.m[i].remove(&dst);
                self.col_idx[dst].remove(&i);
            } else if was_zero {
                self.col_idx[dst].insert(i);
            }
        }
        self.col_op_transforms(dst, src, f);
    }

    fn col_op_transforms(&mut self, dst: usize, src: usize, f: &BigInt) {
        if let Some(v) = &mut self.v {
            let s = v[src].clone();
            axpy(&mut v[dst], f, &s);
        }
        if let Some(vi) = &mut self.v_inv {
            let s = vi[dst].clone();
            axpy(&mut vi[src], &-f, &s);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for x in self.m[r].values_mut() {
            *x = -x.clone();
        }
        if let Some(u) = &mut self.u {
            for x in u[r].values_mut() {
                *x = -x.clone();
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for x in ui[r].values_mut() {
                *x = -x.clone();
            }
        }
    }

    /// Clears column `c` and row `r` around the pivot at `(r, c)`.
    /// Returns a smaller entry if a remainder appeared, so the caller re-pivots.
    fn eliminate(&mut self, r: usize, c: usize) -> Option<(usize, usize)> {
        let p = self.m[r][&c].clone();
        let others: Vec<usize> = self.col_idx[c].iter().copied().filter(|&i| i != r).collect();
        let mut smaller: Option<(usize, usize)> = None;
        for i in others {
            let a = self.m[i][&c].clone();
            let q = a.div_floor(&p);
            self.row_op(i, r, &-q);
            if let Some(rem) = self.m[i].get(&c) {
                if smaller.map_or(true, |(si, sc)| rem.abs() < self.m[si][&sc].abs()) {
                    smaller = Some((i, c));
                }
            }
        }
        if smaller.is_some() {
            return smaller;
        }
        if is_unit(&p) {
            // column c now holds only the pivot, so clearing row r only touches row r
            let row: Vec<(usize, BigInt)> =
                self.m[r].iter().filter(|(j, _)| **j != c).map(|(j, x)| (*j, x.clone())).collect();
            for (j, a) in row {
                let q = &a * &p; // a / p for a unit p
                self.m[r].remove(&j);
                self.col_idx[j].remove(&r);
                self.col_op_transforms(j, c, &-q);
            }
            return None;
        }
        let row: Vec<usize> = self.m[r].keys().copied().filter(|&j| j != c).collect();
        for j in row {
            let a = self.m[r][&j].clone();
            let q = a.div_floor(&p);
            self.col_op(j, c, &-q);
            if let Some(rem) = self.m[r].get(&j) {
                if smaller.map_or(true, |(si, sc)| rem.abs() < self.m[si][&sc].abs()) {
                    smaller = Some((r, j));
                }
            }
        }
        smaller
    }

    fn finish_pivot(&mut self, r: usize, c: usize) {
        self.row_done[r] = true;
        self.col_done[c] = true;
    }

    fn unit_pass(&mut self, pivots: &mut Vec<(usize, usize)>) -> bool {
        let mut found = false;
        for c in 0..self.col_idx.len() {
            if self.col_done[c] {
                continue;
            }
            let best = self.col_idx[c]
                .iter()
                .copied()
                .filter(|&i| !self.row_done[i] && is_unit(&self.m[i][&c]))
                .min_by_key(|&i| (self.m[i].len(), i));
            if let Some(r) = best {
                let left = self.eliminate(r, c);
                debug_assert!(left.is_none());
                self.finish_pivot(r, c);
                pivots.push((r, c));
                found = true;
            }
        }
        found
    }

    fn smallest_active(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (i, row) in self.m.iter().enumerate() {
            if self.row_done[i] {
                continue;
            }
            for (j, x) in row {
                if self.col_done[*j] {
                    continue;
                }
                let cost = (row.len() - 1) * (self.col_idx[*j].len() - 1);
                let key = (x.abs(), cost, i, *j);
                if best.as_ref().map_or(true, |b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }
}

impl Smith {
    pub fn compute(m: &SparseMatrix, track: Track) -> Smith {
        let rows = m.rows();
        let cols = m.cols();
        let data = m.clone().into_rows();
        let col_idx = column_index(&data, cols);
        let mut e = Engine {
            m: data,
            col_idx,
            row_done: vec![false; rows],
            col_done: vec![false; cols],
            u: track.u.then(|| unit_lines(rows)),
            u_inv: track.u_inv.then(|| unit_lines(rows)),
            v: track.v.then(|| unit_lines(cols)),
            v_inv: track.v_inv.then(|| unit_lines(cols)),
        };
        let mut pivots = Vec::new();
        loop {
            while e.unit_pass(&mut pivots) {}
            let Some((mut r, mut c)) = e.smallest_active() else { break };
            while let Some((r2, c2)) = e.eliminate(r, c) {
                r = r2;
                c = c2;
            }
            e.finish_pivot(r, c);
            pivots.push((r, c));
        }

        let mut factors = Vec::with_capacity(pivots.len());
        for &(r, c) in &pivots {
            if e.m[r][&c].sign() == Sign::Minus {
                e.negate_row(r);
            }
            factors.push(e.m[r][&c].clone());
        }
        let mut s = Smith {
            rows,
            cols,
            pivot_rows: pivots.iter().map(|p| p.0).collect(),
            pivot_cols: pivots.iter().map(|p| p.1).collect(),
            factors,
            u: e.u,
            u_inv: e.u_inv,
            v: e.v,
            v_inv: e.v_inv,
        };
        s.fix_divisibility();
        s
    }

    fn fix_divisibility(&mut self) {
        // units first keeps the pairwise pass short
        let mut order: Vec<usize> = (0..self.factors.len()).collect();
        order.sort_by(|&a, &b| self.factors[a].cmp(&self.factors[b]).then(a.cmp(&b)));
        self.pivot_rows = order.iter().map(|&k| self.pivot_rows[k]).collect();
        self.pivot_cols = order.iter().map(|&k| self.pivot_cols[k]).collect();
        self.factors = order.iter().map(|&k| self.factors[k].clone()).collect();
        let n = self.factors.len();
        for a in 0..n {
            if is_unit(&self.factors[a]) {
                continue;
            }
            for b in a + 1..n {
                if self.factors[b].is_multiple_of(&self.factors[a]) {
                    continue;
                }
                self.gcd_lcm(a, b);
            }
        }
    }

    /// Replaces `diag(x, y)` at pivots `a`, `b` with `diag(gcd, lcm)`.
    fn gcd_lcm(&mut self, a: usize, b: usize) {
        let x = self.factors[a].clone();
        let y = self.factors[b].clone();
        let eg = x.extended_gcd(&y);
        let (g, s, t) = (eg.gcd, eg.x, eg.y);
        let xg = &x / &g;
        let yg = &y / &g;
        let (ra, rb) = (self.pivot_rows[a], self.pivot_rows[b]);
        let (ca, cb) = (self.pivot_cols[a], self.pivot_cols[b]);
        // rows: L = [[s, t], [-y/g, x/g]], det 1, inverse [[x/g, -t], [y/g, s]]
        if let Some(u) = &mut self.u {
            let (ua, ub) = (u[ra].clone(), u[rb].clone());
            let mut na = SparseVec::new();
            axpy(&mut na, &s, &ua);
            axpy(&mut na, &t, &ub);
            let mut nb = SparseVec::new();
            axpy(&mut nb, &-&yg, &ua);
            axpy(&mut nb, &xg, &ub);
            u[ra] = na;
            u[rb] = nb;
        }
        if let Some(ui) = &mut self.u_inv {
            // U^{-1} <- U^{-1} L^{-1}, columns ra, rb
            let (ca_, cb_) = (ui[ra].clone(), ui[rb].clone());
            let mut na = SparseVec::new();
            axpy(&mut na, &xg, &ca_);
            axpy(&mut na, &yg, &cb_);
            let mut nb = SparseVec::new();
            axpy(&mut nb, &-&t, &ca_);
            axpy(&mut nb, &s, &cb_);
            ui[ra] = na;
            ui[rb] = nb;
        }
        // cols: R = [[1, -t y/g], [1, s x/g]], det 1, inverse [[s x/g, t y/g], [-1, 1]]
        let r01 = -(&t * &yg);
        let r11 = &s * &xg;
        if let Some(v) = &mut self.v {
            let (va, vb) = (v[ca].clone(), v[cb].clone());
            let mut na = va.clone();
            axpy(&mut na, &BigInt::one(), &vb);
            let mut nb = SparseVec::new();
            axpy(&mut nb, &r01, &va);
            axpy(&mut nb, &r11, &vb);
            v[ca] = na;
            v[cb] = nb;
        }
        if let Some(vi) = &mut self.v_inv {
            let (wa, wb) = (vi[ca].clone(), vi[cb].clone());
            let mut na = SparseVec::new();
            axpy(&mut na, &r11, &wa);
            axpy(&mut na, &(&t * &yg), &wb);
            let mut nb = wb.clone();
            axpy(&mut nb, &-BigInt::one(), &wa);
            vi[ca] = na;
            vi[cb] = nb;
        }
        self.factors[a] = g.clone();
        self.factors[b] = &x * &y / &g;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Non-zero diagonal entries, each dividing the next.
    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn non_pivot_rows(&self) -> Vec<usize> {
        let p: BTreeSet<usize> = self.pivot_rows.iter().copied().collect();
        (0..self.rows).filter(|i| !p.contains(i)).collect()
    }

    pub fn non_pivot_cols(&self) -> Vec<usize> {
        let p: BTreeSet<usize> = self.pivot_cols.iter().copied().collect();
        (0..self.cols).filter(|j| !p.contains(j)).collect()
    }

    /// Row `i` of `U`.
    pub fn u_row(&self, i: usize) -> &SparseVec {
        &self.u.as_ref().expect("U not tracked")[i]
    }

    /// Column `i` of `U^{-1}`.
    pub fn u_inv_col(&self, i: usize) -> &SparseVec {
        &self.u_inv.as_ref().expect("U^-1 not tracked")[i]
    }

    /// Column `j` of `V`.
    pub fn v_col(&self, j: usize) -> &SparseVec {
        &self.v.as_ref().expect("V not tracked")[j]
    }

    /// Row `j` of `V^{-1}`.
    pub fn v_inv_row(&self, j: usize) -> &SparseVec {
        &self.v_inv.as_ref().expect("V^-1 not tracked")[j]
    }

    /// `U b`.
    pub fn apply_u(&self, b: &SparseVec) -> SparseVec {
        let u = self.u.as_ref().expect("U not tracked");
        let mut out = SparseVec::new();
        for (i, row) in u.iter().enumerate() {
            let s = super::sparse::dot(row, b);
            if !s.is_zero() {
                out.insert(i, s);
            }
        }
        out
    }

    /// `V^{-1} x`.
    pub fn apply_v_inv(&self, x: &SparseVec) -> SparseVec {
        let vi = self.v_inv.as_ref().expect("V^-1 not tracked");
        let mut out = SparseVec::new();
        for (j, row) in vi.iter().enumerate() {
            let s = super::sparse::dot(row, x);
            if !s.is_zero() {
                out.insert(j, s);
            }
        }
        out
    }

    /// Integer kernel basis: the columns of `V` at non-pivot columns.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        self.non_pivot_cols().into_iter().map(|j| self.v_col(j).clone()).collect()
    }

    /// Solves `M x = b` over the integers.
    pub fn solve_int(&self, b: &SparseVec) -> Option<SparseVec> {
        let ub = self.apply_u(b);
        let mut piv_of_row = vec![usize::MAX; self.rows];
        for (k, &r) in self.pivot_rows.iter().enumerate() {
            piv_of_row[r] = k;
        }
        let mut x = SparseVec::new();
        for (i, val) in &ub {
            let k = piv_of_row[*i];
            if k == usize::MAX {
                return None;
            }
            let (q, rem) = val.div_rem(&self.factors[k]);
            if !rem.is_zero() {
                return None;
            }
            axpy(&mut x, &q, self.v_col(self.pivot_cols[k]));
        }
        Some(x)
    }

    /// Solves `M x = b` over the rationals.
    pub fn solve_rat(&self, b: &SparseVec) -> Option<Vec<BigRational>> {
        let ub = self.apply_u(b);
        let mut piv_of_row = vec![usize::MAX; self.rows];
        for (k, &r) in self.pivot_rows.iter().enumerate() {
            piv_of_row[r] = k;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (i, val) in &ub {
            let k = piv_of_row[*i];
            if k == usize::MAX {
                return None;
            }
            let y = BigRational::new(val.clone(), self.factors[k].clone());
            for (j, vj) in self.v_col(self.pivot_cols[k]) {
                x[*j] += &y * BigRational::from_integer(vj.clone());
            }
        }
        Some(x)
    }
}
