//! Exact two-phase simplex method with Bland's rule.
//!
//! Problems are in equality form: maximize `c·x` subject to `A x = b`, `x ≥ 0`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, point: Vec<BigRational> },
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj` over the columns allowed to enter. `false` if unbounded.
    fn optimize(&mut self, obj: &[BigRational], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // Bland: the least improving column enters
            let entering = (0..self.cols).filter(|&j| allowed(j) && !self.basis.contains(&j)).find(|&j| {
                let mut r = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &obj[b] * &self.rows[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    let cols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<BigRational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.resize(cols + 1, BigRational::zero());
        r[n + i] = BigRational::from_integer(1.into());
        r[cols] = if flip { -bi } else { bi.clone() };
        rows.push(r);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), cols };

    let mut phase1 = vec![BigRational::zero(); cols];
    for x in &mut phase1[n..] {
        *x = BigRational::from_integer((-1).into());
    }
    t.optimize(&phase1, &|_| true);
    if (0..m).any(|i| t.basis[i] >= n && !t.rhs(i).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    let mut obj = c.to_vec();
    obj.resize(cols, BigRational::zero());
    if !t.optimize(&obj, &|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![BigRational::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        point[bi] = t.rhs(i).clone();
    }
    let value = point.iter().zip(c).fold(BigRational::zero(), |acc, (x, y)| acc + x * y);
    LpOutcome::Optimal { value, point }
}

/// Rank of a rational matrix.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn small_programs() {
        // x + y = 1, maximize x
        let out = maximize(&[vec![q(1), q(1)]], &[q(1)], &[q(1), q(0)]);
        assert_eq!(out, LpOutcome::Optimal { value: q(1), point: vec![q(1), q(0)] });
        // x - y = 1, maximize x: unbounded
        assert_eq!(maximize(&[vec![q(1), q(-1)]], &[q(1)], &[q(1), q(0)]), LpOutcome::Unbounded);
        // x + y = -1: infeasible
        assert_eq!(maximize(&[vec![q(1), q(1)]], &[q(-1)], &[q(0), q(0)]), LpOutcome::Infeasible);
        // redundant rows
        let out = maximize(&[vec![q(1), q(1)], vec![q(2), q(2)]], &[q(2), q(4)], &[q(0), q(1)]);
        assert_eq!(out, LpOutcome::Optimal { value: q(2), point: vec![q(0), q(2)] });
    }

    #[test]
    fn ranks() {
        assert_eq!(rational_rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rational_rank(&[vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
        assert_eq!(rational_rank(&[]), 0);
    }
}
