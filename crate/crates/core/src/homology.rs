//! Allowability and (intersection) homology with generators.

use std::fmt;

use num_bigint::{BigInt, Sign};

use crate::chain::Chain;
use crate::complex::{Simplex, StratifiedComplex};
use crate::error::{Error, Result};
use crate::linalg::complex::DegreeSolver;
use crate::linalg::{Smith, SparseMatrix, SparseVec, Track};
use crate::perversity::Perversity;

/// `dim(σ ∩ X^{n-k}) ≤ i - k + p(k)` for `k = 2..n`.
pub fn allowable(cx: &StratifiedComplex, s: &Simplex, p: &Perversity) -> Result<bool> {
    let n = cx.dim();
    if p.n() != n {
        return Err(Error::DimensionMismatch(n, p.n()));
    }
    let i = s.dim() as i64;
    for k in 2..=n {
        let d = cx.skeleton_intersection_dim(s, n - k)?;
        // the empty set meets every bound
        if d >= 0 && d > i - k as i64 + p.at(k) as i64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every simplex of the reduced chain and of its reduced boundary is allowable.
pub fn allowable_chain(cx: &StratifiedComplex, c: &Chain, p: &Perversity) -> Result<bool> {
    for s in c.support().chain(c.boundary().support()) {
        if !allowable(cx, s, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An integer basis of `I^pC_i`.
pub fn intersection_chain_basis(cx: &StratifiedComplex, i: usize, p: &Perversity) -> Result<Vec<Chain>> {
    let ic = IntersectionComplex::new(cx, Some(p))?;
    Ok(ic.basis(i))
}

/// Which chain complex to take homology of.
#[derive(Clone, Copy, Debug)]
pub enum Mode<'a> {
    Ordinary,
    Intersection(&'a Perversity),
}

/// One degree of a [`HomologyResult`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyDegree {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    /// Free generators first, then one per torsion coefficient.
    pub generators: Vec<Chain>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub degrees: Vec<HomologyDegree>,
}

impl HomologyResult {
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    /// Ranks and torsion only.
    pub fn same_groups(&self, other: &HomologyResult) -> bool {
        self.degrees.len() == other.degrees.len()
            && self.degrees.iter().zip(&other.degrees).all(|(a, b)| a.rank == b.rank && a.torsion == b.torsion)
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.degrees.iter().enumerate() {
            write!(f, "H{i}: rank {}", d.rank)?;
            if !d.torsion.is_empty() {
                let t: Vec<String> = d.torsion.iter().map(|x| x.to_string()).collect();
                write!(f, ", torsion {}", t.join(","))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `homology(X, p)` or ordinary homology.
pub fn homology(cx: &StratifiedComplex, mode: Mode<'_>) -> Result<HomologyResult> {
    let p = match mode {
        Mode::Ordinary => None,
        Mode::Intersection(p) => Some(p),
    };
    Ok(IntersectionComplex::new(cx, p)?.result)
}

/// The complex `I^pC_*` in an integer basis, with its homology solvers.
pub struct IntersectionComplex {
    cx: StratifiedComplex,
    perversity: Option<Perversity>,
    // allowable flags per degree
    allowed: Vec<Vec<bool>>,
    // allowable simplex index -> column of the restriction
    columns: Vec<Vec<usize>>,
    // per degree: basis vectors over the allowable simplices, and their Smith data
    basis: Vec<Vec<SparseVec>>,
    kernels: Vec<Smith>,
    solvers: Vec<DegreeSolver>,
    result: HomologyResult,
    // the top generator was negated to agree with the orientation
    top_flipped: bool,
}

impl IntersectionComplex {
    /// Ordinary chains when `p` is `None`.
    pub fn new(cx: &StratifiedComplex, p: Option<&Perversity>) -> Result<Self> {
        cx.require_valid()?;
        let n = cx.dim();
        let mut allowed = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let flags = match p {
                None => vec![true; cx.count(d)],
                Some(p) => cx.simplices(d).iter().map(|s| allowable(cx, s, p)).collect::<Result<Vec<_>>>()?,
            };
            allowed.push(flags);
        }
        let columns: Vec<Vec<usize>> = allowed
            .iter()
            .map(|f| f.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| i).collect())
            .collect();

        // N_i: boundary of allowable i-simplices onto non-allowable (i-1)-simplices
        let mut kernels = Vec::with_capacity(n + 1);
        let mut basis = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let mut rows: Vec<SparseVec> = Vec::new();
            if d > 0 {
                let mut bad_row = vec![usize::MAX; cx.count(d - 1)];
                for (i, &a) in allowed[d - 1].iter().enumerate() {
                    if !a {
                        bad_row[i] = rows.len();
                        rows.push(SparseVec::new());
                    }
                }
                for (col, &si) in columns[d].iter().enumerate() {
                    for (i, f) in cx.simplex(d, si).facets() {
                        let r = bad_row[cx.index_of(&f).expect("closure")];
                        if r != usize::MAX {
                            rows[r].insert(col, sgn(i));
                        }
                    }
                }
            }
            let m = SparseMatrix::from_rows(columns[d].len(), rows);
            let smith = Smith::compute(&m, Track::KERNEL);
            basis.push(smith.kernel_basis());
            kernels.push(smith);
        }

        let mut ic = IntersectionComplex {
            cx: cx.clone(),
            perversity: p.cloned(),
            allowed,
            columns,
            basis,
            kernels,
            solvers: Vec::new(),
            result: HomologyResult { degrees: Vec::new() },
            top_flipped: false,
        };
        // differentials in basis coordinates
        let mut diffs: Vec<Option<SparseMatrix>> = vec![None; n + 2];
        for d in 1..=n {
            let cols: Vec<SparseVec> = ic.basis[d]
                .iter()
                .map(|b| {
                    let chain = ic.vector_chain(d, b).boundary();
                    ic.coordinates(d - 1, &chain).expect("boundary of an intersection chain is one")
                })
                .collect();
            diffs[d] = Some(SparseMatrix::from_columns(ic.basis[d - 1].len(), &cols));
        }
        ic.solvers = (0..=n).map(|d| DegreeSolver::new(ic.basis[d].len(), diffs[d].as_ref(), diffs[d + 1].as_ref())).collect();
        ic.result = ic.compute_homology();
        if let [g] = ic.result.degrees[n].generators.as_mut_slice() {
            let (s, x) = g.iter().next().expect("nonzero generator");
            if (i64::from(cx.orientation(s)) < 0) != (x.sign() == Sign::Minus) {
                *g = g.neg();
                ic.top_flipped = true;
            }
        }
        Ok(ic)
    }

    pub fn complex(&self) -> &StratifiedComplex {
        &self.cx
    }

    pub fn perversity(&self) -> Option<&Perversity> {
        self.perversity.as_ref()
    }

    pub fn is_allowable(&self, s: &Simplex) -> bool {
        self.cx.index_of(s).is_some_and(|i| self.allowed[s.dim()][i])
    }

    pub fn rank(&self, d: usize) -> usize {
        self.basis.get(d).map_or(0, Vec::len)
    }

    pub fn basis(&self, d: usize) -> Vec<Chain> {
        self.basis.get(d).map_or(Vec::new(), |b| b.iter().map(|v| self.vector_chain(d, v)).collect())
    }

    fn vector_chain(&self, d: usize, v: &SparseVec) -> Chain {
        let mut c = Chain::zero(d as i64);
        for (col, x) in v {
            c.add_term(self.cx.simplex(d, self.columns[d][*col]).clone(), x.clone());
        }
        c
    }

    /// Coordinates of `c` in the basis of `I^pC_d`, or `None` if it is not an intersection chain.
    pub fn coordinates(&self, d: usize, c: &Chain) -> Option<SparseVec> {
        if d >= self.basis.len() || c.degree() != d as i64 {
            return None;
        }
        let mut v = SparseVec::new();
        for (s, x) in c.iter() {
            let i = self.cx.index_of(s)?;
            let col = self.columns[d].binary_search(&i).ok()?;
            v.insert(col, x.clone());
        }
        let smith = &self.kernels[d];
        let y = smith.apply_v_inv(&v);
        let free = smith.non_pivot_cols();
        let mut out = SparseVec::new();
        for (j, x) in y {
            let a = free.binary_search(&j).ok()?;
            out.insert(a, x);
        }
        Some(out)
    }

    /// Class of an allowable cycle against the homology generators;
    /// `None` if `c` is not an allowable cycle.
    pub fn class_of(&self, c: &Chain) -> Option<Vec<BigInt>> {
        let d = usize::try_from(c.degree()).ok()?;
        let v = self.coordinates(d, c)?;
        let mut class = self.solvers[d].class_of(&v)?;
        if d == self.cx.dim() && self.top_flipped {
            class[0] = -class[0].clone();
        }
        Some(class)
    }

    pub fn is_boundary(&self, c: &Chain) -> bool {
        self.class_of(c).is_some_and(|x| x.iter().all(|v| v == &BigInt::default()))
    }

    pub fn homology(&self) -> &HomologyResult {
        &self.result
    }

    /// Homology generators in degree `d`.
    pub fn generators(&self, d: usize) -> &[Chain] {
        self.result.degrees.get(d).map_or(&[], |g| g.generators.as_slice())
    }

    /// `Σ a_g g` over the generators of degree `d`.
    pub fn combination(&self, d: usize, coords: &[BigInt]) -> Chain {
        let mut c = Chain::zero(d as i64);
        for (g, a) in self.generators(d).iter().zip(coords) {
            c.add_assign(&g.scale(a));
        }
        c
    }

    fn compute_homology(&self) -> HomologyResult {
        let degrees = self
            .solvers
            .iter()
            .enumerate()
            .map(|(d, s)| {
                let deg = s.degree();
                let generators = deg
                    .generators
                    .iter()
                    .map(|g| {
                        let mut v = SparseVec::new();
                        for (a, x) in g {
                            crate::linalg::axpy(&mut v, x, &self.basis[d][*a]);
                        }
                        self.vector_chain(d, &v)
                    })
                    .collect();
                HomologyDegree { rank: deg.rank, torsion: deg.torsion, generators }
            })
            .collect();
        HomologyResult { degrees }
    }
}

fn sgn(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::perversity::{self, Perversity};

    #[test]
    fn torus_ordinary() {
        let h = homology(&fixtures::torus(), Mode::Ordinary).unwrap();
        assert_eq!(h.ranks(), vec![1, 2, 1]);
        assert!(h.is_torsion_free());
        let h = homology(&fixtures::boundary_tetrahedron(), Mode::Ordinary).unwrap();
        assert_eq!(h.ranks(), vec![1, 0, 1]);
    }

    #[test]
    fn suspension_of_torus() {
        let cx = fixtures::sigma_torus();
        let h = homology(&cx, Mode::Ordinary).unwrap();
        assert_eq!(h.ranks(), vec![1, 0, 2, 1]);
        let p0 = Perversity::new(3, vec![0, 0]).unwrap();
        let p1 = Perversity::new(3, vec![0, 1]).unwrap();
        assert_eq!(homology(&cx, Mode::Intersection(&p0)).unwrap().ranks(), vec![1, 2, 0, 1]);
        assert_eq!(homology(&cx, Mode::Intersection(&p1)).unwrap().ranks(), vec![1, 0, 2, 1]);
        assert!(perversity::leq(&p0, &p1).unwrap());
    }

    #[test]
    fn generators_are_allowable_cycles() {
        let cx = fixtures::sigma_torus();
        let p = Perversity::new(3, vec![0, 0]).unwrap();
        let ic = IntersectionComplex::new(&cx, Some(&p)).unwrap();
        for (d, deg) in ic.homology().degrees.iter().enumerate() {
            for (k, g) in deg.generators.iter().enumerate() {
                assert!(g.boundary().is_zero());
                assert!(allowable_chain(&cx, g, &p).unwrap());
                let mut e = vec![BigInt::from(0); deg.generators.len()];
                e[k] = BigInt::from(1);
                assert_eq!(ic.class_of(g), Some(e), "degree {d}");
            }
        }
    }
}
