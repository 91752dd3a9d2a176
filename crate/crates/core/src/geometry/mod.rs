//! Dimensions of intersections of simplices, combinatorially (faces of one
//! complex) or geometrically (rational coordinates).

pub mod lp;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chain::{Chain, Coeff};
use crate::complex::{Simplex, StratifiedComplex};
use crate::error::{Error, Result};
use lp::{maximize, rational_rank, LpOutcome};

/// A simplex given by affinely independent rational points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricSimplex {
    vertices: Vec<Vec<BigRational>>,
}

impl GeometricSimplex {
    pub fn new(vertices: Vec<Vec<BigRational>>) -> Result<Self> {
        let first = vertices.first().ok_or_else(|| Error::DegenerateInput("simplex with no vertices".into()))?;
        let dim = first.len();
        if vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::DegenerateInput("vertices of different ambient dimension".into()));
        }
        let diffs: Vec<Vec<BigRational>> =
            vertices[1..].iter().map(|v| v.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
        if rational_rank(&diffs) != vertices.len() - 1 {
            return Err(Error::DegenerateInput("vertices are affinely dependent".into()));
        }
        Ok(GeometricSimplex { vertices })
    }

    /// The simplex `s` of `cx` at its coordinates.
    pub fn of(cx: &StratifiedComplex, s: &Simplex) -> Result<Self> {
        let coords = cx.coordinates().ok_or_else(|| Error::ModeUnsupported("complex has no coordinates".into()))?;
        Self::new(s.vertices().iter().map(|&v| coords[v].clone()).collect())
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Combinatorial(Simplex),
    Geometric(GeometricSimplex),
}

/// A finite union of simplices, all of one mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polyhedron {
    Combinatorial(Vec<Simplex>),
    Geometric(Vec<GeometricSimplex>),
}

impl Polyhedron {
    /// `|c|`, the union of the simplices with nonzero coefficient.
    pub fn support<R: Coeff>(c: &Chain<R>) -> Self {
        Polyhedron::Combinatorial(c.support().cloned().collect())
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Polyhedron::Combinatorial(s) => s.is_empty(),
            Polyhedron::Geometric(s) => s.is_empty(),
        }
    }
}

/// Dimension of `∩ cells`, `-1` when empty.
pub fn multi_intersection_dim(cells: &[Cell]) -> Result<i64> {
    match cells.first() {
        None => Err(Error::DegenerateInput("intersection of no simplices".into())),
        Some(Cell::Combinatorial(_)) => {
            let simplices = cells
                .iter()
                .map(|c| match c {
                    Cell::Combinatorial(s) => Ok(s),
                    Cell::Geometric(_) => Err(Error::MixedMode),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Simplex::common_face(simplices.into_iter()).map_or(-1, |f| f.dim() as i64))
        }
        Some(Cell::Geometric(_)) => {
            let simplices = cells
                .iter()
                .map(|c| match c {
                    Cell::Geometric(s) => Ok(s),
                    Cell::Combinatorial(_) => Err(Error::MixedMode),
                })
                .collect::<Result<Vec<_>>>()?;
            geometric_intersection_dim(&simplices)
        }
    }
}

/// The feasible set is parametrized by the barycentric coordinates of
/// every simplex; that parametrization is affine and injective, so the
/// dimension is that of `{λ ≥ 0, Aλ = b}`: the coordinates not forced to
/// zero, less the rank of their columns.
fn geometric_intersection_dim(simplices: &[&GeometricSimplex]) -> Result<i64> {
    let ambient = simplices[0].ambient_dim();
    if simplices.iter().any(|s| s.ambient_dim() != ambient) {
        return Err(Error::DegenerateInput("simplices in different ambient spaces".into()));
    }
    let offsets: Vec<usize> = simplices
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.vertices.len();
            Some(o)
        })
        .collect();
    let vars = offsets.last().unwrap() + simplices.last().unwrap().vertices.len();
    let zero = BigRational::zero;
    let mut a: Vec<Vec<BigRational>> = Vec::new();
    let mut b = Vec::new();
    for (s, &o) in simplices.iter().zip(&offsets) {
        let mut row = vec![zero(); vars];
        for x in &mut row[o..o + s.vertices.len()] {
            *x = BigRational::one();
        }
        a.push(row);
        b.push(BigRational::one());
    }
    let first = simplices[0];
    for (s, &o) in simplices.iter().zip(&offsets).skip(1) {
        for coord in 0..ambient {
            let mut row = vec![zero(); vars];
            for (j, v) in first.vertices.iter().enumerate() {
                row[j] = v[coord].clone();
            }
            for (j, v) in s.vertices.iter().enumerate() {
                row[o + j] = -v[coord].clone();
            }
            a.push(row);
            b.push(zero());
        }
    }
    let mut free = Vec::new();
    for j in 0..vars {
        let mut c = vec![zero(); vars];
        c[j] = BigRational::one();
        match maximize(&a, &b, &c) {
            LpOutcome::Infeasible => return Ok(-1),
            LpOutcome::Unbounded => free.push(j),
            LpOutcome::Optimal { value, .. } => {
                if !value.is_zero() {
                    free.push(j);
                }
            }
        }
    }
    let restricted: Vec<Vec<BigRational>> = a.iter().map(|r| free.iter().map(|&j| r[j].clone()).collect()).collect();
    Ok(free.len() as i64 - rational_rank(&restricted) as i64)
}

/// Dimension of `P ∩ X_d`, the open stratum of depth `d`: the largest face
/// of a simplex of `P` lying in `X_d`, or `-1`.
pub fn stratum_restricted_dim(cx: &StratifiedComplex, p: &Polyhedron, d: usize) -> Result<i64> {
    match p {
        Polyhedron::Geometric(_) => Err(Error::ModeUnsupported("stratum restriction of geometric polyhedra".into())),
        Polyhedron::Combinatorial(simplices) => {
            let mut best = -1;
            for s in simplices {
                best = best.max(cx.open_stratum_dim(s, d)?);
            }
            Ok(best)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::fundamental_cycle;
    use crate::fixtures;

    fn q(x: i64, y: i64) -> BigRational {
        BigRational::new(x.into(), y.into())
    }

    fn pts(v: &[&[(i64, i64)]]) -> GeometricSimplex {
        GeometricSimplex::new(v.iter().map(|p| p.iter().map(|&(a, b)| q(a, b)).collect()).collect()).unwrap()
    }

    #[test]
    fn diagonals_of_a_square() {
        let d = pts(&[&[(0, 1), (0, 1)], &[(1, 1), (1, 1)]]);
        let e = pts(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert_eq!(multi_intersection_dim(&[Cell::Geometric(d.clone()), Cell::Geometric(e)]).unwrap(), 0);
        assert_eq!(multi_intersection_dim(&[Cell::Geometric(d.clone()), Cell::Geometric(d.clone())]).unwrap(), 1);
        let far = pts(&[&[(2, 1), (0, 1)], &[(3, 1), (0, 1)]]);
        assert_eq!(multi_intersection_dim(&[Cell::Geometric(d), Cell::Geometric(far)]).unwrap(), -1);
    }

    #[test]
    fn overlapping_triangles() {
        let a = pts(&[&[(0, 1), (0, 1)], &[(2, 1), (0, 1)], &[(0, 1), (2, 1)]]);
        let b = pts(&[&[(1, 1), (0, 1)], &[(3, 1), (0, 1)], &[(1, 1), (2, 1)]]);
        assert_eq!(multi_intersection_dim(&[Cell::Geometric(a.clone()), Cell::Geometric(b)]).unwrap(), 2);
        // touching along an edge
        let c = pts(&[&[(2, 1), (0, 1)], &[(0, 1), (2, 1)], &[(2, 1), (2, 1)]]);
        assert_eq!(multi_intersection_dim(&[Cell::Geometric(a), Cell::Geometric(c)]).unwrap(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(multi_intersection_dim(&[]), Err(Error::DegenerateInput(_))));
        let g = pts(&[&[(0, 1)]]);
        let mixed = [Cell::Combinatorial(Simplex::vertex(0)), Cell::Geometric(g)];
        assert!(matches!(multi_intersection_dim(&mixed), Err(Error::MixedMode)));
        let bad = GeometricSimplex::new(vec![vec![q(0, 1)], vec![q(1, 1)], vec![q(2, 1)]]);
        assert!(matches!(bad, Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn strata_of_the_suspension() {
        let cx = fixtures::sigma_torus();
        let g = Polyhedron::support(&fundamental_cycle(&cx).unwrap());
        assert_eq!(stratum_restricted_dim(&cx, &g, 0).unwrap(), 0);
        assert_eq!(stratum_restricted_dim(&cx, &g, 3).unwrap(), 3);
        let torus_edge = Polyhedron::Combinatorial(vec![Simplex::new(vec![0, 1]).unwrap()]);
        assert_eq!(stratum_restricted_dim(&cx, &torus_edge, 0).unwrap(), -1);
        let cone_edge = Polyhedron::Combinatorial(vec![Simplex::new(vec![0, 7]).unwrap()]);
        assert_eq!(stratum_restricted_dim(&cx, &cone_edge, 3).unwrap(), 1);
        assert_eq!(stratum_restricted_dim(&cx, &cone_edge, 0).unwrap(), 0);
    }
}
