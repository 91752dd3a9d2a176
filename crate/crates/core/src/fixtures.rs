//! Small complexes used by tests, examples and the CLI.

use num_rational::BigRational;

use crate::complex::{DepthSpec, OrientationSpec, Simplex, StratifiedComplex};

fn simplices(list: &[&[usize]]) -> Vec<Simplex> {
    list.iter().map(|v| Simplex::new(v.to_vec()).expect("fixture simplex")).collect()
}

/// `∂Δ³`, the boundary of the tetrahedron, with no singular set.
pub fn boundary_tetrahedron() -> StratifiedComplex {
    let facets = simplices(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
    StratifiedComplex::new("boundary-tetrahedron", 2, 4, facets, DepthSpec::Overrides(&[]), OrientationSpec::Auto)
        .expect("fixture")
}

/// Triangles of the 7-vertex torus: `(i, i+1, i+3)` and `(i, i+2, i+3)` mod 7.
pub fn torus_triangles() -> Vec<Simplex> {
    let mut out = Vec::new();
    for i in 0..7 {
        out.push(Simplex::new(vec![i, (i + 1) % 7, (i + 3) % 7]).expect("distinct"));
        out.push(Simplex::new(vec![i, (i + 2) % 7, (i + 3) % 7]).expect("distinct"));
    }
    out.sort();
    out
}

/// The 7-vertex (Möbius) torus.
pub fn torus() -> StratifiedComplex {
    StratifiedComplex::new("torus7", 2, 7, torus_triangles(), DepthSpec::Overrides(&[]), OrientationSpec::Auto)
        .expect("fixture")
}

/// Suspension of the 7-vertex torus; the suspension points 7 and 8 form
/// the singular set, at depth 0.
pub fn sigma_torus() -> StratifiedComplex {
    let mut facets = Vec::new();
    for t in torus_triangles() {
        for apex in [7, 8] {
            let mut v = t.vertices().to_vec();
            v.push(apex);
            facets.push(Simplex::from_sorted(v));
        }
    }
    let depth = [(Simplex::vertex(7), 0), (Simplex::vertex(8), 0)];
    StratifiedComplex::new("sigma-t2", 3, 9, facets, DepthSpec::Overrides(&depth), OrientationSpec::Auto)
        .expect("fixture")
}

/// Loops on the torus fixture: vertices `0,1,...,6` and `0,3,6,2,5,1,4`.
pub fn torus_loops() -> [Vec<usize>; 2] {
    [(0..7).collect(), vec![0, 3, 6, 2, 5, 1, 4]]
}

/// Boundary of the octahedron with vertices `±e_i` in `ℚ³`.
pub fn octahedron() -> StratifiedComplex {
    // vertices: 0=+x 1=-x 2=+y 3=-y 4=+z 5=-z
    let mut facets = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                facets.push(Simplex::new(vec![a, b, c]).expect("distinct"));
            }
        }
    }
    let q = |x: i64| BigRational::from_integer(x.into());
    let coords = (0..6)
        .map(|v| {
            let mut c = vec![q(0), q(0), q(0)];
            c[v / 2] = q(if v % 2 == 0 { 1 } else { -1 });
            c
        })
        .collect();
    StratifiedComplex::new("octahedron", 2, 6, facets, DepthSpec::Overrides(&[]), OrientationSpec::Auto)
        .and_then(|c| c.with_coordinates(coords))
        .expect("fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        for cx in [boundary_tetrahedron(), torus(), sigma_torus(), octahedron()] {
            assert!(cx.validate().is_valid(), "{}: {}", cx.name(), cx.validate());
        }
        assert_eq!(torus().count(1), 21);
        assert_eq!(sigma_torus().count(3), 28);
    }
}
