use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ihchain::complex::{Simplex, StratifiedComplex};
use ihchain::fixtures;
use ihchain::geometry::{multi_intersection_dim, Cell, GeometricSimplex};
use ihchain::subdivision::barycentric_subdivide;

fn all_simplices(cx: &StratifiedComplex) -> Vec<Simplex> {
    (0..=cx.dim()).flat_map(|d| cx.simplices(d).to_vec()).collect()
}

fn cross_check(cx: &StratifiedComplex, trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = all_simplices(cx);
    for _ in 0..trials {
        let k = rng.gen_range(1..=3);
        let picked: Vec<Simplex> = (0..k).map(|_| pool.choose(&mut rng).unwrap().clone()).collect();
        let comb: Vec<Cell> = picked.iter().cloned().map(Cell::Combinatorial).collect();
        let geom: Vec<Cell> = picked.iter().map(|s| Cell::Geometric(GeometricSimplex::of(cx, s).unwrap())).collect();
        let a = multi_intersection_dim(&comb).unwrap();
        let b = multi_intersection_dim(&geom).unwrap();
        assert_eq!(a, b, "{picked:?}");
        assert!(a <= picked.iter().map(|s| s.dim() as i64).min().unwrap());
    }
}

#[test]
fn modes_agree_on_the_octahedron() {
    cross_check(&fixtures::octahedron(), 300, 7);
}

#[test]
fn modes_agree_on_its_subdivision() {
    let sd = barycentric_subdivide(&fixtures::octahedron()).unwrap();
    cross_check(&sd, 150, 11);
}

#[test]
fn permutation_invariant_and_monotone() {
    let cx = fixtures::octahedron();
    let pool = all_simplices(&cx);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let mut cells: Vec<Cell> =
            (0..3).map(|_| Cell::Geometric(GeometricSimplex::of(&cx, pool.choose(&mut rng).unwrap()).unwrap())).collect();
        let full = multi_intersection_dim(&cells).unwrap();
        assert!(multi_intersection_dim(&cells[..2]).unwrap() >= full);
        cells.shuffle(&mut rng);
        assert_eq!(multi_intersection_dim(&cells).unwrap(), full);
    }
}
