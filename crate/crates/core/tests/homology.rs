use std::time::Instant;

use num_bigint::BigInt;

use ihchain::chain::Chain;
use ihchain::complex::{sort_with_sign, Simplex, StratifiedComplex};
use ihchain::fixtures;
use ihchain::homology::{homology, Mode};
use ihchain::pairing::allowability_audit;
use ihchain::perversity::{self, enumerate, minimal_cover, Perversity};

fn pv(s: &str) -> Perversity {
    s.parse().unwrap()
}

/// Pointwise minimum over every enumerated perversity above `p + q`.
fn brute_cover(p: &Perversity, q: &Perversity) -> Option<Perversity> {
    let above: Vec<Perversity> = enumerate(p.n())
        .unwrap()
        .into_iter()
        .filter(|s| (0..s.values().len()).all(|j| p.values()[j] + q.values()[j] <= s.values()[j]))
        .collect();
    if above.is_empty() {
        return None;
    }
    let least = above.iter().find(|s| above.iter().all(|t| perversity::leq(s, t).unwrap()));
    Some(least.unwrap_or_else(|| panic!("no least element above {p} + {q}")).clone())
}

#[test]
fn minimal_cover_matches_brute_force() {
    let start = Instant::now();
    let mut pairs = 0;
    for n in 2..=7 {
        let all = enumerate(n).unwrap();
        for p in &all {
            for q in &all {
                match (minimal_cover(p, q), brute_cover(p, q)) {
                    (Ok(s), Some(b)) => assert_eq!(s, b, "{p} {q}"),
                    (Err(ihchain::Error::NoCover), None) => {}
                    (got, want) => panic!("{p} {q}: {got:?} vs {want:?}"),
                }
                pairs += 1;
            }
        }
    }
    assert_eq!(pairs, 1 + 4 + 16 + 64 + 256 + 1024);
    assert!(start.elapsed().as_secs() < 10);
}

/// Mayer-Vietoris for the suspension of a connected manifold link `L` of dimension
/// `n - 1`: each open cone has `IH_i = H_i(L)` below `t = n - 1 - p(n)` and `0` from
/// `t` on, and `H_i(L)` maps diagonally into the two cones.
fn suspension_oracle(link_betti: &[usize], p_top: usize) -> Vec<usize> {
    let n = link_betti.len();
    let t = n - 1 - p_top;
    (0..=n)
        .map(|i| {
            let b = |j: usize| link_betti.get(j).copied().unwrap_or(0);
            let coker = if i < t { b(i) } else { 0 };
            let ker = if i > t { b(i - 1) } else { 0 };
            coker + ker
        })
        .collect()
}

#[test]
fn suspension_of_the_torus() {
    let start = Instant::now();
    let cx = fixtures::sigma_torus();
    assert_eq!(cx.count(3), 28);
    let link = homology(&fixtures::torus(), Mode::Ordinary).unwrap();
    assert!(link.is_torsion_free());
    let betti = link.ranks();
    assert_eq!(betti, vec![1, 2, 1]);
    for p in enumerate(3).unwrap() {
        let h = homology(&cx, Mode::Intersection(&p)).unwrap();
        assert!(h.is_torsion_free());
        assert_eq!(h.ranks(), suspension_oracle(&betti, p.at(3)), "{p}");
    }
    assert_eq!(homology(&cx, Mode::Intersection(&pv("0,0"))).unwrap().ranks(), vec![1, 2, 0, 1]);
    assert_eq!(homology(&cx, Mode::Intersection(&pv("0,1"))).unwrap().ranks(), vec![1, 0, 2, 1]);
    assert!(start.elapsed().as_secs() < 5);
}

#[test]
fn oracle_on_the_suspended_sphere() {
    // ΣS² is a 3-sphere, so both perversities give (1,0,0,1)
    assert_eq!(suspension_oracle(&[1, 0, 1], 0), vec![1, 0, 0, 1]);
    assert_eq!(suspension_oracle(&[1, 0, 1], 1), vec![1, 0, 0, 1]);
}

#[test]
fn manifolds_see_ordinary_homology() {
    for cx in [fixtures::boundary_tetrahedron(), fixtures::torus(), fixtures::octahedron()] {
        let ordinary = homology(&cx, Mode::Ordinary).unwrap();
        for p in enumerate(cx.dim()).unwrap() {
            assert!(homology(&cx, Mode::Intersection(&p)).unwrap().same_groups(&ordinary), "{}", cx.name());
        }
    }
    assert_eq!(homology(&fixtures::torus(), Mode::Ordinary).unwrap().ranks(), vec![1, 2, 1]);
}

fn oriented(cx: &StratifiedComplex, vertices: &[usize]) -> (Simplex, BigInt) {
    let (sign, sorted) = sort_with_sign(vertices);
    let s = Simplex::from_sorted(sorted);
    assert!(cx.contains(&s));
    (s, BigInt::from(sign))
}

fn loop_chain(cx: &StratifiedComplex, cycle: &[usize]) -> Chain {
    let edges = (0..cycle.len()).map(|i| oriented(cx, &[cycle[i], cycle[(i + 1) % cycle.len()]]));
    Chain::from_terms(1, edges.collect::<Vec<_>>()).unwrap()
}

/// The loop coned to 7 minus the loop coned to 8.
fn suspended_loop(cx: &StratifiedComplex, cycle: &[usize]) -> Chain {
    let mut terms = Vec::new();
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        terms.push(oriented(cx, &[u, v, 7]));
        let (s, x) = oriented(cx, &[u, v, 8]);
        terms.push((s, -x));
    }
    Chain::from_terms(2, terms).unwrap()
}

#[test]
fn audit_on_transverse_and_tangent_pairs() {
    let cx = fixtures::sigma_torus();
    let [a, b] = fixtures::torus_loops();
    let (lo, hi) = (pv("0,0"), pv("0,1"));
    let c = loop_chain(&cx, &b);
    let d = suspended_loop(&cx, &a);
    assert!(c.boundary().is_zero() && d.boundary().is_zero());
    assert!(ihchain::homology::allowable_chain(&cx, &c, &lo).unwrap());
    assert!(ihchain::homology::allowable_chain(&cx, &d, &hi).unwrap());
    let r = minimal_cover(&lo, &hi).unwrap();
    let report = allowability_audit(&cx, &c, &d, &r).unwrap();
    assert!(report.pass(), "{report}");

    // the loop b inside its own suspension: excess dimension on the regular part
    let tangent = suspended_loop(&cx, &b);
    let report = allowability_audit(&cx, &c, &tangent, &r).unwrap();
    let failed: Vec<usize> = report.rows.iter().filter(|row| !row.pass).map(|row| row.kappa).collect();
    assert_eq!(failed, vec![3], "{report}");
}
