use std::time::Instant;

use ihchain::fixtures;
use ihchain::linalg::SparseVec;
use ihchain::perverse_dga::*;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pv(s: &str) -> ihchain::perversity::Perversity {
    s.parse().unwrap()
}

#[test]
fn leinster_axioms_on_torus_and_suspension() {
    let start = Instant::now();
    for cx in [fixtures::torus(), fixtures::sigma_torus()] {
        let model = build_ih_model(&cx).unwrap();
        let report = check_leinster(&model, 3).unwrap();
        assert!(report.pass(), "{report}");
        for a in Axiom::ALL {
            assert!(report.checks.iter().any(|c| c.axiom == a));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let failures = check_functoriality(&model, 3, 1, &mut rng).unwrap();
        assert!(failures.is_empty(), "{failures:?}");
    }
    assert!(start.elapsed().as_secs() < 30, "{:?}", start.elapsed());
}

#[test]
fn a_negated_product_entry_is_caught() {
    let mut model = build_ih_model(&fixtures::torus()).unwrap();
    assert!(model.products_mut().negate_entry((0, 0, 0), (-1, 0), (-1, 1)));
    let report = check_leinster(&model, 2).unwrap();
    assert!(!report.axiom_passes(Axiom::Commutativity), "{report}");
    let bad = report.failures().next().unwrap();
    assert_eq!(bad.arities, vec![1, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(!check_functoriality(&model, 2, 2, &mut rng).unwrap().is_empty());
}

#[test]
fn torus_products_are_the_intersection_ring() {
    let model = build_ih_model(&fixtures::torus()).unwrap();
    let p = model.products();
    // loops a, b in shifted degree -1: a·b = ±point, a·a = 0
    let ab = p.entry((0, 0, 0), (-1, 0), (-1, 1)).unwrap();
    let ba = p.entry((0, 0, 0), (-1, 1), (-1, 0)).unwrap();
    assert_eq!(ab.len(), 1);
    let x = ab.values().next().unwrap();
    assert!(x == &BigInt::from(1) || x == &BigInt::from(-1));
    // degree -1 times degree -1: Koszul sign (-1)^{1·1}
    assert_eq!(ba.values().next().unwrap(), &-x.clone());
    assert!(p.entry((0, 0, 0), (-1, 0), (-1, 0)).unwrap().is_empty());
}

#[test]
fn suspension_structure_maps() {
    let model = build_ih_model(&fixtures::sigma_torus()).unwrap();
    let m = model.module();
    let (lo, hi) = (m.index(&pv("0,0")).unwrap(), m.index(&pv("0,1")).unwrap());
    let rank = |p, d| m.invariants(p).get(&d).map_or(0, |g| g.rank);
    // unshifted degrees 1 and 2 sit at -2 and -1
    assert_eq!((rank(lo, -2), rank(lo, -1)), (2, 0));
    assert_eq!((rank(hi, -2), rank(hi, -1)), (0, 2));
    assert!(m.map(lo, hi, -2).unwrap().iter().all(SparseVec::is_empty));
    assert!(m.map(lo, hi, -1).is_none());
    // Γ and the point survive
    assert_eq!(m.map(lo, hi, 0).unwrap().len(), 1);
    assert!(!m.map(lo, hi, 0).unwrap()[0].is_empty());
}

#[test]
fn set_map_examples() {
    let model = build_ih_model(&fixtures::torus()).unwrap();
    let a = BoxGen { perversities: vec![0, 0], parts: vec![(-1, 0), (-1, 1)] };
    let x = Element::from([(a.clone(), BigInt::from(1))]);
    // transposition: Koszul sign (-1)^{1·1}
    let t = apply_set_map(&model, &[1, 0], 2, &x).unwrap();
    let swapped = BoxGen { perversities: vec![0, 0], parts: vec![(-1, 1), (-1, 0)] };
    assert_eq!(t, Element::from([(swapped, BigInt::from(-1))]));
    // inclusion 1 -> 2 adjoins Γ
    let c = BoxGen { perversities: vec![0], parts: vec![(-1, 1)] };
    let inc = apply_set_map(&model, &[0], 2, &Element::from([(c, BigInt::from(1))])).unwrap();
    let with_gamma = BoxGen { perversities: vec![0, 0], parts: vec![(-1, 1), (0, 0)] };
    assert_eq!(inc, Element::from([(with_gamma, BigInt::from(1))]));
    // surjection 2 -> 1 is the intersection product
    let prod = apply_set_map(&model, &[0, 0], 1, &x).unwrap();
    let ab = model.products().entry((0, 0, 0), (-1, 0), (-1, 1)).unwrap();
    let expected: Element = ab.iter().map(|(i, v)| (BoxGen { perversities: vec![0], parts: vec![(-2, *i)] }, v.clone())).collect();
    assert_eq!(prod, expected);
}

fn random_module(n: usize, rng: &mut impl Rng) -> PerverseGradedModule {
    let ps = ihchain::perversity::enumerate(n).unwrap();
    let threshold = ps[rng.gen_range(0..ps.len())].clone();
    let degree = rng.gen_range(-2i64..=0);
    let group = match rng.gen_range(0..3) {
        0 => Presentation::free(rng.gen_range(1..=2)),
        1 => Presentation::cyclic(BigInt::from(rng.gen_range(2..=4))),
        _ => {
            let mut rel = SparseVec::new();
            rel.insert(0, BigInt::from(2));
            Presentation::new(2, vec![rel]).unwrap()
        }
    };
    let above = |p: &ihchain::perversity::Perversity| p.values().iter().zip(threshold.values()).all(|(a, b)| a >= b);
    PerverseGradedModule::from_fn(
        n,
        |p| Ok(if above(p) { GradedGroup::from([(degree, group.clone())]) } else { GradedGroup::new() }),
        |p, q, _| {
            let g = group.gens();
            Ok((0..if above(p) { g } else { 0 })
                .map(|i| if above(q) { SparseVec::from([(i, BigInt::from(1))]) } else { SparseVec::new() })
                .collect())
        },
    )
    .unwrap()
}

#[test]
fn boxtimes_is_associative_up_to_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..12 {
        let n = 2 + trial % 3;
        let (a, b, c) = (random_module(n, &mut rng), random_module(n, &mut rng), random_module(n, &mut rng));
        for m in [&a, &b, &c] {
            m.check_functorial().unwrap();
        }
        let left = boxtimes(&boxtimes(&a, &b).unwrap(), &c).unwrap();
        let right = boxtimes(&a, &boxtimes(&b, &c).unwrap()).unwrap();
        assert!(left.same_invariants(&right), "n={n}\n{left}\nvs\n{right}");
        let ab = boxtimes(&a, &b).unwrap();
        let ba = boxtimes(&b, &a).unwrap();
        assert!(ab.same_invariants(&ba));
        let u = PerverseGradedModule::unit(n).unwrap();
        assert!(boxtimes(&a, &u).unwrap().same_invariants(&a));
    }
}

#[test]
fn boxtimes_of_the_suspension_model_with_itself() {
    // (IH ⊠ IH)^r at r = (0,1) collects the pairs (0,0), (0,1), (1,0)
    let model = build_ih_model(&fixtures::sigma_torus()).unwrap();
    let m = model.module();
    let sq = boxtimes(m, m).unwrap();
    sq.check_functorial().unwrap();
    let lo = m.index(&pv("0,0")).unwrap();
    let at_lo = sq.invariants(lo);
    let direct: usize = m.invariants(lo).values().map(|g| g.rank).sum();
    assert_eq!(at_lo.values().map(|g| g.rank).sum::<usize>(), direct * direct);
    assert!(matches!(PerverseGradedModule::unit(7), Err(ihchain::Error::SizeLimit(_))));
}
