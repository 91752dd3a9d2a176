//! Chain-level identities on randomized inputs, 1000 cases each.

use std::sync::OnceLock;

use ihchain::chain::{bar_epsilon, cap, pd, theta, theta_inverse, Chain, Cochain, ShiftedChain, TensorChain};
use ihchain::complex::{Simplex, StratifiedComplex};
use ihchain::fixtures;
use ihchain::product::ProductComplex;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sigma_torus() -> &'static StratifiedComplex {
    static CX: OnceLock<StratifiedComplex> = OnceLock::new();
    CX.get_or_init(fixtures::sigma_torus)
}

fn tetra_square() -> &'static ProductComplex {
    static PC: OnceLock<ProductComplex> = OnceLock::new();
    PC.get_or_init(|| ProductComplex::new(&fixtures::boundary_tetrahedron(), 2).unwrap())
}

fn coefficient(rng: &mut ChaCha8Rng) -> BigInt {
    BigInt::from(rng.gen_range(-3i64..=3))
}

fn random_chain(cx: &StratifiedComplex, d: usize, rng: &mut ChaCha8Rng) -> Chain {
    let simplices = cx.simplices(d);
    let terms: Vec<(Simplex, BigInt)> =
        (0..rng.gen_range(1..=4)).map(|_| (simplices[rng.gen_range(0..simplices.len())].clone(), coefficient(rng))).collect();
    Chain::from_terms(d as i64, terms).unwrap()
}

fn random_cochain(cx: &StratifiedComplex, p: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let values = cx.simplices(p).iter().map(|s| (s.clone(), coefficient(rng))).filter(|(_, x)| !x.is_zero());
    Cochain::from_values(p, values.collect::<Vec<_>>()).unwrap()
}

/// A homogeneous tensor with random slot dimensions and shifts.
fn random_tensor(cx: &StratifiedComplex, k: usize, rng: &mut ChaCha8Rng) -> TensorChain {
    let n = cx.dim();
    let dims: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=n)).collect();
    let shifts: Vec<i64> = (0..k).map(|_| rng.gen_range(-3i64..=3)).collect();
    let terms: Vec<(Vec<Simplex>, BigInt)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let slots = dims.iter().map(|&d| cx.simplices(d)[rng.gen_range(0..cx.count(d))].clone()).collect();
            (slots, coefficient(rng))
        })
        .collect();
    TensorChain::from_terms(shifts, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = sigma_torus();
        let c = random_chain(cx, rng.gen_range(0..=3), &mut rng);
        prop_assert!(c.boundary().boundary().is_zero());
        let t = random_tensor(cx, rng.gen_range(1..=3), &mut rng);
        prop_assert!(t.boundary().boundary().is_zero());
        let s = ShiftedChain::new(rng.gen_range(-4i64..=4), c);
        prop_assert!(s.boundary().boundary().is_zero());
    }

    #[test]
    fn theta_is_a_chain_isomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tensor(sigma_torus(), rng.gen_range(1..=4), &mut rng);
        prop_assert_eq!(theta(&t.boundary()), theta(&t).boundary());
        prop_assert_eq!(theta_inverse(&theta(&t), t.shifts()).unwrap(), t);
    }

    #[test]
    fn bar_epsilon_is_a_chain_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pc = tetra_square();
        let t = random_tensor(pc.base(), 2, &mut rng);
        let lhs = bar_epsilon(pc, &t.boundary()).unwrap();
        let rhs = bar_epsilon(pc, &t).unwrap().boundary();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cap_boundary_identity(seed in any::<u64>()) {
        // ∂(x∩c) = δx∩c + (-1)^p x∩∂c
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = sigma_torus();
        let d = rng.gen_range(0..=3);
        let p = rng.gen_range(0..=d);
        let x = random_cochain(cx, p, &mut rng);
        let c = random_chain(cx, d, &mut rng);
        let mut rhs = cap(&x.coboundary(cx), &c);
        let tail = cap(&x, &c.boundary());
        rhs = if p % 2 == 0 { rhs.add(&tail) } else { rhs.sub(&tail) };
        prop_assert_eq!(cap(&x, &c).boundary(), rhs);
    }

    #[test]
    fn pd_is_a_chain_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = match seed % 3 {
            0 => fixtures::torus(),
            1 => fixtures::boundary_tetrahedron(),
            _ => sigma_torus().clone(),
        };
        let p = rng.gen_range(0..=cx.dim());
        let x = random_cochain(&cx, p, &mut rng);
        prop_assert_eq!(pd(&cx, &x.coboundary(&cx)).unwrap(), pd(&cx, &x).unwrap().boundary());
    }
}

#[test]
fn pd_of_the_unit_is_the_shifted_fundamental_class() {
    let cx = fixtures::torus();
    let gamma = ihchain::chain::fundamental_cycle(&cx).unwrap();
    assert_eq!(pd(&cx, &Cochain::unit(&cx)).unwrap(), ShiftedChain::new(-2, gamma));
}
