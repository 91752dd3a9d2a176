use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ihchain::sign_oracle::*;

#[test]
fn all_families_hold() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let reports = verify_all(200, &mut rng);
    assert_eq!(reports.len(), 5);
    for r in &reports {
        assert!(r.pass(), "{}", r.name);
    }
    assert!(start.elapsed().as_secs() < 5);
}

#[test]
fn arities_up_to_six() {
    for k in 1..=MAX_ARITY {
        assert!(verify_theta(k) && verify_eps_dual(k) && verify_mccom(k), "k = {k}");
    }
    assert!(verify_iteration());
    assert!(verify_transfer_square());
}

#[test]
fn a_perturbed_identity_is_rejected() {
    let mut id = eps_dual_identity(3);
    id.rhs = id.rhs + IntPoly::var("m", 1);
    assert!(!id.holds());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    assert!(!id.numeric_check(200, 9, &mut rng));
    assert!(!printed_mix_identity().holds());
}
