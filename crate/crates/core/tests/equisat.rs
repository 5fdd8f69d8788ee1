mod common;

use rand::SeedableRng;

#[test]
fn reduction_agrees_with_brute_force() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let out = common::oracle::run(&mut rng, 250);
    assert!(out.mismatches.is_empty(), "{} mismatches, first:\n{}", out.mismatches.len(), out.mismatches[0]);
}
