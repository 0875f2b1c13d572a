//! Shared inputs for the benchmarks.

use groupdet_core::groupring::{GroupId, GroupRingElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` reproducible elements with coefficients drawn from `lo..=hi`.
pub fn sample_elements(group: GroupId, n: usize, lo: i64, hi: i64, seed: u64) -> Vec<GroupRingElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let c: [i64; 18] = std::array::from_fn(|_| rng.gen_range(lo..=hi));
            GroupRingElement::from_i64(group, &c).expect("18 coefficients")
        })
        .collect()
}
