//! Seed handling. Every random stream in the crate is a `ChaCha8Rng` whose
//! seed is derived from a user seed plus a path of integer labels, so
//! replicas and sub-streams never share state and results do not depend on
//! scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `seed` and a label path.
pub fn derive(seed: u64, labels: &[u64]) -> u64 {
    labels
        .iter()
        .fold(splitmix64(seed), |acc, &l| splitmix64(acc ^ splitmix64(l.wrapping_add(0x5851_f42d_4c95_7f2d))))
}

pub fn rng_from(seed: u64, labels: &[u64]) -> Rng {
    Rng::seed_from_u64(derive(seed, labels))
}

/// Seed of replica `k` of an experiment run with `seed`.
pub fn replica_seed(seed: u64, k: usize) -> u64 {
    derive(seed, &[0x7265_706c, k as u64])
}

/// Draws from `Po(mean)`; `mean <= 0` gives 0. Means beyond the range of the
/// exact sampler use the normal approximation.
pub fn poisson(mean: f64, rng: &mut impl rand::Rng) -> u64 {
    use rand_distr::{Distribution, Normal, Poisson};
    if mean <= 0.0 {
        return 0;
    }
    if mean < 1e15 {
        return Poisson::new(mean).expect("finite positive Poisson mean").sample(rng) as u64;
    }
    let z: f64 = Normal::new(mean, mean.sqrt()).expect("finite normal parameters").sample(rng);
    z.round().max(0.0) as u64
}
