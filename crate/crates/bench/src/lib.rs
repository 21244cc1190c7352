//! Seeded inputs shared by the benchmarks.

use cvform::CvForm;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 20240607;

/// `count` shuffled regular forms in `n` variables with largest entry `n - 1`.
pub fn regular_forms(n: usize, count: usize, seed: u64) -> Vec<CvForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut e = vec![0u32];
            for _ in 1..n {
                let step = rng.gen_range(0..2u32);
                e.push(e.last().unwrap() + step);
            }
            let shift = n as u32 - 1 - e.last().unwrap();
            let mut e: Vec<u32> = e.into_iter().map(|x| x + shift).collect();
            e.shuffle(&mut rng);
            CvForm::new(e).unwrap()
        })
        .collect()
}
