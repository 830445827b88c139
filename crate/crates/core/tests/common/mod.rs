//! Seeded corpus of random maximal t-intersecting families shared by the
//! integration suites.

#![allow(dead_code)]

use msekr::{enumerate_multisets, Family};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x6d73_656b_7200_0001;

/// Every `(n, k, t)` with `1 <= t <= k <= 4`, `2k - t <= n <= 6`, `k >= 2`.
pub fn corpus_shapes() -> Vec<(usize, u32, u32)> {
    let mut out = Vec::new();
    for k in 2..=4u32 {
        for t in 1..=k {
            for n in (2 * k - t).max(2) as usize..=6 {
                out.push((n, k, t));
            }
        }
    }
    out
}

/// A maximal `t`-intersecting family: greedy insertion over a random order
/// of all `k`-multisets of `[n]`.
pub fn random_maximal(n: usize, k: u32, t: u32, rng: &mut ChaCha8Rng) -> Family {
    let mut pool: Vec<_> = enumerate_multisets(n, k, None).collect();
    pool.shuffle(rng);
    let mut fam = Family::new(n, k).unwrap();
    for cand in pool {
        if fam.iter().all(|m| m.intersection_size(&cand).unwrap() >= t) {
            fam.insert(cand).unwrap();
        }
    }
    fam
}

/// `count` families cycling through [`corpus_shapes`].
pub fn corpus(count: usize) -> Vec<(u32, Family)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let shapes = corpus_shapes();
    (0..count)
        .map(|idx| {
            let (n, k, t) = shapes[idx % shapes.len()];
            (t, random_maximal(n, k, t, &mut rng))
        })
        .collect()
}
