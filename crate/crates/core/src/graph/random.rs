use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::Graph;

/// Seeded random stream.
///
/// The generator is SplitMix64 (64-bit state, Weyl increment
/// `0x9E3779B97F4A7C15`, Stafford variant-13 output mix), seeded directly
/// with `seed`. Uniform reals take the top 53 bits of one output. The same
/// seed therefore always produces the same stream within this crate.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: SplitMix64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Independent stream for sub-task `index`, seeded with `mix_seed`.
    pub fn fork(&self, index: u64) -> Self {
        Self::new(mix_seed(self.seed, index))
    }
}

/// Derives a per-trial seed: the SplitMix64 finaliser applied to
/// `seed + (index + 1) * 0x9E3779B97F4A7C15` (wrapping).
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// How pair decisions are drawn. Both modes are deterministic in the seed but
/// produce different graphs for the same seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// One uniform per pair `i < j`, lexicographic order. O(n^2).
    #[default]
    Dense,
    /// Geometric jumps over the same lexicographic pair order, one uniform per
    /// edge plus one. O(n + m).
    Skip,
}

/// G(n, p) with one Bernoulli decision per pair, pairs in lexicographic order.
pub fn gnp_sample(n: usize, p: f64, src: &mut RandomSource) -> Graph {
    gnp_sample_with(n, p, src, SamplingMode::Dense)
}

pub fn gnp_sample_with(n: usize, p: f64, src: &mut RandomSource, mode: SamplingMode) -> Graph {
    assert!((0.0..=1.0).contains(&p), "edge probability {p} outside [0, 1]");
    if n < 2 || p == 0.0 {
        return Graph::empty(n);
    }
    let mut edges = Vec::new();
    match mode {
        SamplingMode::Dense => {
            for i in 0..n {
                for j in i + 1..n {
                    if src.uniform() < p {
                        edges.push((i, j));
                    }
                }
            }
        }
        SamplingMode::Skip if p == 1.0 => {
            for i in 0..n {
                edges.extend((i + 1..n).map(|j| (i, j)));
            }
        }
        SamplingMode::Skip => {
            let log_q = (-p).ln_1p();
            let total = (n as f64) * (n as f64 - 1.0) / 2.0;
            let (mut i, mut j) = (0usize, 1usize);
            loop {
                let jump = ((1.0 - src.uniform()).ln() / log_q).floor();
                if jump >= total {
                    break;
                }
                j += jump as usize;
                while j >= n && i + 1 < n {
                    let over = j - n;
                    i += 1;
                    j = i + 1 + over;
                }
                if i + 1 >= n {
                    break;
                }
                edges.push((i, j));
                j += 1;
            }
        }
    }
    Graph::from_edges(n, edges).expect("sampled edges are in range and loop-free")
}
