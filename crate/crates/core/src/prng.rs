//! Counter-based SplitMix64 stream.
//!
//! Output `i` (starting at 0) of the stream for `seed` is
//!
//! ```text
//! z = seed + (i + 1) * 0x9E3779B97F4A7C15          (wrapping)
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9         (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB         (wrapping)
//! out = z ^ (z >> 31)
//! ```
//!
//! which equals the classic sequential SplitMix64 generator started from
//! `seed`, so any implementation can reproduce a corpus from its seed.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64_at(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = splitmix64_at(self.seed, self.counter);
        self.counter += 1;
        v
    }

    /// Uniform double in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
