//! Deterministic parallel simulation.
//!
//! Trials are cut into fixed chunks, chunk `c` draws from the stream
//! `derive_seed(seed, c)`, and only integer counts are aggregated, so totals do
//! not depend on the thread count or the scheduling order.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::rng::{derive_seed, seeded, SplitMix64};

pub const CHUNK: u64 = 1024;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimStats {
    pub trials: u64,
    /// Trials decoded to the wrong message.
    pub errors: u64,
    /// Trials where the decoder could not single out a message.
    pub ambiguous: u64,
    /// Total bits sent, for variable-length codes.
    pub bits: u64,
    /// Sum of squared per-trial bit counts, for confidence intervals.
    pub bits_sq: u128,
}

impl SimStats {
    fn merge(mut self, o: SimStats) -> SimStats {
        self.trials += o.trials;
        self.errors += o.errors;
        self.ambiguous += o.ambiguous;
        self.bits += o.bits;
        self.bits_sq += o.bits_sq;
        self
    }

    pub fn failures(&self) -> u64 {
        self.errors + self.ambiguous
    }

    pub fn mean_bits(&self) -> f64 {
        self.bits as f64 / self.trials.max(1) as f64
    }

    /// Standard error of [`SimStats::mean_bits`].
    pub fn stderr_bits(&self) -> f64 {
        let t = self.trials.max(1) as f64;
        let mean = self.mean_bits();
        let var = (self.bits_sq as f64 / t - mean * mean).max(0.0);
        (var / t).sqrt()
    }
}

/// Outcome of one trial: `Ok((correct, bits))`, or an error when decoding was ambiguous.
pub type Trial = Result<(bool, u64)>;

pub fn simulate(trials: u64, seed: u64, trial: impl Fn(&mut SplitMix64) -> Trial + Sync) -> SimStats {
    let chunks = trials.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = seeded(derive_seed(seed, c));
            let count = CHUNK.min(trials - c * CHUNK);
            let mut s = SimStats::default();
            for _ in 0..count {
                s.trials += 1;
                match trial(&mut rng) {
                    Ok((correct, bits)) => {
                        s.errors += u64::from(!correct);
                        s.bits += bits;
                        s.bits_sq += u128::from(bits) * u128::from(bits);
                    }
                    Err(_) => s.ambiguous += 1,
                }
            }
            s
        })
        .reduce(SimStats::default, SimStats::merge)
}

/// Index drawn from unnormalised non-negative `weights`.
pub fn sample_index(rng: &mut impl Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.gen::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return i;
        }
        u -= w;
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}
