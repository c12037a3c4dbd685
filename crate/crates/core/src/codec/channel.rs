//! Zero-error channel codebooks: independent sets in AND powers.

use serde::{Deserialize, Serialize};

use super::si::OutputSampler;
use super::simulate::{simulate, SimStats};
use crate::budget::Budget;
use crate::combinat::{alpha_exact, greedy_clique};
use crate::error::{Error, Result};
use crate::graph::{and_power_graph, characteristic_graph, ChannelSpec, Graph};
use crate::typicality::sequence_from_index;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codebook {
    pub n: usize,
    pub codewords: Vec<Vec<usize>>,
    /// Set only after a pairwise non-confusability check.
    #[serde(default)]
    pub independence_checked: bool,
    /// The codebook is a maximum independent set of the power.
    #[serde(default)]
    pub maximum: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeTarget {
    Exact,
    Greedy,
}

/// Whether two sequences are confusable in the AND power of `g`.
pub fn confusable_sequences(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(&u, &v)| g.confusable(u, v))
}

impl Codebook {
    /// A codebook whose independence has not been checked.
    pub fn unchecked(n: usize, codewords: Vec<Vec<usize>>) -> Self {
        Codebook {
            n,
            codewords,
            independence_checked: false,
            maximum: false,
        }
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn rate(&self) -> f64 {
        (self.len() as f64).log2() / self.n as f64
    }

    /// First pair of distinct codewords confusable under `g`, if any.
    pub fn conflict(&self, g: &Graph) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if confusable_sequences(g, &self.codewords[i], &self.codewords[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Runs the pairwise check and records its outcome.
    pub fn check(&mut self, g: &Graph) -> Result<()> {
        if self.codewords.iter().any(|c| c.len() != self.n || c.iter().any(|&x| x >= g.n())) {
            return Err(Error::InvalidParameter(format!("codewords must be length-{} sequences over {} inputs", self.n, g.n())));
        }
        match self.conflict(g) {
            None => {
                self.independence_checked = true;
                Ok(())
            }
            Some((i, j)) => {
                self.independence_checked = false;
                Err(Error::Precondition(format!("codewords {i} and {j} are confusable")))
            }
        }
    }

    /// Index of the only codeword that can produce `y`.
    pub fn decode(&self, channel: &ChannelSpec, y: &[usize]) -> Result<usize> {
        let mut found = None;
        for (i, c) in self.codewords.iter().enumerate() {
            if c.iter().zip(y).all(|(&x, &s)| channel.allows(x, s)) {
                if found.is_some() {
                    return Err(Error::Decode("several codewords fit the output".into()));
                }
                found = Some(i);
            }
        }
        found.ok_or_else(|| Error::Decode("no codeword fits the output".into()))
    }
}

pub fn build_channel_code(channel: &ChannelSpec, n: usize, target: CodeTarget, budget: &Budget) -> Result<Codebook> {
    let g = characteristic_graph(channel)?;
    let power = and_power_graph(&g, n, budget.vertices)?;
    let (set, maximum) = match target {
        CodeTarget::Exact => {
            let a = alpha_exact(&power, budget);
            (a.vertices, a.exact)
        }
        CodeTarget::Greedy => {
            let mut s = greedy_clique(&power.complement());
            s.sort_unstable();
            (s, false)
        }
    };
    let mut book = Codebook {
        n,
        codewords: set.iter().map(|&v| sequence_from_index(v, g.n(), n)).collect(),
        independence_checked: false,
        maximum,
    };
    book.check(&g)?;
    Ok(book)
}

/// Sends uniformly chosen codewords through `channel` and counts decoding failures.
pub fn channel_roundtrip(code: &Codebook, channel: &ChannelSpec, trials: u64, seed: u64) -> Result<SimStats> {
    if !code.independence_checked {
        return Err(Error::Precondition("codebook independence has not been checked".into()));
    }
    Ok(channel_roundtrip_unchecked(code, channel, trials, seed))
}

/// [`channel_roundtrip`] without the independence precondition; a negative control.
#[doc(hidden)]
pub fn channel_roundtrip_unchecked(code: &Codebook, channel: &ChannelSpec, trials: u64, seed: u64) -> SimStats {
    use rand::Rng;
    let sampler = OutputSampler::new(channel);
    simulate(trials, seed, |rng| {
        let m = rng.gen_range(0..code.len());
        let y: Vec<usize> = code.codewords[m].iter().map(|&x| sampler.sample(rng, x)).collect();
        let decoded = code.decode(channel, &y)?;
        Ok((decoded == m, 0))
    })
}
