//! Time-sharing code for a sum of channels.
//!
//! Each letter of a codeword is sent over one of the channels. A message is
//! the arrangement of channel indices (a sequence of the given composition)
//! together with one codeword of every per-channel codebook copy. Output
//! alphabets are disjoint, so the decoder reads the arrangement off the
//! output tags before decoding each channel.

use rand::Rng;
use serde::Serialize;

use super::channel::Codebook;
use super::si::OutputSampler;
use super::simulate::{simulate, SimStats};
use crate::error::{Error, Result};
use crate::graph::{characteristic_graph, ChannelSpec};

pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// `n! / prod c_a!`, or `None` past 128 bits.
pub fn multinomial(counts: &[usize]) -> Option<u128> {
    let mut total = 0;
    let mut acc: u128 = 1;
    for &c in counts {
        total += c;
        acc = acc.checked_mul(binomial(total, c)?)?;
    }
    Some(acc)
}

/// Rank of `seq` among sequences with its composition, in lexicographic order.
pub fn rank_arrangement(seq: &[usize], counts: &[usize]) -> Result<u128> {
    let mut counts = counts.to_vec();
    let mut rank = 0u128;
    for &s in seq {
        for a in 0..s {
            if counts[a] > 0 {
                counts[a] -= 1;
                rank += multinomial(&counts).ok_or_else(overflow)?;
                counts[a] += 1;
            }
        }
        if counts.get(s).copied().unwrap_or(0) == 0 {
            return Err(Error::InvalidParameter("sequence does not have the given composition".into()));
        }
        counts[s] -= 1;
    }
    Ok(rank)
}

pub fn unrank_arrangement(mut rank: u128, counts: &[usize]) -> Result<Vec<usize>> {
    let mut counts = counts.to_vec();
    let n: usize = counts.iter().sum();
    let mut seq = Vec::with_capacity(n);
    for _ in 0..n {
        let mut chosen = None;
        for a in 0..counts.len() {
            if counts[a] == 0 {
                continue;
            }
            counts[a] -= 1;
            let block = multinomial(&counts).ok_or_else(overflow)?;
            if rank < block {
                chosen = Some(a);
                break;
            }
            rank -= block;
            counts[a] += 1;
        }
        seq.push(chosen.ok_or_else(|| Error::InvalidParameter("rank exceeds the arrangement count".into()))?);
    }
    Ok(seq)
}

fn overflow() -> Error {
    Error::InvalidParameter("arrangement count exceeds 128 bits".into())
}

/// Integer composition of `n` closest to `n p`, by largest remainders.
pub fn composition_for(p: &[f64], n: usize) -> Vec<usize> {
    let mut counts: Vec<usize> = p.iter().map(|&q| (q * n as f64).floor() as usize).collect();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = p[a] * n as f64 - counts[a] as f64;
        let rb = p[b] * n as f64 - counts[b] as f64;
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let mut left = n - counts.iter().sum::<usize>().min(n);
    for &a in order.iter().cycle() {
        if left == 0 {
            break;
        }
        counts[a] += 1;
        left -= 1;
    }
    counts
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumCode {
    pub n: usize,
    pub channels: Vec<ChannelSpec>,
    pub books: Vec<Codebook>,
    pub composition: Vec<usize>,
    /// Codebook blocks per channel: `composition[a] / books[a].n`.
    pub copies: Vec<usize>,
    /// Number of channel arrangements.
    pub arrangements: u128,
}

/// A message: an arrangement rank and one codeword index per codebook copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumMessage {
    pub arrangement: u128,
    pub words: Vec<Vec<usize>>,
}

pub fn build_sum_channel_code(channels: &[ChannelSpec], books: &[Codebook], composition: &[usize]) -> Result<SumCode> {
    if channels.is_empty() || channels.len() != books.len() || books.len() != composition.len() {
        return Err(Error::InvalidParameter("channels, codebooks and composition must have equal lengths".into()));
    }
    let mut copies = Vec::new();
    for (a, (book, &c)) in books.iter().zip(composition).enumerate() {
        let mut book = book.clone();
        book.check(&characteristic_graph(&channels[a])?)?;
        if book.is_empty() || c % book.n != 0 {
            return Err(Error::InvalidParameter(format!(
                "channel {a}: {c} slots are not a multiple of the codebook length {}",
                book.n
            )));
        }
        copies.push(c / book.n);
    }
    let arrangements = multinomial(composition).ok_or_else(overflow)?;
    Ok(SumCode {
        n: composition.iter().sum(),
        channels: channels.to_vec(),
        books: books.to_vec(),
        composition: composition.to_vec(),
        copies,
        arrangements,
    })
}

impl SumCode {
    /// `log2` of the number of messages.
    pub fn message_bits(&self) -> f64 {
        (self.arrangements as f64).log2()
            + self
                .books
                .iter()
                .zip(&self.copies)
                .map(|(b, &k)| k as f64 * (b.len() as f64).log2())
                .sum::<f64>()
    }

    pub fn rate(&self) -> f64 {
        self.message_bits() / self.n as f64
    }

    /// Channel inputs as `(channel, input)` pairs.
    pub fn encode(&self, msg: &SumMessage) -> Result<Vec<(usize, usize)>> {
        let pattern = unrank_arrangement(msg.arrangement, &self.composition)?;
        let mut letters: Vec<Vec<usize>> = Vec::new();
        for (a, book) in self.books.iter().enumerate() {
            let words = msg.words.get(a).filter(|w| w.len() == self.copies[a]).ok_or_else(|| {
                Error::InvalidParameter(format!("channel {a} needs {} codeword indices", self.copies[a]))
            })?;
            let mut seq = Vec::with_capacity(self.composition[a]);
            for &w in words {
                seq.extend(book.codewords.get(w).ok_or_else(|| Error::InvalidParameter(format!("codeword {w} out of range")))?);
            }
            letters.push(seq);
        }
        let mut next = vec![0; self.books.len()];
        Ok(pattern
            .into_iter()
            .map(|a| {
                let x = letters[a][next[a]];
                next[a] += 1;
                (a, x)
            })
            .collect())
    }

    /// Decodes tagged outputs `(channel, output)`.
    pub fn decode(&self, y: &[(usize, usize)]) -> Result<SumMessage> {
        let pattern: Vec<usize> = y.iter().map(|&(a, _)| a).collect();
        let arrangement = rank_arrangement(&pattern, &self.composition)?;
        let mut outputs = vec![Vec::new(); self.books.len()];
        for &(a, s) in y {
            outputs[a].push(s);
        }
        let words = self
            .books
            .iter()
            .enumerate()
            .map(|(a, book)| {
                outputs[a]
                    .chunks(book.n)
                    .map(|block| book.decode(&self.channels[a], block))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SumMessage { arrangement, words })
    }

    pub fn random_message(&self, rng: &mut impl Rng) -> SumMessage {
        SumMessage {
            arrangement: rng.gen_range(0..self.arrangements),
            words: self
                .books
                .iter()
                .zip(&self.copies)
                .map(|(b, &k)| (0..k).map(|_| rng.gen_range(0..b.len())).collect())
                .collect(),
        }
    }

    pub fn simulate(&self, trials: u64, seed: u64) -> SimStats {
        let samplers: Vec<OutputSampler> = self.channels.iter().map(OutputSampler::new).collect();
        simulate(trials, seed, |rng| {
            let msg = self.random_message(rng);
            let x = self.encode(&msg)?;
            let y: Vec<(usize, usize)> = x.iter().map(|&(a, s)| (a, samplers[a].sample(rng, s))).collect();
            Ok((self.decode(&y)? == msg, 0))
        })
    }
}
