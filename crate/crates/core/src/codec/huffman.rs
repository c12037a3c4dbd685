//! Binary Huffman codes.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::Serialize;

use super::bits::{BitReader, BitString};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuffmanCode {
    pub codewords: Vec<BitString>,
}

struct Node {
    weight: f64,
    /// Creation order; breaks weight ties deterministically.
    id: usize,
    symbols: Vec<usize>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.total_cmp(&other.weight).then(self.id.cmp(&other.id))
    }
}

impl HuffmanCode {
    /// Optimal prefix code for `weights`. A single symbol gets the one-bit codeword `0`.
    pub fn new(weights: &[f64]) -> Result<Self> {
        let k = weights.len();
        if k == 0 {
            return Err(Error::InvalidParameter("Huffman code over no symbols".into()));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::InvalidDistribution("negative or NaN Huffman weight".into()));
        }
        if k == 1 {
            return Ok(HuffmanCode {
                codewords: vec![BitString::parse("0")?],
            });
        }
        let mut rev = vec![Vec::new(); k];
        let mut heap: BinaryHeap<Reverse<Node>> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| {
                Reverse(Node {
                    weight: w,
                    id: i,
                    symbols: vec![i],
                })
            })
            .collect();
        let mut next_id = k;
        while heap.len() > 1 {
            let Reverse(a) = heap.pop().expect("two nodes");
            let Reverse(b) = heap.pop().expect("two nodes");
            for &s in &a.symbols {
                rev[s].push(false);
            }
            for &s in &b.symbols {
                rev[s].push(true);
            }
            let mut symbols = a.symbols;
            symbols.extend(b.symbols);
            heap.push(Reverse(Node {
                weight: a.weight + b.weight,
                id: next_id,
                symbols,
            }));
            next_id += 1;
        }
        let codewords = rev
            .into_iter()
            .map(|mut bits| {
                bits.reverse();
                let mut s = BitString::new();
                bits.into_iter().for_each(|b| s.push(b));
                s
            })
            .collect();
        Ok(HuffmanCode { codewords })
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn encode(&self, symbol: usize, out: &mut BitString) {
        out.extend(&self.codewords[symbol]);
    }

    /// Reads one codeword; relies on prefix-freeness.
    pub fn decode(&self, r: &mut BitReader<'_>) -> Result<usize> {
        let mut alive: Vec<usize> = (0..self.codewords.len()).collect();
        let mut depth = 0;
        loop {
            if let Some(&s) = alive.iter().find(|&&s| self.codewords[s].len() == depth) {
                return Ok(s);
            }
            let bit = r.read()?;
            alive.retain(|&s| self.codewords[s].len() > depth && self.codewords[s].bits()[depth] == bit);
            if alive.is_empty() {
                return Err(Error::Decode("bits match no codeword".into()));
            }
            depth += 1;
        }
    }

    pub fn kraft_sum(&self) -> f64 {
        self.codewords.iter().map(|c| (-(c.len() as f64)).exp2()).sum()
    }

    pub fn is_prefix_free(&self) -> bool {
        let mut sorted: Vec<&BitString> = self.codewords.iter().collect();
        sorted.sort();
        sorted
            .windows(2)
            .all(|w| !(w[0].len() <= w[1].len() && w[1].bits()[..w[0].len()] == *w[0].bits()))
    }

    pub fn expected_length(&self, weights: &[f64]) -> f64 {
        self.codewords
            .iter()
            .zip(weights)
            .map(|(c, &w)| c.len() as f64 * w)
            .sum()
    }
}
