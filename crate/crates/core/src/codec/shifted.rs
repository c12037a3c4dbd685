//! Shifted codebooks over a two-factor alphabet.
//!
//! Codewords are sequences over `X1 x X2`, with pair `(u, v)` stored as
//! `u |X2| + v`. The shift `C^(t)` rotates the first component of every
//! codeword by `t` positions. Concatenating one codeword from each of the `n`
//! shifts pairs every first-component letter with every second-component
//! letter, which drives the joint type towards the product of the marginals.
//! Shifts permute coordinates of one factor only, which is an automorphism of
//! the AND power, so independence survives.

use serde::Serialize;

use super::channel::Codebook;
use crate::error::{Error, Result};
use crate::graph::Distribution;
use crate::typicality::type_of;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftFilter {
    pub p1: Distribution,
    pub p2: Distribution,
    pub eps: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftedCodebook {
    pub book: Codebook,
    pub candidates: usize,
    /// Nothing survived the filter; retry with a longer block.
    pub empty: bool,
}

/// `C^(t)`: first components rotated left by `t`.
pub fn shift(book: &Codebook, x2_count: usize, t: usize) -> Codebook {
    let n = book.n;
    let codewords = book
        .codewords
        .iter()
        .map(|c| {
            (0..n)
                .map(|i| (c[(i + t) % n] / x2_count) * x2_count + c[i] % x2_count)
                .collect()
        })
        .collect();
    Codebook {
        n,
        codewords,
        independence_checked: book.independence_checked,
        maximum: false,
    }
}

/// Concatenations of one codeword from each shift whose joint type lies within
/// `eps` of `p1 x p2`. Fails when more than `limit` concatenations would be formed.
pub fn shifted_codebook(book: &Codebook, filter: &ShiftFilter, limit: usize) -> Result<ShiftedCodebook> {
    if !book.independence_checked {
        return Err(Error::Precondition("codebook independence has not been checked".into()));
    }
    let (k1, k2) = (filter.p1.len(), filter.p2.len());
    let n = book.n;
    let candidates = (book.len() as u128)
        .checked_pow(n as u32)
        .filter(|&c| c <= limit as u128)
        .ok_or(Error::ProductTooLarge { size: usize::MAX, budget: limit })? as usize;
    let target = filter.p1.product(&filter.p2);
    let shifts: Vec<Codebook> = (0..n).map(|t| shift(book, k2, t)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    for _ in 0..candidates {
        let word: Vec<usize> = (0..n).flat_map(|t| shifts[t].codewords[choice[t]].iter().copied()).collect();
        let ty = type_of(&word, k1 * k2)?;
        if ty.linf_distance(target.weights()) <= filter.eps + 1e-12 {
            out.push(word);
        }
        for slot in choice.iter_mut().rev() {
            *slot += 1;
            if *slot < book.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(ShiftedCodebook {
        empty: out.is_empty(),
        book: Codebook {
            n: n * n,
            codewords: out,
            independence_checked: true,
            maximum: false,
        },
        candidates,
    })
}
