//! Variable-length zero-error code with decoder side information.
//!
//! A block `x^n` is sent as a flag bit followed by either the Huffman codeword
//! of its colour in a proper colouring of the typical induced subgraph, or
//! (for atypical blocks) its raw lexicographic index. The decoder, holding
//! `y^n`, keeps the typical sequences of the received colour that could have
//! produced `y^n`; confusable sequences have distinct colours, so exactly one
//! remains.

use rand::Rng;
use serde::Serialize;

use super::bits::{width_for, BitReader, BitString};
use super::huffman::HuffmanCode;
use super::simulate::{sample_index, simulate, SimStats};
use crate::budget::Budget;
use crate::combinat::{chromatic_number_exact, Coloring};
use crate::error::{Error, Result};
use crate::graph::{ChannelSpec, Distribution, Graph, ProbabilisticGraph};
use crate::info::entropy;
use crate::typicality::{sequence_from_index, sequence_index, typical_induced_subgraph};

/// Output sampler for a channel: support-uniform unless the channel carries weights.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputSampler {
    pub rows: Vec<Vec<usize>>,
    pub weights: Vec<Vec<f64>>,
}

impl OutputSampler {
    pub fn new(channel: &ChannelSpec) -> Self {
        let rows = channel.rows();
        let weights = rows
            .iter()
            .enumerate()
            .map(|(x, row)| {
                row.iter()
                    .map(|&y| {
                        channel
                            .weights
                            .as_ref()
                            .and_then(|w| w.iter().find(|&&(a, b, _)| a == x && b == y))
                            .map_or(1.0, |&(_, _, p)| p)
                    })
                    .collect()
            })
            .collect();
        OutputSampler { rows, weights }
    }

    pub fn sample(&self, rng: &mut impl Rng, x: usize) -> usize {
        self.rows[x][sample_index(rng, &self.weights[x])]
    }
}

/// Confusability graph of an allowed-output table.
pub(crate) fn graph_of_rows(rows: &[Vec<usize>]) -> Graph {
    Graph::from_fn(rows.len(), |a, b| rows[a].iter().any(|y| rows[b].binary_search(y).is_ok()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiCode {
    pub n: usize,
    pub eps: f64,
    pub x_count: usize,
    /// Typical sequences by lexicographic index, ascending.
    pub members: Vec<usize>,
    /// Colouring of the typical induced subgraph, indexed like `members`.
    pub coloring: Coloring,
    pub coloring_exact: bool,
    pub color_codewords: HuffmanCode,
    /// Colour distribution under the renormalised typical distribution.
    pub color_weights: Vec<f64>,
    /// Width of the raw index sent for atypical blocks.
    pub escape_length: usize,
    /// `P^n` of the typical set.
    pub typical_mass: f64,
    #[serde(skip)]
    rows: Vec<Vec<usize>>,
    #[serde(skip)]
    classes: Vec<Vec<usize>>,
}

/// Builds the code for `channel` and source `p` at block length `n`.
pub fn build_si_code(channel: &ChannelSpec, p: &Distribution, n: usize, eps: f64, budget: &Budget) -> Result<SiCode> {
    channel.validate()?;
    if p.len() != channel.x_count {
        return Err(Error::InvalidDistribution(format!(
            "source has {} symbols, channel has {} inputs",
            p.len(),
            channel.x_count
        )));
    }
    SiCode::from_rows(channel.rows(), p, n, eps, false, budget)
}

impl SiCode {
    /// Builds from an allowed-output table; inputs may have empty rows when they
    /// carry no probability. With `allow_empty`, an empty typical set yields a
    /// code that escapes every block.
    pub fn from_rows(
        rows: Vec<Vec<usize>>,
        p: &Distribution,
        n: usize,
        eps: f64,
        allow_empty: bool,
        budget: &Budget,
    ) -> Result<SiCode> {
        let x_count = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("block length must be positive".into()));
        }
        let total = (x_count as u128)
            .checked_pow(n as u32)
            .filter(|&t| t <= usize::MAX as u128)
            .ok_or_else(|| Error::InvalidParameter(format!("{x_count}^{n} sequences cannot be indexed")))?;
        let escape_length = width_for(total);
        let pg = ProbabilisticGraph::new(graph_of_rows(&rows), p.clone())?;
        let (members, coloring, coloring_exact, color_weights, typical_mass) =
            match typical_induced_subgraph(&pg, n, eps, budget.vertices) {
                Ok((sub, members)) => {
                    let chi = chromatic_number_exact(&sub.graph, budget);
                    let mut w = vec![0.0; chi.coloring.color_count];
                    for (v, &c) in chi.coloring.color_of.iter().enumerate() {
                        w[c] += sub.dist.get(v);
                    }
                    let mass = members
                        .iter()
                        .map(|&i| sequence_from_index(i, x_count, n).iter().map(|&x| p.get(x)).product::<f64>())
                        .sum();
                    (members, chi.coloring, chi.exact, w, mass)
                }
                Err(Error::EmptyTypicalSet { .. }) | Err(Error::ZeroMass) if allow_empty => {
                    (Vec::new(), Coloring::new(Vec::new()), true, vec![1.0], 0.0)
                }
                Err(e) => return Err(e),
            };
        let color_codewords = HuffmanCode::new(&color_weights)?;
        let classes = coloring.classes();
        Ok(SiCode {
            n,
            eps,
            x_count,
            members,
            coloring,
            coloring_exact,
            color_codewords,
            color_weights,
            escape_length,
            typical_mass,
            rows,
            classes,
        })
    }

    fn compatible(&self, x: &[usize], y: &[usize]) -> bool {
        x.iter().zip(y).all(|(&a, b)| self.rows[a].binary_search(b).is_ok())
    }

    pub fn encode(&self, x: &[usize], out: &mut BitString) -> Result<()> {
        if x.len() != self.n || x.iter().any(|&s| s >= self.x_count) {
            return Err(Error::InvalidParameter(format!("block {x:?} is not a length-{} source block", self.n)));
        }
        let index = sequence_index(x, self.x_count);
        match self.members.binary_search(&index) {
            Ok(pos) => {
                out.push(false);
                self.color_codewords.encode(self.coloring.color_of[pos], out);
            }
            Err(_) => {
                out.push(true);
                out.push_uint(index as u128, self.escape_length);
            }
        }
        Ok(())
    }

    pub fn decode(&self, y: &[usize], r: &mut BitReader<'_>) -> Result<Vec<usize>> {
        if y.len() != self.n {
            return Err(Error::InvalidParameter(format!("side information has length {}, expected {}", y.len(), self.n)));
        }
        if r.read()? {
            let index = r.read_uint(self.escape_length)? as usize;
            return Ok(sequence_from_index(index, self.x_count, self.n));
        }
        let color = self.color_codewords.decode(r)?;
        let mut found = None;
        for &pos in self.classes.get(color).map(Vec::as_slice).unwrap_or(&[]) {
            let cand = sequence_from_index(self.members[pos], self.x_count, self.n);
            if self.compatible(&cand, y) {
                if found.is_some() {
                    return Err(Error::Decode(format!("colour {color} leaves several candidates")));
                }
                found = Some(cand);
            }
        }
        found.ok_or_else(|| Error::Decode(format!("colour {color} leaves no candidate")))
    }

    /// Exact expected bits per source symbol.
    pub fn expected_rate(&self) -> f64 {
        let typical = self.typical_mass * self.color_codewords.expected_length(&self.color_weights);
        (1.0 + typical + (1.0 - self.typical_mass) * self.escape_length as f64) / self.n as f64
    }

    /// `1/n + P(atypical) e/n + (H(colour) + 1)/n`, with `e` the escape width.
    pub fn rate_budget(&self) -> f64 {
        let n = self.n as f64;
        (1.0 + (1.0 - self.typical_mass) * self.escape_length as f64 + entropy(&self.color_weights) + 1.0) / n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Roundtrip {
    pub decoded: Vec<usize>,
    pub bits: usize,
}

/// Encodes `x`, decodes with `y`, and checks the result.
pub fn si_roundtrip(code: &SiCode, x: &[usize], y: &[usize]) -> Result<Roundtrip> {
    if x.len() != y.len() || !code.compatible(x, y) {
        return Err(Error::InvalidParameter("source and side information are not jointly possible".into()));
    }
    let mut bits = BitString::new();
    code.encode(x, &mut bits)?;
    let mut r = bits.reader();
    let decoded = code.decode(y, &mut r)?;
    if decoded != x {
        return Err(Error::Decode(format!("decoded {decoded:?} instead of {x:?}")));
    }
    Ok(Roundtrip { decoded, bits: r.position() })
}

/// Draws i.i.d. source blocks and channel outputs and roundtrips each one.
pub fn simulate_si(code: &SiCode, p: &Distribution, sampler: &OutputSampler, trials: u64, seed: u64) -> SimStats {
    simulate(trials, seed, |rng| {
        let x: Vec<usize> = (0..code.n).map(|_| sample_index(rng, p.weights())).collect();
        let y: Vec<usize> = x.iter().map(|&s| sampler.sample(rng, s)).collect();
        let mut bits = BitString::new();
        code.encode(&x, &mut bits)?;
        let decoded = code.decode(&y, &mut bits.reader())?;
        Ok((decoded == x, bits.len() as u64))
    })
}
