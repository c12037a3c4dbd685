//! Sequence types, typical sets, typical induced subgraphs and type splitting.
//!
//! Typicality is measured in the infinity norm on types:
//! `x^n` is typical when `max_a |T(a) - P(a)| <= eps`.
//! Sequences are indexed lexicographically, first symbol most significant,
//! which matches the vertex indexing of AND powers.

use std::ops::ControlFlow;

use rand::Rng;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Distribution, Graph, ProbabilisticGraph};

/// Slack on the typicality boundary so that exact rational boundaries count as typical.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Largest alphabet power materialised eagerly.
pub const EAGER_LIMIT: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceType {
    pub counts: Vec<usize>,
    pub n: usize,
}

impl SequenceType {
    pub fn as_distribution(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.n as f64).collect()
    }

    pub fn linf_distance(&self, p: &[f64]) -> f64 {
        self.counts
            .iter()
            .zip(p)
            .map(|(&c, &q)| (c as f64 / self.n as f64 - q).abs())
            .fold(0.0, f64::max)
    }
}

pub fn type_of(seq: &[usize], alphabet: usize) -> Result<SequenceType> {
    if seq.is_empty() {
        return Err(Error::InvalidParameter("type of an empty sequence".into()));
    }
    let mut counts = vec![0; alphabet];
    for (t, &x) in seq.iter().enumerate() {
        if x >= alphabet {
            return Err(Error::InvalidParameter(format!(
                "symbol {x} at position {t} outside alphabet of size {alphabet}"
            )));
        }
        counts[x] += 1;
    }
    Ok(SequenceType {
        counts,
        n: seq.len(),
    })
}

/// Lexicographic index of a sequence over an alphabet of size `k`.
pub fn sequence_index(seq: &[usize], k: usize) -> usize {
    seq.iter().fold(0, |acc, &x| acc * k + x)
}

pub fn sequence_from_index(mut index: usize, k: usize, n: usize) -> Vec<usize> {
    let mut seq = vec![0; n];
    for t in (0..n).rev() {
        seq[t] = index % k;
        index /= k;
    }
    seq
}

/// The set of `eps`-typical sequences of length `n` for `base`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypicalSet {
    pub base: Distribution,
    pub n: usize,
    pub eps: f64,
}

impl TypicalSet {
    pub fn new(base: Distribution, n: usize, eps: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("block length must be positive".into()));
        }
        if !(eps >= 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance {eps} must be non-negative")));
        }
        Ok(TypicalSet { base, n, eps })
    }

    fn count_range(&self, a: usize) -> (usize, usize) {
        let n = self.n as f64;
        let p = self.base.get(a);
        let lo = (n * (p - self.eps) - n * MEMBERSHIP_TOL).ceil().max(0.0) as usize;
        let hi = (n * (p + self.eps) + n * MEMBERSHIP_TOL).floor().min(n) as usize;
        (lo, hi)
    }

    pub fn is_typical_counts(&self, counts: &[usize]) -> bool {
        (0..counts.len()).all(|a| {
            let (lo, hi) = self.count_range(a);
            lo <= counts[a] && counts[a] <= hi
        })
    }

    pub fn contains(&self, seq: &[usize]) -> bool {
        seq.len() == self.n
            && type_of(seq, self.base.len()).is_ok_and(|t| self.is_typical_counts(&t.counts))
    }

    /// Whether some completion of a prefix with `counts` and `remaining` symbols is typical.
    fn feasible(&self, counts: &[usize], remaining: usize) -> bool {
        let (mut lo_sum, mut hi_sum) = (0, 0);
        for (a, &c) in counts.iter().enumerate() {
            let (lo, hi) = self.count_range(a);
            let lo = lo.max(c);
            let hi = hi.min(c + remaining);
            if lo > hi {
                return false;
            }
            lo_sum += lo;
            hi_sum += hi;
        }
        lo_sum <= self.n && self.n <= hi_sum
    }

    /// Visits members in lexicographic order, pruning infeasible prefixes.
    pub fn visit(&self, mut f: impl FnMut(&[usize]) -> ControlFlow<()>) {
        let k = self.base.len();
        let mut seq = Vec::with_capacity(self.n);
        let mut counts = vec![0; k];
        let _ = self.dfs(&mut seq, &mut counts, &mut f);
    }

    fn dfs(
        &self,
        seq: &mut Vec<usize>,
        counts: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if seq.len() == self.n {
            return f(seq);
        }
        for a in 0..self.base.len() {
            counts[a] += 1;
            seq.push(a);
            if self.feasible(counts, self.n - seq.len()) {
                self.dfs(seq, counts, f)?;
            }
            seq.pop();
            counts[a] -= 1;
        }
        ControlFlow::Continue(())
    }

    /// Lexicographic indices of all members; errors when the alphabet power is too large
    /// to index or the member count exceeds `limit`.
    pub fn indices(&self, limit: usize) -> Result<Vec<usize>> {
        let k = self.base.len();
        let total = (k as u128).checked_pow(self.n as u32).unwrap_or(u128::MAX);
        if total > usize::MAX as u128 {
            return Err(Error::ProductTooLarge {
                size: usize::MAX,
                budget: limit,
            });
        }
        let mut out = Vec::new();
        let mut over = false;
        self.visit(|seq| {
            if out.len() == limit {
                over = true;
                return ControlFlow::Break(());
            }
            out.push(sequence_index(seq, k));
            ControlFlow::Continue(())
        });
        if over {
            return Err(Error::ProductTooLarge {
                size: limit + 1,
                budget: limit,
            });
        }
        Ok(out)
    }

    pub fn members(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        let k = self.base.len();
        Ok(self
            .indices(limit)?
            .into_iter()
            .map(|i| sequence_from_index(i, k, self.n))
            .collect())
    }

    /// `P^n(T)`, summed over typical types rather than sequences.
    pub fn mass(&self) -> f64 {
        let k = self.base.len();
        let mut total = 0.0;
        let mut counts = vec![0; k];
        self.mass_rec(0, self.n, &mut counts, &mut total);
        total
    }

    fn mass_rec(&self, a: usize, left: usize, counts: &mut Vec<usize>, total: &mut f64) {
        let k = counts.len();
        if a == k - 1 {
            counts[a] = left;
            if self.is_typical_counts(counts) {
                *total += type_probability(counts, self.base.weights());
            }
            return;
        }
        for c in 0..=left {
            counts[a] = c;
            self.mass_rec(a + 1, left - c, counts, total);
        }
    }
}

/// `P^n` of all sequences with the given counts: multinomial times `prod p^c`.
pub fn type_probability(counts: &[usize], p: &[f64]) -> f64 {
    let n: usize = counts.iter().sum();
    let mut log = ln_factorial(n);
    for (&c, &q) in counts.iter().zip(p) {
        if c > 0 {
            if q == 0.0 {
                return 0.0;
            }
            log += c as f64 * q.ln() - ln_factorial(c);
        }
    }
    log.exp()
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub fn typical_set(p: &Distribution, n: usize, eps: f64) -> Result<TypicalSet> {
    TypicalSet::new(p.clone(), n, eps)
}

/// `G^n` induced on the typical sequences, with the renormalised product distribution.
/// Returned alongside the member sequence indices, ascending.
pub fn typical_induced_subgraph(
    pg: &ProbabilisticGraph,
    n: usize,
    eps: f64,
    vertex_budget: usize,
) -> Result<(ProbabilisticGraph, Vec<usize>)> {
    let ts = TypicalSet::new(pg.dist.clone(), n, eps)?;
    let members = ts.members(vertex_budget)?;
    if members.is_empty() {
        return Err(Error::EmptyTypicalSet { n, eps });
    }
    let k = pg.n();
    let g = &pg.graph;
    let m = members.len();
    let mut rows = vec![BitSet::new(m); m];
    for i in 0..m {
        for j in i + 1..m {
            if members[i]
                .iter()
                .zip(&members[j])
                .all(|(&a, &b)| g.confusable(a, b))
            {
                rows[i].insert(j);
                rows[j].insert(i);
            }
        }
    }
    let weights: Vec<f64> = members
        .iter()
        .map(|s| s.iter().map(|&x| pg.dist.get(x)).product())
        .collect();
    let graph = Graph::from_rows(rows);
    let dist = Distribution::normalized(weights)?;
    let indices = members.iter().map(|s| sequence_index(s, k)).collect();
    Ok((ProbabilisticGraph::new(graph, dist)?, indices))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeSplit {
    /// `true` where the symbol goes to the first subsequence.
    pub mask: Vec<bool>,
    pub sub1: Vec<usize>,
    pub sub2: Vec<usize>,
    /// True when both subsequences have exactly the requested types.
    pub exact: bool,
}

/// Splits `seq` of type `beta P1 + (1 - beta) P2` into subsequences of types `P1` and `P2`.
///
/// When `beta n P1(a)` is integral for every symbol, the first that many
/// occurrences of each symbol go to the first part and the split is exact.
/// Otherwise each occurrence of `a` goes to the first part with probability
/// `beta P1(a) / T(a)`, drawn from `rng`, and the achieved types are reported.
pub fn type_split(
    seq: &[usize],
    beta: f64,
    p1: &Distribution,
    p2: &Distribution,
    rng: &mut impl Rng,
) -> Result<TypeSplit> {
    let k = p1.len();
    if p2.len() != k {
        return Err(Error::InvalidDistribution("split targets differ in length".into()));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParameter(format!("split fraction {beta} outside [0, 1]")));
    }
    let t = type_of(seq, k)?;
    let n = seq.len() as f64;
    let tp = t.as_distribution();
    for a in 0..k {
        let mix = beta * p1.get(a) + (1.0 - beta) * p2.get(a);
        if (mix - tp[a]).abs() > 1e-9 {
            return Err(Error::Precondition(format!(
                "sequence type {} of symbol {a} is not the mixture {mix}",
                tp[a]
            )));
        }
    }
    let targets: Vec<f64> = (0..k).map(|a| beta * n * p1.get(a)).collect();
    let integral = targets
        .iter()
        .zip(&t.counts)
        .all(|(&x, &c)| (x - x.round()).abs() < 1e-9 && x.round() as usize <= c);
    let mask: Vec<bool> = if integral {
        let mut left: Vec<usize> = targets.iter().map(|x| x.round() as usize).collect();
        seq.iter()
            .map(|&a| {
                if left[a] > 0 {
                    left[a] -= 1;
                    true
                } else {
                    false
                }
            })
            .collect()
    } else {
        seq.iter()
            .map(|&a| {
                let prob = if tp[a] > 0.0 { (beta * p1.get(a) / tp[a]).clamp(0.0, 1.0) } else { 0.0 };
                rng.gen_bool(prob)
            })
            .collect()
    };
    let sub1: Vec<usize> = seq.iter().zip(&mask).filter(|(_, &m)| m).map(|(&a, _)| a).collect();
    let sub2: Vec<usize> = seq.iter().zip(&mask).filter(|(_, &m)| !m).map(|(&a, _)| a).collect();
    Ok(TypeSplit {
        mask,
        sub1,
        sub2,
        exact: integral,
    })
}
