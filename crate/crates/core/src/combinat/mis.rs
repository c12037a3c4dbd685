//! Enumeration of maximal independent sets by pivoting Bron–Kerbosch.

use crate::bitset::BitSet;
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::Graph;

struct Enumerator<'a> {
    /// Rows of the complement: candidates compatible with a chosen vertex.
    compat: &'a [BitSet],
    out: Vec<Vec<usize>>,
    cap: usize,
    meter: Meter,
    overflow: bool,
}

impl Enumerator<'_> {
    fn run(&mut self, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet) {
        if self.overflow || !self.meter.tick() {
            return;
        }
        if p.is_empty() {
            if x.is_empty() {
                if self.out.len() == self.cap {
                    self.overflow = true;
                    return;
                }
                let mut set = r.clone();
                set.sort_unstable();
                self.out.push(set);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (self.compat[u].intersection_count(&p), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        let branch = p.difference(&self.compat[pivot]);
        for v in branch.iter() {
            r.push(v);
            self.run(
                r,
                p.intersection(&self.compat[v]),
                x.intersection(&self.compat[v]),
            );
            r.pop();
            p.remove(v);
            x.insert(v);
            if self.overflow || self.meter.exhausted() {
                return;
            }
        }
    }
}

/// All inclusion-maximal independent sets, each sorted, in lexicographic order.
pub fn maximal_independent_sets(g: &Graph, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n == 0 {
        return Ok(vec![vec![]]);
    }
    let comp = g.complement();
    let compat: Vec<BitSet> = (0..n).map(|v| comp.neighbors(v).clone()).collect();
    let mut e = Enumerator {
        compat: &compat,
        out: Vec::new(),
        cap: budget.mis_sets,
        meter: budget.meter(),
        overflow: false,
    };
    e.run(&mut Vec::new(), BitSet::full(n), BitSet::new(n));
    if e.overflow {
        return Err(Error::Undecided(format!(
            "maximal independent set enumeration ({} sets)",
            budget.mis_sets
        )));
    }
    if e.meter.exhausted() {
        return Err(Error::Undecided("maximal independent set search node".into()));
    }
    e.out.sort();
    Ok(e.out)
}
