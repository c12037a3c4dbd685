//! Maximum clique by branch and bound with greedy-colouring bounds.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::budget::{Budget, Meter};
use crate::graph::Graph;

/// A vertex set found by a maximum-clique or maximum-independent-set search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetResult {
    pub size: usize,
    /// Sorted witness vertices.
    pub vertices: Vec<usize>,
    /// False when the search stopped early; `size` is then only a lower bound.
    pub exact: bool,
}

struct Search<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    meter: Meter,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p`; returns vertices with their colour numbers,
    /// in non-decreasing colour order.
    fn color_sort(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut k = 0;
        while !uncolored.is_empty() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.adj[v]);
                uncolored.remove(v);
                out.push((v, k));
            }
        }
        out
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: BitSet) {
        if !self.meter.tick() {
            return;
        }
        let order = self.color_sort(&p);
        for &(v, color) in order.iter().rev() {
            if r.len() + color <= self.best.len() {
                return;
            }
            r.push(v);
            let np = p.intersection(&self.adj[v]);
            if np.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np);
            }
            r.pop();
            p.remove(v);
            if self.meter.exhausted() {
                return;
            }
        }
    }
}

/// Maximum clique. Vertices are searched in descending-degree order, ties by index.
pub fn max_clique(g: &Graph, budget: &Budget) -> SetResult {
    let n = g.n();
    if n == 0 {
        return SetResult {
            size: 0,
            vertices: vec![],
            exact: true,
        };
    }
    if n > budget.alpha_vertices {
        let mut vertices = greedy_clique(g);
        vertices.sort_unstable();
        return SetResult {
            size: vertices.len(),
            vertices,
            exact: false,
        };
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<BitSet> = order
        .iter()
        .map(|&v| BitSet::from_indices(n, g.neighbors(v).iter().map(|w| pos[w])))
        .collect();
    let mut search = Search {
        adj: &adj,
        best: vec![0],
        meter: budget.meter(),
    };
    search.expand(&mut Vec::new(), BitSet::full(n));
    let exact = !search.meter.exhausted();
    let mut vertices: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    vertices.sort_unstable();
    SetResult {
        size: vertices.len(),
        vertices,
        exact,
    }
}

/// Greedy clique: repeatedly add the candidate with the most candidate neighbours.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut cand = BitSet::full(g.n());
    let mut clique = Vec::new();
    while !cand.is_empty() {
        let v = cand
            .iter()
            .max_by_key(|&v| (g.neighbors(v).intersection_count(&cand), std::cmp::Reverse(v)))
            .expect("nonempty");
        clique.push(v);
        cand.intersect_with(g.neighbors(v));
    }
    clique
}

/// Maximum independent set, as a maximum clique of the complement of each
/// connected component. Each component gets its own node budget.
pub fn alpha_exact(g: &Graph, budget: &Budget) -> SetResult {
    let comps = components(g);
    if comps.len() <= 1 {
        return max_clique(&g.complement(), budget);
    }
    let mut vertices = Vec::new();
    let mut exact = true;
    for comp in comps {
        let r = max_clique(&g.induced(&comp).complement(), budget);
        exact &= r.exact;
        vertices.extend(r.vertices.iter().map(|&i| comp[i]));
    }
    vertices.sort_unstable();
    SetResult {
        size: vertices.len(),
        vertices,
        exact,
    }
}

/// Connected components, each sorted, ordered by smallest vertex.
fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in g.neighbors(v).iter() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Clique number.
pub fn omega_exact(g: &Graph, budget: &Budget) -> SetResult {
    max_clique(g, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{and_power_graph, catalog};

    /// Exhaustive oracle for small graphs.
    fn brute_alpha(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| {
                let s: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                g.is_independent(&s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_cases() {
        let b = Budget::default();
        let c5 = catalog::cycle(5).unwrap();
        assert_eq!(alpha_exact(&c5, &b).size, 2);
        assert_eq!(omega_exact(&c5, &b).size, 2);
        assert_eq!(omega_exact(&catalog::complete(6), &b).size, 6);
        assert_eq!(alpha_exact(&Graph::empty(4), &b).size, 4);
    }

    #[test]
    fn pentagon_square() {
        let b = Budget::default();
        let g = and_power_graph(&catalog::cycle(5).unwrap(), 2, 1 << 16).unwrap();
        let r = alpha_exact(&g, &b);
        assert_eq!(r.size, 5);
        assert!(r.exact);
        assert!(g.is_independent(&r.vertices));
        assert_eq!(omega_exact(&g, &b).size, 4);
    }

    #[test]
    fn schlafli_numbers() {
        let b = Budget::default();
        let s = catalog::schlafli();
        assert_eq!(alpha_exact(&s, &b).size, 3);
        assert_eq!(omega_exact(&s, &b).size, 6);
        assert_eq!(alpha_exact(&s.complement(), &b).size, 6);
    }

    #[test]
    fn matches_exhaustive_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let p: f64 = rng.gen_range(0.1..0.9);
            let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
            let r = alpha_exact(&g, &Budget::default());
            assert_eq!(r.size, brute_alpha(&g));
            assert!(g.is_independent(&r.vertices));
        }
    }

    #[test]
    fn starved_search_flags_lower_bound() {
        let g = and_power_graph(&catalog::cycle(5).unwrap(), 3, 1 << 16).unwrap();
        let b = Budget {
            nodes: 10,
            ..Budget::default()
        };
        let r = alpha_exact(&g, &b);
        assert!(!r.exact);
        assert!(g.is_independent(&r.vertices));
    }
}
