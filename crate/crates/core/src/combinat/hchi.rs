//! Minimum-entropy colouring (chromatic entropy).

use serde::{Deserialize, Serialize};

use super::coloring::Coloring;
use super::mis::maximal_independent_sets;
use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::graph::{Graph, ProbabilisticGraph};
use crate::info::neg_plogp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HchiMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HchiResult {
    /// Entropy of `coloring`, in bits.
    pub value: f64,
    pub coloring: Coloring,
    /// True when `value` is the minimum; otherwise it is an upper bound.
    pub exact: bool,
}

/// Minimum entropy of `c(X)` over proper colourings `c`.
///
/// Exact mode runs a subset DP and falls back to the heuristic above
/// `budget.hchi_exact_vertices`; the result records which one ran.
pub fn min_entropy_coloring(pg: &ProbabilisticGraph, mode: HchiMode, budget: &Budget) -> HchiResult {
    let n = pg.n();
    if mode == HchiMode::Exact && n <= budget.hchi_exact_vertices.min(30) {
        exact_dp(pg)
    } else {
        heuristic(pg, budget)
    }
}

/// `E[S] = min f(p(I)) + E[S \ I]` over independent `I ⊆ S` containing the lowest vertex of `S`.
fn exact_dp(pg: &ProbabilisticGraph) -> HchiResult {
    let n = pg.n();
    let g = &pg.graph;
    let p = pg.dist.weights();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, w| m | 1 << w))
        .collect();
    let mut indep = vec![true; size];
    let mut mass = vec![0.0f64; size];
    for s in 1..size {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        indep[s] = indep[rest] && nbr[v] & rest as u32 == 0;
        mass[s] = mass[rest] + p[v];
    }
    let mut best = vec![0.0f64; size];
    let mut choice = vec![0u32; size];
    for s in 1..size {
        let v = s.trailing_zeros();
        let lowbit = 1u32 << v;
        let free = (s as u32) & !lowbit & !nbr[v as usize];
        let mut t = free;
        let mut top = f64::INFINITY;
        let mut arg = lowbit;
        loop {
            let i = t | lowbit;
            if indep[i as usize] {
                let val = neg_plogp(mass[i as usize]) + best[s & !(i as usize)];
                if val < top - 1e-15 {
                    top = val;
                    arg = i;
                }
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & free;
        }
        best[s] = top;
        choice[s] = arg;
    }
    let mut color_of = vec![0; n];
    let mut s = full;
    let mut c = 0;
    while s != 0 {
        let i = choice[s as usize];
        for v in 0..n {
            if i >> v & 1 == 1 {
                color_of[v] = c;
            }
        }
        c += 1;
        s &= !i;
    }
    let coloring = Coloring::new(color_of);
    HchiResult {
        value: coloring.entropy(p),
        coloring,
        exact: true,
    }
}

/// Repeatedly peels off the heaviest maximal independent set of what remains.
fn heuristic(pg: &ProbabilisticGraph, budget: &Budget) -> HchiResult {
    let n = pg.n();
    let g = &pg.graph;
    let p = pg.dist.weights();
    let step_budget = Budget {
        mis_sets: 10_000,
        nodes: 1_000_000,
        ..budget.clone()
    };
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut color_of = vec![0; n];
    let mut color = 0;
    while !remaining.is_empty() {
        let sub = g.induced(&remaining);
        let weight = |set: &[usize]| set.iter().map(|&i| p[remaining[i]]).sum::<f64>();
        let class: Vec<usize> = match maximal_independent_sets(&sub, &step_budget) {
            Ok(sets) => sets
                .into_iter()
                .fold(None::<(f64, Vec<usize>)>, |acc, s| {
                    let w = weight(&s);
                    match acc {
                        Some((bw, _)) if bw >= w => acc,
                        _ => Some((w, s)),
                    }
                })
                .map(|(_, s)| s)
                .unwrap_or_default(),
            Err(_) => greedy_heavy_independent(&sub, &remaining, p),
        };
        for &i in &class {
            color_of[remaining[i]] = color;
        }
        color += 1;
        let taken: std::collections::BTreeSet<usize> = class.iter().map(|&i| remaining[i]).collect();
        remaining.retain(|v| !taken.contains(v));
    }
    let coloring = Coloring::new(color_of);
    let value = coloring.entropy(p);
    let edges = g.edge_count();
    let exact = edges == 0 || edges == n * (n - 1) / 2;
    HchiResult {
        value,
        coloring,
        exact,
    }
}

/// Greedy maximal independent set of `sub`, heaviest vertices first.
fn greedy_heavy_independent(sub: &Graph, remaining: &[usize], p: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sub.n()).collect();
    order.sort_by(|&a, &b| p[remaining[b]].total_cmp(&p[remaining[a]]).then(a.cmp(&b)));
    let mut blocked = BitSet::new(sub.n());
    let mut out = Vec::new();
    for v in order {
        if !blocked.contains(v) {
            out.push(v);
            blocked.insert(v);
            blocked.union_with(sub.neighbors(v));
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{and_product, catalog, disjoint_union, Distribution};
    use rand::{Rng, SeedableRng};

    /// Minimum colour entropy over all partitions into independent classes.
    fn partition_oracle(pg: &ProbabilisticGraph) -> f64 {
        fn go(v: usize, pg: &ProbabilisticGraph, classes: &mut Vec<Vec<usize>>, best: &mut f64) {
            let n = pg.n();
            if v == n {
                let h: f64 = classes
                    .iter()
                    .map(|c| neg_plogp(pg.dist.mass(c)))
                    .sum();
                *best = best.min(h);
                return;
            }
            for k in 0..classes.len() {
                if classes[k].iter().all(|&u| !pg.graph.adjacent(u, v)) {
                    classes[k].push(v);
                    go(v + 1, pg, classes, best);
                    classes[k].pop();
                }
            }
            classes.push(vec![v]);
            go(v + 1, pg, classes, best);
            classes.pop();
        }
        let mut best = f64::INFINITY;
        go(0, pg, &mut Vec::new(), &mut best);
        best
    }

    fn random_pg(rng: &mut impl Rng, n: usize) -> ProbabilisticGraph {
        let p: f64 = rng.gen_range(0.1..0.9);
        let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
        ProbabilisticGraph::new(g, Distribution::normalized(w).unwrap()).unwrap()
    }

    #[test]
    fn complete_and_empty() {
        let b = Budget::default();
        let p = Distribution::new(vec![0.5, 0.25, 0.125, 0.125]).unwrap();
        let k = ProbabilisticGraph::new(catalog::complete(4), p.clone()).unwrap();
        let r = min_entropy_coloring(&k, HchiMode::Exact, &b);
        assert!((r.value - p.entropy()).abs() < 1e-12);
        let e = ProbabilisticGraph::new(Graph::empty(4), p).unwrap();
        assert_eq!(min_entropy_coloring(&e, HchiMode::Exact, &b).value, 0.0);
    }

    #[test]
    fn fig7_product_matches_partition_oracle() {
        let g1 = ProbabilisticGraph::new(
            Graph::empty(3),
            Distribution::new(vec![0.25, 0.5, 0.25]).unwrap(),
        )
        .unwrap();
        let g2 = ProbabilisticGraph::new(
            catalog::complete(2),
            Distribution::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap(),
        )
        .unwrap();
        let prod = and_product(&g1, &g2, 1 << 16).unwrap();
        let r = min_entropy_coloring(&prod, HchiMode::Exact, &Budget::default());
        assert!(r.coloring.is_proper(&prod.graph));
        assert!((r.value - partition_oracle(&prod)).abs() < 1e-12);
        // both colours carry the marginal of the complete factor
        assert!((r.value - crate::info::binary_entropy(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn exact_matches_oracle_on_random_graphs() {
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let pg = random_pg(&mut rng, n);
            let r = min_entropy_coloring(&pg, HchiMode::Exact, &Budget::default());
            assert!(r.exact);
            assert!(r.coloring.is_proper(&pg.graph));
            assert!((r.value - partition_oracle(&pg)).abs() < 1e-9);
        }
    }

    #[test]
    fn heuristic_is_an_upper_bound() {
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(9);
        for _ in 0..50 {
            let n = rng.gen_range(1..=10);
            let pg = random_pg(&mut rng, n);
            let b = Budget::default();
            let h = min_entropy_coloring(&pg, HchiMode::Heuristic, &b);
            let e = min_entropy_coloring(&pg, HchiMode::Exact, &b);
            assert!(h.coloring.is_proper(&pg.graph));
            assert!(h.value >= e.value - 1e-12);
        }
    }

    #[test]
    fn union_of_isomorphic_copies() {
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(21);
        let b = Budget::default();
        for _ in 0..20 {
            let n = rng.gen_range(2..=5);
            let part = random_pg(&mut rng, n);
            let k = rng.gen_range(2..=3);
            let pa = Distribution::normalized((0..k).map(|_| rng.gen_range(0.1..1.0)).collect())
                .unwrap();
            let (u, _) = disjoint_union(&vec![part.clone(); k], &pa).unwrap();
            let hu = min_entropy_coloring(&u, HchiMode::Exact, &b).value;
            let hp = min_entropy_coloring(&part, HchiMode::Exact, &b).value;
            assert!((hu - hp).abs() < 1e-9);
        }
    }
}
