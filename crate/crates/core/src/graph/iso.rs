//! Isomorphism and automorphism search by individualization and refinement.
//!
//! Both graphs are refined jointly so that colour ids mean the same thing on
//! each side; a cell-size mismatch prunes the branch. Leaves are verified
//! edge by edge, so a returned bijection is always a genuine isomorphism.

use std::collections::BTreeMap;

use super::{Graph, ProbabilisticGraph, WEIGHT_TOL};
use crate::budget::{Budget, Meter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `map[u]` is the image in the second graph of vertex `u` of the first.
    Isomorphic(Vec<usize>),
    NotIsomorphic,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transitivity {
    Transitive,
    NotTransitive,
    Undecided,
}

impl Transitivity {
    pub fn is_transitive(self) -> bool {
        self == Transitivity::Transitive
    }
}

struct Side<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
}

/// Refines both colourings to their coarsest common equitable partition.
/// Returns false when the two sides stop matching.
fn refine(a: &mut Side, b: &mut Side) -> bool {
    let mut classes = count_classes(&a.colors);
    loop {
        let sig = |s: &Side, v: usize| {
            let mut nb: Vec<usize> = s.g.neighbors(v).iter().map(|w| s.colors[w]).collect();
            nb.sort_unstable();
            (s.colors[v], nb)
        };
        let sa: Vec<_> = (0..a.g.n()).map(|v| sig(a, v)).collect();
        let sb: Vec<_> = (0..b.g.n()).map(|v| sig(b, v)).collect();
        let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in sa.iter().chain(&sb) {
            ids.entry(s).or_insert(0);
        }
        for (k, id) in ids.values_mut().enumerate() {
            *id = k;
        }
        a.colors = sa.iter().map(|s| ids[s]).collect();
        b.colors = sb.iter().map(|s| ids[s]).collect();
        if histogram(&a.colors, ids.len()) != histogram(&b.colors, ids.len()) {
            return false;
        }
        if ids.len() == classes {
            return true;
        }
        classes = ids.len();
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn histogram(colors: &[usize], k: usize) -> Vec<usize> {
    let mut h = vec![0; k];
    for &c in colors {
        h[c] += 1;
    }
    h
}

enum Search {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

fn search(a: Side, b: Side, meter: &mut Meter) -> Search {
    let (mut a, mut b) = (a, b);
    if !meter.tick() {
        return Search::OutOfBudget;
    }
    if !refine(&mut a, &mut b) {
        return Search::Exhausted;
    }
    let n = a.g.n();
    let k = a.colors.iter().max().map_or(0, |m| m + 1);
    let hist = histogram(&a.colors, k);
    // smallest non-singleton cell, ties to the lowest colour id
    let target = (0..k)
        .filter(|&c| hist[c] > 1)
        .min_by_key(|&c| (hist[c], c));
    let Some(cell) = target else {
        let mut by_color = vec![0; k];
        for v in 0..n {
            by_color[b.colors[v]] = v;
        }
        let map: Vec<usize> = (0..n).map(|u| by_color[a.colors[u]]).collect();
        let ok = (0..n).all(|u| {
            (u + 1..n).all(|v| a.g.adjacent(u, v) == b.g.adjacent(map[u], map[v]))
        });
        return if ok { Search::Found(map) } else { Search::Exhausted };
    };
    let v = (0..n).find(|&u| a.colors[u] == cell).expect("cell is nonempty");
    let mut starved = false;
    for w in (0..n).filter(|&u| b.colors[u] == cell) {
        let mut ca = a.colors.clone();
        let mut cb = b.colors.clone();
        ca[v] = k;
        cb[w] = k;
        match search(Side { g: a.g, colors: ca }, Side { g: b.g, colors: cb }, meter) {
            Search::Found(m) => return Search::Found(m),
            Search::Exhausted => {}
            Search::OutOfBudget => {
                starved = true;
                break;
            }
        }
    }
    if starved {
        Search::OutOfBudget
    } else {
        Search::Exhausted
    }
}

fn run(g1: &Graph, c1: Vec<usize>, g2: &Graph, c2: Vec<usize>, meter: &mut Meter) -> IsoOutcome {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return IsoOutcome::NotIsomorphic;
    }
    match search(Side { g: g1, colors: c1 }, Side { g: g2, colors: c2 }, meter) {
        Search::Found(m) => IsoOutcome::Isomorphic(m),
        Search::Exhausted => IsoOutcome::NotIsomorphic,
        Search::OutOfBudget => IsoOutcome::Undecided,
    }
}

/// Groups weights from both sides into shared classes at tolerance [`WEIGHT_TOL`].
fn weight_classes(w1: &[f64], w2: &[f64]) -> (Vec<usize>, Vec<usize>) {
    let mut all: Vec<f64> = w1.iter().chain(w2).copied().collect();
    all.sort_by(f64::total_cmp);
    let mut reps: Vec<f64> = Vec::new();
    for w in all {
        match reps.last() {
            Some(&r) if w - r <= WEIGHT_TOL => {}
            _ => reps.push(w),
        }
    }
    let class = |w: f64| reps.partition_point(|&r| r <= w + 1e-15) - 1;
    (
        w1.iter().map(|&w| class(w)).collect(),
        w2.iter().map(|&w| class(w)).collect(),
    )
}

/// Isomorphism of probabilistic graphs: adjacency and vertex weights preserved.
pub fn is_isomorphic(g1: &ProbabilisticGraph, g2: &ProbabilisticGraph, budget: &Budget) -> IsoOutcome {
    if g1.n() != g2.n() {
        return IsoOutcome::NotIsomorphic;
    }
    if g1.n() > budget.iso_vertices {
        return IsoOutcome::Undecided;
    }
    let (c1, c2) = weight_classes(g1.dist.weights(), g2.dist.weights());
    let mut meter = budget.meter();
    let out = run(&g1.graph, c1, &g2.graph, c2, &mut meter);
    if let IsoOutcome::Isomorphic(m) = &out {
        let ok = (0..g1.n()).all(|u| (g1.dist.get(u) - g2.dist.get(m[u])).abs() <= WEIGHT_TOL);
        if !ok {
            // weight classes chain within tolerance; the leaf check is authoritative
            return IsoOutcome::Undecided;
        }
    }
    out
}

/// Isomorphism of plain graphs.
pub fn is_isomorphic_graph(g1: &Graph, g2: &Graph, budget: &Budget) -> IsoOutcome {
    if g1.n() != g2.n() {
        return IsoOutcome::NotIsomorphic;
    }
    if g1.n() > budget.iso_vertices {
        return IsoOutcome::Undecided;
    }
    let mut meter = budget.meter();
    run(g1, vec![0; g1.n()], g2, vec![0; g2.n()], &mut meter)
}

/// Automorphism with prescribed images: `pins[i].0` must map to `pins[i].1`.
fn automorphism_with(g: &Graph, pins: &[(usize, usize)], meter: &mut Meter) -> IsoOutcome {
    let n = g.n();
    let mut c1 = vec![0; n];
    let mut c2 = vec![0; n];
    for (k, &(u, v)) in pins.iter().enumerate() {
        c1[u] = k + 1;
        c2[v] = k + 1;
    }
    run(g, c1, g, c2, meter)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// True iff the automorphism group is transitive on vertices.
pub fn is_vertex_transitive(g: &Graph, budget: &Budget) -> Transitivity {
    let n = g.n();
    if n <= 1 {
        return Transitivity::Transitive;
    }
    if n > budget.automorphism_vertices {
        return Transitivity::Undecided;
    }
    if g.regular_degree().is_none() {
        return Transitivity::NotTransitive;
    }
    let mut meter = budget.meter();
    let mut orbits = UnionFind::new(n);
    for v in 1..n {
        if orbits.find(v) == orbits.find(0) {
            continue;
        }
        match automorphism_with(g, &[(0, v)], &mut meter) {
            IsoOutcome::Isomorphic(perm) => {
                for (x, &y) in perm.iter().enumerate() {
                    orbits.union(x, y);
                }
            }
            IsoOutcome::NotIsomorphic => return Transitivity::NotTransitive,
            IsoOutcome::Undecided => return Transitivity::Undecided,
        }
    }
    Transitivity::Transitive
}

/// True iff the automorphism group is transitive on edges.
pub fn is_edge_transitive(g: &Graph, budget: &Budget) -> Transitivity {
    let edges = g.edges();
    if edges.len() <= 1 {
        return Transitivity::Transitive;
    }
    if g.n() > budget.automorphism_vertices {
        return Transitivity::Undecided;
    }
    let index: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let key = |a: usize, b: usize| index[&(a.min(b), a.max(b))];
    let mut meter = budget.meter();
    let mut orbits = UnionFind::new(edges.len());
    let (u0, v0) = edges[0];
    for (e, &(u, v)) in edges.iter().enumerate().skip(1) {
        if orbits.find(e) == orbits.find(0) {
            continue;
        }
        let mut found = None;
        for pins in [[(u0, u), (v0, v)], [(u0, v), (v0, u)]] {
            match automorphism_with(g, &pins, &mut meter) {
                IsoOutcome::Isomorphic(perm) => {
                    found = Some(perm);
                    break;
                }
                IsoOutcome::NotIsomorphic => {}
                IsoOutcome::Undecided => return Transitivity::Undecided,
            }
        }
        let Some(perm) = found else {
            return Transitivity::NotTransitive;
        };
        for (i, &(a, b)) in edges.iter().enumerate() {
            orbits.union(i, key(perm[a], perm[b]));
        }
    }
    Transitivity::Transitive
}
