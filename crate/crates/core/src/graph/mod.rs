//! Graphs, probabilistic graphs, channels and the graph operations used
//! throughout the crate: AND (strong) products, weighted disjoint unions,
//! complements and induced subgraphs.
//!
//! Stored graphs are always simple. The self-adjacency convention of the AND
//! product lives in [`and_product`], which treats each vertex as adjacent to
//! itself when deciding whether two tuples are confusable.

pub mod catalog;
pub mod io;
pub mod iso;
pub mod perfect;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub use catalog::catalog_get;
pub use iso::{is_edge_transitive, is_isomorphic, is_vertex_transitive, IsoOutcome, Transitivity};
pub use perfect::{is_perfect, PerfectOutcome};

/// Tolerance on distribution sums and on weight comparisons.
pub const WEIGHT_TOL: f64 = 1e-9;

/// Simple undirected graph on vertices `0..n` with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// The empty graph `N_n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![BitSet::new(n); n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub(crate) fn from_rows(rows: Vec<BitSet>) -> Self {
        let n = rows.len();
        debug_assert!(rows.iter().all(|r| r.capacity() == n));
        Graph {
            n,
            rows,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Adjacent or equal: the confusability relation used by the AND product.
    #[inline]
    pub fn confusable(&self, u: usize, v: usize) -> bool {
        u == v || self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Common degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            None => Some(0),
            Some(&d0) if d.iter().all(|&x| x == d0) => Some(d0),
            _ => None,
        }
    }

    /// True iff no two members of `set` are adjacent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..]
                .iter()
                .all(|&v| u != v && !self.adjacent(u, v))
        })
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// The complementary graph: edges inverted on distinct pairs.
    pub fn complement(&self) -> Graph {
        let rows = (0..self.n)
            .map(|v| {
                let mut r = BitSet::full(self.n);
                r.difference_with(&self.rows[v]);
                r.remove(v);
                r
            })
            .collect();
        Graph {
            n: self.n,
            rows,
            labels: self.labels.clone(),
        }
    }

    /// Subgraph induced on `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let m = keep.len();
        let mut g = Graph::empty(m);
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(keep.iter().map(|&v| labels[v].clone()).collect());
        }
        g
    }

    /// Checks the stored invariants (symmetric, irreflexive).
    pub fn validate(&self) -> Result<()> {
        for u in 0..self.n {
            if self.rows[u].contains(u) {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            for v in self.rows[u].iter() {
                if !self.rows[v].contains(u) {
                    return Err(Error::InvalidGraph(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Probability distribution over `0..n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distribution {
    weights: Vec<f64>,
}

impl Distribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("empty weight vector".into()));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "weight {i} is {w}, expected a non-negative number"
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Distribution { weights })
    }

    /// Exact rational weights `num[i] / den`; the numerators must sum to `den`.
    pub fn from_rational(num: &[u64], den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidDistribution("zero denominator".into()));
        }
        let total: u64 = num.iter().sum();
        if total != den {
            return Err(Error::InvalidDistribution(format!(
                "numerators sum to {total}, expected {den}"
            )));
        }
        Distribution::new(num.iter().map(|&k| k as f64 / den as f64).collect())
    }

    /// Normalises arbitrary non-negative weights.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::ZeroMass);
        }
        Distribution::new(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Distribution {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(n: usize, at: usize) -> Self {
        let mut weights = vec![0.0; n];
        weights[at] = 1.0;
        Distribution { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn entropy(&self) -> f64 {
        crate::info::entropy(&self.weights)
    }

    pub fn product(&self, other: &Distribution) -> Distribution {
        let mut weights = Vec::with_capacity(self.len() * other.len());
        for &p in &self.weights {
            for &q in &other.weights {
                weights.push(p * q);
            }
        }
        Distribution { weights }
    }

    pub fn mass(&self, set: &[usize]) -> f64 {
        set.iter().map(|&i| self.weights[i]).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.weights[i] > 0.0).collect()
    }

    /// `max_i |p_i - q_i|`.
    pub fn linf_distance(&self, other: &Distribution) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A graph together with a distribution on its vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilisticGraph {
    pub graph: Graph,
    pub dist: Distribution,
}

impl ProbabilisticGraph {
    pub fn new(graph: Graph, dist: Distribution) -> Result<Self> {
        if graph.n() != dist.len() {
            return Err(Error::InvalidDistribution(format!(
                "distribution has {} weights for {} vertices",
                dist.len(),
                graph.n()
            )));
        }
        Ok(ProbabilisticGraph { graph, dist })
    }

    pub fn uniform(graph: Graph) -> Self {
        let dist = Distribution::uniform(graph.n());
        ProbabilisticGraph { graph, dist }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn entropy(&self) -> f64 {
        self.dist.entropy()
    }
}

/// Support pattern of a conditional distribution `P(y|x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub x_count: usize,
    pub y_count: usize,
    pub support: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<(usize, usize, f64)>>,
}

impl ChannelSpec {
    pub fn new(x_count: usize, y_count: usize, support: Vec<(usize, usize)>) -> Result<Self> {
        let mut support = support;
        support.sort_unstable();
        support.dedup();
        let spec = ChannelSpec {
            x_count,
            y_count,
            support,
            weights: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Noisy typewriter on `k` letters: `x` may be received as `x` or `x + 1 mod k`.
    pub fn noisy_typewriter(k: usize) -> Result<Self> {
        let support = (0..k).flat_map(|x| [(x, x), (x, (x + 1) % k)]).collect();
        ChannelSpec::new(k, k, support)
    }

    pub fn identity(k: usize) -> Result<Self> {
        ChannelSpec::new(k, k, (0..k).map(|x| (x, x)).collect())
    }

    pub fn full(x_count: usize, y_count: usize) -> Result<Self> {
        let support = (0..x_count)
            .flat_map(|x| (0..y_count).map(move |y| (x, y)))
            .collect();
        ChannelSpec::new(x_count, y_count, support)
    }

    pub fn validate(&self) -> Result<()> {
        for &(x, y) in &self.support {
            if x >= self.x_count || y >= self.y_count {
                return Err(Error::InvalidChannel(format!(
                    "support pair ({x}, {y}) out of range"
                )));
            }
        }
        for x in 0..self.x_count {
            if !self.support.iter().any(|&(sx, _)| sx == x) {
                return Err(Error::InputWithoutOutputs(x));
            }
        }
        if let Some(w) = &self.weights {
            for &(x, y, p) in w {
                if !(p > 0.0) || self.support.binary_search(&(x, y)).is_err() {
                    return Err(Error::InvalidChannel(format!(
                        "weight ({x}, {y}, {p}) is not a positive weight on the support"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Outputs reachable from each input, ascending.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.x_count];
        for &(x, y) in &self.support {
            rows[x].push(y);
        }
        rows
    }

    /// Inputs that can produce each output, ascending.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.y_count];
        for &(x, y) in &self.support {
            cols[y].push(x);
        }
        for c in cols.iter_mut() {
            c.sort_unstable();
        }
        cols
    }

    pub fn allows(&self, x: usize, y: usize) -> bool {
        self.support.binary_search(&(x, y)).is_ok()
    }
}

/// Characteristic graph: distinct inputs are adjacent iff they share an output.
pub fn characteristic_graph(channel: &ChannelSpec) -> Result<Graph> {
    channel.validate()?;
    let mut g = Graph::empty(channel.x_count);
    for col in channel.columns() {
        for (i, &u) in col.iter().enumerate() {
            for &v in &col[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

fn check_budget(size: usize, budget: usize) -> Result<()> {
    if size > budget {
        Err(Error::ProductTooLarge { size, budget })
    } else {
        Ok(())
    }
}

/// AND product of two graphs. Vertex `(u1, u2)` has index `u1 * n2 + u2`.
pub fn and_product_graph(g1: &Graph, g2: &Graph, vertex_budget: usize) -> Result<Graph> {
    let (n1, n2) = (g1.n(), g2.n());
    let n = n1
        .checked_mul(n2)
        .ok_or(Error::ProductTooLarge {
            size: usize::MAX,
            budget: vertex_budget,
        })?;
    check_budget(n, vertex_budget)?;
    let closed = |g: &Graph, v: usize| -> Vec<usize> {
        let mut c = g.neighbors(v).to_vec();
        c.push(v);
        c
    };
    let closed1: Vec<_> = (0..n1).map(|v| closed(g1, v)).collect();
    let closed2: Vec<_> = (0..n2).map(|v| closed(g2, v)).collect();
    let mut rows = vec![BitSet::new(n); n];
    for u1 in 0..n1 {
        for u2 in 0..n2 {
            let u = u1 * n2 + u2;
            let row = &mut rows[u];
            for &v1 in &closed1[u1] {
                for &v2 in &closed2[u2] {
                    row.insert(v1 * n2 + v2);
                }
            }
            row.remove(u);
        }
    }
    Ok(Graph::from_rows(rows))
}

/// AND product of probabilistic graphs, with the product distribution.
pub fn and_product(
    g1: &ProbabilisticGraph,
    g2: &ProbabilisticGraph,
    vertex_budget: usize,
) -> Result<ProbabilisticGraph> {
    let graph = and_product_graph(&g1.graph, &g2.graph, vertex_budget)?;
    Ok(ProbabilisticGraph {
        graph,
        dist: g1.dist.product(&g2.dist),
    })
}

/// `n`-th AND power. Sequence `(x_1, ..., x_n)` has index `sum x_t |X|^(n-t)`.
pub fn and_power(g: &ProbabilisticGraph, n: usize, vertex_budget: usize) -> Result<ProbabilisticGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("power must be at least 1".into()));
    }
    let size = (g.n() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > vertex_budget as u128 {
        return Err(Error::ProductTooLarge {
            size: size.min(usize::MAX as u128) as usize,
            budget: vertex_budget,
        });
    }
    let mut acc = g.clone();
    for _ in 1..n {
        acc = and_product(&acc, g, vertex_budget)?;
    }
    Ok(acc)
}

pub fn and_power_graph(g: &Graph, n: usize, vertex_budget: usize) -> Result<Graph> {
    let pg = ProbabilisticGraph::uniform(g.clone());
    Ok(and_power(&pg, n, vertex_budget)?.graph)
}

/// Index algebra for a weighted disjoint union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionLayout {
    pub block_sizes: Vec<usize>,
    pub offsets: Vec<usize>,
}

impl UnionLayout {
    pub fn new(block_sizes: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(block_sizes.len());
        let mut acc = 0;
        for &s in &block_sizes {
            offsets.push(acc);
            acc += s;
        }
        UnionLayout {
            block_sizes,
            offsets,
        }
    }

    pub fn total(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn global(&self, part: usize, local: usize) -> usize {
        debug_assert!(local < self.block_sizes[part]);
        self.offsets[part] + local
    }

    /// `(part, local)` for a global vertex index.
    pub fn locate(&self, global: usize) -> (usize, usize) {
        let part = match self.offsets.binary_search(&global) {
            Ok(mut p) => {
                // skip empty blocks sharing the same offset
                while self.block_sizes[p] == 0 {
                    p += 1;
                }
                p
            }
            Err(p) => p - 1,
        };
        (part, global - self.offsets[part])
    }

    pub fn block(&self, part: usize) -> std::ops::Range<usize> {
        self.offsets[part]..self.offsets[part] + self.block_sizes[part]
    }
}

/// Weighted disjoint union: block-diagonal adjacency, weights `P_A(a) P_a(x)`.
pub fn disjoint_union(
    parts: &[ProbabilisticGraph],
    weights: &Distribution,
) -> Result<(ProbabilisticGraph, UnionLayout)> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("union of zero parts".into()));
    }
    if parts.len() != weights.len() {
        return Err(Error::InvalidDistribution(format!(
            "{} part weights for {} parts",
            weights.len(),
            parts.len()
        )));
    }
    let layout = UnionLayout::new(parts.iter().map(ProbabilisticGraph::n).collect());
    let n = layout.total();
    let mut g = Graph::empty(n);
    let mut dist = Vec::with_capacity(n);
    for (a, part) in parts.iter().enumerate() {
        for (u, v) in part.graph.edges() {
            g.add_edge(layout.global(a, u), layout.global(a, v));
        }
        dist.extend(part.dist.weights().iter().map(|&p| weights.get(a) * p));
    }
    Ok((
        ProbabilisticGraph {
            graph: g,
            dist: Distribution { weights: dist },
        },
        layout,
    ))
}

pub fn disjoint_union_graph(parts: &[Graph]) -> Graph {
    let layout = UnionLayout::new(parts.iter().map(Graph::n).collect());
    let mut g = Graph::empty(layout.total());
    for (a, part) in parts.iter().enumerate() {
        for (u, v) in part.edges() {
            g.add_edge(layout.global(a, u), layout.global(a, v));
        }
    }
    g
}

/// Probabilistic subgraph induced on `keep` (sorted, deduplicated).
///
/// With `renormalize`, weights are divided by the kept mass.
pub fn induced_subgraph(
    pg: &ProbabilisticGraph,
    keep: &[usize],
    renormalize: bool,
) -> Result<ProbabilisticGraph> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::InvalidParameter("induced subgraph on an empty set".into()));
    }
    if let Some(&v) = keep.iter().find(|&&v| v >= pg.n()) {
        return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
    }
    let graph = pg.graph.induced(&keep);
    let mut weights: Vec<f64> = keep.iter().map(|&v| pg.dist.get(v)).collect();
    if renormalize {
        let mass: f64 = weights.iter().sum();
        if !(mass > 0.0) {
            return Err(Error::ZeroMass);
        }
        weights.iter_mut().for_each(|w| *w /= mass);
    }
    Ok(ProbabilisticGraph {
        graph,
        dist: Distribution { weights },
    })
}
