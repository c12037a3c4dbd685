//! Proper colourings: DSATUR and an exact DSATUR branch and bound.

use serde::Serialize;

use super::clique::max_clique;
use crate::budget::{Budget, Meter};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub color_of: Vec<usize>,
    pub color_count: usize,
}

impl Coloring {
    /// Renumbers colours by first appearance so they run `0..color_count`.
    pub fn new(color_of: Vec<usize>) -> Self {
        let mut map = std::collections::HashMap::new();
        let color_of: Vec<usize> = color_of
            .into_iter()
            .map(|c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        Coloring {
            color_count: map.len(),
            color_of,
        }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.color_of.len() == g.n()
            && g.edges()
                .iter()
                .all(|&(u, v)| self.color_of[u] != self.color_of[v])
    }

    /// Vertices of each colour class, in colour order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.color_count];
        for (v, &c) in self.color_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Entropy of the colour of a vertex drawn from `p`.
    pub fn entropy(&self, p: &[f64]) -> f64 {
        let mut mass = vec![0.0; self.color_count];
        for (v, &c) in self.color_of.iter().enumerate() {
            mass[c] += p[v];
        }
        crate::info::entropy(&mass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticResult {
    pub count: usize,
    pub coloring: Coloring,
    /// Certified lower bound; equals `count` when the search completed.
    pub lower: usize,
    pub exact: bool,
}

struct State<'a> {
    g: &'a Graph,
    color: Vec<Option<usize>>,
    /// `seen[v][c]`: neighbours of `v` holding colour `c`.
    seen: Vec<Vec<u32>>,
    saturation: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(g: &'a Graph, max_colors: usize) -> Self {
        let n = g.n();
        State {
            g,
            color: vec![None; n],
            seen: vec![vec![0; max_colors + 1]; n],
            saturation: vec![0; n],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = Some(c);
        for w in self.g.neighbors(v).iter() {
            if self.seen[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.seen[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v].take().expect("assigned");
        for w in self.g.neighbors(v).iter() {
            self.seen[w][c] -= 1;
            if self.seen[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    /// Uncoloured vertex of maximum saturation, then degree into the uncoloured part, then index.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..self.g.n() {
            if self.color[v].is_some() {
                continue;
            }
            let deg = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&w| self.color[w].is_none())
                .count();
            let key = (self.saturation[v], deg, v);
            if best.is_none_or(|(s, d, _)| (key.0, key.1) > (s, d)) {
                best = Some(key);
            }
        }
        best.map(|(_, _, v)| v)
    }
}

/// DSATUR greedy colouring.
pub fn dsatur(g: &Graph) -> Coloring {
    let n = g.n();
    let mut st = State::new(g, n);
    while let Some(v) = st.pick() {
        let c = (0..).find(|&c| st.seen[v][c] == 0).expect("a free colour");
        st.assign(v, c);
    }
    Coloring::new(st.color.into_iter().map(|c| c.unwrap_or(0)).collect())
}

struct Exact<'a> {
    st: State<'a>,
    best: usize,
    best_coloring: Vec<usize>,
    lower: usize,
    meter: Meter,
}

impl Exact<'_> {
    fn branch(&mut self, used: usize) {
        if self.best == self.lower || !self.meter.tick() {
            return;
        }
        let Some(v) = self.st.pick() else {
            if used < self.best {
                self.best = used;
                self.best_coloring = self.st.color.iter().map(|c| c.unwrap_or(0)).collect();
            }
            return;
        };
        // colours beyond best - 2 cannot improve on the incumbent
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.st.seen[v][c] != 0 {
                continue;
            }
            self.st.assign(v, c);
            self.branch(used.max(c + 1));
            self.st.unassign(v);
            if self.best == self.lower || self.meter.exhausted() {
                return;
            }
        }
    }
}

/// Chromatic number by DSATUR branch and bound seeded with a maximum clique.
pub fn chromatic_number_exact(g: &Graph, budget: &Budget) -> ChromaticResult {
    let n = g.n();
    if n == 0 {
        return ChromaticResult {
            count: 0,
            coloring: Coloring::new(vec![]),
            lower: 0,
            exact: true,
        };
    }
    let upper = dsatur(g);
    let clique = max_clique(g, budget);
    let lower = clique.size;
    if upper.color_count == lower || n > budget.chromatic_vertices {
        let exact = upper.color_count == lower;
        return ChromaticResult {
            count: upper.color_count,
            coloring: upper,
            lower,
            exact,
        };
    }
    let mut ex = Exact {
        st: State::new(g, upper.color_count),
        best: upper.color_count,
        best_coloring: upper.color_of.clone(),
        lower,
        meter: budget.meter(),
    };
    for (c, &v) in clique.vertices.iter().enumerate() {
        ex.st.assign(v, c);
    }
    ex.branch(lower);
    let exact = !ex.meter.exhausted() || ex.best == lower;
    let coloring = Coloring::new(ex.best_coloring);
    ChromaticResult {
        count: coloring.color_count,
        lower: if exact { coloring.color_count } else { lower },
        coloring,
        exact,
    }
}

/// Minimum number of cliques partitioning the vertices: the chromatic number of the complement.
/// The returned colouring labels the clique each vertex belongs to.
pub fn clique_cover_number(g: &Graph, budget: &Budget) -> ChromaticResult {
    chromatic_number_exact(&g.complement(), budget)
}
