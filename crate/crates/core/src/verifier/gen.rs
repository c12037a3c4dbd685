//! Random instances for the property scenarios.

use rand::Rng;

use crate::budget::Budget;
use crate::graph::{is_perfect, Distribution, Graph, PerfectOutcome};

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// Distribution with every weight at least `1/(20n)` before normalising.
pub fn random_distribution(rng: &mut impl Rng, n: usize) -> Distribution {
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    Distribution::normalized(w).expect("positive weights")
}

fn interval_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let spans: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let a: f64 = rng.gen_range(0.0..1.0);
            (a, a + rng.gen_range(0.05..0.4))
        })
        .collect();
    Graph::from_fn(n, |u, v| spans[u].0 < spans[v].1 && spans[v].0 < spans[u].1)
}

fn bipartite_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let p = rng.gen_range(0.2..0.8);
    Graph::from_fn(n, |u, v| side[u] != side[v] && rng.gen_bool(p))
}

/// A graph drawn from interval, bipartite, complement-of-bipartite or dense
/// random families, kept only once the odd-hole search certifies it perfect.
/// Returns `None` when no candidate could be certified within `budget`.
pub fn random_perfect_graph(rng: &mut impl Rng, n: usize, budget: &Budget) -> Option<Graph> {
    for _ in 0..64 {
        let g = match rng.gen_range(0..4) {
            0 => interval_graph(rng, n),
            1 => bipartite_graph(rng, n),
            2 => bipartite_graph(rng, n).complement(),
            _ => {
                let d = rng.gen_range(0.2..0.8);
                random_graph(rng, n, d)
            }
        };
        if is_perfect(&g, budget) == PerfectOutcome::Perfect {
            return Some(g);
        }
    }
    None
}
