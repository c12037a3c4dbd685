//! Perfectness by odd-hole search in a graph and its complement.

use super::Graph;
use crate::budget::{Budget, Meter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerfectOutcome {
    Perfect,
    /// An induced odd cycle of length at least 5, in cycle order.
    NotPerfect { hole: Vec<usize>, in_complement: bool },
    Undecided,
}

impl PerfectOutcome {
    pub fn is_perfect(&self) -> bool {
        matches!(self, PerfectOutcome::Perfect)
    }
}

enum Hole {
    Found(Vec<usize>),
    None,
    OutOfBudget,
}

/// Extends the induced path `path` (all vertices above `path[0]`).
fn extend(g: &Graph, path: &mut Vec<usize>, meter: &mut Meter) -> Hole {
    if !meter.tick() {
        return Hole::OutOfBudget;
    }
    let start = path[0];
    let last = *path.last().expect("nonempty path");
    let k = path.len();
    for x in g.neighbors(last).iter().filter(|&x| x > start) {
        if path.contains(&x) {
            continue;
        }
        let inner = if k >= 2 { &path[1..k - 1] } else { &[][..] };
        if inner.iter().any(|&p| g.adjacent(p, x)) {
            continue;
        }
        if k >= 2 && g.adjacent(start, x) {
            // x closes a cycle of length k + 1
            if k + 1 >= 5 && (k + 1) % 2 == 1 {
                let mut hole = path.clone();
                hole.push(x);
                return Hole::Found(hole);
            }
            continue;
        }
        path.push(x);
        let r = extend(g, path, meter);
        path.pop();
        match r {
            Hole::None => {}
            other => return other,
        }
    }
    Hole::None
}

/// Some induced odd cycle of length at least 5, or `None` inside when there is none.
/// The outer `None` means the node budget ran out.
pub fn find_odd_hole(g: &Graph, budget: &Budget) -> Option<Option<Vec<usize>>> {
    let mut meter = budget.meter();
    find_with(g, &mut meter)
}

fn find_with(g: &Graph, meter: &mut Meter) -> Option<Option<Vec<usize>>> {
    for s in 0..g.n() {
        let mut path = vec![s];
        match extend(g, &mut path, meter) {
            Hole::Found(h) => return Some(Some(h)),
            Hole::None => {}
            Hole::OutOfBudget => return None,
        }
    }
    Some(None)
}

/// Perfectness via the odd-hole characterisation, searched in `g` then its complement.
pub fn is_perfect(g: &Graph, budget: &Budget) -> PerfectOutcome {
    if g.n() > budget.perfect_vertices {
        return PerfectOutcome::Undecided;
    }
    let mut meter = budget.meter();
    for (graph, in_complement) in [(g.clone(), false), (g.complement(), true)] {
        match find_with(&graph, &mut meter) {
            Some(Some(hole)) => return PerfectOutcome::NotPerfect { hole, in_complement },
            Some(None) => {}
            None => return PerfectOutcome::Undecided,
        }
    }
    PerfectOutcome::Perfect
}

/// True iff the listed vertices, in order, induce a chordless cycle.
pub fn induces_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.adjacent(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::super::{and_power_graph, and_product_graph, catalog, Graph};
    use super::*;

    #[test]
    fn even_cycles_are_perfect() {
        let b = Budget::default();
        assert!(is_perfect(&catalog::cycle(6).unwrap(), &b).is_perfect());
        assert!(is_perfect(&catalog::cycle(8).unwrap(), &b).is_perfect());
        assert!(is_perfect(&catalog::complete(5), &b).is_perfect());
        assert!(is_perfect(&Graph::empty(4), &b).is_perfect());
    }

    #[test]
    fn pentagon_is_its_own_hole() {
        let c5 = catalog::cycle(5).unwrap();
        match is_perfect(&c5, &Budget::default()) {
            PerfectOutcome::NotPerfect { hole, in_complement } => {
                assert!(!in_complement);
                assert_eq!(hole.len(), 5);
                assert!(induces_cycle(&c5, &hole));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn antihole_found_in_complement() {
        let g = catalog::cycle(7).unwrap().complement();
        match is_perfect(&g, &Budget::default()) {
            PerfectOutcome::NotPerfect { hole, .. } => {
                assert_eq!(hole.len() % 2, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn highlighted_product_vertices_induce_a_seven_cycle() {
        let c6 = catalog::cycle(6).unwrap();
        let c8 = catalog::cycle(8).unwrap();
        let prod = and_product_graph(&c6, &c8, 1 << 16).unwrap();
        // (i, j) with i on the 8-cycle and j on the 6-cycle
        let pts = [(2, 2), (2, 3), (3, 4), (4, 3), (5, 2), (4, 1), (3, 1)];
        let verts: Vec<usize> = pts.iter().map(|&(i, j)| j * 8 + i).collect();
        assert!(induces_cycle(&prod, &verts));
        let sub = prod.induced(&verts);
        assert!(!is_perfect(&sub, &Budget::default()).is_perfect());
    }

    #[test]
    fn oversized_graph_is_undecided() {
        let g = and_power_graph(&catalog::cycle(4).unwrap(), 2, 1 << 16).unwrap();
        assert_eq!(is_perfect(&g, &Budget::default()), PerfectOutcome::Undecided);
    }
}
