use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Resource limits shared by the exact solvers and the bound pipelines.
///
/// Node budgets are deterministic; the optional wall-clock limit is not, so it
/// is off by default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest product graph that may be materialised.
    pub vertices: usize,
    /// Search-node limit for each branch-and-bound or backtracking call.
    pub nodes: u64,
    /// Optional wall-clock limit per solver call, in milliseconds.
    pub time_ms: Option<u64>,
    /// Largest graph accepted by the isomorphism search.
    pub iso_vertices: usize,
    /// Largest graph accepted by the automorphism (transitivity) search.
    pub automorphism_vertices: usize,
    /// Largest graph accepted by the exact odd-hole search.
    pub perfect_vertices: usize,
    /// Largest graph handled by the exact chromatic-entropy subset DP.
    pub hchi_exact_vertices: usize,
    /// Largest vertex count for which exact chromatic number is attempted.
    pub chromatic_vertices: usize,
    /// Largest vertex count for which exact independence number is attempted.
    pub alpha_vertices: usize,
    /// Maximal-independent-set enumeration cap.
    pub mis_sets: usize,
    /// Largest graph for which the optional Körner upper bound on complementary
    /// entropy is computed when the graph is not certified perfect.
    #[serde(default = "default_korner_vertices")]
    pub korner_vertices: usize,
}

fn default_korner_vertices() -> usize {
    32
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            vertices: 1 << 16,
            nodes: 10_000_000,
            time_ms: None,
            iso_vertices: 64,
            automorphism_vertices: 32,
            perfect_vertices: 14,
            hchi_exact_vertices: 18,
            chromatic_vertices: 256,
            alpha_vertices: 1024,
            mis_sets: 1_000_000,
            korner_vertices: default_korner_vertices(),
        }
    }
}

impl Budget {
    /// A deliberately tiny budget; solvers degrade to flagged one-sided results.
    pub fn starved() -> Self {
        Budget {
            nodes: 50,
            mis_sets: 50,
            ..Budget::default()
        }
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            nodes: 0,
            exhausted: false,
            limit: self.nodes,
            deadline: self
                .time_ms
                .map(|ms| Instant::now() + Duration::from_millis(ms)),
        }
    }
}

/// Counts search nodes against a [`Budget`].
pub(crate) struct Meter {
    nodes: u64,
    exhausted: bool,
    limit: u64,
    deadline: Option<Instant>,
}

impl Meter {
    /// Records one node; returns false once the budget is exhausted.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        let late = match self.deadline {
            Some(d) if self.nodes.is_multiple_of(1024) => Instant::now() >= d,
            _ => false,
        };
        if self.nodes > self.limit || late {
            self.exhausted = true;
        }
        !self.exhausted
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }
}
