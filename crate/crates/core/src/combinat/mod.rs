//! Exact combinatorial solvers: independence, clique and chromatic numbers,
//! clique covers, maximal independent sets and minimum-entropy colourings.

mod clique;
mod coloring;
mod hchi;
mod mis;

pub use clique::{alpha_exact, greedy_clique, max_clique, omega_exact, SetResult};
pub use coloring::{chromatic_number_exact, clique_cover_number, dsatur, ChromaticResult, Coloring};
pub use hchi::{min_entropy_coloring, HchiMode, HchiResult};
pub use mis::maximal_independent_sets;
