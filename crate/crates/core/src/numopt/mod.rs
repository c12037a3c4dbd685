//! Numerical solvers: Körner graph entropy, capacity-achieving distributions,
//! sum-channel weights, θ for transitive graphs and the Haemers rank bound.

mod capacity;
mod haemers;
mod korner;
mod theta;

pub use capacity::{
    capacity_achieving_distribution, relative_capacity_perfect, sum_channel_weights,
    CapacityEvaluator, CapacityOptions, CapacityResult, Evaluation, KornerEvaluator,
};
pub use haemers::{default_candidates, haemers_bound, FiniteFieldMatrix};
pub use korner::{korner_entropy, KornerOptions, KornerSolution};
pub use theta::{adjacency_eigenvalues, symmetric_eigenvalues, theta_transitive, ThetaResult};
