//! Relative capacity `C(G, P)` and its maximisation over `P`.

use serde::Serialize;

use super::korner::{korner_entropy, KornerOptions, KornerSolution};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{is_perfect, Distribution, Graph, PerfectOutcome, ProbabilisticGraph};

/// `H(P) - H_κ(G, P)`: the relative capacity of a perfect probabilistic graph.
///
/// Perfectness is checked unless `assume_perfect` is set.
pub fn relative_capacity_perfect(
    pg: &ProbabilisticGraph,
    assume_perfect: bool,
    opts: &KornerOptions,
    budget: &Budget,
) -> Result<f64> {
    if !assume_perfect {
        match is_perfect(&pg.graph, budget) {
            PerfectOutcome::Perfect => {}
            PerfectOutcome::NotPerfect { .. } => {
                return Err(Error::Precondition("graph is not perfect".into()))
            }
            PerfectOutcome::Undecided => return Err(Error::Undecided("perfectness".into())),
        }
    }
    let k = korner_entropy(pg, opts, budget)?;
    Ok(pg.entropy() - k.value)
}

/// Relative capacity at one distribution together with the coverage vector
/// that defines its supergradient.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    /// `a_x` of the inner optimum; the supergradient is `log(a_x / P(x)) - 1/ln 2`.
    pub coverage: Vec<f64>,
}

/// Oracle for `P -> C(G, P)`.
pub trait CapacityEvaluator {
    fn evaluate(&self, p: &Distribution) -> Result<Evaluation>;
    /// Whether `evaluate` returns the true value rather than a lower bound.
    fn exact(&self) -> bool;
}

/// `H(P) - H_κ(G, P)`: exact on perfect graphs, a lower bound on `C(G, P)` otherwise.
pub struct KornerEvaluator {
    pub graph: Graph,
    pub perfect: bool,
    pub opts: KornerOptions,
    pub budget: Budget,
}

impl KornerEvaluator {
    pub fn new(graph: Graph, budget: &Budget) -> Self {
        let perfect = is_perfect(&graph, budget).is_perfect();
        KornerEvaluator {
            graph,
            perfect,
            opts: KornerOptions::default(),
            budget: budget.clone(),
        }
    }

    pub fn solve(&self, p: &Distribution) -> Result<KornerSolution> {
        let pg = ProbabilisticGraph::new(self.graph.clone(), p.clone())?;
        korner_entropy(&pg, &self.opts, &self.budget)
    }
}

impl CapacityEvaluator for KornerEvaluator {
    fn evaluate(&self, p: &Distribution) -> Result<Evaluation> {
        let k = self.solve(p)?;
        Ok(Evaluation {
            value: p.entropy() - k.value,
            coverage: k.coverage,
        })
    }

    fn exact(&self) -> bool {
        self.perfect
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CapacityOptions {
    /// Stop when the concavity gap falls below this, in bits.
    pub tol: f64,
    pub max_iter: usize,
    pub step: f64,
}

impl Default for CapacityOptions {
    fn default() -> Self {
        CapacityOptions {
            tol: 1e-5,
            max_iter: 5_000,
            step: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CapacityResult {
    pub maximizer: Distribution,
    pub value: f64,
    /// `max_x log(a_x / P(x))`; bounds the maximum when the evaluator is exact.
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
    /// False when the evaluator only supplies lower bounds; `value` then bounds `C_0` from below.
    pub exact: bool,
}

fn upper_bound(p: &Distribution, coverage: &[f64]) -> f64 {
    p.weights()
        .iter()
        .zip(coverage)
        .map(|(&px, &a)| if px > 0.0 { (a / px).log2() } else { f64::INFINITY })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Exponentiated-gradient ascent on the simplex for a concave `P -> C(G, P)`.
///
/// With step `η` the update is `P <- P^(1-η) a^η` renormalised; the step halves
/// whenever the value would drop.
pub fn capacity_achieving_distribution(
    n: usize,
    evaluator: &dyn CapacityEvaluator,
    opts: &CapacityOptions,
) -> Result<CapacityResult> {
    let mut p = Distribution::uniform(n);
    let mut ev = evaluator.evaluate(&p)?;
    let mut eta = opts.step;
    let mut iterations = 0;
    let mut converged = false;
    let mut best_upper = upper_bound(&p, &ev.coverage);
    loop {
        let upper = upper_bound(&p, &ev.coverage);
        best_upper = best_upper.min(upper);
        if best_upper - ev.value <= opts.tol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iter || eta < 1e-9 {
            break;
        }
        iterations += 1;
        let proposal: Vec<f64> = p
            .weights()
            .iter()
            .zip(&ev.coverage)
            .map(|(&px, &a)| px.powf(1.0 - eta) * a.max(1e-300).powf(eta))
            .collect();
        let next = Distribution::normalized(proposal)?;
        let next_ev = evaluator.evaluate(&next)?;
        if next_ev.value + 1e-12 < ev.value {
            eta /= 2.0;
            continue;
        }
        p = next;
        ev = next_ev;
    }
    Ok(CapacityResult {
        maximizer: p,
        value: ev.value,
        upper: best_upper,
        iterations,
        converged,
        exact: evaluator.exact(),
    })
}

/// Optimal time-sharing weights `2^{c_a} / sum 2^{c_b}` and the total `log sum 2^{c_a}`.
pub fn sum_channel_weights(c0_values: &[f64]) -> Result<(Distribution, f64)> {
    if c0_values.is_empty() || c0_values.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter(
            "capacities must be a nonempty list of finite values".into(),
        ));
    }
    let top = c0_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = c0_values.iter().map(|c| (c - top).exp2()).collect();
    let total: f64 = scaled.iter().sum();
    let weights = Distribution::normalized(scaled)?;
    Ok((weights, top + total.log2()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use rand::{Rng, SeedableRng};

    fn optimize(g: Graph) -> CapacityResult {
        let ev = KornerEvaluator::new(g.clone(), &Budget::default());
        capacity_achieving_distribution(g.n(), &ev, &CapacityOptions::default()).unwrap()
    }

    #[test]
    fn relative_capacity_examples() {
        let b = Budget::default();
        let o = KornerOptions::default();
        let k2 = ProbabilisticGraph::new(
            catalog::complete(2),
            Distribution::new(vec![0.3, 0.7]).unwrap(),
        )
        .unwrap();
        assert!(relative_capacity_perfect(&k2, false, &o, &b).unwrap().abs() < 1e-9);
        let p = Distribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        let n3 = ProbabilisticGraph::new(Graph::empty(3), p.clone()).unwrap();
        assert!((relative_capacity_perfect(&n3, false, &o, &b).unwrap() - p.entropy()).abs() < 1e-9);
        let c6 = ProbabilisticGraph::uniform(catalog::cycle(6).unwrap());
        assert!((relative_capacity_perfect(&c6, false, &o, &b).unwrap() - 3f64.log2()).abs() < 1e-9);
        let c5 = ProbabilisticGraph::uniform(catalog::cycle(5).unwrap());
        assert!(relative_capacity_perfect(&c5, false, &o, &b).is_err());
    }

    #[test]
    fn optimizer_examples() {
        let r = optimize(Graph::empty(4));
        assert!((r.value - 2.0).abs() < 1e-5);
        assert!(r.maximizer.linf_distance(&Distribution::uniform(4)) < 1e-6);
        let r = optimize(catalog::cycle(6).unwrap());
        assert!(r.converged);
        assert!((r.value - 3f64.log2()).abs() < 1e-5);
        let r = optimize(catalog::complete(3));
        assert!(r.value.abs() < 1e-9);
        // the middle of a path is never worth sending
        let r = optimize(catalog::path(3));
        assert!((r.value - 1.0).abs() < 1e-4);
        assert!(r.exact);
    }

    #[test]
    fn sum_weights_examples() {
        let (p, v) = sum_channel_weights(&[1.0, 1.0]).unwrap();
        assert_eq!(p.weights(), &[0.5, 0.5]);
        assert!((v - 2.0).abs() < 1e-12);
        let (p, v) = sum_channel_weights(&[3f64.log2(), 7f64.log2()]).unwrap();
        assert!((p.get(0) - 0.3).abs() < 1e-12);
        assert!((v - 10f64.log2()).abs() < 1e-12);
        let (p, v) = sum_channel_weights(&[0.0, 0.0, 0.0]).unwrap();
        assert!(p.linf_distance(&Distribution::uniform(3)) < 1e-15);
        assert!((v - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn sum_weights_beat_a_grid() {
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(4);
        for _ in 0..20 {
            let c = [rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0)];
            let (_, v) = sum_channel_weights(&c).unwrap();
            let grid = (0..=1000)
                .map(|k| {
                    let s = k as f64 / 1000.0;
                    crate::info::binary_entropy(s) + s * c[0] + (1.0 - s) * c[1]
                })
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(v >= grid - 1e-12);
            assert!(v - grid < 1e-5);
        }
    }
}
