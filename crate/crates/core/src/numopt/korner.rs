//! Körner graph entropy by alternating minimisation over maximal independent sets.
//!
//! Writing `a_x(r) = sum_{w ∋ x} r_w` for a distribution `r` on maximal
//! independent sets, the entropy is `min_r f(r)` with `f(r) = -sum_x P(x) log a_x`.
//! One alternating step (optimal `Q` for `r`, then `r` as the marginal of `Q`)
//! is `r_w <- r_w s_w` with `s_w = sum_{x in w} P(x) / a_x`. By Jacobi's
//! inequality `f(r) - log max_w s_w` is a lower bound at every iterate, so each
//! solution carries a certified bracket.

use serde::Serialize;

use crate::budget::Budget;
use crate::combinat::maximal_independent_sets;
use crate::error::Result;
use crate::graph::ProbabilisticGraph;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KornerOptions {
    /// Target width of the certified bracket, in bits.
    pub tol: f64,
    pub max_iter: usize,
    /// Squared-extrapolation acceleration, safeguarded to keep the objective monotone.
    pub accelerate: bool,
}

impl Default for KornerOptions {
    fn default() -> Self {
        KornerOptions {
            tol: 1e-9,
            max_iter: 100_000,
            accelerate: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KornerSolution {
    /// `I(W; X)` at the final conditional `Q`; an upper bound on the entropy.
    pub value: f64,
    /// Certified lower bound on the entropy.
    pub lower: f64,
    /// Maximal independent sets forming the `W` alphabet.
    pub sets: Vec<Vec<usize>>,
    /// Distribution over `sets`.
    pub r: Vec<f64>,
    /// `q[x]` lists `(set index, Q(w|x))` for sets containing `x`.
    pub q: Vec<Vec<(usize, f64)>>,
    /// Coverage `a_x = sum_{w ∋ x} r_w`.
    pub coverage: Vec<f64>,
    pub iterations: usize,
    /// The bracket closed to `tol`, or the objective stopped improving.
    pub converged: bool,
    /// Objective `f(r)` after each accepted step; non-increasing.
    #[serde(skip)]
    pub trace: Vec<f64>,
}

struct Problem<'a> {
    p: &'a [f64],
    sets: &'a [Vec<usize>],
    n: usize,
}

impl Problem<'_> {
    fn coverage(&self, r: &[f64]) -> Vec<f64> {
        let mut a = vec![0.0; self.n];
        for (w, set) in self.sets.iter().enumerate() {
            for &x in set {
                a[x] += r[w];
            }
        }
        a
    }

    fn objective(&self, a: &[f64]) -> f64 {
        self.p
            .iter()
            .zip(a)
            .filter(|(&p, _)| p > 0.0)
            .map(|(&p, &ax)| -p * ax.log2())
            .sum()
    }

    fn scores(&self, a: &[f64]) -> Vec<f64> {
        self.sets
            .iter()
            .map(|set| {
                set.iter()
                    .filter(|&&x| self.p[x] > 0.0)
                    .map(|&x| self.p[x] / a[x])
                    .sum()
            })
            .collect()
    }

    /// One alternating step; returns the new `r`, renormalised against rounding.
    fn step(&self, r: &[f64]) -> Vec<f64> {
        let a = self.coverage(r);
        let s = self.scores(&a);
        let mut next: Vec<f64> = r.iter().zip(&s).map(|(r, s)| r * s).collect();
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        next
    }

    fn eval(&self, r: &[f64]) -> f64 {
        self.objective(&self.coverage(r))
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn korner_entropy(
    pg: &ProbabilisticGraph,
    opts: &KornerOptions,
    budget: &Budget,
) -> Result<KornerSolution> {
    let sets = maximal_independent_sets(&pg.graph, budget)?;
    let n = pg.n();
    let prob = Problem {
        p: pg.dist.weights(),
        sets: &sets,
        n,
    };
    let m = sets.len();
    let mut r = vec![1.0 / m as f64; m];
    let mut f = prob.eval(&r);
    let mut trace = vec![f];
    let mut iterations = 0;
    let mut converged = false;
    let mut lower;
    loop {
        let a = prob.coverage(&r);
        let s = prob.scores(&a);
        let smax = s.iter().cloned().fold(0.0, f64::max);
        let gap = smax.log2().max(0.0);
        lower = f - gap;
        if gap <= opts.tol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iter {
            break;
        }
        iterations += 1;
        let r1 = prob.step(&r);
        let mut candidate = r1.clone();
        let mut fc = prob.eval(&r1);
        if opts.accelerate {
            let r2 = prob.step(&r1);
            let f2 = prob.eval(&r2);
            if f2 <= fc {
                candidate = r2.clone();
                fc = f2;
            }
            let d1: Vec<f64> = r1.iter().zip(&r).map(|(a, b)| a - b).collect();
            let d2: Vec<f64> = (0..m).map(|i| r2[i] - 2.0 * r1[i] + r[i]).collect();
            let (n1, n2) = (norm2(&d1), norm2(&d2));
            if n2 > 0.0 && n1 > 0.0 {
                let alpha = -(n1 / n2).max(1.0);
                let ext: Vec<f64> = (0..m)
                    .map(|i| r[i] - 2.0 * alpha * d1[i] + alpha * alpha * d2[i])
                    .collect();
                if ext.iter().all(|&v| v > 0.0 && v.is_finite()) {
                    let total: f64 = ext.iter().sum();
                    let ext: Vec<f64> = ext.iter().map(|v| v / total).collect();
                    let ext_ok = total.is_finite() && ext.iter().all(|&v| v > 0.0);
                    let stabilized = prob.step(&ext);
                    let fs = prob.eval(&stabilized);
                    if ext_ok && fs < fc {
                        candidate = stabilized;
                        fc = fs;
                    }
                }
            }
        }
        if !(fc < f) {
            // no representable improvement left; the bracket stays as certified
            converged = true;
            break;
        }
        r = candidate;
        f = fc;
        trace.push(f);
    }
    let a = prob.coverage(&r);
    let q: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|x| {
            let members: Vec<usize> = (0..m).filter(|&w| sets[w].binary_search(&x).is_ok()).collect();
            if a[x] > 0.0 {
                members.iter().map(|&w| (w, r[w] / a[x])).collect()
            } else {
                let u = 1.0 / members.len() as f64;
                members.iter().map(|&w| (w, u)).collect()
            }
        })
        .collect();
    let mi = mutual_information(pg.dist.weights(), &q, m);
    let value = if mi.is_finite() { mi.min(f) } else { f };
    Ok(KornerSolution {
        value,
        lower: lower.min(value),
        sets,
        r,
        q,
        coverage: a,
        iterations,
        converged,
        trace,
    })
}

/// `I(W; X)` for input `p` and conditional `q`.
fn mutual_information(p: &[f64], q: &[Vec<(usize, f64)>], m: usize) -> f64 {
    let mut marginal = vec![0.0; m];
    for (x, row) in q.iter().enumerate() {
        for &(w, v) in row {
            marginal[w] += p[x] * v;
        }
    }
    let mut total = 0.0;
    for (x, row) in q.iter().enumerate() {
        if p[x] == 0.0 {
            continue;
        }
        for &(w, v) in row {
            // terms whose joint mass underflows vanish in the limit
            let joint = p[x] * v;
            if joint > 0.0 && marginal[w] > 0.0 {
                total += joint * (v / marginal[w]).log2();
            }
        }
    }
    total.max(0.0)
}
