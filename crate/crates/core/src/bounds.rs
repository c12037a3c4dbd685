//! Certified intervals on zero-error quantities.
//!
//! Every endpoint carries a [`Certificate`] naming a method from the closed
//! registry [`Method`]. Only directions that are sound at finite `n` are used:
//! superadditive sequences give lower bounds through their supremum, subadditive
//! ones give upper bounds through their infimum. The typical-set independence
//! estimate bounds in neither direction and is reported as an uncertified
//! [`Estimate`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::combinat::{
    alpha_exact, chromatic_number_exact, clique_cover_number, min_entropy_coloring, omega_exact,
    HchiMode,
};
use crate::error::{Error, Result};
use crate::graph::{
    and_power, and_power_graph, is_perfect, Distribution, Graph, PerfectOutcome, ProbabilisticGraph,
};
use crate::numopt::{
    default_candidates, haemers_bound, korner_entropy, theta_transitive, FiniteFieldMatrix,
    KornerOptions, KornerSolution,
};
use crate::typicality::typical_induced_subgraph;

pub const REGISTRY_VERSION: u32 = 1;

/// Allowed slack in `lo <= hi`.
pub const ORDER_TOL: f64 = 1e-9;

/// The closed set of sound bounding methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// A bound holding for every graph: `0`, `log n` or `H(P)`.
    Trivial,
    /// `(1/n) log α(G^n)`: lower bound on `C₀`.
    AlphaPower,
    /// `(1/n) log` of a clique cover of `G^n`: upper bound on `C₀`.
    CliqueCoverPower,
    /// `log rank(B)` of a fitting matrix: upper bound on `C₀`.
    Haemers,
    /// `log θ` for vertex- and edge-transitive graphs: upper bound on `C₀`.
    Theta,
    /// `C₀ = log α` on perfect graphs.
    PerfectAlpha,
    /// `log ω(G)`: lower bound on `H₀`.
    CliqueNumber,
    /// `(1/n) log` of a proper colouring of `G^n`: upper bound on `H₀`.
    ChromaticPower,
    /// `(1/n)` times the entropy of a proper colouring of `G^n`: upper bound on `H̄`.
    ChromaticEntropyPower,
    /// `I(W; X)` at a feasible conditional: upper bound on `H_κ ≥ H̄`.
    KornerUpper,
    /// `H̄ = H_κ` on perfect graphs, bracketed by the Körner solver.
    PerfectKorner,
    /// `H̄ ≥ H(P) - C₀`.
    CapacityComplement,
    /// `C(G, P) = H(P) - H̄`.
    MartonReflection,
    /// Weighted sum of per-part Körner brackets for a perfect family.
    PerfectLinearization,
    /// `(1/k)` times a bound on the AND product of part powers.
    EtaProduct,
}

pub const REGISTRY: &[Method] = &[
    Method::Trivial,
    Method::AlphaPower,
    Method::CliqueCoverPower,
    Method::Haemers,
    Method::Theta,
    Method::PerfectAlpha,
    Method::CliqueNumber,
    Method::ChromaticPower,
    Method::ChromaticEntropyPower,
    Method::KornerUpper,
    Method::PerfectKorner,
    Method::CapacityComplement,
    Method::MartonReflection,
    Method::PerfectLinearization,
    Method::EtaProduct,
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub method: Method,
    /// Block length or power the bound was computed at.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub value: f64,
    /// Solver flags: inexact searches, skipped levels, assumptions.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub sub: Vec<Certificate>,
}

impl Certificate {
    pub fn new(method: Method, value: f64) -> Self {
        Certificate {
            method,
            n: None,
            value,
            flags: Vec::new(),
            sub: Vec::new(),
        }
    }

    fn at(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    fn flag(mut self, f: impl Into<String>) -> Self {
        self.flags.push(f.into());
        self
    }

    fn with_sub(mut self, sub: Vec<Certificate>) -> Self {
        self.sub = sub;
        self
    }

    /// Whether this certificate and all its sub-certificates use registered methods.
    pub fn is_registered(&self) -> bool {
        REGISTRY.contains(&self.method) && self.sub.iter().all(Certificate::is_registered)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundInterval {
    pub quantity: String,
    pub lo: f64,
    pub hi: f64,
    pub lo_cert: Certificate,
    pub hi_cert: Certificate,
}

impl BoundInterval {
    fn from_certs(quantity: &str, lo_cert: Certificate, hi_cert: Certificate) -> Self {
        BoundInterval {
            quantity: quantity.into(),
            lo: lo_cert.value,
            hi: hi_cert.value,
            lo_cert,
            hi_cert,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.lo - tol <= x && x <= self.hi + tol
    }

    pub fn is_ordered(&self) -> bool {
        self.lo <= self.hi + ORDER_TOL
    }

    /// `other` is no wider than `self` on either side.
    pub fn refines(&self, other: &BoundInterval) -> bool {
        other.lo >= self.lo - ORDER_TOL && other.hi <= self.hi + ORDER_TOL
    }

    pub fn scaled(&self, factor: f64, quantity: &str, method: Method, n: usize) -> Self {
        let lo = Certificate::new(method, self.lo * factor).at(n).with_sub(vec![self.lo_cert.clone()]);
        let hi = Certificate::new(method, self.hi * factor).at(n).with_sub(vec![self.hi_cert.clone()]);
        BoundInterval::from_certs(quantity, lo, hi)
    }
}

/// Options shared by the pipelines.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[derive(Default)]
pub struct BoundsConfig {
    pub budget: Budget,
    pub korner: KornerOptions,
    /// Extra fitting matrices tried by the Haemers bound, besides the defaults.
    pub haemers: Vec<FiniteFieldMatrix>,
    /// Use θ without verifying transitivity; the certificate records the assumption.
    pub assume_transitive: bool,
}


fn keep_max(best: &mut Certificate, cand: Certificate) {
    if cand.value > best.value {
        *best = cand;
    }
}

fn keep_min(best: &mut Certificate, cand: Certificate) {
    if cand.value < best.value {
        *best = cand;
    }
}

fn check_graph(g: &Graph, max_n: usize) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    if max_n == 0 {
        return Err(Error::InvalidParameter("max_n must be at least 1".into()));
    }
    Ok(())
}

/// Runs `level` for `n = 1..=max_n` in parallel; a level whose power exceeds the
/// vertex budget yields `None`.
fn levels<T: Send>(
    g: &Graph,
    max_n: usize,
    budget: &Budget,
    level: impl Fn(usize, &Graph) -> T + Sync,
) -> Vec<(usize, Option<T>)> {
    (1..=max_n)
        .into_par_iter()
        .map(|n| match and_power_graph(g, n, budget.vertices) {
            Ok(power) => (n, Some(level(n, &power))),
            Err(_) => (n, None),
        })
        .collect()
}

/// `log α` of a certified-perfect graph, or the reason the shortcut was unavailable
/// when that reason is a budget limit.
fn perfect_alpha(g: &Graph, budget: &Budget) -> std::result::Result<f64, Option<&'static str>> {
    match is_perfect(g, budget) {
        PerfectOutcome::Perfect => {}
        PerfectOutcome::NotPerfect { .. } => return Err(None),
        PerfectOutcome::Undecided => return Err(Some("perfectness undecided")),
    }
    let a = alpha_exact(g, budget);
    if a.exact {
        Ok((a.size as f64).log2())
    } else {
        Err(Some("alpha search stopped early"))
    }
}

/// Zero-error capacity `C₀(G)`.
pub fn c0_bounds(g: &Graph, max_n: usize, cfg: &BoundsConfig) -> Result<BoundInterval> {
    check_graph(g, max_n)?;
    let budget = &cfg.budget;
    let shortcut = match perfect_alpha(g, budget) {
        Ok(v) => {
            let c = Certificate::new(Method::PerfectAlpha, v).at(1);
            return Ok(BoundInterval::from_certs("c0", c.clone(), c));
        }
        Err(why) => why,
    };
    let mut lo = Certificate::new(Method::Trivial, 0.0);
    let mut hi = Certificate::new(Method::Trivial, (g.n() as f64).log2());
    for (n, res) in levels(g, max_n, budget, |n, power| {
        let a = alpha_exact(power, budget);
        let cover = clique_cover_number(power, budget);
        let nf = n as f64;
        let mut l = Certificate::new(Method::AlphaPower, (a.size as f64).log2() / nf).at(n);
        if !a.exact {
            l = l.flag("alpha search stopped early");
        }
        let mut h = Certificate::new(Method::CliqueCoverPower, (cover.count as f64).log2() / nf).at(n);
        if !cover.exact {
            h = h.flag("clique cover not minimum");
        }
        (l, h)
    }) {
        match res {
            Some((l, h)) => {
                keep_max(&mut lo, l);
                keep_min(&mut hi, h);
            }
            None => {
                lo.flags.push(format!("power {n} over vertex budget"));
                hi.flags.push(format!("power {n} over vertex budget"));
            }
        }
    }
    let mut candidates = default_candidates(g);
    candidates.extend(cfg.haemers.iter().cloned());
    for m in &candidates {
        match haemers_bound(g, m) {
            Ok(v) => keep_min(&mut hi, Certificate::new(Method::Haemers, v).flag(format!("GF({})", m.p))),
            Err(e) => hi.flags.push(format!("Haemers candidate over GF({}) rejected: {e}", m.p)),
        }
    }
    if g.regular_degree().is_some() {
        match theta_transitive(g, cfg.assume_transitive, budget) {
            Ok(t) => {
                let mut c = Certificate::new(Method::Theta, t.theta.log2());
                if t.assumed_transitive {
                    c = c.flag("transitivity assumed");
                }
                keep_min(&mut hi, c);
            }
            Err(Error::Undecided(what)) => hi.flags.push(format!("theta skipped: {what} undecided")),
            Err(_) => {}
        }
    }
    if let Some(why) = shortcut {
        lo.flags.push(why.into());
        hi.flags.push(why.into());
    }
    Ok(BoundInterval::from_certs("c0", lo, hi))
}

/// Witsenhausen rate `H₀(G)`.
pub fn h0_bounds(g: &Graph, max_n: usize, cfg: &BoundsConfig) -> Result<BoundInterval> {
    check_graph(g, max_n)?;
    let budget = &cfg.budget;
    let w = omega_exact(g, budget);
    let mut lo = Certificate::new(Method::CliqueNumber, (w.size as f64).log2()).at(1);
    if !w.exact {
        lo = lo.flag("clique search stopped early");
    }
    let mut hi = Certificate::new(Method::Trivial, (g.n() as f64).log2());
    for (n, res) in levels(g, max_n, budget, |n, power| {
        let chi = chromatic_number_exact(power, budget);
        let mut c = Certificate::new(Method::ChromaticPower, (chi.count as f64).log2() / n as f64).at(n);
        if !chi.exact {
            c = c.flag("colouring not minimum");
        }
        c
    }) {
        match res {
            Some(c) => keep_min(&mut hi, c),
            None => hi.flags.push(format!("power {n} over vertex budget")),
        }
    }
    Ok(BoundInterval::from_certs("h0", lo, hi))
}

/// Körner bracket usable as `H̄` when the graph is certified perfect.
/// `Err(true)` when perfectness could not be decided within budget.
fn perfect_korner(pg: &ProbabilisticGraph, cfg: &BoundsConfig) -> Result<std::result::Result<KornerSolution, bool>> {
    match is_perfect(&pg.graph, &cfg.budget) {
        PerfectOutcome::Perfect => Ok(Ok(korner_entropy(pg, &cfg.korner, &cfg.budget)?)),
        PerfectOutcome::NotPerfect { .. } => Ok(Err(false)),
        PerfectOutcome::Undecided => Ok(Err(true)),
    }
}

fn korner_bracket(k: &KornerSolution) -> BoundInterval {
    let lo = Certificate::new(Method::PerfectKorner, k.lower.max(0.0));
    let hi = Certificate::new(Method::PerfectKorner, k.value.max(k.lower.max(0.0)));
    let (lo, hi) = if k.converged {
        (lo, hi)
    } else {
        (lo.flag("Körner iteration cap reached"), hi.flag("Körner iteration cap reached"))
    };
    BoundInterval::from_certs("hbar", lo, hi)
}

/// Complementary graph entropy `H̄(G, P)`.
pub fn hbar_bounds(pg: &ProbabilisticGraph, max_n: usize, cfg: &BoundsConfig) -> Result<BoundInterval> {
    check_graph(&pg.graph, max_n)?;
    let budget = &cfg.budget;
    let h = pg.entropy();
    let undecided = match perfect_korner(pg, cfg)? {
        Ok(k) => return Ok(korner_bracket(&k)),
        Err(u) => u,
    };
    let c0 = c0_bounds(&pg.graph, max_n, cfg)?;
    let mut lo = Certificate::new(Method::Trivial, 0.0);
    keep_max(
        &mut lo,
        Certificate::new(Method::CapacityComplement, h - c0.hi).with_sub(vec![c0.hi_cert.clone()]),
    );
    let mut hi = Certificate::new(Method::Trivial, h);
    let power_levels: Vec<(usize, Option<Certificate>)> = (1..=max_n)
        .into_par_iter()
        .map(|n| match and_power(pg, n, budget.vertices) {
            Ok(power) => {
                let hc = min_entropy_coloring(&power, HchiMode::Exact, budget);
                let chi = chromatic_number_exact(&power.graph, budget);
                let via_chi = chi.coloring.entropy(power.dist.weights());
                let (value, exact) = if via_chi < hc.value { (via_chi, false) } else { (hc.value, hc.exact) };
                let mut c = Certificate::new(Method::ChromaticEntropyPower, value / n as f64).at(n);
                if !exact {
                    c = c.flag("colouring entropy not minimum");
                }
                (n, Some(c))
            }
            Err(_) => (n, None),
        })
        .collect();
    for (n, res) in power_levels {
        match res {
            Some(c) => keep_min(&mut hi, c),
            None => hi.flags.push(format!("power {n} over vertex budget")),
        }
    }
    if undecided {
        lo.flags.push("perfectness undecided".into());
        hi.flags.push("perfectness undecided".into());
    }
    if pg.n() > budget.korner_vertices {
        hi.flags.push("Körner upper bound skipped: graph over budget".into());
        return Ok(BoundInterval::from_certs("hbar", lo, hi));
    }
    match korner_entropy(pg, &cfg.korner, budget) {
        Ok(k) if k.converged => keep_min(&mut hi, Certificate::new(Method::KornerUpper, k.value)),
        Ok(_) => hi.flags.push("Körner solver did not converge".into()),
        Err(e) => hi.flags.push(format!("Körner solver skipped: {e}")),
    }
    Ok(BoundInterval::from_certs("hbar", lo, hi))
}

/// Relative capacity `C(G, P)`, reflected from [`hbar_bounds`].
pub fn c_rel_bounds(pg: &ProbabilisticGraph, max_n: usize, cfg: &BoundsConfig) -> Result<BoundInterval> {
    let hb = hbar_bounds(pg, max_n, cfg)?;
    Ok(reflect(&hb, pg.entropy()))
}

/// `C = H(P) - H̄`, endpoint by endpoint.
pub fn reflect(hbar: &BoundInterval, entropy: f64) -> BoundInterval {
    let lo = Certificate::new(Method::MartonReflection, entropy - hbar.hi).with_sub(vec![hbar.hi_cert.clone()]);
    let hi = Certificate::new(Method::MartonReflection, entropy - hbar.lo).with_sub(vec![hbar.lo_cert.clone()]);
    BoundInterval::from_certs("c", lo, hi)
}

/// `η(P_A) = H̄(⊔ G_a, Σ P_A(a) P_a)` for a type `P_A` with denominator `k`.
///
/// A family of certified-perfect parts gets the weighted sum of per-part Körner
/// brackets. Otherwise the AND product of the powers `G_a^{k P_A(a)}` is built
/// and its [`hbar_bounds`] at `max_n` is scaled by `1/k`.
pub fn eta_bounds(
    parts: &[ProbabilisticGraph],
    counts: &[usize],
    max_n: usize,
    cfg: &BoundsConfig,
) -> Result<BoundInterval> {
    if parts.is_empty() || parts.len() != counts.len() {
        return Err(Error::InvalidParameter(format!(
            "{} parts with {} type counts",
            parts.len(),
            counts.len()
        )));
    }
    let k: usize = counts.iter().sum();
    if k == 0 {
        return Err(Error::InvalidParameter("type counts sum to zero".into()));
    }
    let kf = k as f64;
    let mut brackets = Vec::with_capacity(parts.len());
    for part in parts {
        match perfect_korner(part, cfg)? {
            Ok(s) => brackets.push(s),
            Err(_) => break,
        }
    }
    if brackets.len() == parts.len() {
        let mut lo = 0.0;
        let mut hi = 0.0;
        let mut subs = Vec::new();
        for ((s, &c), _part) in brackets.iter().zip(counts).zip(parts) {
            let w = c as f64 / kf;
            lo += w * s.lower.max(0.0);
            hi += w * s.value;
            subs.push(Certificate::new(Method::PerfectKorner, s.value));
        }
        let lo = Certificate::new(Method::PerfectLinearization, lo).with_sub(subs.clone());
        let hi = Certificate::new(Method::PerfectLinearization, hi.max(lo.value)).with_sub(subs);
        return Ok(BoundInterval::from_certs("eta", lo, hi));
    }
    let mut product: Option<ProbabilisticGraph> = None;
    for (part, &c) in parts.iter().zip(counts) {
        if c == 0 {
            continue;
        }
        let power = and_power(part, c, cfg.budget.vertices)?;
        product = Some(match product {
            None => power,
            Some(acc) => crate::graph::and_product(&acc, &power, cfg.budget.vertices)?,
        });
    }
    let product = product.expect("some count is positive");
    let inner = hbar_bounds(&product, max_n, cfg)?;
    Ok(inner.scaled(1.0 / kf, "eta", Method::EtaProduct, k))
}

/// An uncertified estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub quantity: String,
    pub value: f64,
    pub n: usize,
    pub eps: f64,
    /// Vertices of the typical induced subgraph.
    pub vertices: usize,
    pub alpha: usize,
    pub alpha_exact: bool,
    /// Always false: finite `(n, eps)` bounds `C(G, P)` in neither direction.
    pub certified: bool,
}

/// `(1/n) log α` of the typical induced subgraph, an estimate of `C(G, P)`.
pub fn typical_alpha_estimate(pg: &ProbabilisticGraph, n: usize, eps: f64, budget: &Budget) -> Result<Estimate> {
    let (sub, _) = typical_induced_subgraph(pg, n, eps, budget.vertices)?;
    let a = alpha_exact(&sub.graph, budget);
    Ok(Estimate {
        quantity: "typical_alpha".into(),
        value: (a.size as f64).log2() / n as f64,
        n,
        eps,
        vertices: sub.n(),
        alpha: a.size,
        alpha_exact: a.exact,
        certified: false,
    })
}

/// Entropy identity for a weighted union: `H(P_A) + Σ P_A(a) H(P_a)`.
pub fn union_entropy(parts: &[ProbabilisticGraph], weights: &Distribution) -> f64 {
    weights.entropy()
        + parts
            .iter()
            .enumerate()
            .map(|(a, p)| weights.get(a) * p.entropy())
            .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{catalog, disjoint_union};

    fn cfg() -> BoundsConfig {
        BoundsConfig::default()
    }

    #[test]
    fn pentagon_capacity_collapses() {
        let c5 = catalog::cycle(5).unwrap();
        let b = c0_bounds(&c5, 2, &cfg()).unwrap();
        let target = 0.5 * 5f64.log2();
        assert!(b.width() <= 1e-6, "{b:?}");
        assert!(b.contains(target, 1e-9));
        assert_eq!(b.lo_cert.method, Method::AlphaPower);
        assert_eq!(b.hi_cert.method, Method::Theta);
        let b1 = c0_bounds(&c5, 1, &cfg()).unwrap();
        assert!(b1.refines(&b));
        assert_eq!(b1.lo, 1.0);
    }

    #[test]
    fn trivial_graphs() {
        let k4 = catalog::complete(4);
        let b = c0_bounds(&k4, 2, &cfg()).unwrap();
        assert_eq!((b.lo, b.hi), (0.0, 0.0));
        let h = h0_bounds(&k4, 2, &cfg()).unwrap();
        assert_eq!((h.lo, h.hi), (2.0, 2.0));
        let n3 = Graph::empty(3);
        let h = h0_bounds(&n3, 2, &cfg()).unwrap();
        assert_eq!((h.lo, h.hi), (0.0, 0.0));
        let p = Distribution::new(vec![0.5, 0.25, 0.25]).unwrap();
        let kp = ProbabilisticGraph::new(catalog::complete(3), p.clone()).unwrap();
        let hb = hbar_bounds(&kp, 1, &cfg()).unwrap();
        assert!(hb.contains(1.5, 1e-8) && hb.width() < 1e-6);
        let c = c_rel_bounds(&kp, 1, &cfg()).unwrap();
        assert!(c.contains(0.0, 1e-8));
        let np = ProbabilisticGraph::new(n3, p).unwrap();
        let hb = hbar_bounds(&np, 1, &cfg()).unwrap();
        assert!(hb.hi.abs() < 1e-9 && hb.lo.abs() < 1e-9);
        assert!(c_rel_bounds(&np, 1, &cfg()).unwrap().contains(1.5, 1e-8));
    }

    #[test]
    fn pentagon_entropy_pipeline() {
        let c5 = ProbabilisticGraph::uniform(catalog::cycle(5).unwrap());
        let target = 0.5 * 5f64.log2();
        let hb = hbar_bounds(&c5, 2, &cfg()).unwrap();
        assert!(hb.contains(target, 1e-9));
        assert!(hb.width() < 1e-6, "{hb:?}");
        let c = c_rel_bounds(&c5, 2, &cfg()).unwrap();
        assert!(c.contains(target, 1e-9));
        let h0 = h0_bounds(&c5.graph, 2, &cfg()).unwrap();
        assert_eq!(h0.lo, 1.0);
        assert!((h0.hi - target).abs() < 1e-12);
        assert!(hb.hi <= h0.hi + 1e-9);
    }

    #[test]
    fn perfect_product_capacity() {
        let g = crate::graph::and_product_graph(
            &catalog::cycle(6).unwrap(),
            &catalog::cycle(8).unwrap(),
            1 << 16,
        )
        .unwrap();
        let b = c0_bounds(&g, 1, &cfg()).unwrap();
        assert!((b.lo - 12f64.log2()).abs() < 1e-12);
        assert!((b.hi - 12f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn eta_examples() {
        let k2 = ProbabilisticGraph::uniform(catalog::complete(2));
        let e = eta_bounds(&[k2.clone(), k2.clone()], &[1, 1], 1, &cfg()).unwrap();
        assert!(e.contains(1.0, 1e-8) && e.width() < 1e-6);
        let single = eta_bounds(std::slice::from_ref(&k2), &[1], 1, &cfg()).unwrap();
        let direct = hbar_bounds(&k2, 1, &cfg()).unwrap();
        assert!((single.lo - direct.lo).abs() < 1e-12 && (single.hi - direct.hi).abs() < 1e-12);
        let c5 = ProbabilisticGraph::uniform(catalog::cycle(5).unwrap());
        let e = eta_bounds(&[c5, k2], &[1, 1], 1, &cfg()).unwrap();
        assert!(e.is_ordered());
        assert_eq!(e.lo_cert.method, Method::EtaProduct);
    }

    #[test]
    fn typical_estimates() {
        let b = Budget::default();
        let k2 = ProbabilisticGraph::uniform(catalog::complete(2));
        assert_eq!(typical_alpha_estimate(&k2, 2, 0.0, &b).unwrap().value, 0.0);
        let n2 = ProbabilisticGraph::uniform(Graph::empty(2));
        let e = typical_alpha_estimate(&n2, 2, 0.0, &b).unwrap();
        assert_eq!(e.value, 0.5);
        assert!(!e.certified);
        let c5 = ProbabilisticGraph::uniform(catalog::cycle(5).unwrap());
        let e = typical_alpha_estimate(&c5, 5, 0.0, &b).unwrap();
        assert_eq!(e.vertices, 120);
        assert!(e.alpha_exact);
    }

    #[test]
    fn union_capacity_is_one_shot_additive() {
        let c = cfg();
        let parts = [
            ProbabilisticGraph::uniform(catalog::cycle(5).unwrap()),
            ProbabilisticGraph::uniform(catalog::path(4)),
        ];
        let (u, _) = disjoint_union(&parts, &Distribution::uniform(2)).unwrap();
        let cu = c0_bounds(&u.graph, 1, &c).unwrap();
        let a = c0_bounds(&parts[0].graph, 1, &c).unwrap();
        let b = c0_bounds(&parts[1].graph, 1, &c).unwrap();
        assert!(cu.lo >= (a.lo.exp2() + b.lo.exp2()).log2() - 1e-12);
    }

    #[test]
    fn certificates_are_registered_and_serialise() {
        let c5 = ProbabilisticGraph::uniform(catalog::cycle(5).unwrap());
        let c = c_rel_bounds(&c5, 2, &cfg()).unwrap();
        assert!(c.lo_cert.is_registered() && c.hi_cert.is_registered());
        let text = crate::info::report_json(&c).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["quantity", "lo", "hi", "lo_cert", "hi_cert"] {
            assert!(v.get(key).is_some());
        }
        assert_eq!(v["lo_cert"]["method"], "marton_reflection");
    }
}
