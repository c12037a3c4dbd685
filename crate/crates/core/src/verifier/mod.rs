//! Scenario suite re-deriving the reference results at desk scale.
//!
//! Each scenario records checks with measured values and tolerances. A check
//! whose inputs were weakened by an exhausted budget reports `undecided`
//! instead of failing. Scenarios run in parallel; seeds derive from the suite
//! seed and the scenario position, so reports are identical for any thread
//! count.

mod gen;
mod scenarios;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{BoundInterval, BoundsConfig};
use crate::budget::Budget;
use crate::combinat::{alpha_exact, chromatic_number_exact, min_entropy_coloring, HchiMode};
use crate::error::{Error, Result};
use crate::graph::{is_perfect, Graph, PerfectOutcome, ProbabilisticGraph};
use crate::numopt::{korner_entropy, KornerOptions, KornerSolution};
use crate::info::{report_json, sig9};
use crate::rng::{derive_seed, seeded, SplitMix64};

pub use gen::{random_distribution, random_graph, random_perfect_graph};

pub const CSV_VERSION: &str = "zeroerr-verify-csv v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Undecided,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Undecided => "undecided",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `|measured - expected| <= tolerance`.
    Eq,
    /// `measured <= expected + tolerance`.
    Le,
    /// `measured >= expected - tolerance`.
    Ge,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub claim: String,
    pub measured: f64,
    pub relation: Relation,
    pub expected: f64,
    pub tolerance: f64,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub id: String,
    pub description: String,
    pub tags: Vec<String>,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<BoundInterval>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Per-scenario state handed to the scenario body.
pub struct Ctx {
    pub budget: Budget,
    pub trials: u64,
    pub seed: u64,
    pub rng: SplitMix64,
    checks: Vec<Check>,
    certificates: Vec<BoundInterval>,
    notes: Vec<String>,
}

impl Ctx {
    fn new(cfg: &SuiteConfig, index: u64) -> Self {
        let seed = derive_seed(cfg.seed, index);
        Ctx {
            budget: cfg.budget.clone(),
            trials: cfg.trials,
            seed,
            rng: seeded(seed),
            checks: Vec::new(),
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn push(&mut self, claim: impl Into<String>, measured: f64, relation: Relation, expected: f64, tolerance: f64, weakened: bool) {
        let ok = match relation {
            Relation::Eq => (measured - expected).abs() <= tolerance,
            Relation::Le => measured <= expected + tolerance,
            Relation::Ge => measured >= expected - tolerance,
        };
        let status = match (ok, weakened) {
            (true, _) => Status::Pass,
            (false, true) => Status::Undecided,
            (false, false) => Status::Fail,
        };
        self.checks.push(Check {
            claim: claim.into(),
            measured,
            relation,
            expected,
            tolerance,
            status,
        });
    }

    pub fn eq(&mut self, claim: impl Into<String>, measured: f64, expected: f64, tol: f64) {
        self.push(claim, measured, Relation::Eq, expected, tol, false);
    }

    pub fn le(&mut self, claim: impl Into<String>, measured: f64, bound: f64, tol: f64) {
        self.push(claim, measured, Relation::Le, bound, tol, false);
    }

    pub fn ge(&mut self, claim: impl Into<String>, measured: f64, bound: f64, tol: f64) {
        self.push(claim, measured, Relation::Ge, bound, tol, false);
    }

    pub fn holds(&mut self, claim: impl Into<String>, ok: bool) {
        self.push(claim, f64::from(u8::from(ok)), Relation::Eq, 1.0, 0.0, false);
    }

    /// A check on a bound interval; failures on intervals with solver flags are undecided.
    pub fn contains(&mut self, claim: impl Into<String>, b: &BoundInterval, target: f64, tol: f64) {
        let weakened = flagged(b);
        let claim = claim.into();
        self.push(format!("{claim} (lower end)"), b.lo, Relation::Le, target, tol, weakened);
        self.push(format!("{claim} (upper end)"), b.hi, Relation::Ge, target, tol, weakened);
    }

    pub fn width(&mut self, claim: impl Into<String>, b: &BoundInterval, max: f64) {
        let weakened = flagged(b);
        self.push(claim, b.width(), Relation::Le, max, 0.0, weakened);
    }

    pub fn certificate(&mut self, b: &BoundInterval) {
        self.certificates.push(b.clone());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Independence number, or undecided when the search ran out of budget.
    pub fn alpha(&self, g: &Graph) -> Result<usize> {
        let a = alpha_exact(g, &self.budget);
        if a.exact {
            Ok(a.size)
        } else {
            Err(Error::Undecided("independence search".into()))
        }
    }

    pub fn chi(&self, g: &Graph) -> Result<usize> {
        let c = chromatic_number_exact(g, &self.budget);
        if c.exact {
            Ok(c.count)
        } else {
            Err(Error::Undecided("colouring search".into()))
        }
    }

    pub fn perfect(&self, g: &Graph) -> Result<bool> {
        match is_perfect(g, &self.budget) {
            PerfectOutcome::Perfect => Ok(true),
            PerfectOutcome::NotPerfect { .. } => Ok(false),
            PerfectOutcome::Undecided => Err(Error::Undecided("perfectness".into())),
        }
    }

    /// Körner entropy whose bracket closed within the configured tolerance.
    pub fn korner(&self, pg: &ProbabilisticGraph) -> Result<KornerSolution> {
        let k = korner_entropy(pg, &KornerOptions::default(), &self.budget)?;
        if k.converged && k.value - k.lower <= 1e-7 {
            Ok(k)
        } else {
            Err(Error::Undecided("Körner iteration".into()))
        }
    }

    /// Minimum colour entropy, exact or undecided.
    pub fn hchi(&self, pg: &ProbabilisticGraph) -> Result<f64> {
        let h = min_entropy_coloring(pg, HchiMode::Exact, &self.budget);
        if h.exact {
            Ok(h.value)
        } else {
            Err(Error::Undecided("chromatic entropy".into()))
        }
    }

    pub fn random_perfect(&mut self, n: usize) -> Result<Graph> {
        random_perfect_graph(&mut self.rng, n, &self.budget)
            .ok_or_else(|| Error::Undecided("no certified perfect graph drawn".into()))
    }

    pub fn bounds_config(&self) -> BoundsConfig {
        BoundsConfig {
            budget: self.budget.clone(),
            ..BoundsConfig::default()
        }
    }
}

fn flagged(b: &BoundInterval) -> bool {
    fn any(c: &crate::bounds::Certificate) -> bool {
        !c.flags.is_empty() || c.sub.iter().any(any)
    }
    any(&b.lo_cert) || any(&b.hi_cert)
}

pub struct Scenario {
    pub id: &'static str,
    pub description: &'static str,
    pub tags: &'static [&'static str],
    pub run: fn(&mut Ctx) -> Result<()>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub budget: Budget,
    pub seed: u64,
    /// Simulated roundtrips per codec scenario.
    pub trials: u64,
    /// Run only scenarios carrying one of these tags; empty runs everything.
    pub tags: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: Budget::default(),
            seed: 0,
            trials: 10_000,
            tags: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: u64,
    pub passed: usize,
    pub failed: usize,
    pub undecided: usize,
    pub errors: usize,
    pub scenarios: Vec<ScenarioReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errors == 0 && self.undecided == 0
    }

    pub fn to_json(&self) -> Result<String> {
        report_json(self)
    }

    /// One row per check: scenario id, claim, measured, relation, expected, tolerance, status.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Format(e.to_string());
        w.write_record(["scenario", "claim", "measured", "relation", "expected", "tolerance", "status"])
            .map_err(csv_err)?;
        for s in &self.scenarios {
            for c in &s.checks {
                let relation = match c.relation {
                    Relation::Eq => "eq",
                    Relation::Le => "le",
                    Relation::Ge => "ge",
                };
                w.write_record([
                    s.id.as_str(),
                    c.claim.as_str(),
                    &format_sig9(c.measured),
                    relation,
                    &format_sig9(c.expected),
                    &format_sig9(c.tolerance),
                    c.status.as_str(),
                ])
                .map_err(csv_err)?;
            }
            if s.checks.is_empty() {
                w.write_record([s.id.as_str(), "", "", "", "", "", s.status.as_str()]).map_err(csv_err)?;
            }
        }
        let body = String::from_utf8(w.into_inner().map_err(|e| Error::Format(e.to_string()))?)
            .map_err(|e| Error::Format(e.to_string()))?;
        Ok(format!("# {CSV_VERSION}\n{body}"))
    }
}

/// Nine significant digits, without trailing zeros.
pub fn format_sig9(x: f64) -> String {
    let r = sig9(x);
    if r == r.trunc() && r.abs() < 1e15 {
        format!("{r:.0}")
    } else {
        let s = format!("{r}");
        s
    }
}

pub fn registry() -> &'static [Scenario] {
    scenarios::REGISTRY
}

fn matches_tags(s: &Scenario, tags: &[String]) -> bool {
    tags.is_empty() || s.tags.iter().any(|t| tags.iter().any(|u| u == t))
}

pub fn run_scenario(s: &Scenario, cfg: &SuiteConfig, index: u64) -> ScenarioReport {
    let mut ctx = Ctx::new(cfg, index);
    let outcome = (s.run)(&mut ctx);
    let mut status = ctx.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
    let error = match outcome {
        Ok(()) => None,
        Err(e @ (Error::Undecided(_) | Error::ProductTooLarge { .. })) => {
            status = status.max(Status::Undecided);
            Some(e.to_string())
        }
        Err(e) => {
            status = Status::Error;
            Some(e.to_string())
        }
    };
    ScenarioReport {
        id: s.id.into(),
        description: s.description.into(),
        tags: s.tags.iter().map(|t| t.to_string()).collect(),
        status,
        checks: ctx.checks,
        certificates: ctx.certificates,
        notes: ctx.notes,
        error,
    }
}

pub fn full_suite(cfg: &SuiteConfig) -> SuiteReport {
    let selected: Vec<(u64, &Scenario)> = registry()
        .iter()
        .enumerate()
        .filter(|(_, s)| matches_tags(s, &cfg.tags))
        .map(|(i, s)| (i as u64, s))
        .collect();
    let scenarios: Vec<ScenarioReport> = selected
        .par_iter()
        .map(|&(i, s)| run_scenario(s, cfg, i))
        .collect();
    let count = |st: Status| scenarios.iter().filter(|r| r.status == st).count();
    SuiteReport {
        seed: cfg.seed,
        trials: cfg.trials,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        undecided: count(Status::Undecided),
        errors: count(Status::Error),
        scenarios,
    }
}

/// Runs the suite on a dedicated pool of `threads` workers.
pub fn full_suite_with_threads(cfg: &SuiteConfig, threads: usize) -> Result<SuiteReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(|| full_suite(cfg)))
}
