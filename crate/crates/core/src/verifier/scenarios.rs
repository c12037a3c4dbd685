//! The registered scenarios, in report order.

use rand::seq::SliceRandom;
use rand::Rng;

use super::gen::{random_distribution, random_graph};
use super::{Ctx, Scenario};
use crate::bounds::{c0_bounds, eta_bounds, h0_bounds, hbar_bounds, reflect, union_entropy};
use crate::codec::{
    build_channel_code, build_partial_si_code, build_si_code, build_sum_channel_code, channel_roundtrip,
    composition_for, shift, shifted_codebook, simulate_si, CodeTarget, Codebook, OutputSampler, ShiftFilter,
};
use crate::combinat::{min_entropy_coloring, HchiMode};
use crate::error::{Error, Result};
use crate::graph::perfect::induces_cycle;
use crate::graph::{
    and_power_graph, and_product, and_product_graph, catalog, characteristic_graph, disjoint_union,
    disjoint_union_graph, induced_subgraph, is_isomorphic, is_perfect, ChannelSpec, Distribution, Graph, IsoOutcome,
    PerfectOutcome, ProbabilisticGraph,
};
use crate::info::entropy;
use crate::numopt::{
    capacity_achieving_distribution, sum_channel_weights, theta_transitive, CapacityEvaluator, CapacityOptions,
    KornerEvaluator,
};
use crate::typicality::{type_of, type_split};

macro_rules! scenario {
    ($id:literal, $run:ident, [$($tag:literal),+], $desc:literal) => {
        Scenario { id: $id, description: $desc, tags: &[$($tag),+], run: $run }
    };
}

pub(super) static REGISTRY: &[Scenario] = &[
    scenario!("pentagon", pentagon, ["capacity", "entropy", "pentagon"],
        "the pentagon's capacity, complementary entropy and Witsenhausen bracket collapse to half log 5"),
    scenario!("full-support", full_support, ["entropy"],
        "a full-support source has a complete characteristic graph and needs H(X) bits"),
    scenario!("perfect-families", perfect_families, ["perfect", "entropy", "capacity"],
        "single-letter collapse on random perfect graphs and odd-hole witnesses otherwise"),
    scenario!("c6xc8", c6xc8, ["perfect", "product", "union"],
        "linearization of the product and union of the 6- and 8-cycles"),
    scenario!("fig8-hole", fig8_hole, ["perfect", "product"],
        "seven vertices of the 6-cycle times 8-cycle induce a 7-cycle"),
    scenario!("schlafli", schlafli, ["schlafli", "capacity", "product"],
        "strict supermultiplicativity of alpha for the Schläfli graph and its complement"),
    scenario!("korner", korner, ["entropy"],
        "Körner entropy on complete, empty, cycle, complementary and union instances"),
    scenario!("capacity", capacity, ["capacity"],
        "relative capacity maximisation recovers log alpha and is concave"),
    scenario!("product-marginals", product_marginals, ["capacity", "product"],
        "the product of a maximizer's marginals also achieves capacity on perfect products"),
    scenario!("sum-channel", sum_channel, ["capacity", "union"],
        "optimal time sharing between channels and one-shot additivity of alpha over unions"),
    scenario!("union-entropy", union_entropy_scenario, ["entropy", "union", "perfect", "pentagon"],
        "complementary entropy of unions and products mixing perfect graphs and the pentagon"),
    scenario!("appendix-lemmas", appendix_lemmas, ["lemmas"],
        "distributivity, isomorphic unions, the restriction sandwich and exact type splits"),
    scenario!("codec-si", codec_si, ["codec"],
        "side-information code roundtrips are error-free and meet the rate budget"),
    scenario!("codec-partial", codec_partial, ["codec", "union"],
        "partial side-information code roundtrips are error-free"),
    scenario!("codec-channel", codec_channel, ["codec", "capacity", "pentagon"],
        "zero-error channel codes decode every transmission"),
    scenario!("codec-sum", codec_sum, ["codec", "union", "capacity"],
        "sum-of-channels code with the optimal composition is error-free"),
    scenario!("shifted-codebook", shifted_codebook_scenario, ["codec", "product", "capacity"],
        "shifting first components keeps codebooks independent and reaches product types"),
];

fn lg(x: f64) -> f64 {
    x.log2()
}

fn pentagon(ctx: &mut Ctx) -> Result<()> {
    let c5 = catalog::cycle(5)?;
    let target = 0.5 * lg(5.0);
    let square = and_power_graph(&c5, 2, ctx.budget.vertices)?;
    let a2 = ctx.alpha(&square)?;
    ctx.eq("alpha of the pentagon square", a2 as f64, 5.0, 0.0);
    let chi = ctx.chi(&square)?;
    ctx.eq("chromatic number of the pentagon square", chi as f64, 5.0, 0.0);
    let theta = theta_transitive(&c5, false, &ctx.budget)?;
    ctx.eq("theta of the pentagon", theta.theta, 5f64.sqrt(), 1e-6);
    let cfg = ctx.bounds_config();
    let c0 = c0_bounds(&c5, 2, &cfg)?;
    ctx.contains("c0 of the pentagon", &c0, target, 1e-9);
    ctx.width("c0 bracket of the pentagon closes", &c0, 1e-6);
    let pg = ProbabilisticGraph::uniform(c5.clone());
    let hb = hbar_bounds(&pg, 2, &cfg)?;
    ctx.contains("hbar of the uniform pentagon", &hb, target, 1e-9);
    ctx.width("hbar bracket of the uniform pentagon closes", &hb, 1e-6);
    let c = reflect(&hb, pg.entropy());
    ctx.contains("relative capacity of the uniform pentagon", &c, target, 1e-9);
    ctx.eq("hbar plus relative capacity is H(P)", hb.midpoint() + c.midpoint(), pg.entropy(), 1e-9);
    let h0 = h0_bounds(&c5, 2, &cfg)?;
    ctx.eq("h0 lower end is log omega", h0.lo, 1.0, 1e-12);
    ctx.le("h0 upper end from the square colouring", h0.hi, target, 1e-9);
    ctx.ge("h0 dominates hbar", h0.hi, hb.lo, 1e-9);
    for b in [&c0, &hb, &c, &h0] {
        ctx.certificate(b);
    }
    Ok(())
}

fn full_support(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.bounds_config();
    for i in 0..5 {
        let xs = ctx.rng.gen_range(2..=5);
        let ys = ctx.rng.gen_range(1..=3);
        let g = characteristic_graph(&ChannelSpec::full(xs, ys)?)?;
        ctx.holds(format!("#{i}: characteristic graph is complete"), g.edge_count() == xs * (xs - 1) / 2);
        let p = random_distribution(&mut ctx.rng, xs);
        let pg = ProbabilisticGraph::new(g, p)?;
        let hb = hbar_bounds(&pg, 1, &cfg)?;
        ctx.contains(format!("#{i}: hbar equals H(X)"), &hb, pg.entropy(), 1e-8);
        ctx.width(format!("#{i}: hbar bracket closes"), &hb, 1e-6);
    }
    Ok(())
}

fn perfect_families(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.bounds_config();
    for i in 0..12 {
        let n = ctx.rng.gen_range(3..=8);
        let g = ctx.random_perfect(n)?;
        let pg = ProbabilisticGraph::new(g.clone(), random_distribution(&mut ctx.rng, n))?;
        let k = ctx.korner(&pg)?;
        let hb = hbar_bounds(&pg, 1, &cfg)?;
        ctx.width(format!("#{i}: hbar bracket closes"), &hb, 1e-6);
        ctx.eq(format!("#{i}: hbar equals the Körner entropy"), hb.midpoint(), k.value, 1e-6);
        let la = lg(ctx.alpha(&g)? as f64);
        let c0 = c0_bounds(&g, 1, &cfg)?;
        ctx.eq(format!("#{i}: c0 lower end is log alpha"), c0.lo, la, 1e-12);
        ctx.eq(format!("#{i}: c0 upper end is log alpha"), c0.hi, la, 1e-12);
        let c = reflect(&hb, pg.entropy());
        ctx.eq(
            format!("#{i}: Körner entropy plus relative capacity is H(P)"),
            k.value + c.midpoint(),
            pg.entropy(),
            1e-6,
        );
        ctx.le(format!("#{i}: relative capacity at most c0"), c.lo, c0.hi, 1e-9);
        let h0 = h0_bounds(&g, 1, &cfg)?;
        ctx.ge(format!("#{i}: h0 dominates hbar"), h0.hi, hb.lo, 1e-9);
    }
    let mut witnessed = 0;
    for i in 0..40 {
        let n = ctx.rng.gen_range(5..=9);
        let g = random_graph(&mut ctx.rng, n, 0.5);
        match is_perfect(&g, &ctx.budget) {
            PerfectOutcome::NotPerfect { hole, in_complement } => {
                let host = if in_complement { g.complement() } else { g };
                ctx.holds(
                    format!("witness {i}: an induced odd hole of length at least 5"),
                    hole.len() >= 5 && hole.len() % 2 == 1 && induces_cycle(&host, &hole),
                );
                witnessed += 1;
            }
            PerfectOutcome::Perfect => {}
            PerfectOutcome::Undecided => return Err(Error::Undecided("perfectness".into())),
        }
    }
    ctx.note(format!("{witnessed} of 40 random graphs carried an odd-hole witness"));
    Ok(())
}

fn c6xc8(ctx: &mut Ctx) -> Result<()> {
    let c6 = catalog::cycle(6)?;
    let c8 = catalog::cycle(8)?;
    let prod = and_product_graph(&c6, &c8, ctx.budget.vertices)?;
    let (a6, a8, ap) = (ctx.alpha(&c6)?, ctx.alpha(&c8)?, ctx.alpha(&prod)?);
    ctx.eq("alpha of the product", ap as f64, 12.0, 0.0);
    ctx.eq("alpha of the product is the product of alphas", ap as f64, (a6 * a8) as f64, 0.0);
    let union = disjoint_union_graph(&[c6.clone(), c8.clone()]);
    let au = ctx.alpha(&union)?;
    ctx.eq("alpha of the union", au as f64, 7.0, 0.0);
    ctx.eq("alpha of the union is the sum of alphas", au as f64, (a6 + a8) as f64, 0.0);
    let cfg = ctx.bounds_config();
    let c0p = c0_bounds(&prod, 1, &cfg)?;
    ctx.contains("c0 of the product", &c0p, lg(12.0), 1e-9);
    ctx.width("c0 bracket of the product closes", &c0p, 1e-9);
    let c0u = c0_bounds(&union, 1, &cfg)?;
    ctx.contains("c0 of the union", &c0u, lg(7.0), 1e-9);
    ctx.width("c0 bracket of the union closes", &c0u, 1e-9);
    let (w, total) = sum_channel_weights(&[lg(a6 as f64), lg(a8 as f64)])?;
    ctx.eq("time-sharing total is c0 of the union", total, lg(7.0), 1e-12);
    ctx.eq("time-sharing weight of the 6-cycle", w.get(0), 3.0 / 7.0, 1e-12);

    let uniform = ProbabilisticGraph::uniform(prod.clone());
    let hb = hbar_bounds(&uniform, 1, &cfg)?;
    ctx.contains("hbar of the uniform product", &hb, 2.0, 1e-9);
    ctx.width("hbar bracket of the uniform product closes", &hb, 1e-6);
    ctx.certificate(&hb);

    let p6 = ProbabilisticGraph::new(c6, random_distribution(&mut ctx.rng, 6))?;
    let p8 = ProbabilisticGraph::new(c8, random_distribution(&mut ctx.rng, 8))?;
    let (k6, k8) = (ctx.korner(&p6)?.value, ctx.korner(&p8)?.value);
    let pp = and_product(&p6, &p8, ctx.budget.vertices)?;
    let hp = hbar_bounds(&pp, 1, &cfg)?;
    ctx.contains("hbar of the product is the sum of Körner entropies", &hp, k6 + k8, 1e-6);
    let cp = reflect(&hp, pp.entropy());
    ctx.contains(
        "relative capacity of the product is the sum of H - Körner",
        &cp,
        p6.entropy() - k6 + p8.entropy() - k8,
        1e-6,
    );
    let s: f64 = ctx.rng.gen_range(0.1..0.9);
    let (u, _) = disjoint_union(&[p6.clone(), p8.clone()], &Distribution::new(vec![s, 1.0 - s])?)?;
    let hu = hbar_bounds(&u, 1, &cfg)?;
    ctx.contains("hbar of the union is the weighted Körner sum", &hu, s * k6 + (1.0 - s) * k8, 1e-6);
    ctx.width("hbar bracket of the union closes", &hu, 1e-6);
    let e = eta_bounds(&[p6, p8], &[1, 1], 1, &cfg)?;
    ctx.contains("eta at the balanced type", &e, 0.5 * (k6 + k8), 1e-6);
    for b in [&c0p, &c0u, &hp, &hu, &e] {
        ctx.certificate(b);
    }
    Ok(())
}

/// Highlighted product vertices `(i, j)`, `i` on the 8-cycle and `j` on the 6-cycle.
const FIG8: [(usize, usize); 7] = [(2, 2), (2, 3), (3, 4), (4, 3), (5, 2), (4, 1), (3, 1)];

fn fig8_hole(ctx: &mut Ctx) -> Result<()> {
    let c6 = catalog::cycle(6)?;
    let c8 = catalog::cycle(8)?;
    let prod = and_product_graph(&c6, &c8, ctx.budget.vertices)?;
    let verts: Vec<usize> = FIG8.iter().map(|&(i, j)| j * 8 + i).collect();
    ctx.holds("the seven vertices induce a 7-cycle", induces_cycle(&prod, &verts));
    for (name, g) in [("6-cycle", &c6), ("8-cycle", &c8)] {
        let perfect = ctx.perfect(g)?;
        ctx.holds(format!("the {name} is perfect"), perfect);
    }
    let sub = prod.induced(&verts);
    match is_perfect(&sub, &ctx.budget) {
        PerfectOutcome::NotPerfect { hole, in_complement } => {
            let host = if in_complement { sub.complement() } else { sub };
            ctx.holds("odd-hole witness is induced", induces_cycle(&host, &hole));
            ctx.eq("odd-hole witness length", hole.len() as f64, 7.0, 0.0);
        }
        PerfectOutcome::Perfect => ctx.holds("the induced subgraph is not perfect", false),
        PerfectOutcome::Undecided => return Err(Error::Undecided("perfectness".into())),
    }
    Ok(())
}

fn schlafli(ctx: &mut Ctx) -> Result<()> {
    let s = catalog::schlafli();
    let sc = s.complement();
    let n = s.n();
    let common = |u: usize, v: usize| (0..n).filter(|&w| s.adjacent(u, w) && s.adjacent(v, w)).count();
    let mut srg = n == 27 && s.regular_degree() == Some(16);
    for u in 0..n {
        for v in u + 1..n {
            srg &= common(u, v) == if s.adjacent(u, v) { 10 } else { 8 };
        }
    }
    ctx.holds("strongly regular with parameters (27, 16, 10, 8)", srg);
    let (a, ac) = (ctx.alpha(&s)?, ctx.alpha(&sc)?);
    ctx.eq("alpha of the Schläfli graph", a as f64, 3.0, 0.0);
    ctx.eq("alpha of its complement", ac as f64, 6.0, 0.0);
    let prod = and_product_graph(&s, &sc, ctx.budget.vertices)?;
    let diagonal: Vec<usize> = (0..n).map(|v| v * n + v).collect();
    ctx.holds("the diagonal is independent in the product", prod.is_independent(&diagonal));
    ctx.ge("alpha of the product exceeds the product of alphas", diagonal.len() as f64, (a * ac) as f64 + 1.0, 0.0);
    let t = theta_transitive(&s, false, &ctx.budget)?;
    ctx.eq("theta of the Schläfli graph", t.theta, 3.0, 1e-6);
    let tc = theta_transitive(&sc, false, &ctx.budget)?;
    ctx.eq("theta of its complement", tc.theta, 9.0, 1e-6);
    let cfg = ctx.bounds_config();
    let c0 = c0_bounds(&s, 1, &cfg)?;
    ctx.contains("c0 of the Schläfli graph", &c0, lg(3.0), 1e-9);
    ctx.width("c0 bracket of the Schläfli graph closes", &c0, 1e-6);
    let c0c = c0_bounds(&sc, 1, &cfg)?;
    ctx.contains("c0 bracket of the complement holds log 6", &c0c, lg(6.0), 1e-9);
    let hb = hbar_bounds(&ProbabilisticGraph::uniform(s.clone()), 1, &cfg)?;
    let c = reflect(&hb, lg(27.0));
    ctx.contains("relative capacity of the uniform Schläfli graph is c0", &c, lg(3.0), 1e-6);
    for b in [&c0, &c0c, &c] {
        ctx.certificate(b);
    }
    ctx.note(format!(
        "c0 of the complement is bracketed in [{:.6}, {:.6}]; the strict capacity-level inequality \
         needs c0 of the complement at most log 7 and is conditional on a user-supplied fitting matrix",
        c0c.lo, c0c.hi
    ));
    Ok(())
}

fn korner(ctx: &mut Ctx) -> Result<()> {
    for i in 0..10 {
        let n = ctx.rng.gen_range(2..=7);
        let p = random_distribution(&mut ctx.rng, n);
        let h = p.entropy();
        let k = ctx.korner(&ProbabilisticGraph::new(catalog::complete(n), p.clone())?)?;
        ctx.eq(format!("#{i}: complete graph gives H(P)"), k.value, h, 1e-6);
        let e = ctx.korner(&ProbabilisticGraph::new(Graph::empty(n), p)?)?;
        ctx.eq(format!("#{i}: empty graph gives zero"), e.value, 0.0, 1e-9);
    }
    for (n, chi_f) in [(5, 2.5), (7, 7.0 / 3.0)] {
        let k = ctx.korner(&ProbabilisticGraph::uniform(catalog::cycle(n)?))?;
        ctx.eq(format!("uniform {n}-cycle gives log of the fractional chromatic number"), k.value, lg(chi_f), 1e-6);
    }
    for i in 0..15 {
        let n = ctx.rng.gen_range(3..=8);
        let g = random_graph(&mut ctx.rng, n, 0.5);
        let p = random_distribution(&mut ctx.rng, n);
        let perfect = ctx.perfect(&g)?;
        let pg = ProbabilisticGraph::new(g.clone(), p.clone())?;
        let k = ctx.korner(&pg)?.value;
        let kc = ctx.korner(&ProbabilisticGraph::new(g.complement(), p.clone())?)?.value;
        ctx.ge(format!("#{i}: graph and complement together cover H(P)"), k + kc, p.entropy(), 1e-6);
        if perfect {
            ctx.eq(format!("#{i}: perfect graph and complement split H(P)"), k + kc, p.entropy(), 1e-6);
        }
        let hchi = min_entropy_coloring(&pg, HchiMode::Exact, &ctx.budget);
        ctx.le(format!("#{i}: Körner entropy at most chromatic entropy"), k, hchi.value, 1e-9);
    }
    for i in 0..5 {
        let parts: Vec<ProbabilisticGraph> = (0..2)
            .map(|_| {
                let n = ctx.rng.gen_range(2..=5);
                let g = random_graph(&mut ctx.rng, n, 0.5);
                ProbabilisticGraph::new(g, random_distribution(&mut ctx.rng, n))
            })
            .collect::<Result<_>>()?;
        let w = random_distribution(&mut ctx.rng, 2);
        let (u, _) = disjoint_union(&parts, &w)?;
        let ku = ctx.korner(&u)?.value;
        let mut sum = 0.0;
        for (part, &wa) in parts.iter().zip(w.weights()) {
            sum += wa * ctx.korner(part)?.value;
        }
        ctx.eq(format!("#{i}: Körner entropy is linear over unions"), ku, sum, 1e-6);
    }
    Ok(())
}

fn optimize(ctx: &Ctx, g: &Graph) -> Result<crate::numopt::CapacityResult> {
    let ev = KornerEvaluator::new(g.clone(), &ctx.budget);
    capacity_achieving_distribution(g.n(), &ev, &CapacityOptions::default())
}

fn capacity(ctx: &mut Ctx) -> Result<()> {
    for (name, g, value) in [
        ("empty graph on 4 vertices", Graph::empty(4), 2.0),
        ("complete graph on 4 vertices", catalog::complete(4), 0.0),
        ("6-cycle", catalog::cycle(6)?, lg(3.0)),
        ("path on 3 vertices", catalog::path(3), 1.0),
    ] {
        let r = optimize(ctx, &g)?;
        ctx.holds(format!("{name}: evaluator is exact"), r.exact);
        ctx.eq(format!("{name}: maximum relative capacity"), r.value, value, 1e-4);
    }
    let c6 = catalog::cycle(6)?;
    let ev = KornerEvaluator::new(c6, &ctx.budget);
    let at_uniform = ev.evaluate(&Distribution::uniform(6))?.value;
    ctx.eq("uniform input achieves capacity on the vertex-transitive 6-cycle", at_uniform, lg(3.0), 1e-6);
    for i in 0..4 {
        let n = ctx.rng.gen_range(3..=6);
        let g = ctx.random_perfect(n)?;
        let la = lg(ctx.alpha(&g)? as f64);
        let ev = KornerEvaluator::new(g.clone(), &ctx.budget);
        let p = random_distribution(&mut ctx.rng, n);
        let q = random_distribution(&mut ctx.rng, n);
        let t: f64 = ctx.rng.gen_range(0.1..0.9);
        let mix = Distribution::normalized(
            p.weights().iter().zip(q.weights()).map(|(a, b)| t * a + (1.0 - t) * b).collect(),
        )?;
        let (cp, cq, cm) = (ev.evaluate(&p)?.value, ev.evaluate(&q)?.value, ev.evaluate(&mix)?.value);
        ctx.ge(format!("#{i}: relative capacity is concave"), cm, t * cp + (1.0 - t) * cq, 1e-6);
        ctx.le(format!("#{i}: relative capacity at most log alpha"), cp, la, 1e-6);
        let r = optimize(ctx, &g)?;
        ctx.le(format!("#{i}: maximum is at most log alpha"), r.value, la, 1e-6);
        ctx.ge(format!("#{i}: maximum reaches log alpha"), r.value, la, 1e-4);
    }
    Ok(())
}

fn marginals(p: &Distribution, n1: usize, n2: usize) -> Result<(Distribution, Distribution)> {
    let mut m1 = vec![0.0; n1];
    let mut m2 = vec![0.0; n2];
    for u in 0..n1 {
        for v in 0..n2 {
            m1[u] += p.get(u * n2 + v);
            m2[v] += p.get(u * n2 + v);
        }
    }
    Ok((Distribution::normalized(m1)?, Distribution::normalized(m2)?))
}

fn product_marginals(ctx: &mut Ctx) -> Result<()> {
    let mut done = 0;
    for _ in 0..40 {
        if done == 3 {
            break;
        }
        let n1 = ctx.rng.gen_range(2..=3);
        let n2 = ctx.rng.gen_range(2..=4);
        let g1 = ctx.random_perfect(n1)?;
        let g2 = ctx.random_perfect(n2)?;
        let prod = and_product_graph(&g1, &g2, ctx.budget.vertices)?;
        if !ctx.perfect(&prod)? {
            continue;
        }
        let i = done;
        done += 1;
        let r = optimize(ctx, &prod)?;
        let (m1, m2) = marginals(&r.maximizer, n1, n2)?;
        let ev = KornerEvaluator::new(prod.clone(), &ctx.budget);
        let at_product = ev.evaluate(&m1.product(&m2))?.value;
        ctx.eq(format!("#{i}: product of marginals achieves the maximum"), at_product, r.value, 2e-4);
        for (g, m, a) in [(&g1, &m1, "first"), (&g2, &m2, "second")] {
            let la = lg(ctx.alpha(g)? as f64);
            let c = KornerEvaluator::new(g.clone(), &ctx.budget).evaluate(m)?.value;
            ctx.eq(format!("#{i}: {a} marginal achieves the factor's capacity"), c, la, 5e-4);
        }
    }
    ctx.ge("perfect product pairs checked", done as f64, 3.0, 0.0);
    Ok(())
}

/// Maximum of `H(P) + sum P(a) c_a` over the simplex by successive grid refinement.
pub(crate) fn grid_time_sharing(c: &[f64]) -> f64 {
    let k = c.len();
    let f = |p: &[f64]| entropy(p) + p.iter().zip(c).map(|(a, b)| a * b).sum::<f64>();
    let mut center = vec![1.0 / k as f64; k];
    let mut best = f(&center);
    let mut step = 0.01;
    let mut radius = 50i64;
    while step >= 1e-7 {
        let mut offsets = vec![-radius; k - 1];
        let mut next = center.clone();
        loop {
            let mut p: Vec<f64> = offsets
                .iter()
                .zip(&center)
                .map(|(&o, &x)| x + o as f64 * step)
                .collect();
            let rest = 1.0 - p.iter().sum::<f64>();
            if p.iter().all(|&x| x >= 0.0) && rest >= 0.0 {
                p.push(rest);
                let v = f(&p);
                if v > best {
                    best = v;
                    next = p;
                }
            }
            let mut d = 0;
            while d < k - 1 {
                offsets[d] += 1;
                if offsets[d] <= radius {
                    break;
                }
                offsets[d] = -radius;
                d += 1;
            }
            if d == k - 1 {
                break;
            }
        }
        center = next;
        step /= 10.0;
        radius = 10;
    }
    best
}

fn sum_channel(ctx: &mut Ctx) -> Result<()> {
    for i in 0..10 {
        let k = ctx.rng.gen_range(2..=3);
        let c: Vec<f64> = (0..k).map(|_| ctx.rng.gen_range(0.0..3.0)).collect();
        let (w, v) = sum_channel_weights(&c)?;
        let grid = grid_time_sharing(&c);
        ctx.ge(format!("#{i}: closed form beats the grid"), v, grid, 1e-12);
        ctx.le(format!("#{i}: grid reaches the closed form"), v, grid, 1e-6);
        let smallest = w.weights().iter().cloned().fold(f64::INFINITY, f64::min);
        ctx.holds(format!("#{i}: optimal time sharing has full support"), smallest > 0.0);
    }
    for i in 0..10 {
        let (n1, n2) = (ctx.rng.gen_range(2..=7), ctx.rng.gen_range(2..=7));
        let g1 = random_graph(&mut ctx.rng, n1, 0.5);
        let g2 = random_graph(&mut ctx.rng, n2, 0.5);
        let u = disjoint_union_graph(&[g1.clone(), g2.clone()]);
        let (a1, a2, au) = (ctx.alpha(&g1)?, ctx.alpha(&g2)?, ctx.alpha(&u)?);
        ctx.eq(format!("#{i}: alpha is additive over unions"), au as f64, (a1 + a2) as f64, 0.0);
    }
    let c5 = catalog::cycle(5)?;
    let u = disjoint_union_graph(&[c5.clone(), c5]);
    let cfg = ctx.bounds_config();
    let target = lg(2.0 * 5f64.sqrt());
    let b1 = c0_bounds(&u, 1, &cfg)?;
    ctx.contains("c0 of two pentagons holds log(2 sqrt 5)", &b1, target, 1e-9);
    ctx.certificate(&b1);
    let square = and_power_graph(&u, 2, ctx.budget.vertices)?;
    let a2 = ctx.alpha(&square)?;
    ctx.eq("alpha of the square of two pentagons", a2 as f64, 20.0, 0.0);
    ctx.eq("the square level meets the sum of powers", 0.5 * lg(a2 as f64), target, 1e-12);
    Ok(())
}

fn union_entropy_scenario(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.bounds_config();
    let mut parts = Vec::new();
    let mut kappa = Vec::new();
    for _ in 0..3 {
        let n = ctx.rng.gen_range(2..=4);
        let g = ctx.random_perfect(n)?;
        let pg = ProbabilisticGraph::new(g, random_distribution(&mut ctx.rng, n))?;
        kappa.push(ctx.korner(&pg)?.value);
        parts.push(pg);
    }
    let counts: Vec<usize> = (0..3).map(|_| ctx.rng.gen_range(1..=3)).collect();
    let k: usize = counts.iter().sum();
    let pa = Distribution::new(counts.iter().map(|&c| c as f64 / k as f64).collect())?;
    let linear: f64 = pa.weights().iter().zip(&kappa).map(|(w, h)| w * h).sum();
    let e = eta_bounds(&parts, &counts, 1, &cfg)?;
    ctx.contains("eta of a perfect family is linear", &e, linear, 1e-6);
    let subsets: [&[usize]; 4] = [&[0, 1, 2], &[0, 1], &[0, 2], &[1, 2]];
    for idx in subsets {
        let sub: Vec<ProbabilisticGraph> = idx.iter().map(|&a| parts[a].clone()).collect();
        let mass: f64 = idx.iter().map(|&a| pa.get(a)).sum();
        let w = Distribution::new(idx.iter().map(|&a| pa.get(a) / mass).collect())?;
        let lin: f64 = idx.iter().zip(w.weights()).map(|(&a, x)| x * kappa[a]).sum();
        let (u, _) = disjoint_union(&sub, &w)?;
        ctx.eq(format!("subfamily {idx:?}: union entropy decomposes"), u.entropy(), union_entropy(&sub, &w), 1e-12);
        let hb = hbar_bounds(&u, 1, &cfg)?;
        ctx.contains(format!("subfamily {idx:?}: hbar of the union is linear"), &hb, lin, 1e-6);
        let c = reflect(&hb, u.entropy());
        let marton: f64 = w.entropy()
            + idx.iter().zip(w.weights()).map(|(&a, x)| x * (parts[a].entropy() - kappa[a])).sum::<f64>();
        ctx.contains(format!("subfamily {idx:?}: relative capacity of the union"), &c, marton, 1e-6);
    }

    let c5 = ProbabilisticGraph::uniform(catalog::cycle(5)?);
    let half_log5 = 0.5 * lg(5.0);
    let n = ctx.rng.gen_range(2..=3);
    let g = ctx.random_perfect(n)?;
    let pg = ProbabilisticGraph::new(g, random_distribution(&mut ctx.rng, n))?;
    let kg = ctx.korner(&pg)?.value;
    let s: f64 = ctx.rng.gen_range(0.1..0.9);
    let (u, _) = disjoint_union(&[c5.clone(), pg.clone()], &Distribution::new(vec![s, 1.0 - s])?)?;
    let hu = hbar_bounds(&u, 1, &cfg)?;
    ctx.contains("pentagon union: hbar holds s/2 log 5 + (1-s) Körner", &hu, s * half_log5 + (1.0 - s) * kg, 1e-6);
    let prod = and_product(&pg, &c5, ctx.budget.vertices)?;
    let hp = hbar_bounds(&prod, 1, &cfg)?;
    ctx.contains("pentagon product: hbar holds Körner + half log 5", &hp, kg + half_log5, 1e-6);
    let k2 = ProbabilisticGraph::uniform(catalog::complete(2));
    let ek = eta_bounds(&[c5, k2], &[1, 1], 1, &cfg)?;
    ctx.contains("eta of pentagon and edge at the balanced type", &ek, 0.5 * half_log5 + 0.5, 1e-6);
    for b in [&e, &hu, &hp, &ek] {
        ctx.certificate(b);
    }
    Ok(())
}

fn random_pg(ctx: &mut Ctx, lo: usize, hi: usize) -> Result<ProbabilisticGraph> {
    let n = ctx.rng.gen_range(lo..=hi);
    let d = ctx.rng.gen_range(0.2..0.8);
    let g = random_graph(&mut ctx.rng, n, d);
    ProbabilisticGraph::new(g, random_distribution(&mut ctx.rng, n))
}

fn permuted(ctx: &mut Ctx, pg: &ProbabilisticGraph) -> Result<ProbabilisticGraph> {
    let mut perm: Vec<usize> = (0..pg.n()).collect();
    perm.shuffle(&mut ctx.rng);
    let g = Graph::from_fn(pg.n(), |u, v| pg.graph.adjacent(perm[u], perm[v]));
    ProbabilisticGraph::new(g, Distribution::new(perm.iter().map(|&v| pg.dist.get(v)).collect())?)
}

fn isomorphism_is_valid(a: &ProbabilisticGraph, b: &ProbabilisticGraph, map: &[usize]) -> bool {
    let n = a.n();
    n == b.n()
        && (0..n).all(|u| (a.dist.get(u) - b.dist.get(map[u])).abs() < 1e-12)
        && (0..n).all(|u| (u + 1..n).all(|v| a.graph.adjacent(u, v) == b.graph.adjacent(map[u], map[v])))
}

fn appendix_lemmas(ctx: &mut Ctx) -> Result<()> {
    let vb = ctx.budget.vertices;
    for i in 0..10 {
        let (g1, g2, g3) = (random_pg(ctx, 1, 3)?, random_pg(ctx, 1, 3)?, random_pg(ctx, 1, 3)?);
        let w = random_distribution(&mut ctx.rng, 2);
        let lhs = and_product(&disjoint_union(&[g1.clone(), g2.clone()], &w)?.0, &g3, vb)?;
        let rhs = disjoint_union(&[and_product(&g1, &g3, vb)?, and_product(&g2, &g3, vb)?], &w)?.0;
        match is_isomorphic(&lhs, &rhs, &ctx.budget) {
            IsoOutcome::Isomorphic(map) => {
                ctx.holds(format!("#{i}: product distributes over the union"), isomorphism_is_valid(&lhs, &rhs, &map))
            }
            IsoOutcome::NotIsomorphic => ctx.holds(format!("#{i}: product distributes over the union"), false),
            IsoOutcome::Undecided => return Err(Error::Undecided("isomorphism".into())),
        }
    }
    for i in 0..10 {
        let part = random_pg(ctx, 2, 6)?;
        let copies = ctx.rng.gen_range(2..=3).min(18 / part.n());
        let family: Vec<ProbabilisticGraph> = (0..copies).map(|_| permuted(ctx, &part)).collect::<Result<_>>()?;
        let w = random_distribution(&mut ctx.rng, copies);
        let (u, _) = disjoint_union(&family, &w)?;
        let hu = ctx.hchi(&u)?;
        let hp = ctx.hchi(&part)?;
        ctx.eq(format!("#{i}: union of isomorphic copies keeps chromatic entropy"), hu, hp, 1e-9);
    }
    for i in 0..20 {
        let pg = random_pg(ctx, 2, 8)?;
        let n = pg.n();
        let mut keep: Vec<usize> = (0..n).filter(|_| ctx.rng.gen_bool(0.6)).collect();
        if keep.is_empty() {
            keep.push(ctx.rng.gen_range(0..n));
        }
        let ps = pg.dist.mass(&keep);
        let sub = induced_subgraph(&pg, &keep, true)?;
        let (h, hs) = (ctx.hchi(&pg)?, ctx.hchi(&sub)?);
        ctx.ge(
            format!("#{i}: restriction loses at most 1 + (1 - P(S)) log |X|"),
            hs,
            h - 1.0 - (1.0 - ps) * lg(n as f64),
            1e-9,
        );
        ctx.le(format!("#{i}: restriction costs at most a 1/P(S) factor"), hs, h / ps, 1e-9);
    }
    for i in 0..20 {
        let k = ctx.rng.gen_range(2..=4);
        let m1 = ctx.rng.gen_range(1..=6);
        let m2 = ctx.rng.gen_range(1..=6);
        let draw = |rng: &mut crate::rng::SplitMix64, m: usize| {
            let mut c = vec![0usize; k];
            for _ in 0..m {
                c[rng.gen_range(0..k)] += 1;
            }
            c
        };
        let (c1, c2) = (draw(&mut ctx.rng, m1), draw(&mut ctx.rng, m2));
        let p1 = Distribution::new(c1.iter().map(|&c| c as f64 / m1 as f64).collect())?;
        let p2 = Distribution::new(c2.iter().map(|&c| c as f64 / m2 as f64).collect())?;
        let mut seq: Vec<usize> = (0..k).flat_map(|a| std::iter::repeat_n(a, c1[a] + c2[a])).collect();
        seq.shuffle(&mut ctx.rng);
        let beta = m1 as f64 / (m1 + m2) as f64;
        let split = type_split(&seq, beta, &p1, &p2, &mut ctx.rng)?;
        let t1 = type_of(&split.sub1, k)?;
        let t2 = type_of(&split.sub2, k)?;
        ctx.holds(
            format!("#{i}: integral split is exact"),
            split.exact && t1.counts == c1 && t2.counts == c2,
        );
    }
    Ok(())
}

fn codec_si(ctx: &mut Ctx) -> Result<()> {
    let ch = ChannelSpec::noisy_typewriter(5)?;
    let p = Distribution::uniform(5);
    let n = 2;
    let code = build_si_code(&ch, &p, n, 0.3, &ctx.budget)?;
    let s = simulate_si(&code, &p, &OutputSampler::new(&ch), ctx.trials, ctx.seed);
    ctx.eq("pentagon typewriter: decoding failures", s.failures() as f64, 0.0, 0.0);
    let nf = n as f64;
    ctx.le(
        "pentagon typewriter: empirical rate within the budget plus Huffman slack",
        s.mean_bits() / nf,
        code.rate_budget() + 1.0 / nf,
        3.0 * s.stderr_bits() / nf,
    );
    ctx.note(format!(
        "empirical rate {:.6} bits against budget {:.6}",
        s.mean_bits() / nf,
        code.rate_budget()
    ));
    for i in 0..4 {
        let xs = ctx.rng.gen_range(2..=4);
        let ys = ctx.rng.gen_range(2..=4);
        let mut support = Vec::new();
        for x in 0..xs {
            support.push((x, ctx.rng.gen_range(0..ys)));
            for y in 0..ys {
                if ctx.rng.gen_bool(0.3) {
                    support.push((x, y));
                }
            }
        }
        let ch = ChannelSpec::new(xs, ys, support)?;
        let p = random_distribution(&mut ctx.rng, xs);
        let code = build_si_code(&ch, &p, 2, 0.5, &ctx.budget)?;
        let s = simulate_si(&code, &p, &OutputSampler::new(&ch), ctx.trials / 4, ctx.seed ^ i);
        ctx.eq(format!("random channel #{i}: decoding failures"), s.failures() as f64, 0.0, 0.0);
    }
    Ok(())
}

fn codec_partial(ctx: &mut Ctx) -> Result<()> {
    // inputs {0, 1}; output 0 is shared and forms one class, outputs 1 and 2 identify the input
    let ch = ChannelSpec::new(2, 3, vec![(0, 0), (1, 0), (0, 1), (1, 2)])?;
    let joint = vec![vec![0.25, 0.25, 0.0], vec![0.25, 0.0, 0.25]];
    let code = build_partial_si_code(&ch, &joint, &[0, 1, 1], 6, 1.0, &ctx.budget)?;
    let s = code.simulate(ctx.trials, ctx.seed);
    ctx.eq("two-class family: decoding failures", s.failures() as f64, 0.0, 0.0);
    ctx.note(format!("mean {:.6} bits per symbol", s.mean_bits() / 6.0));
    Ok(())
}

fn codec_channel(ctx: &mut Ctx) -> Result<()> {
    let ch = ChannelSpec::noisy_typewriter(5)?;
    let code = build_channel_code(&ch, 2, CodeTarget::Exact, &ctx.budget)?;
    ctx.eq("pentagon code size", code.len() as f64, 5.0, 0.0);
    let c0 = c0_bounds(&characteristic_graph(&ch)?, 2, &ctx.bounds_config())?;
    ctx.eq("code rate equals the alpha-power certificate", code.rate(), c0.lo, 1e-12);
    let s = channel_roundtrip(&code, &ch, ctx.trials, ctx.seed)?;
    ctx.eq("pentagon code: decoding failures", s.failures() as f64, 0.0, 0.0);
    let ch7 = ChannelSpec::noisy_typewriter(7)?;
    let greedy = build_channel_code(&ch7, 2, CodeTarget::Greedy, &ctx.budget)?;
    let s = channel_roundtrip(&greedy, &ch7, ctx.trials / 4, ctx.seed ^ 1)?;
    ctx.eq("heptagon greedy code: decoding failures", s.failures() as f64, 0.0, 0.0);
    ctx.ge("heptagon greedy code size", greedy.len() as f64, 9.0, 0.0);
    Ok(())
}

fn codec_sum(ctx: &mut Ctx) -> Result<()> {
    let c6 = ChannelSpec::noisy_typewriter(6)?;
    let c8 = ChannelSpec::noisy_typewriter(8)?;
    let b6 = build_channel_code(&c6, 1, CodeTarget::Exact, &ctx.budget)?;
    let b8 = build_channel_code(&c8, 1, CodeTarget::Exact, &ctx.budget)?;
    let (w, total) = sum_channel_weights(&[b6.rate(), b8.rate()])?;
    let comp = composition_for(w.weights(), 7);
    ctx.holds("composition follows the optimal weights", comp == vec![3, 4]);
    let code = build_sum_channel_code(&[c6, c8], &[b6, b8], &comp)?;
    let s = code.simulate(ctx.trials, ctx.seed);
    ctx.eq("sum code: decoding failures", s.failures() as f64, 0.0, 0.0);
    ctx.le("sum code rate at most c0 of the union", code.rate(), total, 1e-9);
    ctx.note(format!("rate {:.6} against log 7 = {:.6}", code.rate(), total));
    Ok(())
}

fn shifted_codebook_scenario(ctx: &mut Ctx) -> Result<()> {
    let c5 = catalog::cycle(5)?;
    let g = and_product_graph(&c5, &c5, ctx.budget.vertices)?;
    let mut diag = Codebook::unchecked(5, vec![(0..5).map(|i| i * 5 + i).collect()]);
    diag.check(&g)?;
    let u = Distribution::uniform(5);
    let f = ShiftFilter { p1: u.clone(), p2: u.clone(), eps: 1e-9 };
    let s = shifted_codebook(&diag, &f, 1000)?;
    ctx.eq("diagonal codeword survives the shift", s.book.len() as f64, 1.0, 0.0);
    let ty = type_of(&s.book.codewords[0], 25)?;
    ctx.holds("shifted codeword has the product type", ty.counts.iter().all(|&c| c == ty.counts[0]));
    let mut shifted = s.book.clone();
    ctx.holds("shifted codebook stays independent", shifted.check(&g).is_ok());

    let gc = and_product_graph(&c5, &c5.complement(), ctx.budget.vertices)?;
    let words: Vec<Vec<usize>> = (0..5).flat_map(|a| (0..5).map(move |b| vec![a * 5 + a, b * 5 + b])).collect();
    let mut book = Codebook::unchecked(2, words);
    book.check(&gc)?;
    for t in 0..2 {
        let mut sh = shift(&book, 5, t);
        ctx.holds(format!("shift by {t} keeps independence"), sh.check(&gc).is_ok());
    }
    let f = ShiftFilter { p1: u.clone(), p2: u, eps: 1.0 };
    let s = shifted_codebook(&book, &f, 1000)?;
    let mut sb = s.book.clone();
    ctx.holds("concatenated shifts stay independent", !s.empty && sb.check(&gc).is_ok());
    Ok(())
}
