//! Brute-force oracles, written independently of the library's solvers.

#![allow(dead_code)]

use zeroerr::graph::Graph;

/// Adjacency rows as bit masks; graphs up to 64 vertices.
pub fn masks(g: &Graph) -> Vec<u64> {
    let n = g.n();
    assert!(n <= 64);
    (0..n)
        .map(|u| (0..n).filter(|&v| g.adjacent(u, v)).fold(0u64, |m, v| m | 1 << v))
        .collect()
}

fn alpha_rec(adj: &[u64], set: u64) -> usize {
    if set == 0 {
        return 0;
    }
    // branch on a vertex of largest degree inside `set`
    let mut best_v = set.trailing_zeros() as usize;
    let mut best_d = 0;
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & set).count_ones();
        if d > best_d {
            best_d = d;
            best_v = v;
        }
    }
    if best_d == 0 {
        return set.count_ones() as usize;
    }
    let v = best_v;
    let without = alpha_rec(adj, set & !(1 << v));
    let with = 1 + alpha_rec(adj, set & !(1 << v) & !adj[v]);
    without.max(with)
}

pub fn alpha(g: &Graph) -> usize {
    let adj = masks(g);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    alpha_rec(&adj, all)
}

/// `(omega, chi)` of every induced subgraph, indexed by vertex mask; `n <= 14`.
pub fn omega_chi_tables(g: &Graph) -> (Vec<u8>, Vec<u8>) {
    let n = g.n();
    assert!(n <= 14);
    let adj = masks(g);
    let size = 1usize << n;
    let mut indep = vec![true; size];
    let mut omega = vec![0u8; size];
    for s in 1..size {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        indep[s] = indep[rest] && adj[v] & rest as u64 == 0;
        omega[s] = omega[rest].max(1 + omega[rest & adj[v] as usize]);
    }
    let mut chi = vec![0u8; size];
    for s in 1..size {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut best = u8::MAX;
        let mut sub = rest;
        loop {
            let class = sub | low;
            if indep[class] {
                best = best.min(1 + chi[s ^ class]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        chi[s] = best;
    }
    (omega, chi)
}

/// Perfect by definition: `chi = omega` on every induced subgraph.
pub fn perfect_by_definition(g: &Graph) -> bool {
    let (omega, chi) = omega_chi_tables(g);
    omega.iter().zip(&chi).all(|(a, b)| a == b)
}

/// Minimum colouring entropy by enumerating partitions into independent sets; `n <= 12`.
pub fn hchi(g: &Graph, p: &[f64]) -> f64 {
    let n = g.n();
    assert!(n <= 12);
    let adj = masks(g);
    fn rec(adj: &[u64], p: &[f64], left: u64, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if left == 0 {
            *best = acc;
            return;
        }
        let v = left.trailing_zeros() as usize;
        let cand = left & !(1 << v) & !adj[v];
        let mut sub = cand;
        loop {
            let class = sub | 1 << v;
            let independent = {
                let mut ok = true;
                let mut r = sub;
                while r != 0 {
                    let u = r.trailing_zeros() as usize;
                    r &= r - 1;
                    if adj[u] & class != 0 {
                        ok = false;
                        break;
                    }
                }
                ok
            };
            if independent {
                let mass: f64 = (0..p.len()).filter(|&u| class >> u & 1 == 1).map(|u| p[u]).sum();
                let term = if mass > 0.0 { -mass * mass.log2() } else { 0.0 };
                rec(adj, p, left & !class, acc + term, best);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & cand;
        }
    }
    let mut best = f64::INFINITY;
    rec(&adj, p, (1u64 << n) - 1, 0.0, &mut best);
    best
}

/// The listed vertices, in order, form a chordless cycle of length at least 5 and odd.
pub fn is_odd_hole(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 5 || k.is_multiple_of(2) {
        return false;
    }
    let mut distinct = cycle.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.adjacent(cycle[i], cycle[j]) == consecutive
        })
    })
}

pub fn entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Maximum of `H(w) + sum w_a c_a` over the simplex: a full grid at `step`,
/// then local grids of radius 10 around the best point at ten times finer steps.
pub fn time_sharing_grid(c: &[f64], step: f64, finest: f64) -> f64 {
    let k = c.len();
    let f = |w: &[f64]| entropy(w) + w.iter().zip(c).map(|(a, b)| a * b).sum::<f64>();
    let units = (1.0 / step).round() as i64;
    let mut best = f64::NEG_INFINITY;
    let mut center = vec![0.0; k];
    let mut counts = vec![0i64; k - 1];
    loop {
        let used: i64 = counts.iter().sum();
        if used <= units {
            let mut w: Vec<f64> = counts.iter().map(|&c| c as f64 * step).collect();
            w.push((units - used) as f64 * step);
            let v = f(&w);
            if v > best {
                best = v;
                center = w;
            }
        }
        let mut d = 0;
        while d < k - 1 {
            counts[d] += 1;
            if counts[d] <= units {
                break;
            }
            counts[d] = 0;
            d += 1;
        }
        if d == k - 1 {
            break;
        }
    }
    let mut h = step / 10.0;
    while h >= finest {
        let radius = 10i64;
        let mut offsets = vec![-radius; k - 1];
        let mut next = center.clone();
        loop {
            let mut w: Vec<f64> = offsets.iter().zip(&center).map(|(&o, &x)| x + o as f64 * h).collect();
            let rest = 1.0 - w.iter().sum::<f64>();
            if rest >= 0.0 && w.iter().all(|&x| x >= 0.0) {
                w.push(rest);
                let v = f(&w);
                if v > best {
                    best = v;
                    next = w;
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
        h /= 10.0;
    }
    best
}
