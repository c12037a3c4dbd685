//! Zero-error coding when the encoder sees a function of the side information.
//!
//! The encoder knows `a_t = g(y_t)`. It splits the block by the value of `a`,
//! codes each subsequence with a side-information code for the channel
//! restricted to outputs in that class, and concatenates the results. The
//! decoder recomputes the split from `y^n`.

use serde::Serialize;

use super::bits::{BitReader, BitString};
use super::si::SiCode;
use super::simulate::{sample_index, simulate, SimStats};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{ChannelSpec, Distribution, ProbabilisticGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialSideInfoSpec {
    /// `g(y)` for every output `y`.
    pub g_map: Vec<usize>,
    pub a_count: usize,
}

impl PartialSideInfoSpec {
    pub fn new(g_map: Vec<usize>) -> Self {
        let a_count = g_map.iter().max().map_or(0, |m| m + 1);
        PartialSideInfoSpec { g_map, a_count }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialSiCode {
    pub n: usize,
    pub eps: f64,
    pub spec: PartialSideInfoSpec,
    pub p_a: Vec<f64>,
    /// `P(x | A = a)`; `None` when `P_A(a) = 0`.
    pub p_x_given_a: Vec<Option<Distribution>>,
    /// Allowed outputs of each input within each class.
    pub class_rows: Vec<Vec<Vec<usize>>>,
    /// `codes[a][m - 1]` codes subsequences of length `m`.
    #[serde(skip)]
    codes: Vec<Vec<SiCode>>,
    #[serde(skip)]
    joint: Vec<f64>,
    #[serde(skip)]
    y_count: usize,
}

pub fn build_partial_si_code(
    channel: &ChannelSpec,
    joint: &[Vec<f64>],
    g_map: &[usize],
    n: usize,
    eps: f64,
    budget: &Budget,
) -> Result<PartialSiCode> {
    channel.validate()?;
    let (xc, yc) = (channel.x_count, channel.y_count);
    if g_map.len() != yc {
        return Err(Error::InvalidParameter(format!("g_map has {} entries for {yc} outputs", g_map.len())));
    }
    if joint.len() != xc || joint.iter().any(|r| r.len() != yc) {
        return Err(Error::InvalidDistribution(format!("joint weights must be {xc} x {yc}")));
    }
    let mut flat = Vec::with_capacity(xc * yc);
    for (x, row) in joint.iter().enumerate() {
        for (y, &w) in row.iter().enumerate() {
            if !(w >= 0.0) {
                return Err(Error::InvalidDistribution(format!("joint weight ({x}, {y}) is negative")));
            }
            if w > 0.0 && !channel.allows(x, y) {
                return Err(Error::InvalidDistribution(format!("joint weight ({x}, {y}) lies outside the channel support")));
            }
            flat.push(w);
        }
    }
    let total: f64 = flat.iter().sum();
    if (total - 1.0).abs() > crate::graph::WEIGHT_TOL {
        return Err(Error::InvalidDistribution(format!("joint weights sum to {total}")));
    }
    let spec = PartialSideInfoSpec::new(g_map.to_vec());
    let rows = channel.rows();
    let mut p_a = vec![0.0; spec.a_count];
    let mut p_x_given_a = Vec::new();
    let mut class_rows = Vec::new();
    let mut codes = Vec::new();
    for a in 0..spec.a_count {
        let mass: Vec<f64> = (0..xc)
            .map(|x| (0..yc).filter(|&y| g_map[y] == a).map(|y| joint[x][y]).sum())
            .collect();
        p_a[a] = mass.iter().sum();
        let r: Vec<Vec<usize>> = rows
            .iter()
            .map(|row| row.iter().copied().filter(|&y| g_map[y] == a).collect())
            .collect();
        if p_a[a] > 0.0 {
            let cond = Distribution::normalized(mass)?;
            let per_length = (1..=n)
                .map(|m| SiCode::from_rows(r.clone(), &cond, m, eps, true, budget))
                .collect::<Result<Vec<_>>>()?;
            p_x_given_a.push(Some(cond));
            codes.push(per_length);
        } else {
            p_x_given_a.push(None);
            codes.push(Vec::new());
        }
        class_rows.push(r);
    }
    Ok(PartialSiCode {
        n,
        eps,
        spec,
        p_a,
        p_x_given_a,
        class_rows,
        codes,
        joint: flat,
        y_count: yc,
    })
}

impl PartialSiCode {
    fn split(&self, y: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut positions = vec![Vec::new(); self.spec.a_count];
        for (t, &s) in y.iter().enumerate() {
            let a = *self
                .spec
                .g_map
                .get(s)
                .ok_or_else(|| Error::InvalidParameter(format!("output {s} out of range")))?;
            positions[a].push(t);
        }
        Ok(positions)
    }

    fn code(&self, a: usize, m: usize) -> Result<&SiCode> {
        self.codes[a]
            .get(m - 1)
            .ok_or_else(|| Error::InvalidParameter(format!("class {a} has zero probability")))
    }

    pub fn encode(&self, x: &[usize], y: &[usize], out: &mut BitString) -> Result<()> {
        if x.len() != self.n || y.len() != self.n {
            return Err(Error::InvalidParameter(format!("blocks must have length {}", self.n)));
        }
        for (a, pos) in self.split(y)?.iter().enumerate() {
            if !pos.is_empty() {
                let sub: Vec<usize> = pos.iter().map(|&t| x[t]).collect();
                self.code(a, pos.len())?.encode(&sub, out)?;
            }
        }
        Ok(())
    }

    pub fn decode(&self, y: &[usize], r: &mut BitReader<'_>) -> Result<Vec<usize>> {
        let mut x = vec![0; self.n];
        for (a, pos) in self.split(y)?.iter().enumerate() {
            if pos.is_empty() {
                continue;
            }
            let sub_y: Vec<usize> = pos.iter().map(|&t| y[t]).collect();
            let sub_x = self.code(a, pos.len())?.decode(&sub_y, r)?;
            for (&t, v) in pos.iter().zip(sub_x) {
                x[t] = v;
            }
        }
        Ok(x)
    }

    /// The per-class probabilistic graphs `(G_a, P_{X|A=a})`, for classes of positive probability.
    pub fn parts(&self) -> Result<Vec<(usize, ProbabilisticGraph)>> {
        let mut out = Vec::new();
        for a in 0..self.spec.a_count {
            if let Some(p) = &self.p_x_given_a[a] {
                let g = super::si::graph_of_rows(&self.class_rows[a]);
                out.push((a, ProbabilisticGraph::new(g, p.clone())?));
            }
        }
        Ok(out)
    }

    /// Draws `(x_t, y_t)` pairs i.i.d. from the joint weights and roundtrips each block.
    pub fn simulate(&self, trials: u64, seed: u64) -> SimStats {
        simulate(trials, seed, |rng| {
            let (x, y): (Vec<usize>, Vec<usize>) = (0..self.n)
                .map(|_| {
                    let i = sample_index(rng, &self.joint);
                    (i / self.y_count, i % self.y_count)
                })
                .unzip();
            let mut bits = BitString::new();
            self.encode(&x, &y, &mut bits)?;
            let decoded = self.decode(&y, &mut bits.reader())?;
            Ok((decoded == x, bits.len() as u64))
        })
    }
}
