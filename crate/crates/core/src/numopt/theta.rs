//! Lovász θ for vertex- and edge-transitive graphs, from the adjacency spectrum.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{is_edge_transitive, is_vertex_transitive, Graph, Transitivity};

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-12 * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

pub fn adjacency_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if g.adjacent(i, j) { 1.0 } else { 0.0 }).collect())
        .collect();
    symmetric_eigenvalues(&m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaResult {
    pub theta: f64,
    pub degree: usize,
    pub lambda_min: f64,
    /// True when transitivity was assumed by the caller instead of verified.
    pub assumed_transitive: bool,
}

/// `θ = n (-λ_min) / (d - λ_min)` for a `d`-regular vertex- and edge-transitive graph.
pub fn theta_transitive(g: &Graph, assume_transitive: bool, budget: &Budget) -> Result<ThetaResult> {
    let degree = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("graph is not regular".into()))?;
    if !assume_transitive {
        for (what, t) in [
            ("vertex", is_vertex_transitive(g, budget)),
            ("edge", is_edge_transitive(g, budget)),
        ] {
            match t {
                Transitivity::Transitive => {}
                Transitivity::NotTransitive => {
                    return Err(Error::Precondition(format!("graph is not {what}-transitive")))
                }
                Transitivity::Undecided => {
                    return Err(Error::Undecided(format!("{what}-transitivity")))
                }
            }
        }
    }
    let n = g.n();
    if degree == 0 {
        return Ok(ThetaResult {
            theta: n as f64,
            degree,
            lambda_min: 0.0,
            assumed_transitive: assume_transitive,
        });
    }
    let lambda_min = adjacency_eigenvalues(g)[0];
    Ok(ThetaResult {
        theta: n as f64 * -lambda_min / (degree as f64 - lambda_min),
        degree,
        lambda_min,
        assumed_transitive: assume_transitive,
    })
}
