//! Haemers rank bound over prime fields.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Square matrix over `GF(p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteFieldMatrix {
    pub p: u64,
    pub rows: Vec<Vec<u64>>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

impl FiniteFieldMatrix {
    pub fn new(p: u64, rows: Vec<Vec<u64>>) -> Result<Self> {
        let m = FiniteFieldMatrix { p, rows };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidParameter(format!("modulus {} is not prime", self.p)));
        }
        let n = self.rows.len();
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|&v| v >= self.p) {
                return Err(Error::InvalidParameter(format!(
                    "entry ({i}, {j}) is not reduced modulo {}",
                    self.p
                )));
            }
        }
        Ok(())
    }

    /// Adjacency plus identity, reduced modulo `p`.
    pub fn adjacency_plus_identity(g: &Graph, p: u64) -> Result<Self> {
        let n = g.n();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| u64::from(i == j || g.adjacent(i, j)) % p)
                    .collect()
            })
            .collect();
        FiniteFieldMatrix::new(p, rows)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Rank by Gaussian elimination modulo `p`.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut a = self.rows.clone();
        let n = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..n).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = pow_mod(a[rank][col], p - 2, p);
            for v in a[rank].iter_mut() {
                *v = mul_mod(*v, inv, p);
            }
            for r in 0..n {
                if r != rank && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in col..cols {
                        let sub = mul_mod(f, a[rank][c], p);
                        a[r][c] = (a[r][c] + p - sub) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Checks that the matrix fits `g`: nonzero diagonal, zero on non-edges.
    pub fn check_fits(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::MatrixMismatch {
                row: self.n(),
                col: g.n(),
                reason: format!("matrix is {}x{} but the graph has {} vertices", self.n(), self.n(), g.n()),
            });
        }
        for i in 0..g.n() {
            if self.rows[i][i] == 0 {
                return Err(Error::MatrixMismatch {
                    row: i,
                    col: i,
                    reason: "diagonal entry is zero".into(),
                });
            }
            for j in 0..g.n() {
                if i != j && !g.adjacent(i, j) && self.rows[i][j] != 0 {
                    return Err(Error::MatrixMismatch {
                        row: i,
                        col: j,
                        reason: "nonzero entry on a non-edge".into(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// `log2 rank(B)`: an upper bound on the zero-error capacity of `g` for any fitting `B`.
pub fn haemers_bound(g: &Graph, b: &FiniteFieldMatrix) -> Result<f64> {
    b.validate()?;
    b.check_fits(g)?;
    Ok((b.rank() as f64).log2())
}

/// The built-in candidates: adjacency plus identity over GF(2) and GF(3).
pub fn default_candidates(g: &Graph) -> Vec<FiniteFieldMatrix> {
    [2, 3]
        .into_iter()
        .filter_map(|p| FiniteFieldMatrix::adjacency_plus_identity(g, p).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::alpha_exact;
    use crate::graph::catalog;
    use crate::Budget;

    #[test]
    fn tight_on_complete_and_empty() {
        let k = catalog::complete(5);
        let ones = FiniteFieldMatrix::new(2, vec![vec![1; 5]; 5]).unwrap();
        assert_eq!(haemers_bound(&k, &ones).unwrap(), 0.0);
        let e = Graph::empty(4);
        let id = FiniteFieldMatrix::adjacency_plus_identity(&e, 2).unwrap();
        assert_eq!(haemers_bound(&e, &id).unwrap(), 2.0);
    }

    #[test]
    fn pentagon_gf2() {
        let c5 = catalog::cycle(5).unwrap();
        let b = FiniteFieldMatrix::adjacency_plus_identity(&c5, 2).unwrap();
        assert_eq!(b.rank(), 5);
    }

    #[test]
    fn rank_by_hand() {
        // rows 0 and 1 sum to row 2 over GF(3)
        let m = FiniteFieldMatrix::new(3, vec![vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(FiniteFieldMatrix::new(4, vec![vec![1]]).is_err());
    }

    #[test]
    fn mismatch_names_the_entry() {
        let c5 = catalog::cycle(5).unwrap();
        let mut rows = vec![vec![0; 5]; 5];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        rows[0][2] = 1;
        let b = FiniteFieldMatrix::new(2, rows).unwrap();
        match haemers_bound(&c5, &b) {
            Err(Error::MatrixMismatch { row: 0, col: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn never_below_log_alpha() {
        let b = Budget::default();
        for g in [
            catalog::cycle(5).unwrap(),
            catalog::cycle(7).unwrap(),
            catalog::schlafli(),
            catalog::schlafli().complement(),
            catalog::path(5),
        ] {
            let alpha = alpha_exact(&g, &b).size as f64;
            for m in default_candidates(&g) {
                assert!(haemers_bound(&g, &m).unwrap() >= alpha.log2() - 1e-12);
            }
        }
    }
}
