//! Chain complexes (cohomological grading, differentials of degree +1) and
//! exact homology computation.

use crate::matrix::{self, Mat};
use crate::rat::Rat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum ChainError {
    #[error("not a complex: d² ≠ 0 leaving degree {0}")]
    NotAComplex(i64),
    #[error("matrix shapes do not match adjacent dimensions at degree {0}")]
    Shape(i64),
}

/// A finite chain complex: spaces indexed by a contiguous range of degrees,
/// with differentials of degree +1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainComplex {
    /// sorted list of degrees carrying (possibly zero) spaces
    pub degrees: Vec<i64>,
    /// dimension per degree
    pub dims: BTreeMap<i64, usize>,
    /// basis labels per degree (parallel to columns of the differentials)
    #[serde(default)]
    pub labels: BTreeMap<i64, Vec<String>>,
    /// differential d_i : C^i -> C^{i+1}
    pub diffs: BTreeMap<i64, Mat>,
}

impl ChainComplex {
    pub fn new(ranges: Vec<(i64, usize, Vec<String>)>, diffs: BTreeMap<i64, Mat>) -> Self {
        let mut dims = BTreeMap::new();
        let mut labels = BTreeMap::new();
        let mut degrees = Vec::new();
        for (d, n, ls) in ranges {
            degrees.push(d);
            dims.insert(d, n);
            labels.insert(d, ls);
        }
        degrees.sort();
        ChainComplex {
            degrees,
            dims,
            labels,
            diffs,
        }
    }

    pub fn dim(&self, d: i64) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn diff(&self, d: i64) -> Mat {
        self.diffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Mat::zero(self.dim(d + 1), self.dim(d)))
    }

    /// Check matrix shapes and d² = 0.
    pub fn validate(&self) -> Result<(), ChainError> {
        for &d in &self.degrees {
            let m = self.diff(d);
            if m.cols != self.dim(d) || m.rows != self.dim(d + 1) {
                return Err(ChainError::Shape(d));
            }
        }
        for &d in &self.degrees {
            let a = self.diff(d);
            let b = self.diff(d + 1);
            if b.cols == a.rows && !b.mul(&a).is_zero_matrix() {
                return Err(ChainError::NotAComplex(d));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|&d| {
                let s = self.dim(d) as i64;
                if d.rem_euclid(2) == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum()
    }
}

/// Per-degree kernel/image ranks and Betti numbers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyReport {
    pub dims: BTreeMap<i64, usize>,
    pub kernel_rank: BTreeMap<i64, usize>,
    pub image_rank: BTreeMap<i64, usize>,
    pub betti: BTreeMap<i64, usize>,
    /// representatives of a homology basis, as coordinate vectors (optional)
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub representatives: BTreeMap<i64, Vec<Vec<Rat>>>,
}

impl HomologyReport {
    pub fn total_betti(&self) -> usize {
        self.betti.values().sum()
    }

    /// Euler characteristic from Betti numbers equals the one from dimensions.
    pub fn euler_consistent(&self) -> bool {
        let from_dims: i64 = self
            .dims
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum();
        let from_betti: i64 = self
            .betti
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum();
        from_dims == from_betti
    }
}

/// Homology of a validated complex. Betti_d = dim ker(d_d) - rank(d_{d-1}).
pub fn homology(c: &ChainComplex) -> Result<HomologyReport, ChainError> {
    c.validate()?;
    let mut kernel_rank = BTreeMap::new();
    let mut image_rank = BTreeMap::new();
    let mut betti = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut kernels: BTreeMap<i64, Vec<Vec<Rat>>> = BTreeMap::new();
    for &d in &c.degrees {
        let m = c.diff(d);
        let (r, ker, _) = matrix::rank_kernel_image(&m);
        ranks.insert(d, r);
        kernels.insert(d, ker);
    }
    for &d in &c.degrees {
        let ker = kernels.get(&d).cloned().unwrap_or_default();
        let incoming = ranks.get(&(d - 1)).copied().unwrap_or(0);
        kernel_rank.insert(d, ker.len());
        image_rank.insert(d, incoming);
        let b = ker.len() - incoming;
        betti.insert(d, b);
        if b > 0 {
            // representatives: kernel vectors independent modulo the image
            let prev = c.diff(d - 1);
            let mut chosen: Vec<Vec<Rat>> = Vec::new();
            let dim = c.dim(d);
            let mut span = Mat::zero(dim, incoming + b);
            let mut col = 0;
            // image columns
            let ech_prev = matrix::echelon(&prev);
            for p in ech_prev.pivot_cols() {
                let v = prev.column(p);
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        span.set(i, col, x.clone());
                    }
                }
                col += 1;
            }
            for k in &ker {
                // accept k if it enlarges the span
                let mut trial = span.clone();
                for (i, x) in k.iter().enumerate() {
                    if !x.is_zero() {
                        trial.set(i, col, x.clone());
                    }
                }
                if matrix::rank(&trial) > matrix::rank(&span) {
                    span = trial;
                    col += 1;
                    chosen.push(k.clone());
                    if chosen.len() == b {
                        break;
                    }
                }
            }
            representatives.insert(d, chosen);
        }
    }
    Ok(HomologyReport {
        dims: c.dims.clone(),
        kernel_rank,
        image_rank,
        betti,
        representatives,
    })
}

/// JSON per the exchange schema: degrees, dims, betti.
pub fn report_json(c: &ChainComplex, h: &HomologyReport) -> serde_json::Value {
    serde_json::json!({
        "degrees": c.degrees,
        "dims": c.dims.iter().map(|(d, n)| (d.to_string(), n)).collect::<BTreeMap<_,_>>(),
        "betti": h.betti.iter().map(|(d, n)| (d.to_string(), n)).collect::<BTreeMap<_,_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(spec: &[(i64, usize)], diffs: Vec<(i64, Mat)>) -> ChainComplex {
        ChainComplex::new(
            spec.iter()
                .map(|&(d, n)| (d, n, (0..n).map(|i| format!("e{}", i)).collect()))
                .collect(),
            diffs.into_iter().collect(),
        )
    }

    #[test]
    fn zero_differentials() {
        let c = complex(&[(0, 2), (1, 3)], vec![]);
        let h = homology(&c).unwrap();
        assert_eq!(h.betti[&0], 2);
        assert_eq!(h.betti[&1], 3);
        assert!(h.euler_consistent());
    }

    #[test]
    fn acyclic_two_term() {
        // 0 -> k -> k -> 0 with identity differential
        let c = complex(&[(0, 1), (1, 1)], vec![(0, Mat::identity(1))]);
        let h = homology(&c).unwrap();
        assert_eq!(h.betti[&0], 0);
        assert_eq!(h.betti[&1], 0);
    }

    #[test]
    fn koszul_three_term() {
        // 0 -> k -> k^2 -> k -> 0 with d0 = (1,1)^t, d1 = (1,-1)
        let d0 = Mat::from_entries(2, 1, vec![(0, 0, Rat::one()), (1, 0, Rat::one())]);
        let d1 = Mat::from_entries(1, 2, vec![(0, 0, Rat::one()), (0, 1, Rat::from_int(-1))]);
        let c = complex(&[(0, 1), (1, 2), (2, 1)], vec![(0, d0), (1, d1)]);
        let h = homology(&c).unwrap();
        assert_eq!(h.betti[&0], 0);
        assert_eq!(h.betti[&1], 0);
        assert_eq!(h.betti[&2], 0);
        assert!(h.euler_consistent());
    }

    #[test]
    fn rejects_non_complex() {
        let d0 = Mat::identity(1);
        let d1 = Mat::identity(1);
        let c = complex(&[(0, 1), (1, 1), (2, 1)], vec![(0, d0), (1, d1)]);
        assert!(matches!(homology(&c), Err(ChainError::NotAComplex(0))));
    }

    #[test]
    fn homology_invariant_under_basis_permutation() {
        let d0 = Mat::from_entries(2, 1, vec![(0, 0, Rat::one()), (1, 0, Rat::one())]);
        let d1 = Mat::from_entries(1, 2, vec![(0, 0, Rat::one()), (0, 1, Rat::from_int(-1))]);
        let c1 = complex(&[(0, 1), (1, 2), (2, 1)], vec![(0, d0.clone()), (1, d1.clone())]);
        // permute the middle basis
        let p = Mat::from_entries(2, 2, vec![(0, 1, Rat::one()), (1, 0, Rat::one())]);
        let c2 = complex(
            &[(0, 1), (1, 2), (2, 1)],
            vec![(0, p.mul(&d0)), (1, d1.mul(&p))],
        );
        let h1 = homology(&c1).unwrap();
        let h2 = homology(&c2).unwrap();
        assert_eq!(h1.betti, h2.betti);
    }
}
