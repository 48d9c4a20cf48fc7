//! Symmetric sequences of based graded spaces with signed symmetric-group
//! actions, their dg refinement, and equivariant maps between them.

use crate::matrix::Mat;
use crate::perm::Perm;
use crate::rat::Rat;
use crate::space::Space;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Truncation parameters making every space finite dimensional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub max_arity: usize,
    pub max_weight: u32,
}

impl Truncation {
    pub fn new(max_arity: usize, max_weight: u32) -> Self {
        assert!(max_arity >= 1, "max_arity must be >= 1");
        assert!(max_weight >= 1, "max_weight must be >= 1");
        Truncation {
            max_arity,
            max_weight,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SymSeqError {
    #[error("truncation mismatch")]
    TruncationMismatch,
    #[error("Coxeter relation failed at arity {arity}: {which}")]
    Coxeter { arity: usize, which: String },
    #[error("action matrix at arity {0} is not degree-preserving")]
    ActionDegree(usize),
    #[error("map is not equivariant at arity {0}")]
    NotEquivariant(usize),
    #[error("map is not homogeneous of the stated degree at arity {0}")]
    NotHomogeneous(usize),
    #[error("differential fails d²=0 at arity {0}")]
    DSquare(usize),
    #[error("differential does not commute with the action at arity {0}")]
    DAction(usize),
    #[error("{0}")]
    Other(String),
}

/// One arity component: a based space plus the actions of the adjacent
/// transpositions s_1..s_{k-1}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Component {
    pub space: Space,
    pub transpositions: Vec<Mat>,
}

impl Component {
    pub fn empty(arity: usize) -> Self {
        Component {
            space: Space::empty(),
            transpositions: vec![Mat::zero(0, 0); arity.saturating_sub(1)],
        }
    }

    pub fn trivial_line(arity: usize, name: impl Into<String>, degree: i64) -> Self {
        Component {
            space: Space::line(name, degree),
            transpositions: vec![Mat::identity(1); arity.saturating_sub(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// An arity-indexed family of based graded spaces with Σ-actions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymSeq {
    pub trunc: Truncation,
    /// components for arities 0..=max_arity
    pub comps: Vec<Component>,
}

impl SymSeq {
    pub fn zero(trunc: Truncation) -> Self {
        SymSeq {
            trunc,
            comps: (0..=trunc.max_arity).map(Component::empty).collect(),
        }
    }

    /// The unit symmetric sequence I: I(1) = k.
    pub fn unit(trunc: Truncation) -> Self {
        let mut s = SymSeq::zero(trunc);
        s.comps[1] = Component::trivial_line(1, "1", 0);
        s
    }

    /// A vector space placed in arity 0.
    pub fn concentrated_in_arity0(trunc: Truncation, space: Space) -> Self {
        let mut s = SymSeq::zero(trunc);
        s.comps[0] = Component {
            space,
            transpositions: vec![],
        };
        s
    }

    pub fn component(&self, arity: usize) -> &Component {
        &self.comps[arity]
    }

    pub fn dim(&self, arity: usize) -> usize {
        if arity > self.trunc.max_arity {
            0
        } else {
            self.comps[arity].dim()
        }
    }

    pub fn space(&self, arity: usize) -> &Space {
        &self.comps[arity].space
    }

    pub fn total_dim(&self) -> usize {
        self.comps.iter().map(|c| c.dim()).sum()
    }

    /// Matrix of the action of an arbitrary permutation, via its adjacent
    /// factorization.
    pub fn action_of(&self, arity: usize, perm: &Perm) -> Mat {
        assert_eq!(perm.len(), arity);
        let dim = self.dim(arity);
        let mut m = Mat::identity(dim);
        // σ = s_{i1} ∘ s_{i2} ∘ ..., action(σ) = action(s_{i1})·action(s_{i2})·...
        for &i in &perm.adjacent_factorization() {
            m = m.mul(&self.comps[arity].transpositions[i]);
        }
        m
    }

    /// All group elements with their action matrices, identity first,
    /// in lexicographic order of the permutations.
    pub fn group_actions(&self, arity: usize) -> Vec<(Perm, Mat)> {
        Perm::all(arity)
            .into_iter()
            .map(|p| {
                let m = self.action_of(arity, &p);
                (p, m)
            })
            .collect()
    }

    /// Averaging (norm) operator (1/k!) Σ_σ action(σ).
    pub fn norm_operator(&self, arity: usize) -> Mat {
        let dim = self.dim(arity);
        let mut acc = Mat::zero(dim, dim);
        let actions = self.group_actions(arity);
        let order = actions.len().max(1);
        for (_, m) in actions {
            acc = acc.add(&m);
        }
        acc.scale(&Rat::from_frac(1, order as i64))
    }

    /// Checks Coxeter relations and degree preservation for every component.
    pub fn validate(&self) -> Result<(), SymSeqError> {
        for (arity, comp) in self.comps.iter().enumerate() {
            let dim = comp.dim();
            if arity >= 1 {
                assert_eq!(comp.transpositions.len(), arity - 1);
            }
            for (i, t) in comp.transpositions.iter().enumerate() {
                if t.rows != dim || t.cols != dim {
                    return Err(SymSeqError::Other(format!(
                        "action matrix shape at arity {}",
                        arity
                    )));
                }
                // degree preserving
                for (r, c, _) in t.iter() {
                    if comp.space.degree(r) != comp.space.degree(c) {
                        return Err(SymSeqError::ActionDegree(arity));
                    }
                }
                // s_i^2 = 1
                if t.mul(t) != Mat::identity(dim) {
                    return Err(SymSeqError::Coxeter {
                        arity,
                        which: format!("s_{}^2", i + 1),
                    });
                }
            }
            // braid and commuting relations
            for i in 0..comp.transpositions.len() {
                for j in (i + 1)..comp.transpositions.len() {
                    let a = &comp.transpositions[i];
                    let b = &comp.transpositions[j];
                    if j == i + 1 {
                        let aba = a.mul(b).mul(a);
                        let bab = b.mul(a).mul(b);
                        if aba != bab {
                            return Err(SymSeqError::Coxeter {
                                arity,
                                which: format!("braid s_{} s_{}", i + 1, j + 1),
                            });
                        }
                    } else if a.mul(b) != b.mul(a) {
                        return Err(SymSeqError::Coxeter {
                            arity,
                            which: format!("commute s_{} s_{}", i + 1, j + 1),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Structural equality: same dims, degrees, weights, and action matrices
    /// (names may differ).
    pub fn structurally_equal(&self, other: &SymSeq) -> bool {
        if self.trunc != other.trunc {
            return false;
        }
        for (a, b) in self.comps.iter().zip(&other.comps) {
            if a.dim() != b.dim() {
                return false;
            }
            if a.space.degrees() != b.space.degrees() {
                return false;
            }
            let wa: Vec<u32> = a.space.basis.iter().map(|e| e.weight).collect();
            let wb: Vec<u32> = b.space.basis.iter().map(|e| e.weight).collect();
            if wa != wb {
                return false;
            }
            if a.transpositions != b.transpositions {
                return false;
            }
        }
        true
    }
}

/// A symmetric sequence with a degree +1 differential per arity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DgSymSeq {
    pub seq: SymSeq,
    /// differential per arity (square matrices of degree +1)
    pub diff: Vec<Mat>,
}

impl DgSymSeq {
    pub fn with_zero_differential(seq: SymSeq) -> Self {
        let diff = seq.comps.iter().map(|c| Mat::zero(c.dim(), c.dim())).collect();
        DgSymSeq { seq, diff }
    }

    pub fn validate(&self) -> Result<(), SymSeqError> {
        self.seq.validate()?;
        for (arity, d) in self.diff.iter().enumerate() {
            let dim = self.seq.dim(arity);
            if d.rows != dim || d.cols != dim {
                return Err(SymSeqError::Other(format!("diff shape at arity {}", arity)));
            }
            for (r, c, _) in d.iter() {
                if self.seq.space(arity).degree(r) != self.seq.space(arity).degree(c) + 1 {
                    return Err(SymSeqError::Other(format!(
                        "diff not degree +1 at arity {}",
                        arity
                    )));
                }
            }
            if !d.mul(d).is_zero_matrix() {
                return Err(SymSeqError::DSquare(arity));
            }
            for t in &self.seq.comps[arity].transpositions {
                if t.mul(d) != d.mul(t) {
                    return Err(SymSeqError::DAction(arity));
                }
            }
        }
        Ok(())
    }
}

/// An arity-wise linear map between symmetric sequences, homogeneous of a
/// stated degree and equivariant.
#[derive(Clone, Debug)]
pub struct SeqMap {
    pub source: Arc<SymSeq>,
    pub target: Arc<SymSeq>,
    pub degree: i64,
    /// per arity: matrix target_dim x source_dim
    pub mats: Vec<Mat>,
}

impl SeqMap {
    pub fn zero(source: Arc<SymSeq>, target: Arc<SymSeq>, degree: i64) -> Self {
        let mats = (0..=source.trunc.max_arity)
            .map(|k| Mat::zero(target.dim(k), source.dim(k)))
            .collect();
        SeqMap {
            source,
            target,
            degree,
            mats,
        }
    }

    pub fn identity(seq: Arc<SymSeq>) -> Self {
        let mats = (0..=seq.trunc.max_arity)
            .map(|k| Mat::identity(seq.dim(k)))
            .collect();
        SeqMap {
            source: seq.clone(),
            target: seq,
            degree: 0,
            mats,
        }
    }

    pub fn mat(&self, arity: usize) -> &Mat {
        &self.mats[arity]
    }

    /// Equivariance: commutes with every adjacent transposition action.
    pub fn check_equivariant(&self) -> Result<(), SymSeqError> {
        for k in 0..=self.source.trunc.max_arity {
            let m = &self.mats[k];
            if k >= 2 {
                for i in 0..k - 1 {
                    let s_src = &self.source.comps[k].transpositions[i];
                    let s_tgt = &self.target.comps[k].transpositions[i];
                    if m.mul(s_src) != s_tgt.mul(m) {
                        return Err(SymSeqError::NotEquivariant(k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every nonzero entry connects degrees offset by `self.degree`.
    pub fn check_homogeneous(&self) -> Result<(), SymSeqError> {
        for k in 0..=self.source.trunc.max_arity {
            for (r, c, _) in self.mats[k].iter() {
                if self.target.space(k).degree(r) != self.source.space(k).degree(c) + self.degree {
                    return Err(SymSeqError::NotHomogeneous(k));
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, inner: &SeqMap) -> SeqMap {
        let mats = self
            .mats
            .iter()
            .zip(&inner.mats)
            .map(|(a, b)| a.mul(b))
            .collect();
        SeqMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            degree: self.degree + inner.degree,
            mats,
        }
    }

    pub fn add(&self, other: &SeqMap) -> SeqMap {
        assert_eq!(self.degree, other.degree);
        SeqMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> SeqMap {
        SeqMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            mats: self.mats.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero_matrix())
    }
}

/// JSON serialization of a symmetric sequence per the exchange schema.
pub fn symseq_json(s: &SymSeq) -> serde_json::Value {
    let comps: Vec<serde_json::Value> = s
        .comps
        .iter()
        .enumerate()
        .map(|(k, c)| {
            serde_json::json!({
                "arity": k,
                "basis": c.space.basis.iter().map(|b| serde_json::json!({
                    "name": b.name, "degree": b.degree,
                })).collect::<Vec<_>>(),
                "transpositions": c.transpositions.iter().map(mat_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({
        "max_arity": s.trunc.max_arity,
        "components": comps,
    })
}

pub fn mat_json(m: &Mat) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = m
        .iter()
        .map(|(r, c, v)| serde_json::json!([r, c, v.to_string()]))
        .collect();
    serde_json::json!({"rows": m.rows, "cols": m.cols, "entries": entries})
}

/// Decompose a component's basis by degree; useful for building chain
/// complexes out of dg symmetric sequences.
pub fn degree_strata(space: &Space) -> BTreeMap<i64, Vec<usize>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, b) in space.basis.iter().enumerate() {
        out.entry(b.degree).or_default().push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::BasisElt;

    #[test]
    fn unit_validates() {
        let t = Truncation::new(3, 4);
        let u = SymSeq::unit(t);
        u.validate().unwrap();
        assert_eq!(u.dim(1), 1);
        assert_eq!(u.dim(2), 0);
    }

    #[test]
    fn sign_rep_validates() {
        let t = Truncation::new(3, 4);
        let mut s = SymSeq::zero(t);
        s.comps[2] = Component {
            space: Space::new(vec![BasisElt::new("x", 0)]),
            transpositions: vec![Mat::identity(1).scale(&Rat::from_int(-1))],
        };
        s.validate().unwrap();
        let swap = Perm(vec![1, 0]);
        assert_eq!(s.action_of(2, &swap).get(0, 0), Rat::from_int(-1));
        let norm = s.norm_operator(2);
        assert!(norm.is_zero_matrix());
    }

    #[test]
    fn action_of_composes() {
        // regular representation of Σ_3 on 6 points would be overkill; use the
        // permutation representation on 3 letters.
        let t = Truncation::new(3, 4);
        let mut s = SymSeq::zero(t);
        let perm_mat = |p: &Perm| {
            let mut m = Mat::zero(3, 3);
            for i in 0..3 {
                m.set(p.apply(i), i, Rat::one());
            }
            m
        };
        s.comps[3] = Component {
            space: Space::new(vec![
                BasisElt::new("a", 0),
                BasisElt::new("b", 0),
                BasisElt::new("c", 0),
            ]),
            transpositions: vec![
                perm_mat(&Perm::adjacent(3, 0)),
                perm_mat(&Perm::adjacent(3, 1)),
            ],
        };
        s.validate().unwrap();
        for p in Perm::all(3) {
            assert_eq!(s.action_of(3, &p), perm_mat(&p), "failed for {:?}", p);
        }
    }
}
