//! Based graded vector spaces.

use serde::{Deserialize, Serialize};

/// A named basis vector with a cohomological degree and a weight.
///
/// Weight counts algebra-generator slots inside composite objects and is what
/// the truncation bound `max_weight` prunes. Operad and cooperad elements have
/// weight 0; user-supplied generators default to weight 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElt {
    pub name: String,
    pub degree: i64,
    #[serde(default)]
    pub weight: u32,
}

impl BasisElt {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        BasisElt {
            name: name.into(),
            degree,
            weight: 0,
        }
    }

    pub fn with_weight(name: impl Into<String>, degree: i64, weight: u32) -> Self {
        BasisElt {
            name: name.into(),
            degree,
            weight,
        }
    }
}

/// An ordered finite basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Space {
    pub basis: Vec<BasisElt>,
}

impl Space {
    pub fn empty() -> Self {
        Space { basis: Vec::new() }
    }

    pub fn line(name: impl Into<String>, degree: i64) -> Self {
        Space {
            basis: vec![BasisElt::new(name, degree)],
        }
    }

    pub fn new(basis: Vec<BasisElt>) -> Self {
        let mut names = std::collections::BTreeSet::new();
        for b in &basis {
            assert!(names.insert(b.name.clone()), "duplicate basis name {}", b.name);
        }
        Space { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.basis[i].weight
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.basis.iter().map(|b| b.degree).collect()
    }

    /// Dual space: names decorated, degrees negated, weights kept.
    pub fn dual(&self) -> Space {
        Space {
            basis: self
                .basis
                .iter()
                .map(|b| BasisElt::with_weight(format!("{}*", b.name), -b.degree, b.weight))
                .collect(),
        }
    }
}
