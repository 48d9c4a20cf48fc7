//! The multilinear part of the free Lie algebra, with normal forms extracted
//! through the associative expansion.
//!
//! A multilinear Lie monomial on a finite label set expands in the free
//! associative algebra ([x,y] = xy - yx). The left-normed words
//! [[..[m, a_1], a_2], .., a_{b-1}] with m the minimal label form a basis,
//! and each contributes exactly one associative word starting with m, with
//! coefficient 1. Reading off the m-initial associative words therefore
//! rewrites any element into the basis.

use crate::rat::Rat;
use std::collections::BTreeMap;

/// Multilinear associative expansion: word (sequence of distinct labels) -> coefficient.
pub type AssocExp = BTreeMap<Vec<usize>, Rat>;

/// A binary Lie tree over distinct labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieTree {
    Leaf(usize),
    Br(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    pub fn leaves(&self) -> Vec<usize> {
        match self {
            LieTree::Leaf(x) => vec![*x],
            LieTree::Br(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    /// Left-normed tree from a leaf sequence.
    pub fn left_normed(word: &[usize]) -> LieTree {
        assert!(!word.is_empty());
        let mut t = LieTree::Leaf(word[0]);
        for &x in &word[1..] {
            t = LieTree::Br(Box::new(t), Box::new(LieTree::Leaf(x)));
        }
        t
    }
}

pub fn concat_exp(a: &AssocExp, b: &AssocExp) -> AssocExp {
    let mut out = AssocExp::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            let e = out.entry(w).or_insert_with(Rat::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn bracket_exp(a: &AssocExp, b: &AssocExp) -> AssocExp {
    let ab = concat_exp(a, b);
    let ba = concat_exp(b, a);
    let mut out = ab;
    for (w, c) in ba {
        let e = out.entry(w).or_insert_with(Rat::zero);
        *e += c.neg();
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn tree_exp(t: &LieTree) -> AssocExp {
    match t {
        LieTree::Leaf(x) => {
            let mut m = AssocExp::new();
            m.insert(vec![*x], Rat::one());
            m
        }
        LieTree::Br(a, b) => bracket_exp(&tree_exp(a), &tree_exp(b)),
    }
}

/// Extract normal-form coordinates from an associative expansion of a Lie
/// element on the given label set: coefficients of the min-initial words.
pub fn normal_form_from_exp(exp: &AssocExp) -> Vec<(Rat, Vec<usize>)> {
    let Some(first) = exp.keys().next() else {
        return Vec::new();
    };
    let min = *first.iter().min().unwrap();
    exp.iter()
        .filter(|(w, _)| w[0] == min)
        .map(|(w, c)| (c.clone(), w.clone()))
        .collect()
}

/// Normal form of a Lie tree: combination of left-normed min-first words.
pub fn normal_form(t: &LieTree) -> Vec<(Rat, Vec<usize>)> {
    normal_form_from_exp(&tree_exp(t))
}

/// All left-normed basis words on a label set: min first, rest permuted.
pub fn basis_words(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    if sorted.is_empty() {
        return Vec::new();
    }
    let (min, rest) = (sorted[0], &sorted[1..]);
    permutations(rest)
        .into_iter()
        .map(|p| {
            let mut w = vec![min];
            w.extend(p);
            w
        })
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetry() {
        let t1 = LieTree::Br(Box::new(LieTree::Leaf(0)), Box::new(LieTree::Leaf(1)));
        let t2 = LieTree::Br(Box::new(LieTree::Leaf(1)), Box::new(LieTree::Leaf(0)));
        let n1 = normal_form(&t1);
        let n2 = normal_form(&t2);
        assert_eq!(n1.len(), 1);
        assert_eq!(n1[0].1, vec![0, 1]);
        assert_eq!(n1[0].0, Rat::one());
        assert_eq!(n2.len(), 1);
        assert_eq!(n2[0].0, Rat::from_int(-1));
    }

    #[test]
    fn jacobi_normalizes() {
        // [0,[1,2]] = [[0,1],2] - [[0,2],1]
        let t = LieTree::Br(
            Box::new(LieTree::Leaf(0)),
            Box::new(LieTree::Br(Box::new(LieTree::Leaf(1)), Box::new(LieTree::Leaf(2)))),
        );
        let mut n = normal_form(&t);
        n.sort_by(|a, b| a.1.cmp(&b.1));
        assert_eq!(
            n,
            vec![
                (Rat::one(), vec![0, 1, 2]),
                (Rat::from_int(-1), vec![0, 2, 1]),
            ]
        );
    }

    #[test]
    fn basis_count() {
        for b in 1..=5usize {
            let labels: Vec<usize> = (0..b).collect();
            assert_eq!(basis_words(&labels).len(), (1..b).product::<usize>().max(1));
        }
    }

    #[test]
    fn leftnormed_words_are_fixed_points() {
        for w in basis_words(&[0, 1, 2, 3]) {
            let nf = normal_form(&LieTree::left_normed(&w));
            assert_eq!(nf.len(), 1);
            assert_eq!(nf[0], (Rat::one(), w.clone()));
        }
    }

    #[test]
    fn expansions_of_basis_are_independent() {
        // sanity for the triangular-extraction argument at b = 4
        use crate::matrix::{rank, Mat};
        let words = basis_words(&[0, 1, 2, 3]);
        let mut all_keys = std::collections::BTreeSet::new();
        let exps: Vec<AssocExp> = words
            .iter()
            .map(|w| tree_exp(&LieTree::left_normed(w)))
            .collect();
        for e in &exps {
            all_keys.extend(e.keys().cloned());
        }
        let keys: Vec<Vec<usize>> = all_keys.into_iter().collect();
        let mut m = Mat::zero(keys.len(), exps.len());
        for (j, e) in exps.iter().enumerate() {
            for (i, k) in keys.iter().enumerate() {
                if let Some(c) = e.get(k) {
                    m.set(i, j, c.clone());
                }
            }
        }
        assert_eq!(rank(&m), words.len());
    }
}
