//! The operadic shift X{j}, realized by tensoring level-wise with the
//! endomorphism sequence of a one-dimensional space of degree -j.
//!
//! Λ_j(m) is one-dimensional of degree j(m-1); Σ_m acts through sgn^j. All
//! composition signs fall out of evaluating on generators of the underlying
//! graded line, giving s(m,i,r) = (-1)^{j(r-1)(i-1)} for slot i (1-based).

use crate::matrix::Mat;
use crate::rat::Rat;
use crate::space::{BasisElt, Space};
use crate::symseq::{Component, DgSymSeq, SymSeq, Truncation};

/// Degree of the generator of Λ_j(m).
pub fn lambda_degree(j: i64, m: usize) -> i64 {
    j * (m as i64 - 1)
}

/// Sign of λ_m ∘_i λ_r -> λ_{m+r-1}, slot i 1-based, r may be 0.
pub fn lambda_comp_sign(j: i64, _m: usize, i: usize, r: usize) -> i64 {
    let e = j * (r as i64 - 1) * (i as i64 - 1);
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the functorial map Λ_j(B) -> Λ_j(σB) for a leaf relabelling σ,
/// given the image list (σ(b) for b ∈ B ascending).
pub fn lambda_relabel_sign(j: i64, images: &[usize]) -> i64 {
    let mut inv = 0i64;
    for a in 0..images.len() {
        for b in (a + 1)..images.len() {
            if images[a] > images[b] {
                inv += 1;
            }
        }
    }
    if (j * inv).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The suspension sequence Λ_j itself.
pub fn suspension_seq(j: i64, trunc: Truncation) -> SymSeq {
    let mut comps = Vec::new();
    for m in 0..=trunc.max_arity {
        let sign = if j.rem_euclid(2) == 0 { Rat::one() } else { Rat::from_int(-1) };
        comps.push(Component {
            space: Space::line(format!("λ{}", m), lambda_degree(j, m)),
            transpositions: vec![Mat::identity(1).scale(&sign); m.saturating_sub(1)],
        });
    }
    SymSeq { trunc, comps }
}

/// X{j}: degrees shifted by j(m-1) per arity m, actions twisted by sgn^j.
pub fn shift_symseq(x: &SymSeq, j: i64) -> SymSeq {
    if j == 0 {
        return x.clone();
    }
    let mut comps = Vec::new();
    for (m, c) in x.comps.iter().enumerate() {
        let dl = lambda_degree(j, m);
        let basis = c
            .space
            .basis
            .iter()
            .map(|b| BasisElt::with_weight(format!("{}{{{}}}", b.name, j), b.degree + dl, b.weight))
            .collect();
        let sign = if j.rem_euclid(2) == 0 { Rat::one() } else { Rat::from_int(-1) };
        let transpositions = c.transpositions.iter().map(|t| t.scale(&sign)).collect();
        comps.push(Component {
            space: Space { basis },
            transpositions,
        });
    }
    SymSeq {
        trunc: x.trunc,
        comps,
    }
}

/// Differentials are untouched by the shift (the suspension factor sits on
/// the right of the tensor).
pub fn shift_dg(x: &DgSymSeq, j: i64) -> DgSymSeq {
    DgSymSeq {
        seq: shift_symseq(&x.seq, j),
        diff: x.diff.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symseq::Truncation;

    #[test]
    fn suspension_is_valid() {
        let t = Truncation::new(4, 4);
        for j in [-2i64, -1, 0, 1, 2, 3] {
            suspension_seq(j, t).validate().unwrap();
        }
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let t = Truncation::new(3, 4);
        let u = SymSeq::unit(t);
        assert!(shift_symseq(&u, 0).structurally_equal(&u));
    }

    #[test]
    fn shift_roundtrip() {
        let t = Truncation::new(3, 4);
        let mut s = SymSeq::zero(t);
        s.comps[2] = Component {
            space: Space::new(vec![BasisElt::new("x", 0), BasisElt::new("y", -1)]),
            transpositions: vec![Mat::from_entries(
                2,
                2,
                vec![
                    (0, 0, Rat::one()),
                    (1, 1, Rat::from_int(-1)),
                ],
            )],
        };
        s.validate().unwrap();
        let back = shift_symseq(&shift_symseq(&s, 1), -1);
        assert!(back.structurally_equal(&s));
        // degrees after a single shift: arity 2 gains j(m-1) = 1
        let sh = shift_symseq(&s, 1);
        assert_eq!(sh.space(2).degree(0), 1);
        assert_eq!(sh.space(2).degree(1), 0);
        // actions pick up the sign twist
        assert_eq!(sh.comps[2].transpositions[0].get(0, 0), Rat::from_int(-1));
    }

    #[test]
    fn comp_sign_formula() {
        // j odd: sign = (-1)^{(r-1)(i-1)}
        assert_eq!(lambda_comp_sign(1, 3, 1, 2), 1);
        assert_eq!(lambda_comp_sign(1, 3, 2, 2), -1);
        assert_eq!(lambda_comp_sign(1, 3, 2, 3), 1);
        assert_eq!(lambda_comp_sign(-1, 3, 2, 3), 1);
        assert_eq!(lambda_comp_sign(1, 3, 3, 2), 1);
        assert_eq!(lambda_comp_sign(1, 2, 2, 0), -1);
        assert_eq!(lambda_comp_sign(2, 3, 2, 3), 1);
    }
}
