//! Sparse matrices over the rationals and exact linear algebra.
//!
//! Elimination is fraction-free (Bareiss): rows are scaled to integer vectors
//! and pivoting uses the two-row Sylvester-identity update, which keeps all
//! intermediate entries integral and controls coefficient growth. Kernel,
//! image, rank and solving are derived from the resulting echelon form by
//! exact rational back-substitution.

use crate::rat::Rat;
use num::bigint::BigInt;
use num::{Integer, One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A sparse matrix over ℚ. Only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(24) {
            let row: Vec<String> = (0..self.cols.min(24))
                .map(|c| self.get(r, c).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, it: impl IntoIterator<Item = (usize, usize, Rat)>) -> Self {
        let mut m = Mat::zero(rows, cols);
        for (r, c, v) in it {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        if s.is_zero() {
            return Mat::zero(self.rows, self.cols);
        }
        let mut m = Mat::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.set(r, c, v * s);
        }
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        let mut m = self.clone();
        for (r, c, v) in other.iter() {
            m.add_to(r, c, v.clone());
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(&Rat::from_int(-1)))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        // group rhs by row for sparse row-times-matrix accumulation
        let mut rhs_rows: Vec<Vec<(usize, &Rat)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.iter() {
            rhs_rows[r].push((c, v));
        }
        let mut m = Mat::zero(self.rows, other.cols);
        for (r, k, v) in self.iter() {
            for &(c, w) in &rhs_rows[k] {
                m.add_to(r, c, v * w);
            }
        }
        m
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        let mut out = vec![Rat::zero(); self.rows];
        for (r, c, e) in self.iter() {
            if !v[c].is_zero() {
                out[r] += e * &v[c];
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.rows];
        for r in 0..self.rows {
            out[r] = self.get(r, c);
        }
        out
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Rat>]) -> Mat {
        let mut m = Mat::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    /// Kronecker product, no signs. Index (i1*r2+i2, j1*c2+j2).
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut m = Mat::zero(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, v1) in self.iter() {
            for (r2, c2, v2) in other.iter() {
                m.set(r1 * other.rows + r2, c1 * other.cols + c2, v1 * v2);
            }
        }
        m
    }

    /// Vertically stack `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "shape");
        let mut m = Mat::zero(self.rows + other.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.set(r, c, v.clone());
        }
        for (r, c, v) in other.iter() {
            m.set(self.rows + r, c, v.clone());
        }
        m
    }
}

/// Sparse integer row: sorted (col, coeff) pairs, coefficients nonzero.
type IRow = Vec<(usize, BigInt)>;

fn row_scale_to_int(cols: usize, entries: &[(usize, Rat)]) -> IRow {
    let _ = cols;
    if entries.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for (_, v) in entries {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IRow = entries
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    // divide out the content to keep numbers small
    let mut g = BigInt::zero();
    for (_, v) in &out {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in &mut out {
            *v /= &g;
        }
    }
    out
}

fn row_normalize_content(row: &mut IRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// coef_a*a + coef_b*b (columns merged), then exact division by `div`.
///
/// The division is exact by the Sylvester identity when used inside Bareiss
/// elimination with full row updates; a content-gcd fallback guards release
/// builds against misuse.
fn row_combine(a: &IRow, coef_a: &BigInt, b: &IRow, coef_b: &BigInt, div: &BigInt) -> IRow {
    let mut out: IRow = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        let (c, v) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let e = (a[i].0, coef_a * &a[i].1);
            i += 1;
            e
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let e = (b[j].0, coef_b * &b[j].1);
            j += 1;
            e
        } else {
            let e = (a[i].0, coef_a * &a[i].1 + coef_b * &b[j].1);
            i += 1;
            j += 1;
            e
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    if !div.is_one() {
        let exact = out.iter().all(|(_, v)| (v % div).is_zero());
        debug_assert!(exact, "Bareiss exact division failed");
        if exact {
            for (_, v) in &mut out {
                *v /= div;
            }
        } else {
            row_normalize_content(&mut out);
        }
    }
    out
}

/// Row echelon form computed by fraction-free elimination.
pub struct Echelon {
    pub cols: usize,
    /// (pivot column, integer row) in increasing pivot column order.
    pub rows: Vec<(usize, IRow)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Kernel basis by back-substitution, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let pivots = self.pivot_cols();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            // back-substitute from the bottom row up
            for (p, row) in self.rows.iter().rev() {
                let mut s = Rat::zero();
                let mut pivot_coef = Rat::zero();
                for (c, v) in row {
                    if c == p {
                        pivot_coef = Rat::from_bigint(v.clone());
                    } else if !x[*c].is_zero() {
                        s += &Rat::from_bigint(v.clone()) * &x[*c];
                    }
                }
                x[*p] = Rat::zero() - s / pivot_coef;
            }
            basis.push(x);
        }
        basis
    }
}

/// Fraction-free row echelon form of `m` (Bareiss one-step elimination).
pub fn echelon(m: &Mat) -> Echelon {
    let mut work: Vec<IRow> = {
        let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); m.rows];
        for (r, c, v) in m.iter() {
            rows[r].push((c, v.clone()));
        }
        rows.iter().map(|r| row_scale_to_int(m.cols, r)).collect()
    };
    let mut done: Vec<(usize, IRow)> = Vec::new();
    let mut prev_pivot = BigInt::one();
    loop {
        // deterministic pivot: smallest leading column, then first row in order
        let mut best: Option<(usize, usize)> = None; // (lead col, row idx)
        for (i, row) in work.iter().enumerate() {
            if let Some(&(c, _)) = row.first() {
                if best.map_or(true, |(bc, _)| c < bc) {
                    best = Some((c, i));
                }
            }
        }
        let Some((pc, pi)) = best else { break };
        let prow = work.swap_remove(pi);
        let pval = prow
            .iter()
            .find(|(c, _)| *c == pc)
            .map(|(_, v)| v.clone())
            .unwrap();
        // Full Bareiss update: every remaining row is transformed, including
        // those with a zero coefficient in the pivot column. Skipping them
        // would break the exactness of the division by the previous pivot.
        for row in work.iter_mut() {
            let coef = row
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(BigInt::zero);
            *row = row_combine(row, &pval, &prow, &(-coef), &prev_pivot);
        }
        prev_pivot = pval;
        done.push((pc, prow));
    }
    done.sort_by_key(|(p, _)| *p);
    Echelon { cols: m.cols, rows: done }
}

/// Rank, kernel basis, and image basis (the original pivot columns).
pub fn rank_kernel_image(m: &Mat) -> (usize, Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let ech = echelon(m);
    let rank = ech.rank();
    let kernel = ech.kernel_basis();
    let image: Vec<Vec<Rat>> = ech.pivot_cols().iter().map(|&c| m.column(c)).collect();
    (rank, kernel, image)
}

pub fn rank(m: &Mat) -> usize {
    echelon(m).rank()
}

/// Basis of the kernel of `m` (as column vectors x with m·x = 0).
pub fn kernel_basis(m: &Mat) -> Vec<Vec<Rat>> {
    echelon(m).kernel_basis()
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinError {
    #[error("shape")]
    Shape,
}

/// Solve m·x = b exactly. `None` iff b is not in the column span of m.
pub fn solve_linear(m: &Mat, b: &[Rat]) -> Result<Option<Vec<Rat>>, LinError> {
    if b.len() != m.rows {
        return Err(LinError::Shape);
    }
    // augment [m | b] and eliminate; a pivot in the b-column means inconsistency
    let mut aug = Mat::zero(m.rows, m.cols + 1);
    for (r, c, v) in m.iter() {
        aug.set(r, c, v.clone());
    }
    for (r, v) in b.iter().enumerate() {
        if !v.is_zero() {
            aug.set(r, m.cols, v.clone());
        }
    }
    let ech = echelon(&aug);
    if ech.pivot_cols().contains(&m.cols) {
        return Ok(None);
    }
    // particular solution: free variables set to zero
    let mut x = vec![Rat::zero(); m.cols];
    for (p, row) in ech.rows.iter().rev() {
        let mut s = Rat::zero();
        let mut pivot_coef = Rat::zero();
        for (c, v) in row {
            if c == p {
                pivot_coef = Rat::from_bigint(v.clone());
            } else if *c == m.cols {
                // augmented column: move to rhs
                s += Rat::from_bigint(-v.clone());
            } else if !x[*c].is_zero() {
                s += &Rat::from_bigint(v.clone()) * &x[*c];
            }
        }
        x[*p] = Rat::zero() - s / pivot_coef;
    }
    debug_assert_eq!(&m.apply(&x), b);
    Ok(Some(x))
}

/// For a full-column-rank matrix `k`, a retraction r with r·k = I.
///
/// Used to express vectors of a subspace in the coordinates of its basis.
pub fn left_inverse(k: &Mat) -> Mat {
    let n = k.cols;
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    // Solve k^T k x = k^T e_j? Avoid normal equations: solve via augmented
    // elimination on k with each unit target restricted to pivot rows.
    // Simpler exact route: solve k · x_j = each column of identity restricted
    // to the span; instead we solve kᵀ-system: find r as solution of kᵀ rᵀ = I.
    let kt = k.transpose();
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let x = solve_linear(&kt, &e)
            .expect("shape")
            .expect("matrix does not have full column rank");
        cols.push(x);
    }
    // cols[j] solves kᵀ x = e_j, i.e. xᵀ k = e_jᵀ: rows of the retraction
    let mut r = Mat::zero(n, k.rows);
    for (j, x) in cols.iter().enumerate() {
        for (i, v) in x.iter().enumerate() {
            if !v.is_zero() {
                r.set(j, i, v.clone());
            }
        }
    }
    debug_assert_eq!(r.mul(k), Mat::identity(n));
    r
}

/// Quotient of ℚ^dim by the span of `relations` (given as vectors).
///
/// The quotient basis is the set of non-pivot coordinates ("pivot-complement
/// columns"); `proj` maps a vector to quotient coordinates, `lift` sends a
/// quotient basis vector to its representative unit vector.
pub struct Quotient {
    pub dim: usize,
    /// indices of the representative (free) coordinates
    pub basis_cols: Vec<usize>,
    pub proj: Mat,
    pub lift: Mat,
}

pub fn quotient_by(dim: usize, relations: &[Vec<Rat>]) -> Quotient {
    let mut rel = Mat::zero(relations.len(), dim);
    for (i, r) in relations.iter().enumerate() {
        assert_eq!(r.len(), dim);
        for (j, v) in r.iter().enumerate() {
            if !v.is_zero() {
                rel.set(i, j, v.clone());
            }
        }
    }
    let ech = echelon(&rel);
    let pivots = ech.pivot_cols();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; dim];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let basis_cols: Vec<usize> = (0..dim).filter(|&c| !is_pivot[c]).collect();
    let col_index: BTreeMap<usize, usize> = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    // express each pivot coordinate in terms of free coordinates:
    // from the reduced form of the relation rows. Back-substitute to get, for
    // each pivot p, [e_p] = sum over free f of coef * [e_f].
    // We compute the full reduced expression by processing echelon rows bottom-up.
    let mut expr: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new(); // pivot -> free expansion
    for (p, row) in ech.rows.iter().rev() {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        let mut pivot_coef = Rat::zero();
        for (c, v) in row {
            if c == p {
                pivot_coef = Rat::from_bigint(v.clone());
            } else {
                let coef = Rat::from_bigint(v.clone());
                if let Some(sub) = expr.get(c) {
                    for (f, s) in sub {
                        let add = &coef * s;
                        *acc.entry(*f).or_insert_with(Rat::zero) += add;
                    }
                } else {
                    *acc.entry(*c).or_insert_with(Rat::zero) += coef;
                }
            }
        }
        // pivot_coef * e_p + acc = 0 in the quotient
        let inv = pivot_coef.recip().neg();
        let e: Vec<(usize, Rat)> = acc
            .into_iter()
            .map(|(f, v)| (f, &v * &inv))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        expr.insert(*p, e);
    }
    let mut proj = Mat::zero(basis_cols.len(), dim);
    for c in 0..dim {
        if let Some(&qi) = col_index.get(&c) {
            proj.set(qi, c, Rat::one());
        } else {
            for (f, v) in expr.get(&c).unwrap() {
                proj.set(col_index[f], c, v.clone());
            }
        }
    }
    let mut lift = Mat::zero(dim, basis_cols.len());
    for (qi, &c) in basis_cols.iter().enumerate() {
        lift.set(c, qi, Rat::one());
    }
    Quotient {
        dim,
        basis_cols,
        proj,
        lift,
    }
}

/// Basis of the joint kernel of several matrices (stacked).
pub fn joint_kernel(mats: &[Mat], dim: usize) -> Vec<Vec<Rat>> {
    if mats.is_empty() {
        return (0..dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); dim];
                v[i] = Rat::one();
                v
            })
            .collect();
    }
    let mut stacked = mats[0].clone();
    for m in &mats[1..] {
        stacked = stacked.vstack(m);
    }
    kernel_basis(&stacked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, data: &[(usize, usize, i64)]) -> Mat {
        Mat::from_entries(
            rows,
            cols,
            data.iter().map(|&(r, c, v)| (r, c, Rat::from_int(v))),
        )
    }

    #[test]
    fn empty_matrix() {
        let z = Mat::zero(0, 0);
        let (rank, ker, im) = rank_kernel_image(&z);
        assert_eq!(rank, 0);
        assert!(ker.is_empty());
        assert!(im.is_empty());
    }

    #[test]
    fn identity_rank() {
        let (rank, ker, _) = rank_kernel_image(&Mat::identity(3));
        assert_eq!(rank, 3);
        assert!(ker.is_empty());
    }

    #[test]
    fn rank_one_kernel() {
        // [[1,2],[2,4]] has rank 1, kernel spanned by (2,-1) up to scale
        let a = m(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        let (rank, ker, im) = rank_kernel_image(&a);
        assert_eq!(rank, 1);
        assert_eq!(ker.len(), 1);
        let k = &ker[0];
        // proportional to (2,-1): check a·k=0 and k ≠ 0
        assert_eq!(a.apply(k), vec![Rat::zero(), Rat::zero()]);
        assert!(!k.iter().all(|v| v.is_zero()));
        // ratio k0/k1 = -2
        assert_eq!(&k[0] * &Rat::one(), &k[1] * &Rat::from_int(-2));
        assert_eq!(im.len(), 1);
    }

    #[test]
    fn rank_nullity() {
        let a = m(
            3,
            4,
            &[(0, 0, 1), (0, 2, 3), (1, 1, 2), (1, 3, 1), (2, 0, 2), (2, 2, 6)],
        );
        let (rank, ker, _) = rank_kernel_image(&a);
        assert_eq!(rank + ker.len(), 4);
        for k in &ker {
            assert!(a.apply(k).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn solve_examples() {
        // identity
        let b = vec![Rat::from_int(5), Rat::from_int(-3)];
        let x = solve_linear(&Mat::identity(2), &b).unwrap().unwrap();
        assert_eq!(x, b);
        // zero matrix, b != 0 -> none
        let z = Mat::zero(2, 2);
        assert_eq!(solve_linear(&z, &b).unwrap(), None);
        // [[2]] x = (3) -> 3/2
        let a = m(1, 1, &[(0, 0, 2)]);
        let x = solve_linear(&a, &[Rat::from_int(3)]).unwrap().unwrap();
        assert_eq!(x[0], Rat::from_frac(3, 2));
        // dimension mismatch
        assert_eq!(solve_linear(&a, &b), Err(LinError::Shape));
    }

    #[test]
    fn quotient_basics() {
        // Q^2 / span{(1,1)}: one-dimensional
        let q = quotient_by(2, &[vec![Rat::one(), Rat::one()]]);
        assert_eq!(q.basis_cols.len(), 1);
        assert_eq!(q.proj.mul(&q.lift), Mat::identity(1));
        // [e_pivot] = -[e_free]
        let e0 = q.proj.apply(&[Rat::one(), Rat::zero()]);
        let e1 = q.proj.apply(&[Rat::zero(), Rat::one()]);
        assert_eq!(e0[0], e1[0].clone().neg());
    }

    #[test]
    fn left_inverse_works() {
        let k = m(3, 2, &[(0, 0, 1), (1, 0, 2), (1, 1, 1), (2, 1, 3)]);
        let r = left_inverse(&k);
        assert_eq!(r.mul(&k), Mat::identity(2));
    }

    #[test]
    fn fraction_entries() {
        let a = Mat::from_entries(
            2,
            2,
            vec![
                (0, 0, Rat::from_frac(1, 2)),
                (0, 1, Rat::from_frac(1, 3)),
                (1, 0, Rat::from_frac(3, 2)),
                (1, 1, Rat::from_frac(1, 4)),
            ],
        );
        assert_eq!(rank(&a), 2);
        // and a singular fractional matrix
        let b = Mat::from_entries(
            2,
            2,
            vec![
                (0, 0, Rat::from_frac(1, 2)),
                (0, 1, Rat::from_frac(1, 3)),
                (1, 0, Rat::from_frac(3, 2)),
                (1, 1, Rat::from_frac(1, 1)),
            ],
        );
        assert_eq!(rank(&b), 1);
    }
}
