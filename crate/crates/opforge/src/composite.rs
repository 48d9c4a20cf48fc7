//! Word models for the composition product.
//!
//! The tensor space behind (P∘Q)(n) is ⊕_k P(k) ⊗ Q^{⊠k}(n), spanned by
//! words (p; B_1..B_k; q_1..q_k): a basis element of P(k), an ordered list of
//! disjoint blocks covering {0..n-1} (block i feeding slot i, possibly empty
//! when Q(0) ≠ 0), and basis elements q_i ∈ Q(|B_i|). The symmetric group
//! Σ_n acts by relabelling inputs, Σ_k by permuting slots with Koszul signs.
//! Coinvariants under Σ_k give P∘Q, invariants give P∘₁Q.

use crate::matrix::{self, Mat};
use crate::perm::Perm;
use crate::rat::Rat;
use crate::space::{BasisElt, Space};
use crate::symseq::{Component, DgSymSeq, SymSeq, Truncation};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A single composition word at fixed (n, k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub outer: usize,
    /// f[x] = slot of input x; blocks are recovered as preimages
    pub f: Vec<usize>,
    pub inner: Vec<usize>,
}

impl Word {
    pub fn blocks(&self, k: usize) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); k];
        for (x, &s) in self.f.iter().enumerate() {
            blocks[s].push(x);
        }
        blocks
    }
}

/// Linear combination of words.
pub type WordVec = Vec<(Rat, Word)>;

/// All functions {0..n-1} -> {0..k-1} in lexicographic order.
/// For n = 0 there is exactly one (empty) function, even when k = 0.
pub fn all_functions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < k {
                break false;
            }
            cur[i] = 0;
        };
        if done {
            break;
        }
    }
    out
}

/// All multi-indices with idx[i] < dims[i], lexicographic; one empty index
/// when dims is empty; none if some dims[i] = 0.
pub fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    if dims.iter().any(|&d| d == 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; dims.len()];
    loop {
        out.push(cur.clone());
        let mut i = dims.len();
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < dims[i] {
                break false;
            }
            cur[i] = 0;
        };
        if done {
            break;
        }
    }
    out
}

/// The span of all words at fixed (n, k) for outer space O and inner sequence Q.
#[derive(Clone, Debug)]
pub struct WordSpace {
    pub n: usize,
    pub k: usize,
    pub words: Vec<Word>,
    pub space: Space,
    index: BTreeMap<(usize, Vec<usize>, Vec<usize>), usize>,
    /// degree of each inner factor of each word, cached for sign computations
    inner_degrees: Vec<Vec<i64>>,
    outer_degrees: Vec<i64>,
}

impl WordSpace {
    /// Enumerate all words with total weight ≤ max_weight. Deterministic:
    /// functions f in lexicographic order, then outer index, then inner
    /// multi-index.
    pub fn build(outer: &Space, inner: &SymSeq, n: usize, k: usize, max_weight: u32) -> WordSpace {
        let mut words = Vec::new();
        let mut basis = Vec::new();
        let mut index = BTreeMap::new();
        let mut inner_degrees = Vec::new();
        let mut outer_degrees = Vec::new();
        for fvec in all_functions(n, k) {
            let mut block_sizes = vec![0usize; k];
            for &s in &fvec {
                block_sizes[s] += 1;
            }
            if block_sizes.iter().any(|&b| inner.dim(b) == 0) {
                continue;
            }
            let blocks: Vec<Vec<usize>> = {
                let mut bl = vec![Vec::new(); k];
                for (x, &s) in fvec.iter().enumerate() {
                    bl[s].push(x);
                }
                bl
            };
            let dims: Vec<usize> = block_sizes.iter().map(|&b| inner.dim(b)).collect();
            for outer_i in 0..outer.dim() {
                for idx in multi_indices(&dims) {
                    let weight: u32 = outer.weight(outer_i)
                        + idx
                            .iter()
                            .zip(&block_sizes)
                            .map(|(&q, &b)| inner.space(b).weight(q))
                            .sum::<u32>();
                    if weight > max_weight {
                        continue;
                    }
                    let degree: i64 = outer.degree(outer_i)
                        + idx
                            .iter()
                            .zip(&block_sizes)
                            .map(|(&q, &b)| inner.space(b).degree(q))
                            .sum::<i64>();
                    let name = {
                        let parts: Vec<String> = blocks
                            .iter()
                            .zip(&idx)
                            .zip(&block_sizes)
                            .map(|((b, &q), &bs)| {
                                let labels: Vec<String> =
                                    b.iter().map(|x| (x + 1).to_string()).collect();
                                format!("{}:{}", inner.space(bs).basis[q].name, labels.join(","))
                            })
                            .collect();
                        format!("{}({})", outer.basis[outer_i].name, parts.join(")("))
                    };
                    index.insert((outer_i, fvec.clone(), idx.clone()), words.len());
                    inner_degrees.push(
                        idx.iter()
                            .zip(&block_sizes)
                            .map(|(&q, &b)| inner.space(b).degree(q))
                            .collect(),
                    );
                    outer_degrees.push(outer.degree(outer_i));
                    words.push(Word {
                        outer: outer_i,
                        f: fvec.clone(),
                        inner: idx,
                    });
                    basis.push(BasisElt::with_weight(name, degree, weight));
                }
            }
        }
        WordSpace {
            n,
            k,
            words,
            space: Space { basis },
            index,
            inner_degrees,
            outer_degrees,
        }
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn word_index(&self, outer: usize, f: &[usize], inner: &[usize]) -> Option<usize> {
        self.index.get(&(outer, f.to_vec(), inner.to_vec())).copied()
    }

    pub fn inner_degree(&self, word: usize, slot: usize) -> i64 {
        self.inner_degrees[word][slot]
    }

    pub fn outer_degree(&self, word: usize) -> i64 {
        self.outer_degrees[word]
    }

    /// Action of the adjacent transposition of inputs (j, j+1) ∈ Σ_n.
    pub fn act_inputs(&self, j: usize, inner: &SymSeq) -> Mat {
        let dim = self.dim();
        let mut m = Mat::zero(dim, dim);
        for (wi, w) in self.words.iter().enumerate() {
            let a = w.f[j];
            let b = w.f[j + 1];
            if a != b {
                let mut f2 = w.f.clone();
                f2.swap(j, j + 1);
                let ti = self
                    .word_index(w.outer, &f2, &w.inner)
                    .expect("input swap leaves the word space");
                m.add_to(ti, wi, Rat::one());
            } else {
                // both inputs in block a: induced adjacent transposition inside it
                let block: Vec<usize> = (0..w.f.len()).filter(|&x| w.f[x] == a).collect();
                let p = block.iter().position(|&x| x == j).unwrap();
                debug_assert_eq!(block[p + 1], j + 1);
                let t = &inner.comps[block.len()].transpositions[p];
                let q = w.inner[a];
                for r in 0..t.rows {
                    let v = t.get(r, q);
                    if v.is_zero() {
                        continue;
                    }
                    let mut inner2 = w.inner.clone();
                    inner2[a] = r;
                    let ti = self
                        .word_index(w.outer, &w.f, &inner2)
                        .expect("inner action leaves the word space");
                    m.add_to(ti, wi, v);
                }
            }
        }
        m
    }

    /// Action of the adjacent slot transposition (i, i+1) ∈ Σ_k, with the
    /// outer action matrix for that transposition.
    pub fn act_slots(&self, i: usize, outer_transp: &Mat) -> Mat {
        let dim = self.dim();
        let mut m = Mat::zero(dim, dim);
        for (wi, w) in self.words.iter().enumerate() {
            // Koszul sign from swapping the two inner tensor factors
            let da = self.inner_degrees[wi][i];
            let db = self.inner_degrees[wi][i + 1];
            let sign = if (da * db) % 2 != 0 { Rat::from_int(-1) } else { Rat::one() };
            let mut f2 = w.f.clone();
            for v in f2.iter_mut() {
                if *v == i {
                    *v = i + 1;
                } else if *v == i + 1 {
                    *v = i;
                }
            }
            let mut inner2 = w.inner.clone();
            inner2.swap(i, i + 1);
            for r in 0..outer_transp.rows {
                let v = outer_transp.get(r, w.outer);
                if v.is_zero() {
                    continue;
                }
                let ti = self
                    .word_index(r, &f2, &inner2)
                    .expect("slot action leaves the word space");
                m.add_to(ti, wi, &v * &sign);
            }
        }
        m
    }

    /// Action matrix of an arbitrary slot permutation ρ ∈ Σ_k.
    pub fn act_slots_perm(&self, rho: &Perm, outer_seq_action: impl Fn(usize) -> Mat) -> Mat {
        let mut m = Mat::identity(self.dim());
        for &i in &rho.adjacent_factorization() {
            m = m.mul(&self.act_slots(i, &outer_seq_action(i)));
        }
        m
    }

    /// Leibniz differential from outer and inner differentials.
    pub fn differential(&self, outer_diff: &Mat, inner: &DgSymSeq) -> Mat {
        let dim = self.dim();
        let mut m = Mat::zero(dim, dim);
        for (wi, w) in self.words.iter().enumerate() {
            // outer factor
            for r in 0..outer_diff.rows {
                let v = outer_diff.get(r, w.outer);
                if !v.is_zero() {
                    let ti = self
                        .word_index(r, &w.f, &w.inner)
                        .expect("differential leaves the word space");
                    m.add_to(ti, wi, v);
                }
            }
            // inner factors with Koszul signs
            let mut sign_deg = self.outer_degrees[wi];
            let blocks = w.blocks(self.k);
            for slot in 0..self.k {
                let b = blocks[slot].len();
                let d = &inner.diff[b];
                let q = w.inner[slot];
                let sgn = if sign_deg % 2 != 0 {
                    Rat::from_int(-1)
                } else {
                    Rat::one()
                };
                for r in 0..d.rows {
                    let v = d.get(r, q);
                    if v.is_zero() {
                        continue;
                    }
                    let mut inner2 = w.inner.clone();
                    inner2[slot] = r;
                    let ti = self
                        .word_index(w.outer, &w.f, &inner2)
                        .expect("differential leaves the word space");
                    m.add_to(ti, wi, &v * &sgn);
                }
                sign_deg += self.inner_degrees[wi][slot];
            }
        }
        m
    }
}

/// Which symmetrization the composite takes over Σ_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// P∘Q: coinvariants, basis by pivot-complement representatives
    Coinvariants,
    /// P∘₁Q: invariants, basis by kernel vectors
    Invariants,
}

/// One (n, k) summand after symmetrization.
#[derive(Clone, Debug)]
pub struct Part {
    pub ws: WordSpace,
    /// model -> word coordinates (lift for quotients, inclusion for invariants)
    pub from_model: Mat,
    /// word -> model coordinates (projection / retraction)
    pub to_model: Mat,
    pub dim: usize,
    /// offset of this part inside the assembled arity component
    pub offset: usize,
}

/// The assembled composite P∘Q or P∘₁Q with full word-level models.
pub struct Composite {
    pub variant: Variant,
    pub trunc: Truncation,
    pub outer: Arc<SymSeq>,
    pub inner: Arc<SymSeq>,
    /// parts[n][k]
    pub parts: Vec<Vec<Option<Part>>>,
    pub seq: Arc<SymSeq>,
}

impl Composite {
    pub fn build(variant: Variant, outer: Arc<SymSeq>, inner: Arc<SymSeq>) -> Composite {
        assert_eq!(outer.trunc, inner.trunc, "truncation mismatch");
        let trunc = outer.trunc;
        let mut parts: Vec<Vec<Option<Part>>> = Vec::new();
        let mut comps: Vec<Component> = Vec::new();
        for n in 0..=trunc.max_arity {
            let mut row: Vec<Option<Part>> = vec![None; trunc.max_arity + 1];
            let mut basis: Vec<BasisElt> = Vec::new();
            let mut offset = 0usize;
            for k in 0..=trunc.max_arity {
                if outer.dim(k) == 0 {
                    continue;
                }
                let ws = WordSpace::build(outer.space(k), &inner, n, k, trunc.max_weight);
                if ws.dim() == 0 {
                    continue;
                }
                let gens: Vec<Mat> = (0..k.saturating_sub(1))
                    .map(|i| ws.act_slots(i, &outer.comps[k].transpositions[i]))
                    .collect();
                let (to_model, from_model, names): (Mat, Mat, Vec<BasisElt>) = match variant {
                    Variant::Coinvariants => {
                        let dim = ws.dim();
                        let mut relations: Vec<Vec<Rat>> = Vec::new();
                        for g in &gens {
                            let gi = g.sub(&Mat::identity(dim));
                            for c in 0..dim {
                                let col = gi.column(c);
                                if col.iter().any(|v| !v.is_zero()) {
                                    relations.push(col);
                                }
                            }
                        }
                        let q = matrix::quotient_by(dim, &relations);
                        let names = q
                            .basis_cols
                            .iter()
                            .map(|&c| ws.space.basis[c].clone())
                            .collect();
                        (q.proj, q.lift, names)
                    }
                    Variant::Invariants => {
                        let dim = ws.dim();
                        let mats: Vec<Mat> = gens
                            .iter()
                            .map(|g| g.sub(&Mat::identity(dim)))
                            .collect();
                        let ker = matrix::joint_kernel(&mats, dim);
                        let incl = Mat::from_columns(dim, &ker);
                        let retr = if ker.is_empty() {
                            Mat::zero(0, dim)
                        } else {
                            matrix::left_inverse(&incl)
                        };
                        let names = ker
                            .iter()
                            .map(|v| {
                                let lead = v.iter().position(|x| !x.is_zero()).unwrap();
                                let b = &ws.space.basis[lead];
                                BasisElt::with_weight(format!("[{}]", b.name), b.degree, b.weight)
                            })
                            .collect();
                        (retr, incl, names)
                    }
                };
                let dim = from_model.cols;
                if dim == 0 {
                    continue;
                }
                row[k] = Some(Part {
                    ws,
                    from_model,
                    to_model,
                    dim,
                    offset,
                });
                offset += dim;
                basis.extend(names);
            }
            // assemble the component action matrices
            let total = offset;
            let mut transpositions = Vec::new();
            for j in 0..n.saturating_sub(1) {
                let mut t = Mat::zero(total, total);
                for k in 0..=trunc.max_arity {
                    if let Some(part) = &row[k] {
                        let act = part.ws.act_inputs(j, &inner);
                        let small = part.to_model.mul(&act).mul(&part.from_model);
                        for (r, c, v) in small.iter() {
                            t.set(part.offset + r, part.offset + c, v.clone());
                        }
                    }
                }
                transpositions.push(t);
            }
            comps.push(Component {
                space: Space { basis },
                transpositions,
            });
            parts.push(row);
        }
        let seq = Arc::new(SymSeq { trunc, comps });
        Composite {
            variant,
            trunc,
            outer,
            inner,
            parts,
            seq,
        }
    }

    pub fn part(&self, n: usize, k: usize) -> Option<&Part> {
        self.parts[n][k].as_ref()
    }

    /// Expand a composite-coordinate vector at arity n into word vectors per k.
    pub fn expand(&self, n: usize, v: &[Rat]) -> Vec<(usize, Vec<Rat>)> {
        let mut out = Vec::new();
        for k in 0..=self.trunc.max_arity {
            if let Some(part) = &self.parts[n][k] {
                let seg: Vec<Rat> = v[part.offset..part.offset + part.dim].to_vec();
                if seg.iter().any(|x| !x.is_zero()) {
                    out.push((k, part.from_model.apply(&seg)));
                }
            }
        }
        out
    }

    /// Project a word vector in the (n, k) part into composite coordinates.
    ///
    /// For the invariants variant the input must already be Σ_k-invariant
    /// (use `project_symmetrized` otherwise).
    pub fn project(&self, n: usize, k: usize, wv: &[Rat]) -> Vec<Rat> {
        let total = self.seq.dim(n);
        let mut out = vec![Rat::zero(); total];
        if let Some(part) = &self.parts[n][k] {
            let coords = part.to_model.apply(wv);
            for (i, v) in coords.into_iter().enumerate() {
                out[part.offset + i] = v;
            }
        }
        out
    }

    /// Project after averaging over Σ_k (needed to land in invariants from an
    /// arbitrary word vector; for coinvariants averaging is harmless).
    pub fn project_symmetrized(&self, n: usize, k: usize, wv: &[Rat]) -> Vec<Rat> {
        let Some(part) = &self.parts[n][k] else {
            return vec![Rat::zero(); self.seq.dim(n)];
        };
        let mut acc = vec![Rat::zero(); part.ws.dim()];
        let perms = Perm::all(k);
        let order = perms.len() as i64;
        for rho in &perms {
            let m = part
                .ws
                .act_slots_perm(rho, |i| self.outer.comps[k].transpositions[i].clone());
            for (i, v) in m.apply(wv).into_iter().enumerate() {
                acc[i] += v;
            }
        }
        let scale = Rat::from_frac(1, order);
        let acc: Vec<Rat> = acc.into_iter().map(|v| &v * &scale).collect();
        self.project(n, k, &acc)
    }

    /// The induced differential when outer and inner are dg.
    pub fn differential(&self, outer: &DgSymSeq, inner: &DgSymSeq) -> Vec<Mat> {
        let mut out = Vec::new();
        for n in 0..=self.trunc.max_arity {
            let total = self.seq.dim(n);
            let mut d = Mat::zero(total, total);
            for k in 0..=self.trunc.max_arity {
                if let Some(part) = &self.parts[n][k] {
                    let dw = part.ws.differential(&outer.diff[k], inner);
                    let small = part.to_model.mul(&dw).mul(&part.from_model);
                    for (r, c, v) in small.iter() {
                        d.set(part.offset + r, part.offset + c, v.clone());
                    }
                }
            }
            out.push(d);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symseq::Truncation;

    fn trunc() -> Truncation {
        Truncation::new(4, 8)
    }

    /// Comm as a bare symmetric sequence: one basis vector per arity ≥ 1.
    pub fn comm_seq(t: Truncation) -> SymSeq {
        let mut s = SymSeq::zero(t);
        for n in 1..=t.max_arity {
            s.comps[n] = Component::trivial_line(n, "c", 0);
        }
        s
    }

    #[test]
    fn unit_composites() {
        let t = trunc();
        let unit = Arc::new(SymSeq::unit(t));
        let comm = Arc::new(comm_seq(t));
        // I ∘ I = I
        let c = Composite::build(Variant::Coinvariants, unit.clone(), unit.clone());
        assert!(c.seq.structurally_equal(&SymSeq::unit(t)));
        // I ∘ Q = Q and P ∘ I = P on the nose
        let iq = Composite::build(Variant::Coinvariants, unit.clone(), comm.clone());
        assert!(iq.seq.structurally_equal(&comm));
        let pi = Composite::build(Variant::Coinvariants, comm.clone(), unit.clone());
        assert!(pi.seq.structurally_equal(&comm));
        // and for the invariants variant
        let iq1 = Composite::build(Variant::Invariants, unit.clone(), comm.clone());
        assert!(iq1.seq.structurally_equal(&comm));
    }

    #[test]
    fn comm_comm_dims() {
        let t = trunc();
        let comm = Arc::new(comm_seq(t));
        let c = Composite::build(Variant::Coinvariants, comm.clone(), comm.clone());
        // (Comm∘Comm)(2) has k=1 and k=2 summands
        assert_eq!(c.seq.dim(2), 2);
        let c1 = Composite::build(Variant::Invariants, comm.clone(), comm.clone());
        assert_eq!(c1.seq.dim(2), 2);
        // (Comm∘Comm)(n) dim = number of set partitions-ish with slots:
        // at n=3: k=1 (1), k=2 (partitions into 2 unordered nonempty: 3), k=3 (1)
        assert_eq!(c.seq.dim(3), 5);
        c.seq.validate().unwrap();
        c1.seq.validate().unwrap();
    }
}
