//! Permutations, adjacent-transposition factorizations, and Koszul signs.

/// A permutation of {0, .., n-1}, stored as images: perm[i] = σ(i).
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Adjacent transposition (i, i+1) in Σ_n.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, i + 1);
        Perm(v)
    }

    /// στ: first apply τ, then σ.
    pub fn compose(&self, tau: &Perm) -> Perm {
        assert_eq!(self.len(), tau.len());
        Perm(tau.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0usize; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Perm(v)
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.len()];
        let mut sign = 1i64;
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Factor into adjacent transpositions: σ = s_{i1} ∘ s_{i2} ∘ ... (apply right to left).
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        // bubble-sort the inverse image list; record swaps
        let mut v = self.0.clone();
        let n = v.len();
        let mut swaps = Vec::new();
        // sort v to the identity with adjacent swaps; each swap s_i applied on
        // the left of the remaining permutation
        loop {
            let mut done = true;
            for i in 0..n.saturating_sub(1) {
                if v[i] > v[i + 1] {
                    v.swap(i, i + 1);
                    swaps.push(i);
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        // we have s_{ik} ... s_{i1} σ = id, so σ = s_{i1} ... s_{ik}
        swaps.reverse();
        swaps
    }

    /// Enumerate all of Σ_n in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            if n < 2 {
                break;
            }
            let mut i = n - 1;
            while i > 0 && cur[i - 1] >= cur[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = n - 1;
            while cur[j] <= cur[i - 1] {
                j -= 1;
            }
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// Koszul sign of permuting a sequence of graded tokens.
///
/// `perm[i] = new position of token i`; the sign is the product of
/// (-1)^(deg a · deg b) over all pairs whose order is reversed.
pub fn koszul_sign(degrees: &[i64], perm: &Perm) -> i64 {
    assert_eq!(degrees.len(), perm.len());
    let mut sign = 1i64;
    for i in 0..degrees.len() {
        for j in (i + 1)..degrees.len() {
            if perm.apply(i) > perm.apply(j) && (degrees[i] * degrees[j]) % 2 != 0 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Koszul sign for sorting tokens at `positions` (with degrees) into
/// ascending position order, where ties are impossible.
pub fn koszul_sort_sign(positions: &[usize], degrees: &[i64]) -> i64 {
    assert_eq!(positions.len(), degrees.len());
    let mut sign = 1i64;
    for i in 0..positions.len() {
        for j in (i + 1)..positions.len() {
            if positions[i] > positions[j] && (degrees[i] * degrees[j]) % 2 != 0 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Count of inversions between two disjoint ascending sets: #{(a,b) ∈ A×B : a > b}.
pub fn inversions_between(a: &[usize], b: &[usize]) -> usize {
    let mut count = 0;
    for &x in a {
        for &y in b {
            if x > y {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_recomposes() {
        for p in Perm::all(4) {
            let mut q = Perm::identity(4);
            for &i in &p.adjacent_factorization() {
                q = q.compose(&Perm::adjacent(4, i));
            }
            // σ = s_{i1} ∘ s_{i2} ∘ ... as composition of maps
            let mut r = Perm::identity(4);
            for &i in p.adjacent_factorization().iter() {
                r = r.compose(&Perm::adjacent(4, i));
            }
            assert_eq!(r, p);
            assert_eq!(q, p);
            assert_eq!(p.sign(), if p.adjacent_factorization().len() % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn enumerate_lex() {
        let all = Perm::all(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], Perm(vec![0, 1, 2]));
        assert_eq!(all[5], Perm(vec![2, 1, 0]));
    }

    #[test]
    fn koszul_swap() {
        // swapping two odd tokens is -1
        let swap = Perm(vec![1, 0]);
        assert_eq!(koszul_sign(&[1, 1], &swap), -1);
        assert_eq!(koszul_sign(&[1, 2], &swap), 1);
        assert_eq!(koszul_sign(&[0, 1], &swap), 1);
    }

    #[test]
    fn inverse_compose() {
        for p in Perm::all(4) {
            assert_eq!(p.compose(&p.inverse()), Perm::identity(4));
        }
    }
}
