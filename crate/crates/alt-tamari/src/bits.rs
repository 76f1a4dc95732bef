//! Compact bit sets over `u64` blocks.
//!
//! The combinatorial sweeps in this crate manipulate hundreds of thousands of
//! small subsets (faces of complexes, down-sets of lattices), so subsets are
//! stored as packed bit vectors with cheap word-wise set algebra rather than as
//! hash sets.

/// A fixed-universe bit set.  The universe size is implicit: all sets taking
/// part in one operation must have been created with the same `capacity`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    /// Empty set over a universe of `capacity` elements.
    #[must_use]
    pub fn new(capacity: usize) -> Self {
        Bits {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    /// Set with every element of the `capacity`-element universe present.
    #[must_use]
    pub fn full(capacity: usize) -> Self {
        let mut b = Bits::new(capacity);
        for (i, w) in b.words.iter_mut().enumerate() {
            let lo = i * 64;
            *w = if capacity >= lo + 64 {
                !0
            } else if capacity > lo {
                (1u64 << (capacity - lo)) - 1
            } else {
                0
            };
        }
        b
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[must_use]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self ⊆ other`.
    #[must_use]
    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    #[must_use]
    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Smallest element, if any.
    #[must_use]
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterate elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }

    /// Elements as a sorted vector.
    #[must_use]
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[must_use]
    pub fn from_iter<I: IntoIterator<Item = usize>>(capacity: usize, iter: I) -> Self {
        let mut b = Bits::new(capacity);
        for i in iter {
            b.insert(i);
        }
        b
    }
}

// ============================================================================
// Maximal cliques
// ============================================================================

/// All maximal cliques of the graph restricted to `universe`, given as
/// symmetric adjacency bit sets (Bron–Kerbosch with pivoting).  Output is
/// sorted for determinism.  Isolated vertices of `universe` form their own
/// singleton cliques; an empty universe yields the empty clique.  Returns
/// `None` when more than `cap` cliques exist.
#[must_use]
pub fn maximal_cliques(adjacency: &[Bits], universe: &Bits, cap: usize) -> Option<Vec<Bits>> {
    let n = adjacency.len();
    let mut out = Vec::new();
    let mut r = Bits::new(n);
    let mut p = universe.clone();
    let mut x = Bits::new(n);
    if !bron_kerbosch(adjacency, &mut r, &mut p, &mut x, &mut out, cap) {
        return None;
    }
    out.sort();
    Some(out)
}

/// Number of cliques of each size in the graph restricted to `universe`
/// (index `k` counts cliques on `k` vertices, so index 0 counts the empty
/// clique).  Visits every clique exactly once by extending only with
/// neighbours larger than the current maximum vertex; no clique is ever
/// materialised, so this stays cheap even when the clique complex would be
/// large.
#[must_use]
pub fn count_cliques_by_size(adjacency: &[Bits], universe: &Bits) -> Vec<u64> {
    fn extend(
        adj: &[Bits],
        cand: &[usize],
        depth: usize,
        scratch: &mut Vec<Vec<usize>>,
        counts: &mut Vec<u64>,
    ) {
        if counts.len() <= depth + 1 {
            counts.push(0);
        }
        for (i, &v) in cand.iter().enumerate() {
            counts[depth + 1] += 1;
            if scratch.len() <= depth {
                scratch.push(Vec::new());
            }
            let mut next = std::mem::take(&mut scratch[depth]);
            next.clear();
            next.extend(cand[i + 1..].iter().copied().filter(|&w| adj[v].contains(w)));
            if !next.is_empty() {
                extend(adj, &next, depth + 1, scratch, counts);
            }
            scratch[depth] = next;
        }
    }
    let verts: Vec<usize> = universe.iter().collect();
    let mut counts = vec![1];
    let mut scratch = Vec::new();
    extend(adjacency, &verts, 0, &mut scratch, &mut counts);
    while counts.len() > 1 && *counts.last().expect("nonempty") == 0 {
        counts.pop();
    }
    counts
}

fn bron_kerbosch(
    adj: &[Bits],
    r: &mut Bits,
    p: &mut Bits,
    x: &mut Bits,
    out: &mut Vec<Bits>,
    cap: usize,
) -> bool {
    if p.is_empty() && x.is_empty() {
        if out.len() >= cap {
            return false;
        }
        out.push(r.clone());
        return true;
    }
    // Pivot: vertex of P ∪ X with the most neighbours inside P.
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| {
            let mut t = p.clone();
            t.intersect_with(&adj[u]);
            t.len()
        })
        .expect("P ∪ X nonempty here");
    let mut candidates = p.clone();
    candidates.subtract(&adj[pivot]);
    for v in candidates.iter() {
        let mut p2 = p.clone();
        p2.intersect_with(&adj[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&adj[v]);
        r.insert(v);
        let ok = bron_kerbosch(adj, r, &mut p2, &mut x2, out, cap);
        r.remove(v);
        if !ok {
            return false;
        }
        p.remove(v);
        x.insert(v);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let mut a = Bits::new(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.len(), 3);
        assert_eq!(a.to_vec(), vec![0, 64, 129]);
        assert_eq!(a.first(), Some(0));

        let b = Bits::from_iter(130, [64, 129]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(a.intersects(&b));

        let mut c = a.clone();
        c.subtract(&b);
        assert_eq!(c.to_vec(), vec![0]);

        c.union_with(&b);
        assert_eq!(c, a);

        c.intersect_with(&b);
        assert_eq!(c, b);

        let full = Bits::full(130);
        assert_eq!(full.len(), 130);
        assert!(a.is_subset(&full));
    }

    #[test]
    fn clique_counts_match_direct_enumeration() {
        // 4-cycle 0-1-2-3 plus chord 0-2: cliques are ∅, four vertices,
        // five edges, and the two triangles {0,1,2}, {0,2,3}.
        let n = 4;
        let mut adj = vec![Bits::new(n); n];
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        assert_eq!(count_cliques_by_size(&adj, &Bits::full(n)), vec![1, 4, 5, 2]);
        // Restricting the universe drops cliques through the missing vertex.
        let no3 = Bits::from_iter(n, [0, 1, 2]);
        assert_eq!(count_cliques_by_size(&adj, &no3), vec![1, 3, 3, 1]);
        // Edgeless universe: only the empty clique and singletons.
        let lone = Bits::from_iter(n, [1, 3]);
        assert_eq!(count_cliques_by_size(&adj, &lone), vec![1, 2]);
    }

    #[test]
    fn cliques_of_small_graphs() {
        // Path 0-1-2 plus isolated 3: maximal cliques {01}, {12}, {3}.
        let n = 4;
        let mut adj = vec![Bits::new(n); n];
        for (a, b) in [(0, 1), (1, 2)] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let cliques = maximal_cliques(&adj, &Bits::full(n), usize::MAX).unwrap();
        let mut as_vecs: Vec<Vec<usize>> = cliques.iter().map(Bits::to_vec).collect();
        as_vecs.sort();
        assert_eq!(as_vecs, vec![vec![0, 1], vec![1, 2], vec![3]]);

        // Complete graph K4: one clique.
        let mut adj = vec![Bits::new(4); 4];
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        let cliques = maximal_cliques(&adj, &Bits::full(4), usize::MAX).unwrap();
        assert_eq!(cliques.len(), 1);
        assert_eq!(cliques[0].len(), 4);
    }
}
