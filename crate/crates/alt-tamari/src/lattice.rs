//! Finite lattices presented by cover relations.
//!
//! Elements are `0..n`.  The constructor computes reachability (down-sets and
//! up-sets as bit sets), locates the bottom and top, and validates the input
//! at one of two levels:
//!
//! * [`FiniteLattice::from_covers`] — full validation: acyclicity,
//!   irredundant covers, unique bottom/top, and existence plus uniqueness of
//!   all pairwise joins and meets (quadratic in the element count);
//! * [`FiniteLattice::from_covers_structural`] — the same minus the pairwise
//!   join/meet sweep, for callers that construct lattices from operations
//!   already known to generate one (the combinatorial sweeps in this crate
//!   build hundreds of thousands of lattices and re-verify lattice-ness
//!   through the join-representation round trips instead).
//!
//! On top of the order structure the module computes join-irreducible
//! elements, the minimal join witness `λ(x ⋖ y)` of each cover (the unique
//! minimal `c` with `x ∨ c = y`), canonical join representations, and the
//! canonical join complex.

use crate::bits::Bits;
use crate::complex::SimplicialComplex;
use thiserror::Error;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("cover relation is cyclic")]
    CyclicCovers,
    #[error("not a lattice: {0} minimal elements")]
    MultipleBottoms(usize),
    #[error("not a lattice: {0} maximal elements")]
    MultipleTops(usize),
    #[error("cover ({lower}, {upper}) is redundant: a longer chain connects them")]
    RedundantCover { lower: usize, upper: usize },
    #[error("cover ({lower}, {upper}) out of range for {n} elements")]
    CoverOutOfRange { lower: usize, upper: usize, n: usize },
    #[error("not a lattice: elements {x} and {y} have no least upper bound")]
    NoJoin { x: usize, y: usize },
    #[error("not a lattice: elements {x} and {y} have no greatest lower bound")]
    NoMeet { x: usize, y: usize },
    #[error("({x}, {y}) is not a cover relation")]
    NotACover { x: usize, y: usize },
    #[error("cover ({x}, {y}) admits {count} minimal join witnesses instead of one")]
    NoUniqueJoinWitness { x: usize, y: usize, count: usize },
}

// ============================================================================
// Lattices
// ============================================================================

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    n: usize,
    covers: Vec<(usize, usize)>,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    /// `downsets[x] = {z : z ≤ x}` (includes `x`).
    downsets: Vec<Bits>,
    /// `upsets[x] = {z : z ≥ x}` (includes `x`); computed on first use —
    /// order queries and canonical representations run on down-sets alone,
    /// so bulk sweeps never pay for the dual closure.
    upsets: std::sync::OnceLock<Vec<Bits>>,
    bottom: usize,
    top: usize,
    /// Elements in some linear extension (bottom first).
    topo: Vec<usize>,
}

impl FiniteLattice {
    /// Build with full validation (see module docs).
    pub fn from_covers(n: usize, covers: Vec<(usize, usize)>) -> Result<Self, LatticeError> {
        let lat = Self::from_covers_structural(n, covers)?;
        lat.validate_joins_and_meets()?;
        Ok(lat)
    }

    /// Build with structural validation only: acyclicity, cover irredundancy,
    /// and unique bottom/top.  Pairwise joins/meets are not checked.
    pub fn from_covers_structural(
        n: usize,
        mut covers: Vec<(usize, usize)>,
    ) -> Result<Self, LatticeError> {
        assert!(n > 0, "a lattice has at least one element");
        covers.sort_unstable();
        covers.dedup();
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return Err(LatticeError::CoverOutOfRange {
                    lower: a,
                    upper: b,
                    n,
                });
            }
        }
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up_covers[a].push(b);
            down_covers[b].push(a);
        }

        // Topological order (Kahn), deterministic by smallest id first.
        let mut indeg: Vec<usize> = down_covers.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.sort_unstable_by(|a, b| b.cmp(a));
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            topo.push(v);
            for &w in &up_covers[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    // keep `ready` a descending stack for deterministic pops
                    let pos = ready.partition_point(|&u| u > w);
                    ready.insert(pos, w);
                }
            }
        }
        if topo.len() != n {
            return Err(LatticeError::CyclicCovers);
        }

        // Down-sets in topological order.
        let mut downsets = vec![Bits::new(n); n];
        for &v in &topo {
            let mut d = Bits::new(n);
            d.insert(v);
            for &w in &down_covers[v] {
                d.union_with(&downsets[w]);
            }
            downsets[v] = d;
        }

        // Redundant cover (a, b): some z ∉ {a,b} with a < z < b.  Any such
        // chain passes through a down-cover w ≠ a of b with a ≤ w, so testing
        // the down-covers of b suffices.
        for &(a, b) in &covers {
            if down_covers[b]
                .iter()
                .any(|&w| w != a && downsets[w].contains(a))
            {
                return Err(LatticeError::RedundantCover { lower: a, upper: b });
            }
        }

        let bottoms: Vec<usize> = (0..n).filter(|&v| down_covers[v].is_empty()).collect();
        if bottoms.len() != 1 {
            return Err(LatticeError::MultipleBottoms(bottoms.len()));
        }
        let tops: Vec<usize> = (0..n).filter(|&v| up_covers[v].is_empty()).collect();
        if tops.len() != 1 {
            return Err(LatticeError::MultipleTops(tops.len()));
        }

        Ok(FiniteLattice {
            n,
            covers,
            up_covers,
            down_covers,
            downsets,
            upsets: std::sync::OnceLock::new(),
            bottom: bottoms[0],
            top: tops[0],
            topo,
        })
    }

    /// Up-sets, computed on first use by the dual closure in reverse
    /// topological order.
    fn upsets(&self) -> &Vec<Bits> {
        self.upsets.get_or_init(|| {
            let n = self.n;
            let mut upsets = vec![Bits::new(n); n];
            for &v in self.topo.iter().rev() {
                let mut u = Bits::new(n);
                u.insert(v);
                for &w in &self.up_covers[v] {
                    u.union_with(&upsets[w]);
                }
                upsets[v] = u;
            }
            upsets
        })
    }

    fn validate_joins_and_meets(&self) -> Result<(), LatticeError> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.le(x, y) || self.le(y, x) {
                    continue;
                }
                self.join(x, y)?;
                self.meet(x, y)?;
            }
        }
        Ok(())
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false // a lattice has at least one element
    }

    #[must_use]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[must_use]
    pub fn top(&self) -> usize {
        self.top
    }

    /// Cover pairs `(lower, upper)`, sorted.
    #[must_use]
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    #[must_use]
    pub fn up_covers(&self, x: usize) -> &[usize] {
        &self.up_covers[x]
    }

    #[must_use]
    pub fn down_covers(&self, x: usize) -> &[usize] {
        &self.down_covers[x]
    }

    #[must_use]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.downsets[y].contains(x)
    }

    #[must_use]
    pub fn downset(&self, x: usize) -> &Bits {
        &self.downsets[x]
    }

    #[must_use]
    pub fn upset(&self, x: usize) -> &Bits {
        &self.upsets()[x]
    }

    /// A linear extension, bottom first.
    #[must_use]
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    /// Minimal elements of a subset: elements none of whose down-covers stay
    /// in the subset.
    #[must_use]
    pub fn minimal_elements(&self, set: &Bits) -> Vec<usize> {
        set.iter()
            .filter(|&v| self.down_covers[v].iter().all(|&w| !set.contains(w)))
            .collect()
    }

    /// Least upper bound.
    pub fn join(&self, x: usize, y: usize) -> Result<usize, LatticeError> {
        let upsets = self.upsets();
        let mut ub = upsets[x].clone();
        ub.intersect_with(&upsets[y]);
        let mins = self.minimal_elements(&ub);
        match mins.as_slice() {
            [j] => Ok(*j),
            _ => Err(LatticeError::NoJoin { x, y }),
        }
    }

    /// Greatest lower bound.
    pub fn meet(&self, x: usize, y: usize) -> Result<usize, LatticeError> {
        let mut lb = self.downsets[x].clone();
        lb.intersect_with(&self.downsets[y]);
        let maxs: Vec<usize> = lb
            .iter()
            .filter(|&v| self.up_covers[v].iter().all(|&w| !lb.contains(w)))
            .collect();
        match maxs.as_slice() {
            [m] => Ok(*m),
            _ => Err(LatticeError::NoMeet { x, y }),
        }
    }

    /// Join of a set of elements (empty set joins to the bottom).
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> Result<usize, LatticeError> {
        let mut acc = self.bottom;
        for x in xs {
            acc = self.join(acc, x)?;
        }
        Ok(acc)
    }

    /// Join-irreducible elements: exactly one down-cover.  Sorted by id.
    #[must_use]
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.down_covers[v].len() == 1)
            .collect()
    }

    /// The minimal join witness of a cover `x ⋖ y`: the unique minimal
    /// element of `{c : x ∨ c = y}`, equivalently the unique minimal element
    /// of `down(y) ∖ down(x)`.  Every minimal element of that difference is
    /// join-irreducible with its sole down-cover below `x`, so candidates are
    /// scanned among join-irreducibles only.  Errors when the minimum is not
    /// unique (the lattice is then not join-semidistributive) or when `(x,y)`
    /// is not a cover.
    pub fn lambda(&self, x: usize, y: usize, ji: &[usize]) -> Result<usize, LatticeError> {
        if !self.down_covers[y].contains(&x) {
            return Err(LatticeError::NotACover { x, y });
        }
        let mut found: Option<usize> = None;
        let mut count = 0;
        for &j in ji {
            if self.downsets[y].contains(j)
                && !self.downsets[x].contains(j)
                && self.downsets[x].contains(self.down_covers[j][0])
            {
                count += 1;
                found.get_or_insert(j);
            }
        }
        match (found, count) {
            (Some(j), 1) => Ok(j),
            _ => Err(LatticeError::NoUniqueJoinWitness { x, y, count }),
        }
    }

    /// Canonical join representation of `x`: the minimal join witnesses of
    /// its down-covers, as a sorted list of join-irreducibles.  The bottom
    /// gets the empty representation.
    pub fn canonical_join_rep(&self, x: usize, ji: &[usize]) -> Result<Vec<usize>, LatticeError> {
        let mut rep: Vec<usize> = self
            .down_covers[x]
            .iter()
            .map(|&w| self.lambda(w, x, ji))
            .collect::<Result<_, _>>()?;
        rep.sort_unstable();
        rep.dedup();
        Ok(rep)
    }

    /// Check that the canonical join representation of `x` joins back to `x`
    /// and is irredundant (dropping any member changes the join).
    pub fn verify_canonical_join_rep(
        &self,
        x: usize,
        ji: &[usize],
    ) -> Result<Vec<usize>, LatticeError> {
        let rep = self.canonical_join_rep(x, ji)?;
        if self.join_all(rep.iter().copied())? != x {
            return Err(LatticeError::NoJoin { x, y: x });
        }
        for skip in 0..rep.len() {
            let partial = self.join_all(
                rep.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &j)| j),
            )?;
            if partial == x {
                return Err(LatticeError::NoUniqueJoinWitness {
                    x,
                    y: x,
                    count: rep.len(),
                });
            }
        }
        Ok(rep)
    }

    /// Exhaustive join-semidistributivity check (`x∨y = x∨z ⟹ x∨(y∧z) = x∨y`);
    /// cubic, intended for small lattices.
    pub fn is_join_semidistributive(&self) -> Result<bool, LatticeError> {
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.join(x, y)?;
                for z in 0..self.n {
                    if self.join(x, z)? == xy {
                        let yz = self.meet(y, z)?;
                        if self.join(x, yz)? != xy {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

// ============================================================================
// Canonical join complex
// ============================================================================

/// Canonical join representations and per-cover minimal join witnesses — the
/// labelling data of the canonical join complex without the assembled
/// complex.
pub struct CoverWitnesses {
    /// Join-irreducibles in id order; vertex `i` of the complex is `ji[i]`.
    pub ji: Vec<usize>,
    /// `λ(x ⋖ y)` for each cover, aligned with [`FiniteLattice::covers`].
    pub cover_lambda: Vec<usize>,
    /// For each lattice element, its canonical representation as a vertex set.
    pub rep_faces: Vec<Bits>,
}

/// The canonical join complex together with its labelling data.
pub struct CanonicalJoinComplex {
    /// Join-irreducibles in id order; vertex `i` of the complex is `ji[i]`.
    pub ji: Vec<usize>,
    /// `λ(x ⋖ y)` for each cover, aligned with [`FiniteLattice::covers`].
    pub cover_lambda: Vec<usize>,
    /// For each lattice element, its canonical representation as a vertex set.
    pub rep_faces: Vec<Bits>,
    /// The complex generated by the representations.
    pub complex: SimplicialComplex,
}

impl FiniteLattice {
    /// Canonical join representations of all elements and the minimal join
    /// witness of every cover.  One λ computation per cover: the canonical
    /// representation of `y` is exactly `{λ(x ⋖ y) : x ⋖ y}`.
    ///
    /// With at most 64 join-irreducibles the witness scan is bit-parallel:
    /// `sig[e]` packs `{k : ji[k] ≤ e}` and `dsig[e]` packs
    /// `{k : ji[k]↓ ≤ e}` into single words (propagated along a linear
    /// extension), so the candidate set of a cover `x ⋖ y` is
    /// `sig[y] ∧ ¬sig[x] ∧ dsig[x]` — the same candidates
    /// [`FiniteLattice::lambda`] scans for.
    pub fn cover_witnesses(&self) -> Result<CoverWitnesses, LatticeError> {
        let ji = self.join_irreducibles();
        let mut ji_index = vec![usize::MAX; self.n];
        for (i, &j) in ji.iter().enumerate() {
            ji_index[j] = i;
        }
        let mut cover_lambda = Vec::with_capacity(self.covers.len());
        let mut rep_faces = vec![Bits::new(ji.len()); self.n];
        if ji.len() <= 64 {
            let mut sig = vec![0u64; self.n];
            let mut dsig = vec![0u64; self.n];
            for (k, &j) in ji.iter().enumerate() {
                sig[j] |= 1 << k;
                dsig[self.down_covers[j][0]] |= 1 << k;
            }
            for &v in &self.topo {
                let mut s = sig[v];
                let mut d = dsig[v];
                for &w in &self.down_covers[v] {
                    s |= sig[w];
                    d |= dsig[w];
                }
                sig[v] = s;
                dsig[v] = d;
            }
            for &(x, y) in &self.covers {
                let mask = sig[y] & !sig[x] & dsig[x];
                if mask.count_ones() != 1 {
                    return Err(LatticeError::NoUniqueJoinWitness {
                        x,
                        y,
                        count: mask.count_ones() as usize,
                    });
                }
                let k = mask.trailing_zeros() as usize;
                cover_lambda.push(ji[k]);
                rep_faces[y].insert(k);
            }
        } else {
            for &(x, y) in &self.covers {
                let lam = self.lambda(x, y, &ji)?;
                cover_lambda.push(lam);
                rep_faces[y].insert(ji_index[lam]);
            }
        }
        Ok(CoverWitnesses {
            ji,
            cover_lambda,
            rep_faces,
        })
    }

    /// Canonical join representations of all elements, assembled into a
    /// simplicial complex on the join-irreducibles, along with the minimal
    /// join witness of every cover (see [`FiniteLattice::cover_witnesses`]).
    pub fn canonical_join_complex(&self) -> Result<CanonicalJoinComplex, LatticeError> {
        let w = self.cover_witnesses()?;
        let complex = SimplicialComplex::from_faces(w.ji.len(), w.rep_faces.clone());
        Ok(CanonicalJoinComplex {
            ji: w.ji,
            cover_lambda: w.cover_lambda,
            rep_faces: w.rep_faces,
            complex,
        })
    }
}

// ============================================================================
// Tests
// ============================================================================
