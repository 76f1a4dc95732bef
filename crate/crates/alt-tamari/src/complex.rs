//! Finite simplicial complexes on integer vertices.
//!
//! A complex is stored by its facets (inclusion-maximal faces) as bit sets
//! over a fixed vertex universe `0..n_vertices`.  The universe may contain
//! vertices that appear in no face.  Two degenerate complexes are
//! distinguished: the *void* complex (no faces at all, empty facet list) and
//! the *empty* complex `{∅}` (a single empty facet).
//!
//! Besides the usual face operations (links, deletions, joins, induced
//! subcomplexes, f-vectors, Euler characteristics) this module provides
//!
//! * vertex decomposability with replayable certificates: the search produces
//!   a [`VdCertificate`] tree whose validity can be re-checked independently
//!   of the search by [`SimplicialComplex::verify_vd`], and
//! * reduced Betti numbers over GF(2) from bit-packed boundary-matrix ranks,
//!   with an optional exact rational cross-check.

use crate::bits::Bits;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("operation needs a non-void complex")]
    VoidComplex,
    #[error("face enumeration exceeds cap of {cap} faces")]
    FaceCapExceeded { cap: usize },
    #[error("vertex {vertex} is out of range for a complex on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("certificate invalid: {0}")]
    BadCertificate(String),
    #[error("integer overflow during exact rational elimination")]
    RationalOverflow,
}

// ============================================================================
// Complexes
// ============================================================================

/// A simplicial complex given by its facets over vertices `0..n_vertices`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    /// Inclusion-maximal faces, deduplicated and sorted for determinism.
    facets: Vec<Bits>,
}

/// Default cap for full face enumerations.
pub const DEFAULT_FACE_CAP: usize = 10_000_000;

impl SimplicialComplex {
    /// Build a complex from generating faces: non-maximal and duplicate faces
    /// are pruned.  An empty `faces` list yields the void complex.
    #[must_use]
    pub fn from_faces(n_vertices: usize, faces: Vec<Bits>) -> Self {
        let mut faces = faces;
        faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut facets: Vec<Bits> = Vec::new();
        for f in faces {
            if !facets.iter().any(|g| f.is_subset(g)) {
                facets.push(f);
            }
        }
        facets.sort();
        SimplicialComplex { n_vertices, facets }
    }

    /// The void complex (no faces, not even the empty one).
    #[must_use]
    pub fn void(n_vertices: usize) -> Self {
        SimplicialComplex {
            n_vertices,
            facets: Vec::new(),
        }
    }

    /// The full simplex on a vertex set.
    #[must_use]
    pub fn simplex(n_vertices: usize, face: Bits) -> Self {
        SimplicialComplex {
            n_vertices,
            facets: vec![face],
        }
    }

    #[must_use]
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    #[must_use]
    pub fn facets(&self) -> &[Bits] {
        &self.facets
    }

    #[must_use]
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// A simplex has exactly one facet (this includes the empty complex).
    #[must_use]
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// Dimension: `None` for the void complex, `-1` for the empty complex.
    #[must_use]
    pub fn dim(&self) -> Option<i64> {
        self.facets
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
    }

    /// Is the complex pure (all facets of equal dimension)?
    #[must_use]
    pub fn is_pure(&self) -> bool {
        self.facets
            .windows(2)
            .all(|w| w[0].len() == w[1].len())
    }

    #[must_use]
    pub fn contains_face(&self, face: &Bits) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }

    /// All faces (including the empty face when the complex is non-void),
    /// sorted by dimension then lexicographically.  Errors if more than `cap`
    /// faces exist.
    pub fn faces_capped(&self, cap: usize) -> Result<Vec<Bits>, ComplexError> {
        if self.is_void() {
            return Ok(Vec::new());
        }
        let mut seen: HashMap<Bits, ()> = HashMap::new();
        let empty = Bits::new(self.n_vertices);
        seen.insert(empty, ());
        // Walk down from each facet, deduplicating across facets.
        let mut stack: Vec<Bits> = self.facets.clone();
        for f in &stack {
            seen.insert(f.clone(), ());
        }
        while let Some(f) = stack.pop() {
            if seen.len() > cap {
                return Err(ComplexError::FaceCapExceeded { cap });
            }
            for v in f.iter() {
                let mut g = f.clone();
                g.remove(v);
                if g.is_empty() {
                    continue;
                }
                if seen.insert(g.clone(), ()).is_none() {
                    stack.push(g);
                }
            }
        }
        if seen.len() > cap {
            return Err(ComplexError::FaceCapExceeded { cap });
        }
        let mut faces: Vec<Bits> = seen.into_keys().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(faces)
    }

    pub fn faces(&self) -> Result<Vec<Bits>, ComplexError> {
        self.faces_capped(DEFAULT_FACE_CAP)
    }

    /// Number of faces of each dimension: entry `k` is the number of
    /// `k`-dimensional faces.  The empty face is not counted.  The empty
    /// complex reports an empty vector.
    pub fn f_vector(&self) -> Result<Vec<u64>, ComplexError> {
        let faces = self.faces()?;
        let dim = match self.dim() {
            None | Some(-1) => return Ok(Vec::new()),
            Some(d) => d as usize,
        };
        let mut f = vec![0u64; dim + 1];
        for face in &faces {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        Ok(f)
    }

    /// Reduced Euler characteristic `χ̃ = Σ_k (-1)^k f_k − 1`; the void
    /// complex reports 0 and the empty complex −1.
    pub fn euler_reduced(&self) -> Result<i64, ComplexError> {
        if self.is_void() {
            return Ok(0);
        }
        let f = self.f_vector()?;
        let mut chi = -1i64;
        for (k, &c) in f.iter().enumerate() {
            let c = i64::try_from(c).expect("face count fits in i64");
            if k % 2 == 0 {
                chi += c;
            } else {
                chi -= c;
            }
        }
        Ok(chi)
    }

    /// Link of a face: `{F ∖ σ : σ ⊆ F, F facet}`.  Vertex universe is kept,
    /// so vertex identities are stable.  Void when no facet contains `σ`.
    #[must_use]
    pub fn link(&self, face: &Bits) -> SimplicialComplex {
        let mut facets: Vec<Bits> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(f))
            .map(|f| {
                let mut g = f.clone();
                g.subtract(face);
                g
            })
            .collect();
        facets.sort();
        facets.dedup();
        SimplicialComplex {
            n_vertices: self.n_vertices,
            facets,
        }
    }

    /// Deletion of a vertex: all faces avoiding `v`.
    #[must_use]
    pub fn deletion(&self, v: usize) -> SimplicialComplex {
        let faces = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.remove(v);
                g
            })
            .collect();
        SimplicialComplex::from_faces(self.n_vertices, faces)
    }

    /// Induced subcomplex on a vertex subset.
    #[must_use]
    pub fn induced(&self, keep: &Bits) -> SimplicialComplex {
        let faces = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.intersect_with(keep);
                g
            })
            .collect();
        SimplicialComplex::from_faces(self.n_vertices, faces)
    }

    /// Join: vertices of `other` are shifted by `self.n_vertices`.  The join
    /// with a void complex is void.
    #[must_use]
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n = self.n_vertices + other.n_vertices;
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                let mut h = Bits::from_iter(n, f.iter());
                for v in g.iter() {
                    h.insert(self.n_vertices + v);
                }
                facets.push(h);
            }
        }
        facets.sort();
        SimplicialComplex {
            n_vertices: n,
            facets,
        }
    }

    /// Vertices that appear in at least one facet.
    #[must_use]
    pub fn support(&self) -> Bits {
        let mut s = Bits::new(self.n_vertices);
        for f in &self.facets {
            s.union_with(f);
        }
        s
    }

    /// Is the complex flag, i.e. equal to the clique complex of its
    /// 1-skeleton?  (Vertices outside the support are ignored.)
    pub fn is_flag(&self) -> Result<bool, ComplexError> {
        if self.is_void() {
            return Ok(true);
        }
        let mut adj = vec![Bits::new(self.n_vertices); self.n_vertices];
        for f in self.faces()? {
            let vs = f.to_vec();
            if vs.len() == 2 {
                adj[vs[0]].insert(vs[1]);
                adj[vs[1]].insert(vs[0]);
            }
        }
        let support = self.support();
        let cliques = crate::bits::maximal_cliques(&adj, &support, DEFAULT_FACE_CAP)
            .ok_or(ComplexError::FaceCapExceeded { cap: DEFAULT_FACE_CAP })?;
        let mut sorted = cliques;
        sorted.sort();
        Ok(sorted == self.facets)
    }

    /// Renumber vertices: vertex `v` becomes `perm[v]`.  `perm` must be
    /// injective into `0..new_n`.
    #[must_use]
    pub fn relabel(&self, perm: &[usize], new_n: usize) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .map(|f| Bits::from_iter(new_n, f.iter().map(|v| perm[v])))
            .collect();
        SimplicialComplex::from_faces(new_n, facets)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, v) in facet.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "⟩")
    }
}

// ============================================================================
// Vertex decomposability
// ============================================================================

/// A replayable witness of vertex decomposability.  `Simplex` asserts the
/// complex has a single facet; `Decompose` names a shedding vertex and
/// recurses into the link and the deletion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VdCertificate {
    Simplex { facet: Vec<usize> },
    Decompose {
        vertex: usize,
        link: Box<VdCertificate>,
        deletion: Box<VdCertificate>,
    },
}

impl VdCertificate {
    /// Total number of nodes of the certificate tree.
    #[must_use]
    pub fn size(&self) -> usize {
        match self {
            VdCertificate::Simplex { .. } => 1,
            VdCertificate::Decompose { link, deletion, .. } => {
                1 + link.size() + deletion.size()
            }
        }
    }

    /// The shedding vertices along the leftmost (link-first) spine.
    #[must_use]
    pub fn shedding_sequence(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self;
        while let VdCertificate::Decompose {
            vertex, deletion, ..
        } = cur
        {
            out.push(*vertex);
            cur = deletion;
        }
        out
    }
}

/// Memoized search state for vertex decompositions.
#[derive(Default)]
pub struct VdSearch {
    /// Canonical facet list → shedding vertex that worked (`None` = not VD).
    memo: HashMap<Vec<Bits>, Option<usize>>,
}

impl VdSearch {
    #[must_use]
    pub fn new() -> Self {
        VdSearch::default()
    }

    /// Search for a vertex decomposition.  `hints` are tried first at the
    /// root and at every recursion level.  Returns `None` when the complex is
    /// not vertex decomposable.  The complex must not be void.
    pub fn decompose(
        &mut self,
        complex: &SimplicialComplex,
        hints: &[usize],
    ) -> Result<Option<VdCertificate>, ComplexError> {
        if complex.is_void() {
            return Err(ComplexError::VoidComplex);
        }
        Ok(self.go(complex, hints))
    }

    fn go(&mut self, complex: &SimplicialComplex, hints: &[usize]) -> Option<VdCertificate> {
        if complex.is_simplex() {
            return Some(VdCertificate::Simplex {
                facet: complex.facets()[0].to_vec(),
            });
        }
        let key = complex.facets().to_vec();
        if let Some(&choice) = self.memo.get(&key) {
            return choice.map(|v| self.build(complex, v, hints));
        }
        let support = complex.support();
        let candidates: Vec<usize> = hints
            .iter()
            .copied()
            .chain(support.iter())
            .filter(|&v| support.contains(v))
            .collect();
        let mut tried = Bits::new(complex.n_vertices());
        for v in candidates {
            if tried.contains(v) {
                continue;
            }
            tried.insert(v);
            let link = complex.link(&Bits::from_iter(complex.n_vertices(), [v]));
            let deletion = complex.deletion(v);
            // Shedding condition: no facet of the link survives as a facet of
            // the deletion.
            if link
                .facets()
                .iter()
                .any(|f| deletion.facets().binary_search(f).is_ok())
            {
                continue;
            }
            if self.go(&link, hints).is_some() && self.go(&deletion, hints).is_some() {
                self.memo.insert(key, Some(v));
                return Some(self.build(complex, v, hints));
            }
        }
        self.memo.insert(key, None);
        None
    }

    /// Rebuild a full certificate from memoized shedding choices.
    fn build(&mut self, complex: &SimplicialComplex, v: usize, hints: &[usize]) -> VdCertificate {
        let link = complex.link(&Bits::from_iter(complex.n_vertices(), [v]));
        let deletion = complex.deletion(v);
        let link_cert = self.go(&link, hints).expect("memoized as decomposable");
        let del_cert = self.go(&deletion, hints).expect("memoized as decomposable");
        VdCertificate::Decompose {
            vertex: v,
            link: Box::new(link_cert),
            deletion: Box::new(del_cert),
        }
    }
}

impl SimplicialComplex {
    /// Convenience entry point: search with a fresh memo table.
    pub fn vertex_decomposition(
        &self,
        hints: &[usize],
    ) -> Result<Option<VdCertificate>, ComplexError> {
        VdSearch::new().decompose(self, hints)
    }

    /// Replay a certificate against this complex, re-deriving every link and
    /// deletion and re-checking the shedding condition at every node.  This
    /// performs no search: a corrupted certificate is rejected.
    pub fn verify_vd(&self, cert: &VdCertificate) -> Result<(), ComplexError> {
        match cert {
            VdCertificate::Simplex { facet } => {
                if self.facets.len() != 1 {
                    return Err(ComplexError::BadCertificate(format!(
                        "claimed simplex but complex has {} facets",
                        self.facets.len()
                    )));
                }
                let claimed = Bits::from_iter(self.n_vertices, facet.iter().copied());
                if self.facets[0] != claimed {
                    return Err(ComplexError::BadCertificate(
                        "simplex facet mismatch".to_string(),
                    ));
                }
                Ok(())
            }
            VdCertificate::Decompose {
                vertex,
                link,
                deletion,
            } => {
                if *vertex >= self.n_vertices {
                    return Err(ComplexError::VertexOutOfRange {
                        vertex: *vertex,
                        n: self.n_vertices,
                    });
                }
                if !self.support().contains(*vertex) {
                    return Err(ComplexError::BadCertificate(format!(
                        "vertex {vertex} not in any facet"
                    )));
                }
                let lk = self.link(&Bits::from_iter(self.n_vertices, [*vertex]));
                let del = self.deletion(*vertex);
                if lk
                    .facets()
                    .iter()
                    .any(|f| del.facets().binary_search(f).is_ok())
                {
                    return Err(ComplexError::BadCertificate(format!(
                        "vertex {vertex} is not a shedding vertex"
                    )));
                }
                lk.verify_vd(link)?;
                del.verify_vd(deletion)
            }
        }
    }
}

// ============================================================================
// Betti numbers
// ============================================================================

/// Betti numbers in the tabulated convention: entry 0 is the number of
/// connected components (`β̃₀ + 1`), entry `k ≥ 1` is the reduced Betti
/// number `β̃_k`.  The empty and void complexes report an empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiNumbers(pub Vec<u64>);

impl fmt::Display for BettiNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// GF(2) rank of a set of sparse columns, each a strictly increasing list of
/// row indices.  Left-to-right reduction with the lowest entry of a column as
/// its pivot: a column is XOR-reduced (symmetric difference of sorted lists)
/// by the stored pivot column with the same lowest row until it becomes a new
/// pivot or empties.  Boundary matrices stay sparse under this reduction, so
/// the work is near-linear in the number of entries in practice.
fn rank_gf2(cols: Vec<Vec<u32>>) -> usize {
    let rows = cols
        .iter()
        .filter_map(|c| c.last())
        .max()
        .map_or(0, |&r| r as usize + 1);
    let mut pivot_of: Vec<usize> = vec![usize::MAX; rows];
    let mut pivots: Vec<Vec<u32>> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();
    let mut rank = 0;
    for mut col in cols {
        loop {
            let Some(&lead) = col.last() else { break };
            let p = pivot_of[lead as usize];
            if p == usize::MAX {
                pivot_of[lead as usize] = pivots.len();
                pivots.push(col);
                rank += 1;
                break;
            }
            sym_diff_into(&mut scratch, &col, &pivots[p]);
            std::mem::swap(&mut col, &mut scratch);
        }
    }
    rank
}

/// `out = a Δ b` for strictly increasing lists.
fn sym_diff_into(out: &mut Vec<u32>, a: &[u32], b: &[u32]) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// A sparse signed boundary-matrix column: `(row, sign)` pairs with the rows
/// strictly increasing and every sign `±1`.
type SignedColumn = Vec<(usize, i8)>;

impl SimplicialComplex {
    /// Reduced Betti numbers over GF(2), via ranks of the boundary maps of
    /// the reduced chain complex, reported in the [`BettiNumbers`]
    /// convention.
    pub fn betti_gf2(&self) -> Result<BettiNumbers, ComplexError> {
        self.betti_from_ranks(|cols| {
            Ok(rank_gf2(
                cols.iter()
                    .map(|c| {
                        c.iter()
                            .map(|&(r, _)| u32::try_from(r).expect("row index fits"))
                            .collect()
                    })
                    .collect(),
            ))
        })
    }

    /// Reduced Betti numbers over the rationals, via exact fraction-free
    /// elimination on the signed boundary matrices.  Errors on intermediate
    /// overflow.
    pub fn betti_rational(&self) -> Result<BettiNumbers, ComplexError> {
        self.betti_from_ranks(|cols| {
            rank_rational(cols).map_err(|()| ComplexError::RationalOverflow)
        })
    }

    fn betti_from_ranks<F: FnMut(Vec<SignedColumn>) -> Result<usize, ComplexError>>(
        &self,
        mut rank: F,
    ) -> Result<BettiNumbers, ComplexError> {
        let dim = match self.dim() {
            None | Some(-1) => return Ok(BettiNumbers(Vec::new())),
            Some(d) => d as usize,
        };
        let faces = self.faces()?;
        let mut by_dim: Vec<Vec<&Bits>> = vec![Vec::new(); dim + 1];
        for f in &faces {
            if !f.is_empty() {
                by_dim[f.len() - 1].push(f);
            }
        }
        let index: Vec<HashMap<&Bits, usize>> = by_dim
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
            .collect();
        // rank of ∂_k: C_k → C_{k-1}, with k = 0 mapping onto the empty face.
        let mut ranks = vec![0usize; dim + 2];
        ranks[0] = if by_dim[0].is_empty() { 0 } else { 1 };
        for k in 1..=dim {
            let cols: Vec<SignedColumn> = by_dim[k]
                .iter()
                .map(|f| {
                    // f = {v_0 < … < v_k}; ∂f = Σ_i (−1)^i (f ∖ v_i).
                    let mut col: SignedColumn = f
                        .iter()
                        .enumerate()
                        .map(|(i, v)| {
                            let mut sub = (*f).clone();
                            sub.remove(v);
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            (index[k - 1][&sub], sign)
                        })
                        .collect();
                    col.sort_unstable_by_key(|&(r, _)| r);
                    col
                })
                .collect();
            ranks[k] = rank(cols)?;
        }
        ranks[dim + 1] = 0;
        let mut betti = vec![0u64; dim + 1];
        for k in 0..=dim {
            let reduced = by_dim[k].len() - ranks[k] - ranks[k + 1];
            betti[k] = reduced as u64;
        }
        betti[0] += 1; // component-count convention
        Ok(BettiNumbers(betti))
    }
}

/// Exact rank over ℚ by fraction-free (Bareiss-style) elimination on i128
/// with checked arithmetic; errors on overflow.
fn rank_rational(cols: Vec<SignedColumn>) -> Result<usize, ()> {
    if cols.is_empty() {
        return Ok(0);
    }
    let rows = cols
        .iter()
        .flat_map(|c| c.iter().map(|&(r, _)| r + 1))
        .max()
        .unwrap_or(0);
    // Dense i128 matrix, rows × cols.
    let ncols = cols.len();
    let mut m: Vec<Vec<i128>> = vec![vec![0; ncols]; rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, s) in col {
            m[i][j] = i128::from(s);
        }
    }
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..ncols {
        // Find a pivot row at or below `rank`.
        let Some(pr) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let pivot = m[rank][col];
        for r in rank + 1..rows {
            for c in col + 1..ncols {
                let a = pivot.checked_mul(m[r][c]).ok_or(())?;
                let b = m[r][col].checked_mul(m[rank][c]).ok_or(())?;
                let num = a.checked_sub(b).ok_or(())?;
                debug_assert_eq!(num % prev_pivot, 0);
                m[r][c] = num / prev_pivot;
            }
            m[r][col] = 0;
        }
        prev_pivot = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

// ============================================================================
// Isomorphism testing
// ============================================================================

impl SimplicialComplex {
    /// Search for a simplicial isomorphism onto `other` (a bijection of
    /// support vertices mapping facets onto facets).  Returns the vertex map
    /// as `map[self_vertex] = other_vertex` for support vertices.  Intended
    /// for small complexes; the search is exponential in the worst case.
    #[must_use]
    pub fn isomorphism(&self, other: &SimplicialComplex) -> Option<Vec<(usize, usize)>> {
        let sup_a = self.support().to_vec();
        let sup_b = other.support().to_vec();
        if sup_a.len() != sup_b.len() || self.facets.len() != other.facets.len() {
            return None;
        }
        let sizes = |c: &SimplicialComplex| {
            let mut s: Vec<usize> = c.facets.iter().map(Bits::len).collect();
            s.sort_unstable();
            s
        };
        if sizes(self) != sizes(other) {
            return None;
        }
        // Per-vertex invariant: sorted multiset of sizes of incident facets.
        let profile = |c: &SimplicialComplex, v: usize| {
            let mut p: Vec<usize> = c
                .facets
                .iter()
                .filter(|f| f.contains(v))
                .map(Bits::len)
                .collect();
            p.sort_unstable();
            p
        };
        let prof_a: HashMap<usize, Vec<usize>> =
            sup_a.iter().map(|&v| (v, profile(self, v))).collect();
        let prof_b: HashMap<usize, Vec<usize>> =
            sup_b.iter().map(|&v| (v, profile(other, v))).collect();

        let mut map: HashMap<usize, usize> = HashMap::new();
        let mut used = Bits::new(other.n_vertices);
        if self.try_extend(other, &sup_a, 0, &prof_a, &prof_b, &mut map, &mut used) {
            let mut out: Vec<(usize, usize)> = map.into_iter().collect();
            out.sort_unstable();
            Some(out)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn try_extend(
        &self,
        other: &SimplicialComplex,
        sup_a: &[usize],
        idx: usize,
        prof_a: &HashMap<usize, Vec<usize>>,
        prof_b: &HashMap<usize, Vec<usize>>,
        map: &mut HashMap<usize, usize>,
        used: &mut Bits,
    ) -> bool {
        if idx == sup_a.len() {
            // Full map: check facets correspond exactly.
            let mut mapped: Vec<Bits> = self
                .facets
                .iter()
                .map(|f| Bits::from_iter(other.n_vertices, f.iter().map(|v| map[&v])))
                .collect();
            mapped.sort();
            return mapped == other.facets;
        }
        let v = sup_a[idx];
        for (&w, pb) in prof_b {
            if used.contains(w) || prof_a[&v] != *pb {
                continue;
            }
            // Partial consistency: pairs already mapped must preserve the
            // "share a facet" relation.
            let ok = map.iter().all(|(&v2, &w2)| {
                let share_a = self
                    .facets
                    .iter()
                    .any(|f| f.contains(v) && f.contains(v2));
                let share_b = other
                    .facets
                    .iter()
                    .any(|f| f.contains(w) && f.contains(w2));
                share_a == share_b
            });
            if !ok {
                continue;
            }
            map.insert(v, w);
            used.insert(w);
            if self.try_extend(other, sup_a, idx + 1, prof_a, prof_b, map, used) {
                return true;
            }
            map.remove(&v);
            used.remove(w);
        }
        false
    }
}

// ============================================================================
// Tests
// ============================================================================
