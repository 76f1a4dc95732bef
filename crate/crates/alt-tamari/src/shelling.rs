//! Explicit shelling orders for box complexes, with replayable validation,
//! homology facets, and Betti numbers read off the restriction sets.
//!
//! Both orders start from the pivot facet `F₀` of [`decomposing_vertices`]
//! and use the pivot labels.  The *refined* order replays the vertex
//! decomposition, growing the complex one box at a time and emitting the new
//! facets at each step; the *plain* order rearranges it by which labels the
//! facets carry (heaviest label sets first), keeping the refined relative
//! order within a label set.  Every produced order is validated facet by
//! facet — an invalid order is an error, never a silent fallback.

use crate::bits::{maximal_cliques, Bits};
use crate::boxcomplex::{decomposing_vertices, BoxComplex, BoxError, BoxId};
use crate::complex::{BettiNumbers, ComplexError, SimplicialComplex};
use crate::paths::{
    enumerate_nu_dyck, IncrementVector, NePath, NuDyckPath, PathError, Shape,
};
use std::collections::HashSet;
use thiserror::Error;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Error)]
pub enum ShellError {
    #[error("box {index} carries no pivot label; the shelling order is undefined")]
    UnlabeledBox { index: usize },
    #[error("not a shelling: facet {j} meets facet {k} only in codimension two or more")]
    NotAShelling { j: usize, k: usize },
    #[error("the proposed order does not list the facets of the complex exactly once")]
    FacetSetMismatch,
    #[error("no box sheds the remaining {facets} facets; the complex is not vertex decomposable")]
    NoSheddingVertex { facets: usize },
    #[error("rank sequence has length {got} but the shape has {expect} rows")]
    RankLength { got: usize, expect: usize },
    #[error("rank {rank} exceeds the {available} compatible boxes in row {row}")]
    RankOutOfRange { row: u32, rank: u32, available: usize },
    #[error("the box set is not a facet of the target complex")]
    NotAFacet,
    #[error(
        "the facet bijection needs an increment-free pair whose path starts \
         with a north step and has all other runs at least two: {reason}"
    )]
    UnsupportedBijection { reason: String },
    #[error(transparent)]
    Box(#[from] BoxError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Path(#[from] PathError),
}

// ============================================================================
// Shelling orders
// ============================================================================

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShellingMode {
    /// Pivot facet first, then all other facets sorted by their label sets
    /// (ties keep the refined relative order).
    Plain,
    /// Pivot facet first, then the facets added by each vertex of the
    /// reversed shedding order.
    Refined,
}

impl std::fmt::Display for ShellingMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShellingMode::Plain => write!(f, "plain"),
            ShellingMode::Refined => write!(f, "refined"),
        }
    }
}

/// A validated shelling order with its restriction sets.
pub struct Shelling {
    pub mode: ShellingMode,
    /// Facets in shelling order (box-index sets).
    pub facets: Vec<Bits>,
    /// `restrictions[j]` = the boxes `x ∈ F_j` with `F_j ∖ {x}` contained in
    /// an earlier facet.  `F_j` is a homology facet when this is all of `F_j`.
    pub restrictions: Vec<Bits>,
    /// Runs of equal sort keys in the plain order (positions into `facets`,
    /// half-open), resolved by comparing sorted box-index lists.
    pub tie_groups: Vec<(usize, usize)>,
}

impl Shelling {
    /// Positions of the homology facets (restriction set = whole facet).
    #[must_use]
    pub fn homology_facets(&self) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&j| !self.facets[j].is_empty() && self.restrictions[j] == self.facets[j])
            .collect()
    }

    /// Betti numbers read off the shelling: the dimension-`k` count is the
    /// number of homology facets of size `k + 1`, and the dimension-0 entry
    /// is reported as a component count (one more than the reduced rank).
    #[must_use]
    pub fn betti(&self) -> BettiNumbers {
        let dim = self
            .facets
            .iter()
            .map(Bits::len)
            .max()
            .unwrap_or(0);
        if dim == 0 {
            return BettiNumbers(Vec::new());
        }
        let mut betti = vec![0u64; dim];
        for &j in &self.homology_facets() {
            betti[self.facets[j].len() - 1] += 1;
        }
        betti[0] += 1;
        BettiNumbers(betti)
    }
}

/// Build and validate a shelling order of the box complex.  `rearrange`
/// stably reorders the facets by weakly decreasing size before validation.
pub fn shelling(
    bc: &BoxComplex,
    mode: ShellingMode,
    rearrange: bool,
) -> Result<Shelling, ShellError> {
    let (mut order, tie_groups) = match mode {
        ShellingMode::Plain => plain_order(bc)?,
        ShellingMode::Refined => (refined_order(bc)?, Vec::new()),
    };
    if rearrange {
        order.sort_by_key(|f| std::cmp::Reverse(f.len()));
    }
    let restrictions = validate_shelling(bc.complex(), &order)?;
    Ok(Shelling {
        mode,
        facets: order,
        restrictions,
        tie_groups: if rearrange { Vec::new() } else { tie_groups },
    })
}

/// Pivot labels for every box, or the first unlabeled box as an error.
fn labels_of(bc: &BoxComplex) -> Result<(Vec<BoxId>, Vec<u32>), ShellError> {
    let dv = decomposing_vertices(bc.shape());
    debug_assert_eq!(dv.boxes, bc.boxes());
    let mut labels = Vec::with_capacity(dv.labels.len());
    for (i, l) in dv.labels.iter().enumerate() {
        labels.push(l.ok_or(ShellError::UnlabeledBox { index: i })?);
    }
    Ok((dv.pivots, labels))
}

/// The plain order: `F₀` = the pivot facet, then the remaining facets sorted
/// by their label sequence read from the heaviest label down (descending
/// reverse-lexicographic).  Facets with equal label sequences keep their
/// relative position from the refined construction: an arbitrary tie-break
/// need not shell (two facets can share a sequence yet meet only in deep
/// codimension), while the recursive construction always does.
fn plain_order(bc: &BoxComplex) -> Result<(Vec<Bits>, Vec<(usize, usize)>), ShellError> {
    let (pivots, labels) = labels_of(bc)?;
    let n_labels = pivots.len();
    let key = |f: &Bits| -> Vec<u8> {
        let mut present = vec![0u8; n_labels];
        for i in f.iter() {
            present[labels[i] as usize - 1] = 1;
        }
        present.reverse(); // heaviest label first
        present
    };
    let mut order = refined_order(bc)?;
    // stable: ties resolved by refined position
    let mut decorated: Vec<(Vec<u8>, Bits)> =
        order.drain(1..).map(|f| (key(&f), f)).collect();
    decorated.sort_by(|a, b| b.0.cmp(&a.0));
    let mut tie_groups = Vec::new();
    let mut start = 1;
    for i in 2..=order.len() + decorated.len() {
        if i == 1 + decorated.len() || decorated[i - 1].0 != decorated[start - 1].0 {
            if i - start > 1 {
                tie_groups.push((start, i));
            }
            start = i;
        }
    }
    order.extend(decorated.into_iter().map(|(_, f)| f));
    Ok((order, tie_groups))
}

/// The refined order: the shelling read off the vertex-decomposition
/// recursion.  At every node the first box in the shedding priority
/// (ascending pivot label, within a label bottom-to-top and left-to-right,
/// pivots last) that sheds the remaining facets is removed; the deletion's
/// shelling comes first, then the link's shelling coned back over the box.
///
/// Unrolled along the deletion chain this lists the pivot facet `F₀` first
/// and then, for each box in reversed priority order, the facets through
/// that box inside the subcomplex grown so far — with each such block
/// ordered by the same rule applied recursively to the box's link, which is
/// exactly what makes the concatenation shell.
fn refined_order(bc: &BoxComplex) -> Result<Vec<Bits>, ShellError> {
    // Reject unlabeled boxes up front: the order is defined through the
    // pivot labelling.
    labels_of(bc)?;
    let priority = decomposing_vertices(bc.shape()).shedding_hints();
    let facets = bc.complex().facets().to_vec();
    let mut order = Vec::with_capacity(facets.len());
    shell_by_shedding(facets, &priority, &mut order)?;
    Ok(order)
}

/// Emit a shelling of the complex generated by `facets` (pairwise
/// incomparable sets) into `out`: find the first vertex in `priority` that
/// occurs in some facet and sheds — every facet through it stays strictly
/// inside some facet avoiding it — then recurse on the avoiding facets (the
/// deletion) followed by the stripped ones (the link), coning the latter
/// back over the vertex.
fn shell_by_shedding(
    facets: Vec<Bits>,
    priority: &[usize],
    out: &mut Vec<Bits>,
) -> Result<(), ShellError> {
    if facets.len() <= 1 {
        out.extend(facets);
        return Ok(());
    }
    let mut support = facets[0].clone();
    for f in &facets[1..] {
        support.union_with(f);
    }
    for &v in priority {
        if !support.contains(v) {
            continue;
        }
        let (through, avoiding): (Vec<Bits>, Vec<Bits>) =
            facets.iter().cloned().partition(|f| f.contains(v));
        let sheds = through.iter().all(|f| {
            avoiding
                .iter()
                .any(|g| f.iter().all(|x| x == v || g.contains(x)))
        });
        if !sheds {
            continue;
        }
        shell_by_shedding(avoiding, priority, out)?;
        let link: Vec<Bits> = through
            .into_iter()
            .map(|mut f| {
                f.remove(v);
                f
            })
            .collect();
        let mark = out.len();
        shell_by_shedding(link, priority, out)?;
        for f in &mut out[mark..] {
            f.insert(v);
        }
        return Ok(());
    }
    Err(ShellError::NoSheddingVertex {
        facets: facets.len(),
    })
}

/// Check that `order` is a shelling of `complex` (exact facet list, each new
/// facet meeting the union of its predecessors in pure codimension one) and
/// return the restriction sets.
///
/// Both conditions reduce to "which facets contain this set", answered by
/// intersecting rows of the transposed vertex → facet-positions incidence:
///
/// * `x` joins the restriction set `R_j` iff some facet before position `j`
///   contains `F_j ∖ {x}`;
/// * the order shells iff for every `k < j` the intersection `F_j ∩ F_k` lies
///   in such an `F_j ∖ {x}`, i.e. iff no earlier facet contains all of `R_j`
///   — and the facets containing `R_j` are again an incidence intersection
///   (always including `j` itself, since `R_j ⊆ F_j`).
pub fn validate_shelling(
    complex: &SimplicialComplex,
    order: &[Bits],
) -> Result<Vec<Bits>, ShellError> {
    let mut seen: HashSet<&Bits> = HashSet::new();
    for f in order {
        if !seen.insert(f) {
            return Err(ShellError::FacetSetMismatch);
        }
    }
    if seen.len() != complex.facets().len()
        || !complex.facets().iter().all(|f| seen.contains(f))
    {
        return Err(ShellError::FacetSetMismatch);
    }
    let n = complex.n_vertices();
    let m = order.len();
    let mut in_facets = vec![Bits::new(m); n];
    for (k, f) in order.iter().enumerate() {
        for v in f.iter() {
            in_facets[v].insert(k);
        }
    }
    // Facets (by position) containing `set`; all positions when `set` is
    // empty.
    let holders = |set: &Bits| -> Bits {
        let mut acc = Bits::full(m);
        for v in set.iter() {
            acc.intersect_with(&in_facets[v]);
        }
        acc
    };
    let mut restrictions = Vec::with_capacity(m);
    for (j, fj) in order.iter().enumerate() {
        let mut r = Bits::new(n);
        for x in fj.iter() {
            let mut ridge = fj.clone();
            ridge.remove(x);
            match holders(&ridge).first() {
                Some(k) if k < j => r.insert(x),
                _ => {}
            }
        }
        match holders(&r).first() {
            Some(k) if k < j => return Err(ShellError::NotAShelling { j, k }),
            _ => {}
        }
        restrictions.push(r);
    }
    Ok(restrictions)
}

// ============================================================================
// Rank sequences and facet transport
// ============================================================================

/// Box indices of shape row `r`, left to right.
fn row_indices(bc: &BoxComplex, r: u32) -> Vec<usize> {
    (0..bc.boxes().len())
        .filter(|&i| bc.boxes()[i].row == r)
        .collect()
}

/// The rank sequence of a facet: entry `i` (rows numbered bottom-up) is the
/// 1-based position of the facet's box in that row among the row's boxes
/// compatible with the facet boxes already chosen in lower rows, or 0 when
/// the facet skips the row.
pub fn row_rank_sequence(bc: &BoxComplex, facet: &Bits) -> Result<Vec<u32>, ShellError> {
    let rmax = bc.shape().num_rows();
    let heights = bc.shape().heights();
    let mut ranks = Vec::with_capacity(rmax as usize);
    let mut chosen: Vec<BoxId> = Vec::new();
    for i in 1..=rmax {
        let r = rmax - i + 1;
        let candidates: Vec<usize> = row_indices(bc, r)
            .into_iter()
            .filter(|&bi| {
                chosen
                    .iter()
                    .all(|&q| !crate::boxcomplex::incompatible(heights, q, bc.boxes()[bi]))
            })
            .collect();
        let own = facet.iter().find(|&bi| bc.boxes()[bi].row == r);
        match own {
            None => ranks.push(0),
            Some(bi) => {
                let pos = candidates
                    .iter()
                    .position(|&c| c == bi)
                    .ok_or(ShellError::NotAFacet)?;
                ranks.push(u32::try_from(pos + 1).expect("small rank"));
                chosen.push(bc.boxes()[bi]);
            }
        }
    }
    Ok(ranks)
}

/// Rebuild the box set encoded by a rank sequence (inverse of
/// [`row_rank_sequence`] on facets).
pub fn facet_from_row_ranks(bc: &BoxComplex, ranks: &[u32]) -> Result<Bits, ShellError> {
    let rmax = bc.shape().num_rows();
    let heights = bc.shape().heights();
    if ranks.len() != rmax as usize {
        return Err(ShellError::RankLength {
            got: ranks.len(),
            expect: rmax as usize,
        });
    }
    let mut chosen: Vec<usize> = Vec::new();
    for i in 1..=rmax {
        let r = rmax - i + 1;
        let rank = ranks[i as usize - 1];
        if rank == 0 {
            continue;
        }
        let candidates: Vec<usize> = row_indices(bc, r)
            .into_iter()
            .filter(|&bi| {
                chosen.iter().all(|&q| {
                    !crate::boxcomplex::incompatible(
                        heights,
                        bc.boxes()[q],
                        bc.boxes()[bi],
                    )
                })
            })
            .collect();
        if rank as usize > candidates.len() {
            return Err(ShellError::RankOutOfRange {
                row: r,
                rank,
                available: candidates.len(),
            });
        }
        chosen.push(candidates[rank as usize - 1]);
    }
    Ok(Bits::from_iter(bc.boxes().len(), chosen))
}

/// Transport a facet between the box complexes of two increment vectors over
/// the same path, by matching rank sequences.  Errors when the result is not
/// a facet of the target (which does not happen when both shapes come from
/// the same ν).
pub fn transport_facet(
    src: &BoxComplex,
    dst: &BoxComplex,
    facet: &Bits,
) -> Result<Bits, ShellError> {
    let ranks = row_rank_sequence(src, facet)?;
    let image = facet_from_row_ranks(dst, &ranks)?;
    if !dst.complex().facets().contains(&image) {
        return Err(ShellError::NotAFacet);
    }
    Ok(image)
}

// ============================================================================
// Homology facets ↔ shrunken-path Dyck paths
// ============================================================================

/// The bijection between top-dimensional homology facets of an
/// increment-free box complex and the Dyck paths of the doubly shrunken
/// path: a path whose `i`-th north step sits at `x` marks the box in row `i`
/// (bottom-up), `max(1, i−1) + x` columns to the left of that row's pivot.
pub struct DyckFacetBijection {
    /// The doubly shrunken path ν̄ (runs `νᵢ − 2`).
    pub shrunken: NePath,
    /// One `(path, facet)` pair per ν̄-Dyck path, in enumeration order.
    pub pairs: Vec<(NuDyckPath, Bits)>,
}

/// Enumerate the bijection for an increment-free pair.  Requires `δ = 0`,
/// `ν₀ = 0`, at least two north steps, and every other run at least two (so
/// that ν̄ exists); errors otherwise.
pub fn dyck_facet_bijection(
    nu: &NePath,
    delta: &IncrementVector,
    bc: &BoxComplex,
    cap: usize,
) -> Result<DyckFacetBijection, ShellError> {
    let gate = |reason: &str| ShellError::UnsupportedBijection {
        reason: reason.to_string(),
    };
    if delta.values().iter().any(|&d| d != 0) {
        return Err(gate("the increment vector is not zero"));
    }
    let runs = nu.runs();
    let n = nu.north_steps();
    if n < 2 {
        return Err(gate("fewer than two north steps"));
    }
    if runs[0] != 0 {
        return Err(gate("the path starts with an east step"));
    }
    if runs[1..].iter().any(|&r| r < 2) {
        return Err(gate("a run after the first north step is shorter than two"));
    }
    let expected = Shape::from_pair(nu, delta);
    if bc.shape().heights() != expected.heights() {
        return Err(gate("the box complex does not match the pair"));
    }
    let shrunken = NePath::new(runs[1..].iter().map(|&r| r - 2).collect())?;
    let rmax = bc.shape().num_rows();
    debug_assert_eq!(rmax as usize, n - 1);
    let pivots = decomposing_vertices(bc.shape()).pivots;
    if pivots.len() != rmax as usize {
        return Err(gate("a row of the shape has no pivot box"));
    }
    let mut pairs = Vec::new();
    for dyck in enumerate_nu_dyck(&shrunken, cap)? {
        let mut facet = Bits::new(bc.boxes().len());
        for i in 1..=n - 1 {
            // The i-th north step goes from height i−1 to i at x_at(i−1).
            let x = usize::try_from(dyck.path.x_at(i - 1)).expect("x ≥ 0");
            let row = rmax - u32::try_from(i).expect("few rows") + 1;
            let col = pivots[i - 1]
                .col
                .checked_sub(1usize.max(i - 1) + x)
                .ok_or(BoxError::NoSuchBox { row, col: 0 })?;
            facet.insert(bc.index_of(BoxId::new(row, col))?);
        }
        pairs.push((dyck, facet));
    }
    Ok(DyckFacetBijection { shrunken, pairs })
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxcomplex::box_complex;

    fn complex_of(heights: &[u32]) -> BoxComplex {
        box_complex(&Shape::from_heights(heights.to_vec()).unwrap(), 1 << 20).unwrap()
    }

    fn pair_complex(runs: &[u32], delta: &[u32]) -> (NePath, IncrementVector, BoxComplex) {
        let nu = NePath::new(runs.to_vec()).unwrap();
        let dv = IncrementVector::new(delta.to_vec(), &nu).unwrap();
        let bc = box_complex(&Shape::from_pair(&nu, &dv), 1 << 20).unwrap();
        (nu, dv, bc)
    }

    #[test]
    fn plain_order_on_the_seven_element_shape() {
        // u = (3,1): boxes in canonical order are (1,1), (2,1), (3,1), (1,2).
        // The pivot facet is {(3,1),(1,2)}; {(2,1),(1,2)} carries both labels
        // and precedes the label-1 singleton {(1,1)}.
        let bc = complex_of(&[3, 1]);
        let sh = shelling(&bc, ShellingMode::Plain, false).unwrap();
        let lists: Vec<Vec<usize>> = sh.facets.iter().map(Bits::to_vec).collect();
        assert_eq!(lists, vec![vec![2, 3], vec![1, 3], vec![0]]);
        assert_eq!(sh.homology_facets(), vec![2]);
        assert_eq!(sh.betti().0, vec![2, 0]);
        assert!(sh.tie_groups.is_empty());
    }

    #[test]
    fn refined_order_on_the_seven_element_shape() {
        // The reversed shedding order grows by (1,1) then (2,1), so the
        // singleton comes second.
        let bc = complex_of(&[3, 1]);
        let sh = shelling(&bc, ShellingMode::Refined, false).unwrap();
        let lists: Vec<Vec<usize>> = sh.facets.iter().map(Bits::to_vec).collect();
        assert_eq!(lists, vec![vec![2, 3], vec![0], vec![1, 3]]);
        assert_eq!(sh.homology_facets(), vec![1]);
        assert_eq!(sh.betti().0, vec![2, 0]);
    }

    #[test]
    fn betti_agree_across_modes_and_chain_ranks() {
        for heights in [
            vec![3, 1],
            vec![1, 2, 1],
            vec![2, 2],
            vec![3, 2, 1],
            vec![1, 2, 3],
            vec![1, 1, 2, 2, 2, 2, 3, 3, 3],
            vec![2, 3, 3, 2],
        ] {
            let bc = complex_of(&heights);
            let reference = bc.complex().betti_gf2().unwrap();
            for mode in [ShellingMode::Plain, ShellingMode::Refined] {
                for rearrange in [false, true] {
                    let sh = shelling(&bc, mode, rearrange).unwrap();
                    assert_eq!(
                        sh.betti().0,
                        reference.0,
                        "u = {heights:?}, {mode}, rearrange = {rearrange}"
                    );
                }
            }
        }
    }

    #[test]
    fn named_small_cases() {
        // The component-free staircase (3,2,1) is contractible-like: no
        // homology facets at all.  The increasing (1,2,3) staircase has one
        // extra component and a circle.
        let t = shelling(&complex_of(&[3, 2, 1]), ShellingMode::Plain, false).unwrap();
        assert_eq!(t.betti().0, vec![1, 0, 0]);
        let d = shelling(&complex_of(&[1, 2, 3]), ShellingMode::Plain, false).unwrap();
        assert_eq!(d.betti().0, vec![2, 1, 0]);
    }

    #[test]
    fn validate_rejects_bad_orders() {
        let bc = complex_of(&[3, 1]);
        let sh = shelling(&bc, ShellingMode::Plain, false).unwrap();
        // Singleton first: the next facet meets nothing, codimension 2.
        let bad = vec![
            sh.facets[2].clone(),
            sh.facets[0].clone(),
            sh.facets[1].clone(),
        ];
        assert!(matches!(
            validate_shelling(bc.complex(), &bad),
            Err(ShellError::NotAShelling { j: 1, k: 0 })
        ));
        // Dropping a facet is a mismatch.
        assert!(matches!(
            validate_shelling(bc.complex(), &sh.facets[..2]),
            Err(ShellError::FacetSetMismatch)
        ));
    }

    #[test]
    fn rank_sequence_golden() {
        // ν = N E³ N E⁴ N E² N E with increments (1,2,0,0):
        // heights (1,1,2,2,3,3,3,2,2), pivots (3,7), (2,9), (1,8); the
        // sequence (2,4,3) selects the boxes (3,6), (2,8), (1,3).
        let (_nu, _dv, bc) = pair_complex(&[0, 3, 4, 2, 1], &[1, 2, 0, 0]);
        assert_eq!(bc.shape().heights(), &[1, 1, 2, 2, 3, 3, 3, 2, 2]);
        let dv = decomposing_vertices(bc.shape());
        assert_eq!(
            dv.pivots,
            vec![BoxId::new(3, 7), BoxId::new(2, 9), BoxId::new(1, 8)]
        );
        let facet = facet_from_row_ranks(&bc, &[2, 4, 3]).unwrap();
        let expect: Vec<usize> = [(3, 6), (2, 8), (1, 3)]
            .iter()
            .map(|&(r, c)| bc.index_of(BoxId::new(r, c)).unwrap())
            .collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort_unstable();
        assert_eq!(facet.to_vec(), expect_sorted);
        assert!(bc.complex().facets().contains(&facet));
        assert_eq!(row_rank_sequence(&bc, &facet).unwrap(), vec![2, 4, 3]);
    }

    #[test]
    fn transport_is_a_facet_bijection() {
        // Between any two increment vectors over the same path, matching
        // rank sequences restricts to a bijection on facets.
        let nu = NePath::new(vec![0, 2, 2]).unwrap();
        let all = IncrementVector::all_for(&nu);
        let bcs: Vec<BoxComplex> = all
            .iter()
            .map(|d| box_complex(&Shape::from_pair(&nu, d), 1 << 20).unwrap())
            .collect();
        for src in &bcs {
            for dst in &bcs {
                let mut images: Vec<Bits> = src
                    .complex()
                    .facets()
                    .iter()
                    .map(|f| transport_facet(src, dst, f).unwrap())
                    .collect();
                images.sort();
                images.dedup();
                assert_eq!(images.len(), dst.complex().facets().len());
            }
        }
    }

    #[test]
    fn transport_round_trips_the_golden_facet() {
        let (_n1, _d1, src) = pair_complex(&[0, 3, 4, 2, 1], &[1, 2, 0, 0]);
        let (_n2, _d2, dst) = pair_complex(&[0, 3, 4, 2, 1], &[0, 0, 0, 0]);
        assert_eq!(dst.shape().heights(), &[1, 1, 2, 2, 2, 2, 3, 3, 3]);
        let facet = facet_from_row_ranks(&src, &[2, 4, 3]).unwrap();
        let image = transport_facet(&src, &dst, &facet).unwrap();
        let expect: Vec<usize> = [(3, 8), (2, 6), (1, 3)]
            .iter()
            .map(|&(r, c)| dst.index_of(BoxId::new(r, c)).unwrap())
            .collect();
        let mut expect_sorted = expect;
        expect_sorted.sort_unstable();
        assert_eq!(image.to_vec(), expect_sorted);
        let back = transport_facet(&dst, &src, &image).unwrap();
        assert_eq!(back, facet);
    }

    #[test]
    fn dyck_facet_bijection_matches_top_homology_facets() {
        // ν = (N E^m)^n for small m, n: the top homology facets of the plain
        // shelling are exactly the image of the Dyck paths of ν̄.
        for (m, n) in [(3u32, 2usize), (3, 3), (4, 2), (3, 4), (2, 4)] {
            let mut runs = vec![0u32];
            runs.extend(std::iter::repeat(m).take(n));
            let (nu, dv, bc) = pair_complex(&runs, &vec![0; n]);
            let bij = dyck_facet_bijection(&nu, &dv, &bc, 1 << 20).unwrap();
            let sh = shelling(&bc, ShellingMode::Refined, false).unwrap();
            let top = bc.shape().num_rows() as usize;
            let mut homology_top: Vec<Bits> = sh
                .homology_facets()
                .into_iter()
                .map(|j| sh.facets[j].clone())
                .filter(|f| f.len() == top)
                .collect();
            homology_top.sort();
            let mut image: Vec<Bits> = bij.pairs.iter().map(|(_, f)| f.clone()).collect();
            image.sort();
            assert_eq!(homology_top, image, "m = {m}, n = {n}");
        }
    }

    #[test]
    fn dyck_facet_counts_follow_the_fuss_catalan_formula() {
        // For ν = (N E^m)^n with m ≥ 3 the number of top homology facets is
        // C((m-1)n, n) / ((m-2)n + 1).
        let binom = |a: u64, b: u64| -> u64 {
            let mut r = 1u64;
            for i in 0..b {
                r = r * (a - i) / (i + 1);
            }
            r
        };
        for (m, n) in [(3u64, 2u64), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2)] {
            let mut runs = vec![0u32];
            runs.extend(std::iter::repeat(m as u32).take(n as usize));
            let (nu, dv, bc) = pair_complex(&runs, &vec![0; n as usize]);
            let bij = dyck_facet_bijection(&nu, &dv, &bc, 1 << 22).unwrap();
            let expect = binom((m - 1) * n, n) / ((m - 2) * n + 1);
            assert_eq!(bij.pairs.len() as u64, expect, "m = {m}, n = {n}");
        }
    }

    #[test]
    fn dyck_facet_bijection_gates() {
        // Short runs are rejected.
        let (nu, dv, bc) = pair_complex(&[0, 1, 1, 1, 1], &[0, 0, 0, 0]);
        assert!(matches!(
            dyck_facet_bijection(&nu, &dv, &bc, 1 << 20),
            Err(ShellError::UnsupportedBijection { .. })
        ));
        // Nonzero increments are rejected.
        let (nu, dv, bc) = pair_complex(&[0, 2, 2], &[1, 0]);
        assert!(matches!(
            dyck_facet_bijection(&nu, &dv, &bc, 1 << 20),
            Err(ShellError::UnsupportedBijection { .. })
        ));
        // An initial east run is rejected.
        let (nu, dv, bc) = pair_complex(&[1, 2, 2], &[0, 0]);
        assert!(matches!(
            dyck_facet_bijection(&nu, &dv, &bc, 1 << 20),
            Err(ShellError::UnsupportedBijection { .. })
        ));
    }

    #[test]
    fn shellings_hold_across_increment_vectors() {
        // Both orders validate on every increment vector of a mixed path,
        // with equal Betti numbers.
        let nu = NePath::new(vec![1, 2, 0, 1]).unwrap();
        for d in IncrementVector::all_for(&nu) {
            let shape = Shape::from_pair(&nu, &d);
            if shape.num_boxes() == 0 {
                continue;
            }
            let bc = box_complex(&shape, 1 << 20).unwrap();
            let reference = bc.complex().betti_gf2().unwrap();
            for mode in [ShellingMode::Plain, ShellingMode::Refined] {
                let sh = shelling(&bc, mode, false).unwrap();
                assert_eq!(sh.betti().0, reference.0, "δ = {d}, {mode}");
            }
        }
    }
}
