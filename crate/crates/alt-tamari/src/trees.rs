//! (δ,ν)-trees and the alt ν-Tamari lattice.
//!
//! Fix a path ν and an increment vector δ, and let `L` be the region between
//! the hat path `ν̂` and the check path `ν̌` (see [`crate::paths::Region`]).
//! A *(δ,ν)-tree* is a maximal set of pairwise compatible points of `L`.  Such
//! a set really is a binary tree: every non-root node has either a node
//! strictly above it in its column or a node strictly to its west in its row
//! (never both), and the nearest such node is its parent; children below are
//! "south" (left) children, children to the east are "right" children.
//!
//! A *right rotation* picks a node `q` with a north neighbour `p` and an east
//! neighbour `r` such that the rectangle spanned by `q`, `p`, `r` contains no
//! other tree node, and replaces `q` by the fourth corner.  Rotations generate
//! a cover relation whose transitive closure is the alt ν-Tamari lattice
//! `Tam_ν(δ)`; for δ = ν it is the ν-Tamari lattice.

use crate::bits::Bits;
use crate::lattice::{FiniteLattice, LatticeError};
use crate::paths::{IncrementVector, NePath, PathError, Region};
use crate::wordhash::WordMap;
use thiserror::Error;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree enumeration exceeds cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("point set is not a (δ,ν)-tree: {reason}")]
    NotATree { reason: String },
    #[error("rotation produced a point set outside the enumerated trees")]
    RotationTargetMissing,
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

// ============================================================================
// Trees
// ============================================================================

/// A (δ,ν)-tree: nodes sorted by `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DeltaNuTree {
    nodes: Vec<(i64, i64)>,
}

impl DeltaNuTree {
    /// Wrap a node set, validating pairwise compatibility and maximality in
    /// the region.
    pub fn new(region: &Region, mut nodes: Vec<(i64, i64)>) -> Result<Self, TreeError> {
        nodes.sort_unstable();
        nodes.dedup();
        for &p in &nodes {
            if !region.contains(p.0, p.1) {
                return Err(TreeError::NotATree {
                    reason: format!("point ({}, {}) is outside the region", p.0, p.1),
                });
            }
        }
        for (i, &p) in nodes.iter().enumerate() {
            for &q in &nodes[i + 1..] {
                if region.incompatible(p, q) {
                    return Err(TreeError::NotATree {
                        reason: format!(
                            "points ({}, {}) and ({}, {}) are incompatible",
                            p.0, p.1, q.0, q.1
                        ),
                    });
                }
            }
        }
        for extra in region.points() {
            if !nodes.contains(&extra)
                && nodes.iter().all(|&p| !region.incompatible(p, extra))
            {
                return Err(TreeError::NotATree {
                    reason: format!("not maximal: ({}, {}) can be added", extra.0, extra.1),
                });
            }
        }
        Ok(DeltaNuTree { nodes })
    }

    fn from_sorted_unchecked(nodes: Vec<(i64, i64)>) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        DeltaNuTree { nodes }
    }

    #[must_use]
    pub fn nodes(&self) -> &[(i64, i64)] {
        &self.nodes
    }

    #[must_use]
    pub fn contains(&self, p: (i64, i64)) -> bool {
        self.nodes.binary_search(&p).is_ok()
    }

    /// Nearest node strictly north of `p` in its column.
    #[must_use]
    pub fn north_neighbor(&self, p: (i64, i64)) -> Option<(i64, i64)> {
        self.nodes
            .iter()
            .filter(|&&(x, y)| x == p.0 && y > p.1)
            .min_by_key(|&&(_, y)| y)
            .copied()
    }

    /// Nearest node strictly south of `p` in its column.
    #[must_use]
    pub fn south_neighbor(&self, p: (i64, i64)) -> Option<(i64, i64)> {
        self.nodes
            .iter()
            .filter(|&&(x, y)| x == p.0 && y < p.1)
            .max_by_key(|&&(_, y)| y)
            .copied()
    }

    /// Nearest node strictly east of `p` in its row.
    #[must_use]
    pub fn east_neighbor(&self, p: (i64, i64)) -> Option<(i64, i64)> {
        self.nodes
            .iter()
            .filter(|&&(x, y)| y == p.1 && x > p.0)
            .min_by_key(|&&(x, _)| x)
            .copied()
    }

    /// Nearest node strictly west of `p` in its row.
    #[must_use]
    pub fn west_neighbor(&self, p: (i64, i64)) -> Option<(i64, i64)> {
        self.nodes
            .iter()
            .filter(|&&(x, y)| y == p.1 && x < p.0)
            .max_by_key(|&&(x, _)| x)
            .copied()
    }

    /// Nodes strictly inside or on the border of the closed rectangle spanned
    /// by the two corner points.
    fn nodes_in_rect(&self, x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> Vec<(i64, i64)> {
        self.nodes
            .iter()
            .filter(|&&(x, y)| x_lo <= x && x <= x_hi && y_lo <= y && y <= y_hi)
            .copied()
            .collect()
    }

    /// The bracket vector: `y`-coordinates of the nodes in in-order traversal
    /// (south subtree, node, east subtree) from the root `(0, n)`.
    #[must_use]
    pub fn bracket_vector(&self, region: &Region) -> Vec<i64> {
        let root = (0i64, region.north_steps() as i64);
        debug_assert!(self.contains(root), "root must be a node of every tree");
        let mut out = Vec::with_capacity(self.nodes.len());
        self.in_order(root, &mut out);
        out
    }

    fn in_order(&self, v: (i64, i64), out: &mut Vec<i64>) {
        // South child: nearest node below v in its column whose parent is v,
        // i.e. with no other node strictly between them; that is exactly the
        // south neighbour.  Likewise the east child is the east neighbour —
        // provided that neighbour's parent really is v, which holds whenever
        // the neighbour has no closer north node.
        if let Some(s) = self.south_neighbor(v) {
            // s's parent is its north neighbour (v) unless s has a west
            // neighbour closer... parents prefer neither: a node has only one
            // of the two. s has a north node (v), so v is its parent.
            self.in_order(s, out);
        }
        out.push(v.1);
        if let Some(e) = self.east_neighbor(v) {
            if e.1 == v.1 && self.north_neighbor(e).is_none() {
                self.in_order(e, out);
            }
        }
    }
}

// ============================================================================
// Rotations
// ============================================================================

/// A right rotation datum: `q` is removed, `q_new = (r.x, p.y)` inserted.
/// The bottom-right unit box of the rotation rectangle, with bottom-left
/// corner `(r.x − 1, q.y)`, is the cover's perspective label.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rotation {
    pub q: (i64, i64),
    /// North neighbour of `q`.
    pub p: (i64, i64),
    /// East neighbour of `q`.
    pub r: (i64, i64),
    pub q_new: (i64, i64),
}

impl Rotation {
    /// Bottom-left corner of the unit box labelling this cover.
    #[must_use]
    pub fn label_box(&self) -> (i64, i64) {
        (self.r.0 - 1, self.q.1)
    }
}

/// All right rotations applicable to `tree`, each with the resulting tree.
/// One pass over the sorted node list: same-column nodes are consecutive, so
/// the north neighbour of a node is simply its successor when the column
/// matches, and row buckets give east neighbours and rectangle emptiness by
/// binary search.
#[must_use]
pub fn right_rotations(tree: &DeltaNuTree) -> Vec<(Rotation, DeltaNuTree)> {
    let nodes = tree.nodes();
    let mut out = Vec::new();
    let n_rows = nodes.iter().map(|&(_, y)| y as usize + 1).max().unwrap_or(0);
    // Flat row buckets: row y owns row_xs[starts[y]..starts[y + 1]], with the
    // x-coordinates ascending because `nodes` is sorted by (x, y).
    let mut starts = vec![0usize; n_rows + 1];
    for &(_, y) in nodes {
        starts[y as usize + 1] += 1;
    }
    for i in 0..n_rows {
        starts[i + 1] += starts[i];
    }
    let mut row_xs = vec![0i64; nodes.len()];
    let mut fill = starts.clone();
    for &(x, y) in nodes {
        row_xs[fill[y as usize]] = x;
        fill[y as usize] += 1;
    }
    let row = |y: i64| &row_xs[starts[y as usize]..starts[y as usize + 1]];
    for (i, &q) in nodes.iter().enumerate() {
        let p = match nodes.get(i + 1) {
            Some(&p) if p.0 == q.0 => p,
            _ => continue,
        };
        let qrow = row(q.1);
        let Some(&rx) = qrow.get(qrow.partition_point(|&x| x <= q.0)) else {
            continue;
        };
        let r = (rx, q.1);
        // The closed rectangle spanned by q, p, r may contain no other node.
        let mut inside = 0usize;
        for y in q.1..=p.1 {
            let xs = row(y);
            inside += xs.partition_point(|&x| x <= r.0) - xs.partition_point(|&x| x < q.0);
            if inside > 3 {
                break;
            }
        }
        if inside != 3 {
            continue;
        }
        let q_new = (r.0, p.1);
        let mut target: Vec<(i64, i64)> = Vec::with_capacity(nodes.len());
        target.extend_from_slice(&nodes[..i]);
        target.extend_from_slice(&nodes[i + 1..]);
        let pos = target.partition_point(|&v| v < q_new);
        target.insert(pos, q_new);
        out.push((
            Rotation { q, p, r, q_new },
            DeltaNuTree::from_sorted_unchecked(target),
        ));
    }
    out
}

/// Descents of a tree: nodes `v` where a left rotation applies — `v` has a
/// west neighbour `p` and a south neighbour `r`, their spanned rectangle
/// contains no other node, and the rotation target `(p.x, r.y)` is a point of
/// the region (the region widens going up, so the target can fall outside).
/// Each descent marks the unit box with bottom-left corner `(v.x − 1,
/// v.y − 1)`; a tree is join-irreducible in the lattice exactly when it has
/// one descent.
#[must_use]
pub fn descents(region: &Region, tree: &DeltaNuTree) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for &v in tree.nodes() {
        let Some(p) = tree.west_neighbor(v) else {
            continue;
        };
        let Some(r) = tree.south_neighbor(v) else {
            continue;
        };
        if tree.nodes_in_rect(p.0, v.0, r.1, v.1).len() != 3 {
            continue;
        }
        if !region.contains(p.0, r.1) {
            continue;
        }
        out.push((v.0 - 1, v.1 - 1));
    }
    out
}

// ============================================================================
// The lattice
// ============================================================================

/// The alt ν-Tamari lattice `Tam_ν(δ)` with its generating data.
pub struct AltTamariLattice {
    region: Region,
    trees: Vec<DeltaNuTree>,
    lattice: FiniteLattice,
    /// Rotation datum of each cover, aligned with
    /// [`FiniteLattice::covers`] of `lattice`.
    cover_rotations: Vec<Rotation>,
}

impl AltTamariLattice {
    /// Enumerate all (δ,ν)-trees (maximal compatible point sets, via maximal
    /// cliques of the compatibility graph), compute the rotation covers, and
    /// assemble the lattice.  Errors when more than `max_elements` trees
    /// exist.
    pub fn build(
        nu: &NePath,
        delta: &IncrementVector,
        max_elements: usize,
    ) -> Result<Self, TreeError> {
        let region = Region::new(nu, delta);
        let points = region.points();
        let n_pts = points.len();
        let mut adj = vec![Bits::new(n_pts); n_pts];
        for i in 0..n_pts {
            for j in i + 1..n_pts {
                if !region.incompatible(points[i], points[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        let cliques = crate::bits::maximal_cliques(&adj, &Bits::full(n_pts), max_elements)
            .ok_or(TreeError::CapExceeded { cap: max_elements })?;
        let mut trees: Vec<DeltaNuTree> = cliques
            .into_iter()
            .map(|c| {
                let mut nodes: Vec<(i64, i64)> = c.iter().map(|i| points[i]).collect();
                nodes.sort_unstable();
                DeltaNuTree::from_sorted_unchecked(nodes)
            })
            .collect();
        trees.sort();

        let index: WordMap<&DeltaNuTree, usize> = trees
            .iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let mut pairs: Vec<((usize, usize), Rotation)> = Vec::new();
        for (i, tree) in trees.iter().enumerate() {
            for (rot, target) in right_rotations(tree) {
                let &j = index
                    .get(&target)
                    .ok_or(TreeError::RotationTargetMissing)?;
                pairs.push(((i, j), rot));
            }
        }
        // Align the rotation data with the sorted, deduplicated cover order
        // the lattice keeps.
        pairs.sort_unstable_by_key(|&(c, _)| c);
        pairs.dedup_by_key(|&mut (c, _)| c);
        let covers: Vec<(usize, usize)> = pairs.iter().map(|&(c, _)| c).collect();
        let cover_rotations: Vec<Rotation> = pairs.into_iter().map(|(_, r)| r).collect();
        let lattice = FiniteLattice::from_covers_structural(trees.len(), covers)?;
        debug_assert_eq!(lattice.covers().len(), cover_rotations.len());
        Ok(AltTamariLattice {
            region,
            trees,
            lattice,
            cover_rotations,
        })
    }

    #[must_use]
    pub fn region(&self) -> &Region {
        &self.region
    }

    #[must_use]
    pub fn trees(&self) -> &[DeltaNuTree] {
        &self.trees
    }

    #[must_use]
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Rotation datum of a cover `(lower, upper)`.
    #[must_use]
    pub fn rotation(&self, lower: usize, upper: usize) -> Option<&Rotation> {
        let ci = self
            .lattice
            .covers()
            .binary_search(&(lower, upper))
            .ok()?;
        Some(&self.cover_rotations[ci])
    }

    /// Rotation data aligned with [`FiniteLattice::covers`] of the lattice.
    #[must_use]
    pub fn cover_rotations(&self) -> &[Rotation] {
        &self.cover_rotations
    }

    /// Index of a tree.
    #[must_use]
    pub fn index_of(&self, tree: &DeltaNuTree) -> Option<usize> {
        self.trees.binary_search(tree).ok()
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate_nu_dyck;

    fn build(nu_runs: &[u32], delta_vals: &[u32]) -> AltTamariLattice {
        let nu = NePath::new(nu_runs.to_vec()).unwrap();
        let delta = IncrementVector::new(delta_vals.to_vec(), &nu).unwrap();
        AltTamariLattice::build(&nu, &delta, 1 << 20).unwrap()
    }

    /// ν = (1,0,1,0), δ = (0,1,0): seven trees on ten points (worked through
    /// by hand; this fixes the compatibility and rotation conventions).
    #[test]
    fn seven_element_example() {
        let alt = build(&[1, 0, 1, 0], &[0, 1, 0]);
        assert_eq!(alt.len(), 7);
        let lat = alt.lattice();
        assert_eq!(lat.covers().len(), 8);

        // Bottom tree: {(0,0),(1,0),(0,1),(0,2),(0,3),(2,2)}.
        let bottom = &alt.trees()[lat.bottom()];
        assert_eq!(
            bottom.nodes(),
            &[(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (2, 2)]
        );
        // Top tree: {(1,0),(1,1),(0,3),(2,2),(1,3),(2,3)}.
        let top = &alt.trees()[lat.top()];
        assert_eq!(
            top.nodes(),
            &[(0, 3), (1, 0), (1, 1), (1, 3), (2, 2), (2, 3)]
        );

        // Exactly four join-irreducible trees, one per box of the shape.
        assert_eq!(lat.join_irreducibles().len(), 4);

        // Every tree passes validation; every non-tree fails.
        for t in alt.trees() {
            DeltaNuTree::new(alt.region(), t.nodes().to_vec()).unwrap();
        }
        let not_maximal = DeltaNuTree::new(alt.region(), vec![(0, 3), (1, 0)]);
        assert!(matches!(not_maximal, Err(TreeError::NotATree { .. })));
        let incompatible = DeltaNuTree::new(
            alt.region(),
            vec![(0, 0), (1, 1), (0, 3), (1, 0), (2, 2), (2, 3)],
        );
        assert!(matches!(incompatible, Err(TreeError::NotATree { .. })));
    }

    #[test]
    fn counts_match_nu_dyck_paths() {
        // The number of (δ,ν)-trees equals the number of paths weakly above
        // ν, independently of δ.
        for runs in [
            vec![1, 0, 1, 0],
            vec![0, 1, 1, 1],
            vec![2, 1, 2],
            vec![0, 3, 2],
            vec![3],
            vec![0, 2, 0, 2],
        ] {
            let nu = NePath::new(runs.clone()).unwrap();
            let expected = enumerate_nu_dyck(&nu, 1 << 20).unwrap().len();
            for delta in IncrementVector::all_for(&nu) {
                let alt = AltTamariLattice::build(&nu, &delta, 1 << 20).unwrap();
                assert_eq!(alt.len(), expected, "ν = {nu}, δ = {delta}");
            }
        }
    }

    #[test]
    fn rotations_produce_trees_and_unique_descents_mark_irreducibles() {
        // The second pair has a region whose bottom row starts strictly
        // right of the rows above, so some rectangles that look rotatable
        // have their target outside the region.
        for (runs, delta) in [
            (vec![1, 0, 1, 0], vec![0, 1, 0]),
            (vec![1, 2, 0], vec![0, 0]),
            (vec![1, 2, 0], vec![2, 0]),
            (vec![0, 2, 1, 1], vec![0, 1, 0]),
        ] {
            let alt = build(&runs, &delta);
            for (i, tree) in alt.trees().iter().enumerate() {
                for (rot, target) in right_rotations(tree) {
                    // The result is again a tree (full validation).
                    DeltaNuTree::new(alt.region(), target.nodes().to_vec()).unwrap();
                    // q_new lies in the region.
                    assert!(alt.region().contains(rot.q_new.0, rot.q_new.1));
                    let j = alt.index_of(&target).unwrap();
                    assert!(alt.lattice().le(i, j));
                }
                // Number of descents == number of down-covers (each left
                // rotation undoes a right rotation).
                assert_eq!(
                    descents(alt.region(), tree).len(),
                    alt.lattice().down_covers(i).len(),
                    "tree {i} of ν = {runs:?}, δ = {delta:?}"
                );
            }
        }
    }

    #[test]
    fn bracket_vectors_give_the_tamari_order() {
        // For δ = ν the lattice is the ν-Tamari lattice, and the rotation
        // order coincides with componentwise order on bracket vectors.
        for runs in [vec![0, 1, 1, 1], vec![1, 2, 0], vec![0, 2, 2]] {
            let nu = NePath::new(runs).unwrap();
            let delta = IncrementVector::tamari(&nu);
            let alt = AltTamariLattice::build(&nu, &delta, 1 << 20).unwrap();
            let brackets: Vec<Vec<i64>> = alt
                .trees()
                .iter()
                .map(|t| t.bracket_vector(alt.region()))
                .collect();
            // All bracket vectors have the same length and are distinct.
            let len = brackets[0].len();
            assert!(brackets.iter().all(|b| b.len() == len));
            let distinct: std::collections::HashSet<_> = brackets.iter().collect();
            assert_eq!(distinct.len(), brackets.len());
            for i in 0..alt.len() {
                for j in 0..alt.len() {
                    let leq = (0..len).all(|k| brackets[i][k] <= brackets[j][k]);
                    assert_eq!(
                        alt.lattice().le(i, j),
                        leq,
                        "ν-Tamari order must match bracket order at ({i}, {j})"
                    );
                }
            }
            // Meets are componentwise minima.
            for i in 0..alt.len() {
                for j in 0..alt.len() {
                    let m = alt.lattice().meet(i, j).unwrap();
                    let expect: Vec<i64> = (0..len)
                        .map(|k| brackets[i][k].min(brackets[j][k]))
                        .collect();
                    assert_eq!(brackets[m], expect);
                }
            }
        }
    }

    #[test]
    fn degenerate_cases() {
        // No north steps: a single tree, a one-element lattice.
        let alt = build(&[2], &[]);
        assert_eq!(alt.len(), 1);
        assert_eq!(alt.trees()[0].nodes(), &[(0, 0), (1, 0), (2, 0)]);

        // ν = (0): single point region.
        let alt = build(&[0], &[]);
        assert_eq!(alt.len(), 1);
        assert_eq!(alt.trees()[0].nodes(), &[(0, 0)]);

        // Cap enforcement.
        let nu = NePath::new(vec![0, 1, 1, 1]).unwrap();
        let delta = IncrementVector::zero(&nu);
        assert!(matches!(
            AltTamariLattice::build(&nu, &delta, 3),
            Err(TreeError::CapExceeded { cap: 3 })
        ));
    }
}
