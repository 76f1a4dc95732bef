//! The box complex of a unimodal shape and its identification with the
//! canonical join complex of an alt ν-Tamari lattice.
//!
//! Two boxes of a top-aligned shape are *incompatible* when they share a row
//! or a column, or when one is strictly southwest of the other and the whole
//! bounding rectangle lies inside the shape; all other pairs are compatible.
//! The box complex has the pairwise compatible box sets as faces — a flag
//! complex.  The boxes are in bijection with the join-irreducible trees of
//! the lattice `Tam_ν(δ)` of the same shape (a join-irreducible tree has a
//! unique descent, whose box it marks), and [`Realization`] certifies that
//! this vertex bijection is a simplicial isomorphism between the canonical
//! join complex and the box complex.

use crate::bits::{count_cliques_by_size, maximal_cliques, Bits};
use crate::complex::{ComplexError, SimplicialComplex};
use crate::lattice::{CanonicalJoinComplex, LatticeError};
use crate::paths::{PathError, Region, Shape};
use crate::trees::{descents, AltTamariLattice, DeltaNuTree, TreeError};
use crate::wordhash::WordSet;
use thiserror::Error;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Error)]
pub enum BoxError {
    #[error("box ({row}, {col}) is not in the shape")]
    NoSuchBox { row: u32, col: usize },
    #[error("link split is undefined for column {col}: a taller column lies to its left")]
    UnsupportedPivot { col: usize },
    #[error("box complex exceeds the cap of {cap} facets")]
    CapExceeded { cap: usize },
    #[error("shape carries no lattice embedding; build it from a (ν, δ) pair")]
    MissingEmbedding,
    #[error("tree has {count} descents where exactly one was expected")]
    DescentCount { count: usize },
    #[error("face holds two boxes in column {col}; not a face of the box complex")]
    ColumnCollision { col: usize },
    #[error("vertex correspondence is not bijective at box index {index}")]
    NotBijective { index: usize },
    #[error("canonical join complex and box complex differ under the descent correspondence")]
    FacetMismatch,
    #[error("face of the box complex maps to a tree whose canonical representation differs")]
    RoundTripMismatch,
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

// ============================================================================
// Boxes
// ============================================================================

/// A box of a shape.  The derived order (column, then row) is the canonical
/// vertex order of the box complex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BoxId {
    /// Column, 1-based, left to right.
    pub col: usize,
    /// Row, 1-based, top to bottom.
    pub row: u32,
}

impl BoxId {
    #[must_use]
    pub fn new(row: u32, col: usize) -> Self {
        BoxId { col, row }
    }
}

impl std::fmt::Display for BoxId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// All boxes of a shape in canonical order.
#[must_use]
pub fn boxes_of(shape: &Shape) -> Vec<BoxId> {
    let mut out = Vec::new();
    for c in 1..=shape.num_columns() {
        for r in 1..=shape.heights()[c - 1] {
            out.push(BoxId::new(r, c));
        }
    }
    out
}

/// Are two distinct boxes incompatible?  They are when sharing a row or a
/// column, or when one is strictly southwest of the other and every column of
/// the bounding rectangle reaches down to its bottom row.
#[must_use]
pub fn incompatible(heights: &[u32], a: BoxId, b: BoxId) -> bool {
    if a == b {
        return false;
    }
    if a.row == b.row || a.col == b.col {
        return true;
    }
    let (sw, ne) = if a.col < b.col { (a, b) } else { (b, a) };
    if sw.row < ne.row {
        // Northwest / southeast: always compatible.
        return false;
    }
    let deep = sw.row.max(ne.row);
    (ne.col.saturating_sub(sw.col) > 0) && (sw.col..=ne.col).all(|c| heights[c - 1] >= deep)
}

// ============================================================================
// The complex
// ============================================================================

/// A box complex: the shape, its boxes in canonical order, the compatibility
/// graph, and the flag complex of compatible sets.
pub struct BoxComplex {
    shape: Shape,
    boxes: Vec<BoxId>,
    adjacency: Vec<Bits>,
    complex: SimplicialComplex,
}

/// Build the box complex of a shape.  Facets are the maximal compatible box
/// sets; errors when more than `cap` facets exist.
pub fn box_complex(shape: &Shape, cap: usize) -> Result<BoxComplex, BoxError> {
    let boxes = boxes_of(shape);
    let n = boxes.len();
    let mut adjacency = vec![Bits::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if !incompatible(shape.heights(), boxes[i], boxes[j]) {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
    }
    let facets = maximal_cliques(&adjacency, &Bits::full(n), cap)
        .ok_or(BoxError::CapExceeded { cap })?;
    let complex = SimplicialComplex::from_faces(n, facets);
    Ok(BoxComplex {
        shape: shape.clone(),
        boxes,
        adjacency,
        complex,
    })
}

impl BoxComplex {
    #[must_use]
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    #[must_use]
    pub fn boxes(&self) -> &[BoxId] {
        &self.boxes
    }

    #[must_use]
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Compatibility graph over box indices.
    #[must_use]
    pub fn adjacency(&self) -> &[Bits] {
        &self.adjacency
    }

    /// Canonical index of a box.
    pub fn index_of(&self, b: BoxId) -> Result<usize, BoxError> {
        self.boxes.binary_search(&b).map_err(|_| BoxError::NoSuchBox {
            row: b.row,
            col: b.col,
        })
    }

    /// f-vector counted clique by clique over the compatibility graph (the
    /// complex is flag), without materialising faces: entry `k` is the number
    /// of `k`-dimensional faces.
    #[must_use]
    pub fn f_vector(&self) -> Vec<u64> {
        let counts = count_cliques_by_size(&self.adjacency, &Bits::full(self.boxes.len()));
        counts[1..].to_vec()
    }

    /// Reduced Euler characteristic from the counted f-vector.
    #[must_use]
    pub fn euler_reduced(&self) -> i64 {
        let mut chi = -1i64;
        for (k, &c) in self.f_vector().iter().enumerate() {
            let c = i64::try_from(c).expect("face count fits in i64");
            if k % 2 == 0 {
                chi += c;
            } else {
                chi -= c;
            }
        }
        chi
    }
}

// ============================================================================
// Link splitting
// ============================================================================

/// Split the link of the box at row `r`, column `k` into two smaller shapes:
/// the boxes above it (northwest columns clipped to height `r − 1`, glued to
/// the columns right of the last column reaching row `r`) and the boxes
/// southeast below it.  The link of the vertex is then the join of the two
/// smaller box complexes.
///
/// The split requires that no column left of `k` be taller than column `k`;
/// otherwise compatible boxes southwest of the pivot exist and are not
/// captured by either part (`UnsupportedPivot`).  Every decomposing vertex
/// (a box sharing a row or column with the bottom-right pivot box q₁)
/// satisfies the requirement.
pub fn link_split(heights: &[u32], b: BoxId) -> Result<(Vec<u32>, Vec<u32>), BoxError> {
    let (r, k) = (b.row, b.col);
    if k == 0 || k > heights.len() || heights[k - 1] < r || r == 0 {
        return Err(BoxError::NoSuchBox { row: r, col: k });
    }
    if heights[..k - 1].iter().any(|&h| h > heights[k - 1]) {
        return Err(BoxError::UnsupportedPivot { col: k });
    }
    // Last column (≥ k) still reaching row r.
    let i_star = (k..=heights.len())
        .take_while(|&j| heights[j - 1] >= r)
        .last()
        .expect("column k itself reaches row r");
    let mut u_minus: Vec<u32> = (k + 1..=i_star).map(|j| heights[j - 1] - r).collect();
    u_minus.retain(|&h| h > 0);
    let mut u_plus: Vec<u32> = (1..k).map(|i| heights[i - 1].min(r - 1)).collect();
    u_plus.extend((i_star + 1..=heights.len()).map(|j| heights[j - 1]));
    u_plus.retain(|&h| h > 0);
    Ok((u_plus, u_minus))
}

// ============================================================================
// Decomposing vertices and box labels
// ============================================================================

/// The pivot boxes `q₁, q₂, …` of a shape and the derived labelling.
///
/// `q₁` is the rightmost box of the bottom row; moving up one row at a time,
/// each `qᵢ` is the rightmost box of its row compatible with all pivots
/// chosen below (rows without such a box are skipped).  Every box then gets
/// the label of the first pivot whose row or column contains it; the boxes
/// with label 1 other than `q₁` are decomposing vertices of the box complex,
/// and deleting them all leaves the join of `{q₁}` with the box complex of
/// the reduced shape [`DecomposingVertices::reduced_heights`].
pub struct DecomposingVertices {
    /// The boxes in canonical order (same order as in [`BoxComplex`]).
    pub boxes: Vec<BoxId>,
    /// Pivots bottom-up; `pivots[i]` has label `i + 1`.
    pub pivots: Vec<BoxId>,
    /// Label of every box in canonical order, when covered by some pivot.
    pub labels: Vec<Option<u32>>,
    /// Heights after deleting `q₁`'s column and clipping to the bottom row.
    pub reduced_heights: Vec<u32>,
}

#[must_use]
pub fn decomposing_vertices(shape: &Shape) -> DecomposingVertices {
    let heights = shape.heights();
    let boxes = boxes_of(shape);
    let rmax = shape.num_rows();
    let mut pivots: Vec<BoxId> = Vec::new();
    for r in (1..=rmax).rev() {
        let pick = (1..=heights.len())
            .rev()
            .map(|c| BoxId::new(r, c))
            .find(|&b| {
                heights[b.col - 1] >= r
                    && pivots.iter().all(|&q| !incompatible(heights, q, b))
            });
        if let Some(q) = pick {
            pivots.push(q);
        }
    }
    let mut labels = vec![None; boxes.len()];
    for (i, &q) in pivots.iter().enumerate() {
        let label = u32::try_from(i + 1).expect("few pivots");
        for (bi, &b) in boxes.iter().enumerate() {
            if labels[bi].is_none() && (b.row == q.row || b.col == q.col) {
                labels[bi] = Some(label);
            }
        }
    }
    let mut reduced_heights = Vec::new();
    if let Some(&q1) = pivots.first() {
        for (c, &h) in heights.iter().enumerate() {
            if c + 1 != q1.col {
                let clipped = h.min(rmax - 1);
                if clipped > 0 {
                    reduced_heights.push(clipped);
                }
            }
        }
    }
    DecomposingVertices {
        boxes,
        pivots,
        labels,
        reduced_heights,
    }
}

impl DecomposingVertices {
    /// Box indices ordered for shedding: ascending label, within a label
    /// bottom-to-top then left-to-right, pivots and unlabelled boxes last.
    /// Feeding this to the vertex-decomposition search as hints makes the
    /// first candidate a valid shedding vertex at every step.
    #[must_use]
    pub fn shedding_hints(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.boxes.len()).collect();
        order.sort_by_key(|&i| {
            let b = self.boxes[i];
            let is_pivot = self.pivots.contains(&b);
            (
                is_pivot,
                self.labels[i].unwrap_or(u32::MAX),
                std::cmp::Reverse(b.row),
                b.col,
            )
        });
        order
    }
}

// ============================================================================
// Realization: canonical join complex ≅ box complex
// ============================================================================

/// The certified identification between the canonical join complex of an alt
/// ν-Tamari lattice and the box complex of its shape.
pub struct Realization {
    pub boxes: BoxComplex,
    pub cjc: CanonicalJoinComplex,
    /// `ji_to_box[k]` is the box index of the `k`-th join-irreducible.
    pub ji_to_box: Vec<usize>,
    /// Inverse of `ji_to_box`.
    pub box_to_ji: Vec<usize>,
}

/// The box marked by the unique descent of a join-irreducible tree.
pub fn descent_box(
    region: &Region,
    shape: &Shape,
    tree: &DeltaNuTree,
) -> Result<BoxId, BoxError> {
    let ds = descents(region, tree);
    if ds.len() != 1 {
        return Err(BoxError::DescentCount { count: ds.len() });
    }
    box_at(shape, ds[0])
}

/// The box whose bottom-left lattice corner is `(x, y)`.
pub fn box_at(shape: &Shape, (x, y): (i64, i64)) -> Result<BoxId, BoxError> {
    let col = shape.column_of_x(x).ok_or(BoxError::MissingEmbedding)?;
    let n = shape.row_level(0).ok_or(BoxError::MissingEmbedding)?;
    let row = u32::try_from(n - y).map_err(|_| BoxError::NoSuchBox { row: 0, col })?;
    if !shape.has_box(row, col) {
        return Err(BoxError::NoSuchBox { row, col });
    }
    Ok(BoxId::new(row, col))
}

/// Build and certify the realization: the descent correspondence between
/// join-irreducibles and boxes must be a bijection, and relabelling the
/// canonical join complex along it must reproduce the box complex facet for
/// facet.
pub fn realize(alt: &AltTamariLattice, cap: usize) -> Result<Realization, BoxError> {
    let shape = Shape::from_region(alt.region());
    let boxes = box_complex(&shape, cap)?;
    let cjc = alt.lattice().canonical_join_complex()?;
    let n_boxes = boxes.boxes().len();
    if cjc.ji.len() != n_boxes {
        return Err(BoxError::FacetMismatch);
    }
    let mut ji_to_box = Vec::with_capacity(n_boxes);
    for &j in &cjc.ji {
        let b = descent_box(alt.region(), boxes.shape(), &alt.trees()[j])?;
        ji_to_box.push(boxes.index_of(b)?);
    }
    let mut box_to_ji = vec![usize::MAX; n_boxes];
    for (k, &b) in ji_to_box.iter().enumerate() {
        if box_to_ji[b] != usize::MAX {
            return Err(BoxError::NotBijective { index: b });
        }
        box_to_ji[b] = k;
    }
    let relabelled = cjc.complex.relabel(&ji_to_box, n_boxes);
    if relabelled.facets() != boxes.complex().facets() {
        return Err(BoxError::FacetMismatch);
    }
    Ok(Realization {
        boxes,
        cjc,
        ji_to_box,
        box_to_ji,
    })
}

impl Realization {
    /// Map a canonical-join-complex face (over join-irreducible positions) to
    /// the face of the box complex (over box indices).
    #[must_use]
    pub fn boxes_of_rep(&self, rep: &Bits) -> Bits {
        Bits::from_iter(
            self.boxes.boxes().len(),
            rep.iter().map(|k| self.ji_to_box[k]),
        )
    }

    /// The canonical join representation of a lattice element, as a face of
    /// the box complex.
    #[must_use]
    pub fn face_of_element(&self, x: usize) -> Bits {
        self.boxes_of_rep(&self.cjc.rep_faces[x])
    }

    /// Reconstruct the tree whose canonical representation is the given box
    /// face, by direct placement (no lattice search): sweep the vertical
    /// lattice lines right to left; on each line place nodes bottom-up at
    /// positions compatible with everything placed so far.  A line carrying a
    /// face box keeps placing until a node lands at or above the box's top
    /// edge; an untouched line places its bottom-most node and then continues
    /// only while no future node to the lower left could still rule the
    /// position out; the leftmost line fills to the top.  Returns the lattice
    /// index of the placed tree.
    pub fn element_of_face(
        &self,
        alt: &AltTamariLattice,
        face: &Bits,
    ) -> Result<usize, BoxError> {
        let region = alt.region();
        let mut stops = vec![i64::MIN; placement_width(region)];
        self.face_stop_lines(face, &mut stops)?;
        let mut placed = Vec::new();
        place_tree(region, &stops, &mut placed);
        let tree = DeltaNuTree::new(region, placed)?;
        alt.index_of(&tree).ok_or(BoxError::RoundTripMismatch)
    }

    /// Record, for each box of `face`, the stop level of the vertical line
    /// along the box's right edge: `stops[line] = bottom level of the box`.
    /// Lines without a face box keep `i64::MIN`.
    fn face_stop_lines(&self, face: &Bits, stops: &mut [i64]) -> Result<(), BoxError> {
        let shape = self.boxes.shape();
        for bi in face.iter() {
            let b = self.boxes.boxes()[bi];
            let x = shape.column_x(b.col).ok_or(BoxError::MissingEmbedding)?;
            let y = shape.row_level(b.row).ok_or(BoxError::MissingEmbedding)?;
            let line = usize::try_from(x + 1).expect("box edges sit at positive x");
            if stops[line] != i64::MIN {
                return Err(BoxError::ColumnCollision { col: b.col });
            }
            stops[line] = y;
        }
        Ok(())
    }

    /// Replay both directions on every face: placement realizes each box face
    /// as a tree whose canonical representation is that very face, and every
    /// canonical representation is a box face.  Returns the number of faces
    /// checked.
    pub fn verify_round_trip(&self, alt: &AltTamariLattice) -> Result<usize, BoxError> {
        // Every element's representation must be a face of the box complex.
        for x in 0..alt.len() {
            let face = self.face_of_element(x);
            if !self.boxes.complex().contains_face(&face) {
                return Err(BoxError::FacetMismatch);
            }
        }
        // Every face of the box complex must come from exactly one element.
        let faces = self.boxes.complex().faces()?;
        for face in &faces {
            let x = self.element_of_face(alt, face)?;
            if self.face_of_element(x) != *face {
                return Err(BoxError::RoundTripMismatch);
            }
        }
        Ok(faces.len())
    }

    /// Certify the same placement ↔ representation bijection as
    /// [`Realization::verify_round_trip`] without ever materialising the box
    /// faces or searching the lattice:
    ///
    /// * each element's representation is a clique of the box compatibility
    ///   graph (hence a face) and no two elements share one;
    /// * placing each representation reproduces exactly that element's tree;
    /// * the number of box faces, counted clique by clique, equals the number
    ///   of elements.
    ///
    /// Together these make the representation map a bijection onto the box
    /// faces with placement as its two-sided inverse.  Returns the number of
    /// faces accounted for.
    pub fn verify_round_trip_fast(&self, alt: &AltTamariLattice) -> Result<usize, BoxError> {
        fused_round_trip(alt, &self.boxes, &self.ji_to_box, &self.cjc.rep_faces)
    }
}

/// Fused-bijection core shared by [`Realization::verify_round_trip_fast`] and
/// the sweep verifier; see that method for the certificate contents.
/// `rep_faces` are over join-irreducible positions; `ji_to_box` carries them
/// to box indices.
pub(crate) fn fused_round_trip(
    alt: &AltTamariLattice,
    boxes: &BoxComplex,
    ji_to_box: &[usize],
    rep_faces: &[Bits],
) -> Result<usize, BoxError> {
    let region = alt.region();
    let n_boxes = boxes.boxes().len();
    let adjacency = boxes.adjacency();
    let mut seen: WordSet<Bits> = WordSet::default();
    seen.reserve(alt.len());
    let mut stops = vec![i64::MIN; placement_width(region)];
    let mut placed: Vec<(i64, i64)> = Vec::new();
    let mut members: Vec<usize> = Vec::new();
    let mut edge_of_box: Vec<usize> = Vec::with_capacity(n_boxes);
    for &b in boxes.boxes() {
        let x = boxes
            .shape()
            .column_x(b.col)
            .ok_or(BoxError::MissingEmbedding)?;
        edge_of_box.push(usize::try_from(x + 1).expect("box edges sit at positive x"));
    }
    let levels: Vec<i64> = boxes
        .boxes()
        .iter()
        .map(|b| boxes.shape().row_level(b.row).ok_or(BoxError::MissingEmbedding))
        .collect::<Result<_, _>>()?;
    for x in 0..alt.len() {
        members.clear();
        members.extend(rep_faces[x].iter().map(|k| ji_to_box[k]));
        let face = Bits::from_iter(n_boxes, members.iter().copied());
        for (i, &a) in members.iter().enumerate() {
            if members[i + 1..].iter().any(|&b| !adjacency[a].contains(b)) {
                return Err(BoxError::FacetMismatch);
            }
        }
        for &bi in &members {
            if stops[edge_of_box[bi]] != i64::MIN {
                return Err(BoxError::ColumnCollision {
                    col: boxes.boxes()[bi].col,
                });
            }
            stops[edge_of_box[bi]] = levels[bi];
        }
        place_tree(region, &stops, &mut placed);
        for &bi in &members {
            stops[edge_of_box[bi]] = i64::MIN;
        }
        placed.sort_unstable();
        if placed != alt.trees()[x].nodes() {
            return Err(BoxError::RoundTripMismatch);
        }
        if !seen.insert(face) {
            return Err(BoxError::NotBijective { index: x });
        }
    }
    let counts = count_cliques_by_size(adjacency, &Bits::full(n_boxes));
    let total: u64 = counts.iter().sum();
    if total != u64::try_from(alt.len()).expect("element count fits") {
        return Err(BoxError::FacetMismatch);
    }
    Ok(alt.len())
}

/// Number of vertical lattice lines the placement sweep visits (the stop
/// buffer is indexed by line `0 ..= x_max(n)`).
fn placement_width(region: &Region) -> usize {
    usize::try_from(region.x_max(region.north_steps()) + 1).expect("region width fits")
}

/// The placement sweep shared by [`Realization::element_of_face`] and
/// [`Realization::verify_round_trip_fast`]: visit the vertical lattice lines
/// right to left; on each line place nodes bottom-up at positions compatible
/// with everything placed so far.  A line whose entry in `stops` is set
/// carries a face box and keeps placing until a node lands at or above the
/// box's top edge; a line without one places its bottom-most node and then
/// continues only while no future node to the lower left could still rule the
/// position out; the leftmost line fills to the top.  `placed` is cleared and
/// refilled (lines in descending order, bottom-up within a line).
fn place_tree(region: &Region, stops: &[i64], placed: &mut Vec<(i64, i64)>) {
    let n = region.north_steps();
    placed.clear();
    // A future node strictly southwest of `(line, y)` can rule the position
    // out iff its row reaches the line (`line ≤ x_max(y′)`).  Such a node can
    // only appear at a position compatible with everything placed so far;
    // every placed node sits at x ≥ line, so compatibility of a witness
    // `(x′, y′)` with `x′ < line` does not depend on `x′` at all: the witness
    // row `y′` works iff no placed node lies strictly above it within reach
    // (`q.y > y′` and `q.x ≤ x_max(y′)`).
    let blockable = |placed: &[(i64, i64)], line: i64, y: i64| -> bool {
        (0..y).any(|yq| {
            let yqu = usize::try_from(yq).expect("level fits");
            let reach = region.x_max(yqu);
            region.x_min(yqu) < line
                && line <= reach
                && placed.iter().all(|&q| q.1 <= yq || q.0 > reach)
        })
    };
    let mut line = region.x_max(n);
    while line >= 0 {
        let limit = stops[usize::try_from(line).expect("nonnegative")];
        let mut last_y: Option<i64> = None;
        for y in 0..=n {
            let y_i = i64::try_from(y).expect("small");
            if !region.contains(line, y_i) {
                continue;
            }
            let p = (line, y_i);
            if placed.iter().any(|&q| region.incompatible(p, q)) {
                continue;
            }
            let keep = match last_y {
                None => true,
                Some(_) if line == 0 => true,
                // The face box on this line spans levels
                // `limit ..= limit + 1`; climb until a node lands on or
                // above its top edge.
                Some(prev) if limit != i64::MIN => prev <= limit,
                Some(_) => !blockable(placed, line, y_i),
            };
            if !keep {
                break;
            }
            placed.push(p);
            last_y = Some(y_i);
        }
        debug_assert!(last_y.is_some(), "every line receives a node");
        line -= 1;
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{IncrementVector, NePath};

    fn shape(heights: &[u32]) -> Shape {
        Shape::from_heights(heights.to_vec()).unwrap()
    }

    #[test]
    fn compatibility_on_small_shapes() {
        // u = (3,1): column 1 boxes pairwise incompatible; (1,1)–(1,2) share
        // a row; deep column pairs are rescued by the short column.
        let u = [3, 1];
        let b = |r, c| BoxId::new(r, c);
        assert!(incompatible(&u, b(1, 1), b(2, 1)));
        assert!(incompatible(&u, b(1, 1), b(1, 2)));
        assert!(!incompatible(&u, b(2, 1), b(1, 2)));
        assert!(!incompatible(&u, b(3, 1), b(1, 2)));

        // u = (2,2): the full rectangle keeps southwest pairs incompatible.
        let v = [2, 2];
        assert!(incompatible(&v, b(2, 1), b(1, 2)));
        assert!(!incompatible(&v, b(1, 1), b(2, 2)));

        // Northeast pair escaping the shape.
        let w = [3, 2, 1];
        assert!(!incompatible(&w, b(2, 1), b(1, 3)));
        assert!(incompatible(&w, b(2, 1), b(1, 2)));
    }

    #[test]
    fn box_complex_of_three_one() {
        // Shape of the ν = (1,0,1,0), δ = (0,1,0) lattice: u = (3,1) with
        // seven faces (the empty face, four vertices, two edges).
        let bc = box_complex(&shape(&[3, 1]), 1 << 20).unwrap();
        assert_eq!(bc.boxes().len(), 4);
        let f = bc.complex().f_vector().unwrap();
        assert_eq!(f, vec![4, 2]);
        assert_eq!(bc.complex().faces().unwrap().len(), 7);
        // Facets: {(1,1)}, {(2,1),(1,2)}, {(3,1),(1,2)}.
        let idx = |r, c| bc.index_of(BoxId::new(r, c)).unwrap();
        let mut facets: Vec<Vec<usize>> =
            bc.complex().facets().iter().map(|f| f.to_vec()).collect();
        facets.sort();
        let mut expect = vec![
            vec![idx(1, 1)],
            vec![idx(2, 1), idx(1, 2)],
            vec![idx(3, 1), idx(1, 2)],
        ];
        for e in &mut expect {
            e.sort_unstable();
        }
        expect.sort();
        assert_eq!(facets, expect);
    }

    #[test]
    fn flagness_holds_on_samples() {
        for u in [vec![3, 1], vec![1, 2, 1], vec![2, 3, 3, 2], vec![4, 4, 1]] {
            let bc = box_complex(&shape(&u), 1 << 20).unwrap();
            assert!(bc.complex().is_flag().unwrap(), "u = {u:?}");
        }
    }

    #[test]
    fn bottom_row_rotation_isomorphism() {
        // When the last column has height one it can be moved to the front:
        // Δ_(3,2,1) ≅ Δ_(1,3,2), and generally Δ_(u…,1) ≅ Δ_(1,u…).
        for u in [vec![3, 2, 1], vec![2, 2, 1], vec![4, 1]] {
            let mut rotated = vec![1];
            rotated.extend(u[..u.len() - 1].iter().copied());
            let a = box_complex(&shape(&u), 1 << 20).unwrap();
            let b = box_complex(&shape(&rotated), 1 << 20).unwrap();
            assert!(
                a.complex().isomorphism(b.complex()).is_some(),
                "u = {u:?} vs {rotated:?}"
            );
        }
    }

    #[test]
    fn transpose_isomorphism_for_staircases() {
        // For nonincreasing heights the transposed shape (conjugate
        // partition) is again a valid shape and gives an isomorphic complex.
        for u in [vec![3, 2, 1], vec![3, 3, 1], vec![4, 2, 1, 1], vec![2, 2]] {
            let rmax = u[0] as usize;
            let conj: Vec<u32> = (1..=rmax)
                .map(|r| u.iter().filter(|&&h| h as usize >= r).count() as u32)
                .collect();
            let a = box_complex(&shape(&u), 1 << 20).unwrap();
            let b = box_complex(&shape(&conj), 1 << 20).unwrap();
            assert!(
                a.complex().isomorphism(b.complex()).is_some(),
                "u = {u:?} vs {conj:?}"
            );
        }
    }

    #[test]
    fn link_split_worked_example() {
        // u = (6,6,7,8,8,9,10,10,10,10,10,8,5,5,4), pivot at row 6, column
        // 10: the upper part is eleven columns clipped to height five glued
        // to the final height-four column; the lower part is (4, 2).
        let u = vec![6, 6, 7, 8, 8, 9, 10, 10, 10, 10, 10, 8, 5, 5, 4];
        let (plus, minus) = link_split(&u, BoxId::new(6, 10)).unwrap();
        assert_eq!(plus, vec![5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 4]);
        assert_eq!(minus, vec![4, 2]);
    }

    #[test]
    fn link_split_rejects_southwest_pivots() {
        // u = (3,1), box (1,2): the box (2,1) southwest of it is compatible
        // (the rectangle leaves the shape), so the split formula is wrong
        // there and must refuse.
        let err = link_split(&[3, 1], BoxId::new(1, 2)).unwrap_err();
        assert!(matches!(err, BoxError::UnsupportedPivot { col: 2 }));
        // Missing box.
        assert!(matches!(
            link_split(&[3, 1], BoxId::new(2, 2)),
            Err(BoxError::NoSuchBox { .. })
        ));
    }

    #[test]
    fn link_split_matches_link_on_supported_pivots() {
        // For every supported pivot the split really is the link: the join
        // of the two smaller complexes is isomorphic to the link of the
        // vertex.  Rejected pivots always have a compatible southwest box.
        for u in [vec![3, 1], vec![1, 2, 1], vec![2, 3, 3, 2], vec![3, 2, 1]] {
            let bc = box_complex(&shape(&u), 1 << 20).unwrap();
            for (i, &b) in bc.boxes().iter().enumerate() {
                match link_split(&u, b) {
                    Ok((plus, minus)) => {
                        let link = bc
                            .complex()
                            .link(&Bits::from_iter(bc.boxes().len(), [i]))
                            .induced(&bc.adjacency()[i]);
                        let mk = |h: &[u32]| -> SimplicialComplex {
                            if h.is_empty() {
                                SimplicialComplex::simplex(0, Bits::new(0))
                            } else {
                                box_complex(&shape(h), 1 << 20)
                                    .unwrap()
                                    .complex()
                                    .clone()
                            }
                        };
                        let joined = mk(&plus).join(&mk(&minus));
                        assert!(
                            link.isomorphism(&joined).is_some(),
                            "u = {u:?}, box {b}"
                        );
                    }
                    Err(BoxError::UnsupportedPivot { .. }) => {
                        // Witness: some compatible box strictly southwest.
                        let witness = bc.boxes().iter().any(|&a| {
                            a.col < b.col
                                && a.row > b.row
                                && !incompatible(&u, a, b)
                        });
                        assert!(witness, "u = {u:?}, box {b}");
                    }
                    Err(e) => panic!("unexpected error {e} for u = {u:?}, box {b}"),
                }
            }
        }
    }

    #[test]
    fn decomposing_vertices_worked_example() {
        // Same fifteen-column shape: q₁ sits at row 10, column 11; thirteen
        // boxes share its row or column; deleting them leaves the join of
        // {q₁} with the reduced shape.
        let u = vec![6, 6, 7, 8, 8, 9, 10, 10, 10, 10, 10, 8, 5, 5, 4];
        let dv = decomposing_vertices(&shape(&u));
        assert_eq!(dv.pivots[0], BoxId::new(10, 11));
        let label_one = dv
            .labels
            .iter()
            .filter(|l| **l == Some(1))
            .count();
        assert_eq!(label_one, 14); // q₁ and its thirteen companions
        assert_eq!(
            dv.reduced_heights,
            vec![6, 6, 7, 8, 8, 9, 9, 9, 9, 9, 8, 5, 5, 4]
        );
    }

    #[test]
    fn decomposing_vertices_are_shedding() {
        // Deleting the label-one boxes other than q₁ from Δ_u leaves a
        // complex isomorphic to Δ_(reduced) joined with the q₁ cone point.
        for u in [vec![3, 1], vec![1, 2, 1], vec![2, 2], vec![3, 2, 1]] {
            let bc = box_complex(&shape(&u), 1 << 20).unwrap();
            let dv = decomposing_vertices(bc.shape());
            assert_eq!(dv.boxes, bc.boxes());
            let q1 = dv.pivots[0];
            let keep = Bits::from_iter(
                bc.boxes().len(),
                (0..bc.boxes().len()).filter(|&i| {
                    bc.boxes()[i] == q1 || dv.labels[i] != Some(1)
                }),
            );
            let deletion = bc.complex().induced(&keep);
            let rest = if dv.reduced_heights.is_empty() {
                SimplicialComplex::simplex(0, Bits::new(0))
            } else {
                box_complex(&shape(&dv.reduced_heights), 1 << 20)
                    .unwrap()
                    .complex()
                    .clone()
            };
            let point = SimplicialComplex::simplex(1, Bits::from_iter(1, [0]));
            assert!(
                deletion.isomorphism(&rest.join(&point)).is_some(),
                "u = {u:?}"
            );
        }
    }

    #[test]
    fn pivot_staircase_for_increasing_shapes() {
        // Increasing staircase (δ = 0 shapes): pivots are the i-th box from
        // the right in row i, counted bottom-up.
        let u = vec![1, 1, 2, 2, 2, 2, 3, 3, 3]; // ν = (0,3,4,2,1), δ = 0
        let dv = decomposing_vertices(&shape(&u));
        assert_eq!(
            dv.pivots,
            vec![BoxId::new(3, 9), BoxId::new(2, 8), BoxId::new(1, 7)]
        );
        // Every box is labelled.
        assert!(dv.labels.iter().all(Option::is_some));
    }

    fn build(nu_runs: &[u32], delta_vals: &[u32]) -> AltTamariLattice {
        let nu = NePath::new(nu_runs.to_vec()).unwrap();
        let delta = IncrementVector::new(delta_vals.to_vec(), &nu).unwrap();
        AltTamariLattice::build(&nu, &delta, 1 << 20).unwrap()
    }

    #[test]
    fn realization_on_the_seven_element_example() {
        let alt = build(&[1, 0, 1, 0], &[0, 1, 0]);
        let real = realize(&alt, 1 << 20).unwrap();
        assert_eq!(real.boxes.boxes().len(), 4);
        // Both directions replay on all seven faces.
        assert_eq!(real.verify_round_trip(&alt).unwrap(), 7);
        // The bottom element has the empty representation; the top is the
        // join of two boxes.
        let bottom_face = real.face_of_element(alt.lattice().bottom());
        assert!(bottom_face.is_empty());
        let top_face = real.face_of_element(alt.lattice().top());
        assert_eq!(top_face.len(), 2);
    }

    #[test]
    fn realization_across_delta_choices() {
        for (runs, deltas) in [
            (vec![1, 2, 0], vec![vec![0, 0], vec![1, 0], vec![2, 0]]),
            (vec![0, 1, 1, 1], vec![vec![0, 0, 0], vec![1, 1, 1]]),
            (vec![0, 2, 2], vec![vec![0, 0], vec![2, 2], vec![1, 0]]),
        ] {
            for d in deltas {
                let alt = build(&runs, &d);
                let real = realize(&alt, 1 << 20).unwrap();
                let slow = real.verify_round_trip(&alt).unwrap();
                let fast = real.verify_round_trip_fast(&alt).unwrap();
                assert_eq!(slow, fast);
                assert_eq!(slow, alt.len());
                // The counted f-vector agrees with the materialised one.
                assert_eq!(
                    real.boxes.f_vector(),
                    real.boxes.complex().f_vector().unwrap()
                );
                assert_eq!(
                    real.boxes.euler_reduced(),
                    real.boxes.complex().euler_reduced().unwrap()
                );
            }
        }
    }
}
