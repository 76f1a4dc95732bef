//! Northeast lattice paths, increment vectors, regions, and shapes.
//!
//! A northeast path ν is stored by its east-run lengths `(ν₀, ν₁, …, ν_n)`:
//! the path `E^{ν₀} N E^{ν₁} N … N E^{ν_n}` from `(0,0)` to `(m,n)` with
//! `m = Σ νᵢ` east steps and `n` north steps.  An increment vector
//! `δ = (δ₁, …, δ_n)` with `0 ≤ δᵢ ≤ νᵢ` selects a sublattice of the ν-Tamari
//! lattice; the two derived paths are
//!
//! * `ν̌ = (Σν − Σδ, δ₁, …, δ_n)`, a northeast path, and
//! * `ν̂`, the northwest path `W^{ν₀} N W^{ν₁−δ₁} … N W^{ν_n−δ_n}` started at
//!   `(Σν − Σδ, 0)`,
//!
//! which bound the planar region whose points carry the (δ,ν)-trees and whose
//! unit boxes form the unimodal shape `u(δ,ν)`.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

// ============================================================================
// Errors
// ============================================================================

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("a northeast path needs at least one east run (ν₀)")]
    EmptyRuns,
    #[error("increment vector has length {got}, expected {expected} (number of north steps)")]
    DeltaLength { got: usize, expected: usize },
    #[error("delta out of range: δ_{index} = {delta} exceeds ν_{index} = {max}")]
    DeltaOutOfRange { index: usize, delta: u32, max: u32 },
    #[error("shape columns must be unimodal, violated at column {index}")]
    NonUnimodal { index: usize },
    #[error("shape columns must be positive, column {index} is zero")]
    ZeroColumn { index: usize },
    #[error("enumeration exceeds cap of {cap} paths")]
    CapExceeded { cap: usize },
    #[error("east run ν_{index} = {value} is smaller than 2, cannot shrink")]
    ShrinkTooSmall { index: usize, value: u32 },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

// ============================================================================
// Northeast paths and increment vectors
// ============================================================================

/// A northeast lattice path, stored as east-run lengths `(ν₀, …, ν_n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NePath {
    runs: Vec<u32>,
}

impl NePath {
    pub fn new(runs: Vec<u32>) -> Result<Self, PathError> {
        if runs.is_empty() {
            return Err(PathError::EmptyRuns);
        }
        Ok(NePath { runs })
    }

    /// East-run lengths `(ν₀, …, ν_n)`.
    #[must_use]
    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    /// Number of north steps `n`.
    #[must_use]
    pub fn north_steps(&self) -> usize {
        self.runs.len() - 1
    }

    /// Number of east steps `m = Σ νᵢ`.
    #[must_use]
    pub fn east_steps(&self) -> u64 {
        self.runs.iter().map(|&r| u64::from(r)).sum()
    }

    /// `x`-coordinate of the path at height `y`, i.e. `Σ_{i ≤ y} νᵢ`.
    #[must_use]
    pub fn x_at(&self, y: usize) -> i64 {
        self.runs[..=y].iter().map(|&r| i64::from(r)).sum()
    }

    /// The path as a step string over the alphabet `{E, N}`.
    #[must_use]
    pub fn to_steps(&self) -> String {
        let mut s = String::new();
        for (i, &r) in self.runs.iter().enumerate() {
            if i > 0 {
                s.push('N');
            }
            for _ in 0..r {
                s.push('E');
            }
        }
        s
    }

    /// Parse a step string such as `"ENEEN"` (case-insensitive).
    pub fn from_steps(steps: &str) -> Result<Self, PathError> {
        let mut runs = vec![0u32];
        for ch in steps.chars() {
            match ch.to_ascii_uppercase() {
                'E' => *runs.last_mut().expect("runs is never empty") += 1,
                'N' => runs.push(0),
                c if c.is_whitespace() => {}
                _ => {
                    return Err(PathError::Parse {
                        what: "step string",
                        input: steps.to_string(),
                    })
                }
            }
        }
        NePath::new(runs)
    }

    /// Is `self` weakly above `other`?  Both paths must share endpoints; the
    /// test is `Σ_{i≤y} self_i ≤ Σ_{i≤y} other_i` for every `y`.
    #[must_use]
    pub fn weakly_above(&self, other: &NePath) -> bool {
        self.runs.len() == other.runs.len()
            && self.east_steps() == other.east_steps()
            && (0..self.runs.len()).all(|y| self.x_at(y) <= other.x_at(y))
    }

    /// The shrunken path `(ν₀, ν₁−2, …, ν_n−2)`; every `νᵢ` with `i ≥ 1` must
    /// be at least 2.
    pub fn shrunken(&self) -> Result<NePath, PathError> {
        let mut runs = vec![self.runs[0]];
        for (i, &r) in self.runs.iter().enumerate().skip(1) {
            if r < 2 {
                return Err(PathError::ShrinkTooSmall { index: i, value: r });
            }
            runs.push(r - 2);
        }
        NePath::new(runs)
    }
}

impl fmt::Display for NePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for NePath {
    type Err = PathError;

    /// Accepts either a run tuple `"(1,2,0)"` (parentheses optional) or a step
    /// string `"ENEEN"`.
    fn from_str(s: &str) -> Result<Self, PathError> {
        let t = s.trim();
        if t.chars()
            .all(|c| matches!(c.to_ascii_uppercase(), 'E' | 'N') || c.is_whitespace())
            && t.chars().any(|c| matches!(c.to_ascii_uppercase(), 'E' | 'N'))
        {
            return NePath::from_steps(t);
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let runs: Result<Vec<u32>, _> = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect();
        match runs {
            Ok(v) if !v.is_empty() => NePath::new(v),
            _ => Err(PathError::Parse {
                what: "northeast path",
                input: s.to_string(),
            }),
        }
    }
}

/// An increment vector `δ = (δ₁, …, δ_n)` for a path with `n` north steps.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IncrementVector {
    delta: Vec<u32>,
}

impl IncrementVector {
    /// Validates `len(δ) = n` and `0 ≤ δᵢ ≤ νᵢ`.
    pub fn new(delta: Vec<u32>, nu: &NePath) -> Result<Self, PathError> {
        if delta.len() != nu.north_steps() {
            return Err(PathError::DeltaLength {
                got: delta.len(),
                expected: nu.north_steps(),
            });
        }
        for (i, &d) in delta.iter().enumerate() {
            let max = nu.runs()[i + 1];
            if d > max {
                return Err(PathError::DeltaOutOfRange {
                    index: i + 1,
                    delta: d,
                    max,
                });
            }
        }
        Ok(IncrementVector { delta })
    }

    /// The zero increment vector for `nu`.
    #[must_use]
    pub fn zero(nu: &NePath) -> Self {
        IncrementVector {
            delta: vec![0; nu.north_steps()],
        }
    }

    /// The maximal increment vector `δ = (ν₁, …, ν_n)`, which recovers the
    /// ν-Tamari lattice itself.
    #[must_use]
    pub fn tamari(nu: &NePath) -> Self {
        IncrementVector {
            delta: nu.runs()[1..].to_vec(),
        }
    }

    #[must_use]
    pub fn values(&self) -> &[u32] {
        &self.delta
    }

    #[must_use]
    pub fn sum(&self) -> u64 {
        self.delta.iter().map(|&d| u64::from(d)).sum()
    }

    /// All valid increment vectors for `nu`, in lexicographic order.
    #[must_use]
    pub fn all_for(nu: &NePath) -> Vec<IncrementVector> {
        let bounds = &nu.runs()[1..];
        let mut out = Vec::new();
        let mut cur = vec![0u32; bounds.len()];
        loop {
            out.push(IncrementVector { delta: cur.clone() });
            // odometer increment, most significant digit first
            let mut pos = bounds.len();
            while pos > 0 {
                pos -= 1;
                if cur[pos] < bounds[pos] {
                    cur[pos] += 1;
                    for c in cur[pos + 1..].iter_mut() {
                        *c = 0;
                    }
                    break;
                }
                if pos == 0 {
                    return out;
                }
            }
            if bounds.is_empty() {
                return out;
            }
        }
    }
}

impl fmt::Display for IncrementVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.delta.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// The check path `ν̌ = (Σν − Σδ, δ₁, …, δ_n)`.
#[must_use]
pub fn nu_check(nu: &NePath, delta: &IncrementVector) -> NePath {
    let head = nu.east_steps() - delta.sum();
    let mut runs = vec![u32::try_from(head).expect("run fits in u32")];
    runs.extend_from_slice(delta.values());
    NePath::new(runs).expect("nonempty by construction")
}

/// West-run lengths of the hat path `ν̂ = W^{ν₀} N W^{ν₁−δ₁} … N W^{ν_n−δ_n}`,
/// which starts at `(Σν − Σδ, 0)` and ends at `(0, n)`.
#[must_use]
pub fn nu_hat_west_runs(nu: &NePath, delta: &IncrementVector) -> Vec<u32> {
    let mut runs = vec![nu.runs()[0]];
    for (i, &d) in delta.values().iter().enumerate() {
        runs.push(nu.runs()[i + 1] - d);
    }
    runs
}

// ============================================================================
// The region between ν̂ and ν̌
// ============================================================================

/// The set of lattice points weakly between the hat path `ν̂` (on the left)
/// and the check path `ν̌` (on the right): row `y` holds the points `(x, y)`
/// with `x_min(y) ≤ x ≤ x_max(y)`.
#[derive(Clone, Debug)]
pub struct Region {
    nu: NePath,
    delta: IncrementVector,
    /// Left bound per row: position of ν̂ after its west run at height `y`.
    x_min: Vec<i64>,
    /// Right bound per row: position of ν̌ after its east run at height `y`.
    x_max: Vec<i64>,
}

impl Region {
    #[must_use]
    pub fn new(nu: &NePath, delta: &IncrementVector) -> Self {
        let n = nu.north_steps();
        let check = nu_check(nu, delta);
        let check0 = i64::from(check.runs()[0]);
        let mut x_max = Vec::with_capacity(n + 1);
        let mut x_min = Vec::with_capacity(n + 1);
        let mut hi = 0i64;
        let mut lo = check0 - i64::from(nu.runs()[0]);
        for y in 0..=n {
            hi += i64::from(check.runs()[y]);
            if y > 0 {
                lo -= i64::from(nu.runs()[y] - delta.values()[y - 1]);
            }
            x_max.push(hi);
            x_min.push(lo);
        }
        debug_assert_eq!(x_min[n], 0);
        debug_assert_eq!(x_max[n], i64::try_from(nu.east_steps()).unwrap());
        Region {
            nu: nu.clone(),
            delta: delta.clone(),
            x_min,
            x_max,
        }
    }

    #[must_use]
    pub fn nu(&self) -> &NePath {
        &self.nu
    }

    #[must_use]
    pub fn delta(&self) -> &IncrementVector {
        &self.delta
    }

    /// Number of north steps of ν.
    #[must_use]
    pub fn north_steps(&self) -> usize {
        self.nu.north_steps()
    }

    /// Left bound of row `y`.
    #[must_use]
    pub fn x_min(&self, y: usize) -> i64 {
        self.x_min[y]
    }

    /// Right bound of row `y` (the check path's `x` at height `y`).
    #[must_use]
    pub fn x_max(&self, y: usize) -> i64 {
        self.x_max[y]
    }

    #[must_use]
    pub fn contains(&self, x: i64, y: i64) -> bool {
        y >= 0
            && (y as usize) < self.x_min.len()
            && x >= self.x_min[y as usize]
            && x <= self.x_max[y as usize]
    }

    /// All points of the region, ordered by `(y, x)`.
    #[must_use]
    pub fn points(&self) -> Vec<(i64, i64)> {
        let mut pts = Vec::new();
        for y in 0..self.x_min.len() {
            for x in self.x_min[y]..=self.x_max[y] {
                pts.push((x, y as i64));
            }
        }
        pts
    }

    /// Two region points are incompatible when one lies strictly southwest of
    /// the other close enough to the check path: for `x₁ < x₂` and `y₁ < y₂`,
    /// incompatibility means `x₂ ≤ x_max(y₁)`.  Points sharing a row or a
    /// column are always compatible.
    #[must_use]
    pub fn incompatible(&self, p: (i64, i64), q: (i64, i64)) -> bool {
        let (lo, hi) = if p.0 < q.0 { (p, q) } else { (q, p) };
        lo.0 < hi.0 && lo.1 < hi.1 && hi.0 <= self.x_max[lo.1 as usize]
    }
}

// ============================================================================
// Shapes
// ============================================================================

/// A top-aligned unimodal shape: column `c` (1-based, left to right) is a
/// stack of `heights[c-1]` unit boxes hanging from the shape's top edge.
/// Boxes are addressed as `(r, c)` with `r = 1` the top row.
///
/// Shapes produced from a pair `(ν, δ)` remember the lattice embedding of
/// their columns, which the tree bijections need; shapes built from raw
/// heights do not.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Shape {
    heights: Vec<u32>,
    /// Lattice `x`-coordinate of each column's left edge, when known.
    col_x: Vec<i64>,
    /// Number of north steps of the originating ν, when known.
    north_steps: Option<usize>,
}

impl Shape {
    /// Build a shape from raw column heights; validates positivity and
    /// unimodality (weakly increasing, then weakly decreasing).
    pub fn from_heights(heights: Vec<u32>) -> Result<Self, PathError> {
        for (i, &h) in heights.iter().enumerate() {
            if h == 0 {
                return Err(PathError::ZeroColumn { index: i + 1 });
            }
        }
        let peak = heights
            .iter()
            .enumerate()
            .max_by_key(|&(i, &h)| (h, std::cmp::Reverse(i)))
            .map_or(0, |(i, _)| i);
        for i in 1..=peak {
            if heights[i] < heights[i - 1] {
                return Err(PathError::NonUnimodal { index: i + 1 });
            }
        }
        for i in peak + 1..heights.len() {
            if heights[i] > heights[i - 1] {
                return Err(PathError::NonUnimodal { index: i + 1 });
            }
        }
        Ok(Shape {
            heights,
            col_x: Vec::new(),
            north_steps: None,
        })
    }

    /// The shape `u(δ,ν)` of the region between `ν̂` and `ν̌`: the heights of
    /// the (automatically top-aligned, unimodal) columns of unit boxes fitting
    /// between the two paths.
    #[must_use]
    pub fn from_pair(nu: &NePath, delta: &IncrementVector) -> Self {
        let region = Region::new(nu, delta);
        Shape::from_region(&region)
    }

    /// Same as [`Shape::from_pair`], reusing an already-built region.
    #[must_use]
    pub fn from_region(region: &Region) -> Self {
        let n = region.north_steps();
        let mut heights = Vec::new();
        let mut col_x = Vec::new();
        if n > 0 {
            for x in region.x_min(n - 1)..region.x_max(n - 1) {
                // Row y holds a box on [x, x+1] iff x_min(y) ≤ x ≤ x_max(y)-1;
                // rows grow with y, so the column spans [y_first, n-1].
                let y_first = (0..n)
                    .find(|&y| region.x_min(y) <= x && x < region.x_max(y))
                    .expect("row n-1 admits every column");
                heights.push(u32::try_from(n - y_first).expect("height fits"));
                col_x.push(x);
            }
        }
        Shape {
            heights,
            col_x,
            north_steps: Some(n),
        }
    }

    /// Column heights, left to right.
    #[must_use]
    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    /// Number of columns.
    #[must_use]
    pub fn num_columns(&self) -> usize {
        self.heights.len()
    }

    /// Number of rows, i.e. the maximal height.
    #[must_use]
    pub fn num_rows(&self) -> u32 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Total number of boxes.
    #[must_use]
    pub fn num_boxes(&self) -> u64 {
        self.heights.iter().map(|&h| u64::from(h)).sum()
    }

    /// Does row `r` (1-based from the top) contain a box in column `c`
    /// (1-based)?
    #[must_use]
    pub fn has_box(&self, r: u32, c: usize) -> bool {
        r >= 1 && c >= 1 && c <= self.heights.len() && self.heights[c - 1] >= r
    }

    /// Lattice `x`-coordinate of the left edge of column `c` (1-based), when
    /// the shape came from a `(ν, δ)` pair.
    #[must_use]
    pub fn column_x(&self, c: usize) -> Option<i64> {
        self.col_x.get(c - 1).copied()
    }

    /// Lattice row level of shape row `r`: boxes of row `r` span heights
    /// `[n - r, n - r + 1]`.
    #[must_use]
    pub fn row_level(&self, r: u32) -> Option<i64> {
        self.north_steps
            .map(|n| i64::try_from(n).expect("fits") - i64::from(r))
    }

    /// Column index (1-based) of the column with lattice `x`-coordinate `x`.
    #[must_use]
    pub fn column_of_x(&self, x: i64) -> Option<usize> {
        self.col_x.iter().position(|&cx| cx == x).map(|i| i + 1)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.heights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, ")")
    }
}

// ============================================================================
// ν-Dyck paths and Narayana numbers
// ============================================================================

/// A northeast path weakly above ν with the same endpoints, together with its
/// valley count (number of `EN` factors).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NuDyckPath {
    pub path: NePath,
    pub valleys: usize,
}

/// Number of `EN` factors of a path: indices `i < n` with `μᵢ > 0`.
#[must_use]
pub fn valley_count(path: &NePath) -> usize {
    let runs = path.runs();
    runs[..runs.len() - 1].iter().filter(|&&r| r > 0).count()
}

/// Enumerate every northeast path weakly above `nu` (same endpoints), in
/// lexicographic order of run vectors.  Errors out if more than `cap` paths
/// would be produced.
pub fn enumerate_nu_dyck(nu: &NePath, cap: usize) -> Result<Vec<NuDyckPath>, PathError> {
    let n = nu.north_steps();
    let mut out = Vec::new();
    let mut runs = vec![0u32; n + 1];
    fn rec(
        nu: &NePath,
        runs: &mut Vec<u32>,
        y: usize,
        sum: u64,
        out: &mut Vec<NuDyckPath>,
        cap: usize,
    ) -> Result<(), PathError> {
        let n = nu.north_steps();
        let m = nu.east_steps();
        if y == n {
            let last = m - sum;
            runs[n] = u32::try_from(last).expect("run fits");
            if out.len() >= cap {
                return Err(PathError::CapExceeded { cap });
            }
            let path = NePath::new(runs.clone()).expect("nonempty");
            let valleys = valley_count(&path);
            out.push(NuDyckPath { path, valleys });
            return Ok(());
        }
        let bound = u64::try_from(nu.x_at(y)).expect("non-negative") - sum;
        for r in 0..=bound {
            runs[y] = u32::try_from(r).expect("run fits");
            rec(nu, runs, y + 1, sum + r, out, cap)?;
        }
        Ok(())
    }
    rec(nu, &mut runs, 0, 0, &mut out, cap)?;
    Ok(out)
}

/// Coefficients of the Narayana polynomial of ν: entry `k` counts the paths
/// weakly above ν with exactly `k` valleys.
pub fn narayana_polynomial(nu: &NePath, cap: usize) -> Result<Vec<u64>, PathError> {
    let paths = enumerate_nu_dyck(nu, cap)?;
    let max_v = paths.iter().map(|p| p.valleys).max().unwrap_or(0);
    let mut coeffs = vec![0u64; max_v + 1];
    for p in &paths {
        coeffs[p.valleys] += 1;
    }
    Ok(coeffs)
}

/// Reduced Euler characteristic predicted by the Narayana polynomial:
/// `χ̃ = -Σ_k (-1)^k Nar_k(ν)`.
#[must_use]
pub fn euler_from_narayana(coeffs: &[u64]) -> i64 {
    let mut total = 0i64;
    for (k, &c) in coeffs.iter().enumerate() {
        let c = i64::try_from(c).expect("count fits in i64");
        if k % 2 == 0 {
            total -= c;
        } else {
            total += c;
        }
    }
    total
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn nu(runs: &[u32]) -> NePath {
        NePath::new(runs.to_vec()).unwrap()
    }

    fn delta(nu_: &NePath, values: &[u32]) -> IncrementVector {
        IncrementVector::new(values.to_vec(), nu_).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let p: NePath = "(1,2,0)".parse().unwrap();
        assert_eq!(p.runs(), &[1, 2, 0]);
        assert_eq!(p.to_string(), "(1,2,0)");
        assert_eq!(p.to_steps(), "ENEEN");
        let q: NePath = "ENEEN".parse().unwrap();
        assert_eq!(p, q);
        let r: NePath = "1, 2, 0".parse().unwrap();
        assert_eq!(p, r);
        assert!("(1,x)".parse::<NePath>().is_err());
        assert!("".parse::<NePath>().is_err());
    }

    #[test]
    fn delta_validation() {
        let p = nu(&[1, 2, 0]);
        assert!(IncrementVector::new(vec![2, 0], &p).is_ok());
        assert_eq!(
            IncrementVector::new(vec![3, 0], &p),
            Err(PathError::DeltaOutOfRange {
                index: 1,
                delta: 3,
                max: 2
            })
        );
        assert_eq!(
            IncrementVector::new(vec![1], &p),
            Err(PathError::DeltaLength {
                got: 1,
                expected: 2
            })
        );
        // Π (νᵢ + 1) increment vectors exist.
        assert_eq!(IncrementVector::all_for(&p).len(), 3);
        let q = nu(&[0, 2, 1, 3]);
        assert_eq!(IncrementVector::all_for(&q).len(), 3 * 2 * 4);
    }

    #[test]
    fn check_and_hat_paths() {
        // For ν = (3,3,3,3) and δ = (1,1,1): ν̌ = (9,1,1,1) and the hat path
        // has west runs (3,2,2,2).
        let p = nu(&[3, 3, 3, 3]);
        let d = delta(&p, &[1, 1, 1]);
        assert_eq!(nu_check(&p, &d), nu(&[9, 1, 1, 1]));
        assert_eq!(nu_hat_west_runs(&p, &d), vec![3, 2, 2, 2]);

        // δ = ν reproduces ν itself as the check path.
        let d_max = IncrementVector::tamari(&p);
        assert_eq!(nu_check(&p, &d_max), p);
        assert_eq!(nu_hat_west_runs(&p, &d_max), vec![3, 0, 0, 0]);
    }

    #[test]
    fn region_bounds_and_points() {
        let p = nu(&[1, 0, 1, 0]);
        let d = delta(&p, &[0, 1, 0]);
        let region = Region::new(&p, &d);
        assert_eq!(
            (0..=3).map(|y| region.x_min(y)).collect::<Vec<_>>(),
            vec![0, 0, 0, 0]
        );
        assert_eq!(
            (0..=3).map(|y| region.x_max(y)).collect::<Vec<_>>(),
            vec![1, 1, 2, 2]
        );
        assert_eq!(region.points().len(), 10);
        assert!(region.contains(2, 3));
        assert!(!region.contains(2, 1));

        // Incompatibility: strictly southwest–northeast pairs close to ν̌.
        assert!(region.incompatible((0, 0), (1, 1)));
        assert!(!region.incompatible((0, 0), (2, 2)));
        assert!(region.incompatible((1, 2), (2, 3)));
        // Shared row or column is always compatible.
        assert!(!region.incompatible((0, 0), (1, 0)));
        assert!(!region.incompatible((0, 0), (0, 2)));
        // Northwest–southeast pairs are always compatible.
        assert!(!region.incompatible((0, 1), (1, 0)));
    }

    #[test]
    fn shapes_from_pairs() {
        // ν = (1,2,0): the three increment vectors give the three unimodal
        // arrangements of the same multiset of column heights.
        let p = nu(&[1, 2, 0]);
        let cases: [(&[u32], &[u32]); 3] = [
            (&[0, 0], &[1, 1, 2]),
            (&[1, 0], &[1, 2, 1]),
            (&[2, 0], &[2, 1, 1]),
        ];
        for (dv, expected) in cases {
            let d = delta(&p, dv);
            let shape = Shape::from_pair(&p, &d);
            assert_eq!(shape.heights(), expected, "δ = {dv:?}");
            assert_eq!(shape.num_boxes(), 4);
        }

        // Box counts per row are δ-independent: row level y holds Σ_{i≤y} νᵢ.
        let q = nu(&[2, 0, 3, 1]);
        let expected_boxes: u64 = (0..q.north_steps())
            .map(|y| u64::try_from(q.x_at(y)).unwrap())
            .sum();
        for d in IncrementVector::all_for(&q) {
            assert_eq!(Shape::from_pair(&q, &d).num_boxes(), expected_boxes);
        }

        // A path with no north steps has an empty shape.
        let empty = Shape::from_pair(&nu(&[3]), &IncrementVector::zero(&nu(&[3])));
        assert_eq!(empty.num_boxes(), 0);
        assert_eq!(empty.num_rows(), 0);
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::from_heights(vec![1, 2, 3, 2]).is_ok());
        assert!(Shape::from_heights(vec![3, 1, 1]).is_ok());
        assert_eq!(
            Shape::from_heights(vec![2, 1, 2]),
            Err(PathError::NonUnimodal { index: 3 })
        );
        assert_eq!(
            Shape::from_heights(vec![1, 0, 1]),
            Err(PathError::ZeroColumn { index: 2 })
        );
        assert!(Shape::from_heights(vec![]).is_ok());
    }

    #[test]
    fn staircase_shapes() {
        // ν = (0, m, …, m) with n north steps: δ = ν gives the decreasing
        // staircase, δ = 0 the increasing one.
        let p = nu(&[0, 2, 2, 2]);
        let tam = Shape::from_pair(&p, &IncrementVector::tamari(&p));
        assert_eq!(tam.heights(), &[2, 2, 1, 1]);
        let alt = Shape::from_pair(&p, &IncrementVector::zero(&p));
        assert_eq!(alt.heights(), &[1, 1, 2, 2]);
    }

    #[test]
    fn nu_dyck_enumeration_and_narayana() {
        let p = nu(&[1, 0, 1, 0]);
        let paths = enumerate_nu_dyck(&p, 1 << 20).unwrap();
        assert_eq!(paths.len(), 7);
        // Lexicographically first is the all-north-first path (0,0,0,2).
        assert_eq!(paths[0].path.runs(), &[0, 0, 0, 2]);
        assert_eq!(paths[0].valleys, 0);
        // Every enumerated path is weakly above ν.
        for q in &paths {
            assert!(q.path.weakly_above(&p));
        }
        assert_eq!(narayana_polynomial(&p, 1 << 20).unwrap(), vec![1, 4, 2]);
        // χ̃ = -(1 - 4 + 2) = 1.
        assert_eq!(euler_from_narayana(&[1, 4, 2]), 1);

        // Cap enforcement.
        assert_eq!(
            enumerate_nu_dyck(&p, 3),
            Err(PathError::CapExceeded { cap: 3 })
        );
    }

    #[test]
    fn classical_dyck_counts_are_catalan() {
        // ν = (0,1,1,…,1) gives classical Dyck paths: Catalan numbers.
        for (n, catalan) in [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42), (6, 132)] {
            let mut runs = vec![0u32];
            runs.extend(std::iter::repeat(1).take(n));
            let p = nu(&runs);
            assert_eq!(
                enumerate_nu_dyck(&p, 1 << 20).unwrap().len(),
                catalan,
                "n = {n}"
            );
        }
    }

    #[test]
    fn fuss_catalan_counts() {
        // ν = (0, m, …, m): the number of ν-paths is the Fuss–Catalan number
        // (1/(mn+1)) C((m+1)n, n).
        let binom = |a: u64, b: u64| -> u64 {
            let mut r = 1u64;
            for i in 0..b {
                r = r * (a - i) / (i + 1);
            }
            r
        };
        for m in 2u32..=4 {
            for n in 1usize..=4 {
                let mut runs = vec![0u32];
                runs.extend(std::iter::repeat(m).take(n));
                let p = nu(&runs);
                let count = enumerate_nu_dyck(&p, 1 << 22).unwrap().len() as u64;
                let mu = u64::from(m);
                let nn = n as u64;
                assert_eq!(
                    count,
                    binom((mu + 1) * nn, nn) / (mu * nn + 1),
                    "m = {m}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn shrunken_path() {
        let p = nu(&[0, 3, 2, 4]);
        assert_eq!(p.shrunken().unwrap(), nu(&[0, 1, 0, 2]));
        assert_eq!(
            nu(&[0, 1, 3]).shrunken(),
            Err(PathError::ShrinkTooSmall { index: 1, value: 1 })
        );
    }
}
