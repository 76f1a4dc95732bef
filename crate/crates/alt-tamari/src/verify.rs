//! Cross-checked verification batteries and the exhaustive acceptance sweep.
//!
//! Everything here ties together independently computed quantities and fails
//! loudly when any two disagree:
//!
//! * **shape level** ([`check_shape`]): GF(2) Betti numbers from boundary
//!   ranks versus the homology-facet counts of both shelling orders, plus the
//!   Euler characteristic read three ways;
//! * **pair level** ([`check_pair`]): the descent bijection between
//!   join-irreducibles and boxes, exact τ/θ round trips on every element, the
//!   perspective labelling rule against the join-semidistributive λ on every
//!   cover, and the Narayana identities tying the box complex to ν-Dyck
//!   valley counts;
//! * **sweep level** ([`sweep`]): every ν with a given number of north steps
//!   and bounded run lengths, paired with every increment vector δ, sharing
//!   shape-level work through a [`ShapeCache`].

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use thiserror::Error;

use crate::boxcomplex::{
    box_at, box_complex, descent_box, fused_round_trip, BoxComplex, BoxError,
};
use crate::complex::{BettiNumbers, ComplexError};
use crate::lattice::LatticeError;
use crate::paths::{
    euler_from_narayana, narayana_polynomial, IncrementVector, NePath, PathError, Shape,
};
use crate::shelling::{shelling, ShellError, ShellingMode};
use crate::trees::{AltTamariLattice, TreeError};

/// A verification failure, either a mismatch between two routes to the same
/// quantity or an error bubbled up from the structures being checked.
#[derive(Debug, Error)]
pub enum VerifyError {
    /// Two independently computed quantities disagree.
    #[error("{0}")]
    Mismatch(String),
    /// A failure annotated with the (ν, δ) pair it occurred on.
    #[error("ν runs {nu:?}, δ {delta:?}: {message}")]
    Pair {
        nu: Vec<u32>,
        delta: Vec<u32>,
        message: String,
    },
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Boxes(#[from] BoxError),
    #[error(transparent)]
    Shell(#[from] ShellError),
}

impl VerifyError {
    /// Wrap any failure with the (ν, δ) pair it happened on.
    #[must_use]
    pub fn for_pair(self, nu: &NePath, delta: &IncrementVector) -> VerifyError {
        match self {
            VerifyError::Pair { .. } => self,
            other => VerifyError::Pair {
                nu: nu.runs().to_vec(),
                delta: delta.values().to_vec(),
                message: other.to_string(),
            },
        }
    }
}

// ============================================================================
// Shape-level battery
// ============================================================================

/// Shape-level results, shared by every (ν, δ) pair whose region has this
/// shape.
#[derive(Debug)]
pub struct ShapeChecks {
    /// Column heights of the shape.
    pub heights: Vec<u32>,
    /// `f_vector[i]` = number of faces with `i + 1` boxes.
    pub f_vector: Vec<u64>,
    /// Reduced Euler characteristic (alternating face-count sum).
    pub euler: i64,
    /// Betti numbers, agreed between GF(2) boundary ranks and both shelling
    /// orders.
    pub betti: BettiNumbers,
}

/// Reduced Euler characteristic implied by a Betti vector (entry 0 counts
/// components, so contributes one less).
fn euler_from_betti(betti: &BettiNumbers) -> i64 {
    if betti.0.is_empty() {
        // The complex {∅}: only the empty face.
        return -1;
    }
    let mut chi = -1i64;
    for (k, &b) in betti.0.iter().enumerate() {
        let b = i64::try_from(b).expect("Betti number fits");
        if k % 2 == 0 {
            chi += b;
        } else {
            chi -= b;
        }
    }
    chi
}

/// Run the shape-level battery on a box complex: Betti numbers over GF(2)
/// from boundary ranks, re-derived from the homology facets of both the
/// refined and the plain shelling order, plus the Euler characteristic from
/// the f-vector against the alternating Betti sum.  All routes must agree.
pub fn check_shape(bc: &BoxComplex) -> Result<ShapeChecks, VerifyError> {
    let f_vector = bc.f_vector();
    let euler = bc.euler_reduced();
    let betti = bc.complex().betti_gf2()?;
    for mode in [ShellingMode::Refined, ShellingMode::Plain] {
        let sh = shelling(bc, mode, false)?;
        let via_shelling = sh.betti();
        if via_shelling != betti {
            return Err(VerifyError::Mismatch(format!(
                "shape {:?}: Betti via {mode} shelling {via_shelling} != GF(2) Betti {betti}",
                bc.shape().heights(),
            )));
        }
    }
    let chi_betti = euler_from_betti(&betti);
    if chi_betti != euler {
        return Err(VerifyError::Mismatch(format!(
            "shape {:?}: Euler {euler} from f-vector != {chi_betti} from Betti numbers {betti}",
            bc.shape().heights(),
        )));
    }
    Ok(ShapeChecks {
        heights: bc.shape().heights().to_vec(),
        f_vector,
        euler,
        betti,
    })
}

/// A concurrent memo of [`ShapeChecks`] keyed by column heights, shared
/// across the pairs of a sweep (many pairs yield the same shape).
#[derive(Default)]
pub struct ShapeCache {
    inner: RwLock<HashMap<Vec<u32>, Arc<ShapeChecks>>>,
}

impl ShapeCache {
    #[must_use]
    pub fn new() -> Self {
        ShapeCache::default()
    }

    /// Number of distinct shapes seen so far.
    pub fn len(&self) -> usize {
        self.inner.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Fetch the shape-level results for `bc`'s shape, running the battery on
    /// a miss.  The battery runs outside the lock; a racing duplicate keeps
    /// the first inserted value.
    pub fn get_or_check(&self, bc: &BoxComplex) -> Result<Arc<ShapeChecks>, VerifyError> {
        let key = bc.shape().heights().to_vec();
        if let Some(hit) = self.inner.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let computed = Arc::new(check_shape(bc)?);
        let mut map = self.inner.write().expect("cache lock");
        Ok(Arc::clone(map.entry(key).or_insert(computed)))
    }
}

// ============================================================================
// Pair-level battery
// ============================================================================

/// Sizes recorded for one verified (ν, δ) pair.
#[derive(Debug)]
pub struct PairReport {
    /// Column heights of the pair's shape.
    pub heights: Vec<u32>,
    /// Lattice elements = box-complex faces.
    pub elements: u64,
    /// Cover relations checked against the perspective rule.
    pub covers: u64,
}

/// Run every pair-level check for (ν, δ):
///
/// 1. join-irreducibles correspond to boxes bijectively via their unique
///    descent;
/// 2. the canonical-representation map and box-face placement are mutually
///    inverse bijections between lattice elements and box faces (fused τ/θ
///    round trip);
/// 3. on every cover, the box named by the rotation's perspective rule equals
///    the box of the join-semidistributive label λ;
/// 4. the f-vector counts faces with `k + 1` boxes exactly as ν-Dyck paths
///    with `k + 1` valleys (`narayana` = the valley-count distribution of ν),
///    the element count is the total path count, and the reduced Euler
///    characteristic matches the alternating Narayana sum.
///
/// `narayana` depends only on ν and is passed in so callers can share it
/// across the δ's of one ν.
pub fn check_pair(
    nu: &NePath,
    delta: &IncrementVector,
    narayana: &[u64],
    max_elements: usize,
    cache: &ShapeCache,
) -> Result<PairReport, VerifyError> {
    let alt = AltTamariLattice::build(nu, delta, max_elements)?;
    let shape = Shape::from_region(alt.region());
    let bc = box_complex(&shape, max_elements)?;
    let shape_checks = cache.get_or_check(&bc)?;

    // 1. Descent bijection between join-irreducibles and boxes.
    let w = alt.lattice().cover_witnesses()?;
    let n_boxes = bc.boxes().len();
    if w.ji.len() != n_boxes {
        return Err(VerifyError::Mismatch(format!(
            "{} join-irreducibles vs {n_boxes} boxes",
            w.ji.len()
        )));
    }
    let mut ji_to_box = Vec::with_capacity(n_boxes);
    for &j in &w.ji {
        let b = descent_box(alt.region(), bc.shape(), &alt.trees()[j])?;
        ji_to_box.push(bc.index_of(b)?);
    }
    let mut hit = vec![false; n_boxes];
    for &b in &ji_to_box {
        if hit[b] {
            return Err(VerifyError::Mismatch(format!(
                "descent map sends two join-irreducibles to box {b}"
            )));
        }
        hit[b] = true;
    }

    // 2. Fused τ/θ round trip over every element.
    let faces = fused_round_trip(&alt, &bc, &ji_to_box, &w.rep_faces)?;
    if faces != alt.len() {
        return Err(VerifyError::Mismatch(format!(
            "round trip covered {faces} faces for {} elements",
            alt.len()
        )));
    }

    // 3. Perspective rule vs λ on every cover.
    let rotations = alt.cover_rotations();
    if rotations.len() != w.cover_lambda.len() {
        return Err(VerifyError::Mismatch(format!(
            "{} rotations vs {} labelled covers",
            rotations.len(),
            w.cover_lambda.len()
        )));
    }
    for (ci, rot) in rotations.iter().enumerate() {
        let lam = w.cover_lambda[ci];
        let k = w
            .ji
            .binary_search(&lam)
            .map_err(|_| VerifyError::Mismatch(format!("λ of cover {ci} is not irreducible")))?;
        let via_lambda = ji_to_box[k];
        let via_perspective = bc.index_of(box_at(bc.shape(), rot.label_box())?)?;
        if via_lambda != via_perspective {
            return Err(VerifyError::Mismatch(format!(
                "cover {ci}: λ marks box {via_lambda}, perspective rule marks {via_perspective}"
            )));
        }
    }

    // 4. Narayana identities.
    if narayana.first() != Some(&1) {
        return Err(VerifyError::Mismatch(format!(
            "Narayana coefficients {narayana:?} do not start with 1"
        )));
    }
    let total: u64 = narayana.iter().sum();
    if total != alt.len() as u64 {
        return Err(VerifyError::Mismatch(format!(
            "{total} ν-Dyck paths vs {} lattice elements",
            alt.len()
        )));
    }
    let f = &shape_checks.f_vector;
    let top = f.len().max(narayana.len().saturating_sub(1));
    for i in 0..top {
        let fi = f.get(i).copied().unwrap_or(0);
        let ni = narayana.get(i + 1).copied().unwrap_or(0);
        if fi != ni {
            return Err(VerifyError::Mismatch(format!(
                "{fi} faces with {} boxes vs Narayana coefficient {ni}",
                i + 1
            )));
        }
    }
    let chi_narayana = euler_from_narayana(narayana);
    if chi_narayana != shape_checks.euler {
        return Err(VerifyError::Mismatch(format!(
            "Euler characteristic {} vs Narayana reciprocity value {chi_narayana}",
            shape_checks.euler
        )));
    }

    Ok(PairReport {
        heights: shape_checks.heights.clone(),
        elements: alt.len() as u64,
        covers: rotations.len() as u64,
    })
}

// ============================================================================
// Exhaustive sweep
// ============================================================================

/// What to sweep: every ν with exactly `north_steps` north steps whose run
/// lengths are all at most `max_run`, paired with every valid increment
/// vector δ.
#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub north_steps: usize,
    pub max_run: u32,
    /// Hard cap on lattice size per pair; exceeding it aborts the sweep.
    pub max_elements: usize,
}

/// Aggregated sizes from a completed sweep (order-independent sums, so the
/// totals are identical regardless of thread scheduling).
#[derive(Debug, Default, Clone)]
pub struct SweepTotals {
    pub pairs: u64,
    pub elements: u64,
    pub covers: u64,
    /// Distinct shapes in the cache after the sweep (cumulative if the cache
    /// is shared across calls).
    pub distinct_shapes: u64,
    pub largest_lattice: u64,
}

impl SweepTotals {
    fn absorb(&mut self, other: &SweepTotals) {
        self.pairs += other.pairs;
        self.elements += other.elements;
        self.covers += other.covers;
        self.largest_lattice = self.largest_lattice.max(other.largest_lattice);
    }
}

/// Decode sweep index `i` into a runs vector `(ν₀, …, ν_n)`, base
/// `max_run + 1`, most significant digit first.
fn runs_of_index(mut i: usize, north_steps: usize, max_run: u32) -> Vec<u32> {
    let base = max_run as usize + 1;
    let mut runs = vec![0u32; north_steps + 1];
    for slot in runs.iter_mut().rev() {
        *slot = u32::try_from(i % base).expect("digit fits");
        i /= base;
    }
    runs
}

/// Verify every (ν, δ) pair for one ν, sharing the Narayana polynomial across
/// the δ's.
fn sweep_nu(
    runs: Vec<u32>,
    spec: &SweepSpec,
    cache: &ShapeCache,
    totals: &mut SweepTotals,
) -> Result<(), VerifyError> {
    let nu = NePath::new(runs)?;
    let narayana = narayana_polynomial(&nu, spec.max_elements)?;
    for delta in IncrementVector::all_for(&nu) {
        let report = check_pair(&nu, &delta, &narayana, spec.max_elements, cache)
            .map_err(|e| e.for_pair(&nu, &delta))?;
        totals.pairs += 1;
        totals.elements += report.elements;
        totals.covers += report.covers;
        totals.largest_lattice = totals.largest_lattice.max(report.elements);
    }
    Ok(())
}

/// Run the full pair battery over every ν/δ pair selected by `spec`, spread
/// over `threads` worker threads (each worker claims whole ν's).  Stops at
/// the first failure.  Pass a shared cache to reuse shape-level work across
/// several sweeps.
pub fn sweep(
    spec: &SweepSpec,
    threads: usize,
    cache: &ShapeCache,
) -> Result<SweepTotals, VerifyError> {
    let base = spec.max_run as usize + 1;
    let nu_count = base.pow(u32::try_from(spec.north_steps + 1).expect("few digits"));
    let next = AtomicUsize::new(0);
    let abort = AtomicBool::new(false);
    let failure: Mutex<Option<VerifyError>> = Mutex::new(None);
    let totals: Mutex<SweepTotals> = Mutex::new(SweepTotals::default());

    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            scope.spawn(|| {
                let mut local = SweepTotals::default();
                loop {
                    if abort.load(Ordering::Relaxed) {
                        break;
                    }
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= nu_count {
                        break;
                    }
                    let runs = runs_of_index(i, spec.north_steps, spec.max_run);
                    if let Err(e) = sweep_nu(runs, spec, cache, &mut local) {
                        abort.store(true, Ordering::Relaxed);
                        let mut slot = failure.lock().expect("failure lock");
                        slot.get_or_insert(e);
                        break;
                    }
                }
                totals.lock().expect("totals lock").absorb(&local);
            });
        }
    });

    if let Some(e) = failure.into_inner().expect("failure lock") {
        return Err(e);
    }
    let mut out = totals.into_inner().expect("totals lock");
    out.distinct_shapes = cache.len() as u64;
    Ok(out)
}

// ============================================================================
// Shape enumeration (for the vertex-decomposability sweep)
// ============================================================================

/// Every valid column-height vector with at most `max_boxes` boxes in total,
/// in lexicographic order, starting with the empty shape.  Validity means
/// positive heights forming a unimodal sequence, exactly the vectors
/// [`Shape::from_heights`] accepts.
#[must_use]
pub fn unimodal_heights(max_boxes: u32) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, left: u32, out: &mut Vec<Vec<u32>>) {
        for h in 1..=left {
            prefix.push(h);
            if Shape::from_heights(prefix.clone()).is_ok() {
                out.push(prefix.clone());
                extend(prefix, left - h, out);
            }
            prefix.pop();
        }
    }
    let mut out = vec![Vec::new()];
    let mut prefix = Vec::new();
    extend(&mut prefix, max_boxes, &mut out);
    out.sort();
    out
}
