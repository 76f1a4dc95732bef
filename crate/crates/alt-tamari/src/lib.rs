//! Alt ν-Tamari lattices and their topology.
//!
//! This crate builds, for a northeast lattice path ν and an increment vector δ,
//! the alt ν-Tamari lattice: its elements are (δ,ν)-trees (maximal pairwise
//! compatible point sets in a region between two lattice paths), ordered by
//! right rotations.  On top of the lattice it provides:
//!
//! * canonical join representations and the canonical join complex,
//! * the box complex of the associated unimodal shape, together with an
//!   explicit isomorphism to the canonical join complex (the maps `tau` and
//!   `theta`),
//! * vertex decomposability with replayable certificates, explicit shelling
//!   orders, and reduced GF(2) Betti numbers computed two independent ways
//!   (boundary-matrix ranks and homology-facet counts of a shelling).
//!
//! Modules mirror the pipeline: [`paths`] (lattice paths, shapes, ν-Dyck
//! enumeration, Narayana numbers), [`complex`] (generic simplicial complexes),
//! [`lattice`] (finite lattices, canonical join representations), [`trees`]
//! ((δ,ν)-trees, rotations, the lattice itself), [`boxcomplex`] (box
//! compatibility, link splitting, decomposing vertices, the realization maps),
//! and [`shelling`] (shelling orders, Betti numbers via shellings, facet
//! encodings, the Dyck-path facet bijection).

pub mod bits;
pub mod boxcomplex;
pub mod complex;
pub mod lattice;
pub mod paths;
pub mod shelling;
pub mod trees;
pub mod verify;
mod wordhash;

pub use boxcomplex::{box_complex, BoxComplex, BoxId};
pub use complex::{BettiNumbers, SimplicialComplex, VdCertificate};
pub use lattice::FiniteLattice;
pub use paths::{IncrementVector, NePath, Shape};
pub use trees::{AltTamariLattice, DeltaNuTree};
