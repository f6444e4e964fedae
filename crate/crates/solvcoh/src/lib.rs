//! Exact computation of rank-1 twisted cohomology, cohomology jump loci,
//! Lefschetz / formality / Hodge-decomposition diagnostics and a
//! Kähler-admissibility verdict for solvmanifold models.
//!
//! A solvmanifold is described to this crate by a finite exterior-algebra
//! model: generators with weight classes and log-derivative 1-forms plus
//! structure constants. Every invariant the crate reports is a dimension of
//! a finite complex over ℚ(√−1), computed with exact arithmetic; there are
//! no tolerances anywhere.
//!
//! The main entry points are [`model::InvariantComplex`] (built from a
//! validated [`model::ModelSpec`]), the per-class cohomology and diagnostic
//! operations in [`cohomology`], the bigraded Dolbeault / Bott–Chern layer
//! in [`bigraded`] and [`spectral`], the fixture file format in [`fixture`],
//! and the classifier in [`report`].

pub mod bigraded;
pub mod cohomology;
pub mod fixture;
pub mod fixtures;
pub mod form;
pub mod intmat;
pub mod linalg;
pub mod model;
pub mod par;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod weight;

pub use form::Form;
pub use model::{InvariantComplex, ModelSpec};
pub use scalar::Scalar;
pub use weight::{WeightClass, WeightGroup};
