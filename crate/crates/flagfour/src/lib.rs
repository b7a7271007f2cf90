//! Generalized flag manifolds `G/K` with four isotropy summands.
//!
//! The pipeline goes from a painted Dynkin diagram of a compact simple Lie
//! group to the four-summand isotropy decomposition, the structure-constant
//! triples `[ijk]`, the Kähler-Einstein metrics attached to the invariant
//! complex structures, the full set of real positive invariant Einstein
//! metrics, and finally a scale-invariant report that separates metrics that
//! cannot be isometric.
//!
//! Modules mirror the pipeline stages:
//!
//! * [`rootsys`] — exact root systems of the simple Lie algebras A–G.
//! * [`flagdecomp`] — painted diagrams, t-roots, isotropy summands, and the
//!   classification of all four-summand flag manifolds.
//! * [`structconst`] — the triples `[ijk]` by two independent methods.
//! * [`kahler`] — Koszul forms and Kähler-Einstein metrics per invariant
//!   ordering.
//! * [`einstein`] — Ricci components, multi-start Einstein solving, closed
//!   forms, and the quartic analysis for `SO(2l)/U(p)xU(l-p)`.
//! * [`isometry`] — scalar curvature and the scale invariant `H_g`.
//! * [`cli`] — reproducible command-line reports.
//!
//! Supporting modules: [`rat`] (exact rational helpers) and [`poly`]
//! (Sturm-sequence real-root isolation).

// Index-based loops over small fixed-size matrices are clearer here than
// iterator chains; the KE-triples enum is cold and its size is irrelevant.
#![allow(clippy::needless_range_loop, clippy::large_enum_variant)]

pub mod cli;
pub mod einstein;
pub mod flagdecomp;
pub mod isometry;
pub mod kahler;
pub mod poly;
pub mod rat;
pub mod rootsys;
pub mod structconst;
