//! Intersection-theoretic invariants of subschemes of products of
//! projective spaces, computed by counting points of zero-dimensional
//! polynomial systems over large prime fields.
//!
//! The library computes Segre classes s(X, Y), projective degree tables,
//! intersection products inside a smooth variety, algebraic
//! (Samuel) multiplicities, and containment / emptiness verdicts. All
//! results are classes in the Chow ring Z[h_1, ..., h_m] / (h_j^{n_j+1})
//! of the ambient product, or integer-backed verdicts derived from such
//! classes. Computations are randomized (generic linear slices and
//! generic combinations of generators) but deterministic for a fixed
//! master seed: every count is accepted only when two runs over
//! different prime fields agree.

pub mod chow;
pub mod degrees;
pub mod error;
pub mod intersect;
pub mod invariants;
pub mod poly;
pub mod rng;
pub mod segre;
pub mod zerodim;

pub use chow::ChowClass;
pub use degrees::{multi_indices, CountConfig, DegreeTable, Engine};
pub use error::{Error, Result};
pub use intersect::{diagonal_ideal, embed_product, intersection_product, CISpec};
pub use invariants::{
    component_contained, contains, in_singular_locus, is_empty, multiplicity, Verdict,
    WitnessValue,
};
pub use poly::{
    Ambient, Coeff, Domain, GradedIdeal, Homogeneity, Multidegree, MultiPoly, SchemeSpec,
};
pub use segre::{lambda_class, segre_class, segre_closed_form_pn, segre_top_part};
