//! Combinatorial invariants of persistence barcodes.
//!
//! A barcode is turned into a word over its bar labels by reading off the
//! bar of every level-k sample point in increasing order. Forgetting the
//! labels gives a canonical word, the power-k invariant. Canonical words of
//! one shape form a graded lattice under inversion-set containment, and their
//! `iota` images span the barcode polytope.
//!
//! ```
//! use barcode_lattice::{g_k, Barcode};
//!
//! let b = Barcode::from_pairs([(1.0, 2.0), (1.5, 3.0), (2.5, 2.75)]).unwrap();
//! let s = g_k(&b, 0).unwrap();
//! assert_eq!(s.to_string(), "1 2 1 3 3 2");
//! assert_eq!(s.rank(), 3);
//! ```

pub mod barcode;
pub mod distances;
pub mod error;
pub mod io;
pub mod lattice;
pub mod multiperm;
pub mod polytope;
pub mod registry;
pub mod rng;

pub use barcode::{random_barcode, Bar, Barcode, GenOptions, IntervalGraph, SamplePoint};
pub use distances::{
    align, bottleneck, check_convergence_bounds, perturb_preserving_invariant, wasserstein,
    Alignment, BoundReport, DiagramPoint, MatchEnd, Matching,
};
pub use error::{Error, Precondition, Result};
pub use lattice::{top_element, HasseDiagram, LatticeSpec, Limits};
pub use multiperm::{
    delta, f_k, g_k, phi, project, CanonicalInvariant, EmbeddedPermutation, InversionMultiset,
    InversionSet, Multipermutation, Permutation, Symbol,
};
pub use registry::{Comparison, DistanceMetric, OrderRelation, Registry};
pub use rng::SplitMix64;
