//! Basis graphs of matroids and even Δ-matroids: construction, local
//! conditions with witnesses, universal covers of their triangle-square
//! complexes, and reconstruction of a matroid from its basis graph.
//!
//! Set systems are generic over the bit-mask type ([`Mask`]); the aliases
//! below fix the common widths.

pub mod complex;
pub mod conditions;
pub mod cover;
pub mod graph;
pub mod matroid;
pub mod patterns;
pub mod reconstruct;

pub use complex::{Square, TriangleSquareComplex};
pub use conditions::{maurer_check, CheckOptions, ConditionId, ConditionReport, Coverage, MaurerReport, Mode, Violation};
pub use cover::{build_universal_cover, sheets, verify_cover, CoverError, CoverState};
pub use graph::{Graph, GraphError};
pub use matroid::{basis_graph, BasisGraph, Mask, SetSystem, SetSystemError};
pub use patterns::{PatternKind, PatternWitness};
pub use reconstruct::{reconstruct_matroid, Labeling, NotABasisGraph};

/// Ground sets of up to 64 elements.
pub type SetSystem64 = SetSystem<u64>;
/// Ground sets of up to 128 elements.
pub type WideSetSystem = SetSystem<u128>;
pub type BasisGraph64 = BasisGraph<u64>;
pub type Labeling64 = Labeling<u64>;
