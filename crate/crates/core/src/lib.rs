//! Finite extensions of partial isomorphisms for classes defined by forbidden
//! substructures.
//!
//! Given a finite `K_m`-free graph (or a digraph omitting a family of
//! tournaments) together with partial isomorphisms, the [`pipeline`] builds a
//! finite extension in the same class on which every partial map extends to a
//! total automorphism. The construction alternates two steps:
//!
//! * a *type realizing step* ([`typerealize`]) that adds scaffolding points so
//!   every admissible neighbourhood type over the input is realized an exact
//!   number of times, which lets the partial maps extend to bijections of the
//!   scaffolding;
//! * a *duplicator step* ([`duplicator`]) that takes the group generated by
//!   those bijections and forms the quotient `A × Γ / ≡`.
//!
//! Forbidden-clique conditions are traded for colour conditions one clique
//! size at a time, so the intermediate objects are coloured graphs with
//! permorphisms (maps that respect colours up to a permutation).
//!
//! Every result is checked by [`verify`], which only depends on
//! [`structures`] and [`freeness`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod duplicator;
pub mod freeness;
pub mod pipeline;
pub mod structures;
pub mod typerealize;
pub mod verify;

mod bits;

pub use pipeline::{
    enumerate_tournaments, extend_colored, extend_digraph, extend_graph, reduce_family, ExtensionResult,
    FamilySpec, LevelKind, LevelStats, PipelineConfig, PipelineError,
};
pub use structures::{
    ColorId, ColorPermutation, ColorSet, ColoredDigraph, ColoredGraph, CriticalColoringSet,
    CriticalTuples, DesignatedColors, Digraph, ForbiddenTournament, Graph, PartialPermorphism,
    Tournament, VertexId,
};
pub use verify::{brute_force_extension, verify_extension, CertificateReport};
