//! Rigid binary relations at finite scale.
//!
//! A binary relation on a finite vertex set is *rigid* when its only
//! automorphism is the identity, *strongly rigid* when its only endomorphism
//! is the identity, and *hereditarily rigid* when every induced substructure
//! is rigid. This crate bundles:
//!
//! * decision kernels for all three properties, returning certified
//!   witnesses on negative answers ([`search`]);
//! * explicit constructions that produce rigid relations on carriers of
//!   prefix-coded points and labeled products ([`construct`]);
//! * a desk-scale model of finitely supported relations over a set of
//!   atoms, with an exhaustive check that every such relation admits a
//!   nontrivial automorphism ([`fraenkel`]);
//! * an exhaustive census of small labeled digraphs by rigidity type
//!   ([`census`]).
//!
//! Everything is a pure function over immutable inputs: safe to call from
//! multiple threads, deterministic output (including witness choices)
//! regardless of parallelism.

mod error;
mod perm;
mod relation;

pub mod census;
pub mod construct;
pub mod fraenkel;
pub mod search;

pub use error::Error;
pub use perm::{Permutation, VertexMap};
pub use relation::Relation;
pub use search::{
    automorphism_count, automorphisms, is_hereditarily_rigid, is_rigid, is_strongly_rigid,
    HereditaryVerdict, RigidityVerdict, StrongRigidityVerdict,
};
