//! Set-family generators and their disjointness graphs.
//!
//! A family of subsets of `{1..n}` is a k-generator when every subset of the
//! ground set splits into at most k pairwise disjoint members, and a k-base
//! when overlapping unions are allowed. This crate builds the canonical
//! generators obtained from balanced partitions, verifies generation
//! exactly over the full subset lattice, analyzes the disjointness graph of
//! a family (cliques, homomorphism densities, blow-ups, chromatic number),
//! runs the constructive stability pipeline that turns near-extremal graphs
//! into k-partite ones, estimates rare-event densities with seeded Monte
//! Carlo runs, and searches for minimum generators by branch and bound.
//!
//! The `genset` binary exposes all of it on the command line; see the
//! `cli` module for the report formats.
//!
//! ```
//! use genset::setfam::{balanced_partition, canonical_generator, is_k_generator};
//! use genset::kneser::{clique_count, disjointness_graph};
//!
//! // the canonical 2-generator of {1..6}: 14 sets, and it generates
//! let family = canonical_generator(&balanced_partition(6, 2)?);
//! assert_eq!(family.len(), 14);
//! assert!(is_k_generator(&family, 2)?);
//!
//! // its disjointness graph has a triangle for every three disjoint members
//! let graph = disjointness_graph(&family)?;
//! assert!(clique_count(&graph, 3) > 0);
//! # Ok::<(), genset::Error>(())
//! ```

pub mod bits;
pub mod error;
pub mod kneser;
pub mod sampling;
pub mod search;
pub mod setfam;
pub mod stability;

pub mod cli;

pub use error::{Error, Result};
