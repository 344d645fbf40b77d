//! Exact-arithmetic homology of finite subset spaces of surfaces.
//!
//! The k-th finite subset space Exp_k(X) is the space of nonempty subsets of X
//! of size at most k, topologised as a quotient of X^k. For a 2-complex X with
//! a single vertex these spaces carry "lexicographic" CW structures whose cells
//! are indexed by ordered partitions (compositions), one per 2-cell, together
//! with graph cells on the 1-skeleton. This crate builds those chain complexes
//! and computes their integral and rational homology exactly:
//!
//! * [`partitions`] — compositions and the signed binomial coefficient;
//! * [`intalg`] — integer matrices, Smith normal form, homology of a pair of
//!   boundary maps, kernels, cokernels, orders in quotients;
//! * [`lexcell`] — the cell complexes of Exp_k of wedges of 2-spheres, the
//!   clipped cube complex, and their homology;
//! * [`surface`] — the top three dimensions of Exp_k of a closed surface of
//!   either orientability;
//! * [`symring`] — the cohomology rings H*(Σ^k) and H*(Sym^k Σ), the
//!   Mayer–Vietoris maps for the mapping-cylinder model of Exp_3 Σ, and the
//!   resulting cohomology table;
//! * [`ssoracle`] — an independent simplicial-set model of Exp_j used to
//!   cross-check the cell complexes on triangulated S², T² and RP²;
//! * [`report`] — table / JSON / CSV emission shared with the CLI.

pub mod chain;
pub mod error;
pub mod intalg;
pub mod lexcell;
pub mod partitions;
pub mod report;
pub mod ssoracle;
pub mod surface;
pub mod symring;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
