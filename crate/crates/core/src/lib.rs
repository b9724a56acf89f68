//! Completion numbers of sparse random graphs.
//!
//! `mu(G)` is the minimum number of edges whose addition makes `G`
//! Hamiltonian; `mu_hat(G)` is the analogue for pancyclicity. This crate
//! computes, estimates and certifies both on (random) graphs:
//!
//! * [`graph`] — immutable sparse graphs, `G(n,p)` / `G(n,m)` generators and
//!   the edge stream of the random graph process;
//! * [`strong_core`] — the strong 4-core tripartition `(A, B, C)` and the
//!   component structure of `G[A ∪ B]`;
//! * [`path_cover`] — minimum-`A`-endpoint disjoint path covers, `a(G)` and
//!   the surrogate `mu'(G) = ceil(a(G)/2)`;
//! * [`motifs`] — degree classes, 3-stars, 3-prespiders and 3-spiders with
//!   incremental maintenance under edge insertion;
//! * [`local`] — radius-`k` local core partitions, the `mu_k` estimator and
//!   the closed-form density approximations;
//! * [`completion`] — explicit completion sets `F = F0 ∪ F1 ∪ F2` with
//!   verifiable Hamilton, long-cycle and short-cycle witnesses;
//! * [`oracle`] — brute-force ground truth on small instances;
//! * [`process`] — random graph process runs with motif tracking and event
//!   time detection.

#![forbid(unsafe_code)]

pub mod completion;
pub mod error;
pub mod graph;
pub mod local;
pub mod motifs;
pub mod oracle;
pub mod path_cover;
pub mod process;
pub mod strong_core;

pub use error::Error;
pub use graph::{EdgeStream, Graph, Vertex};

/// Crate version string, echoed into every CLI output record.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
