//! Deciding graph non-Hamiltonicity by weak closure.
//!
//! A directed graph on vertices `1..=n+1` is encoded as an exclusion set of
//! inducers (pairs of vertex/position pins that only extraneous cycles use).
//! The exclusion set zeroes cells of a Boolean lattice over `p(u,i)` and
//! `q(u,i,v,j)`, and [`wca::decide`] deduces further values by propagation
//! and nested probing until the lattice is infeasible (non-Hamiltonian), an
//! integer solution appears (Hamiltonian), or nothing more can be deduced.
//!
//! ```
//! use wca_core::graph::{builtin_graph, Builtin};
//! use wca_core::wca::{decide, SolverConfig, Verdict};
//!
//! let g = builtin_graph(Builtin::Cycle(5)).unwrap();
//! let report = decide(&g, &SolverConfig::default()).unwrap();
//! assert_eq!(report.decision.verdict, Verdict::Hamiltonian);
//! ```

pub mod closure;
pub mod error;
pub mod exclusion;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod wca;

pub use error::{Error, Result};
