//! Spectral-gap graph rewiring via first-order eigenvalue perturbation.
//!
//! The crate builds undirected graphs with relation-tagged edges, adds
//! edges that maximize the normalized Laplacian's spectral gap using a
//! cheap first-order score driven by deflated power iteration, and
//! provides the exact spectral machinery (dense eigensolves, Cheeger
//! constants, Dirichlet energy, rate of smoothing) needed to audit the
//! method against exact-greedy and random baselines.

pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod rewire;
pub mod smoothing;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, RelationTag};
pub use rewire::{
    fosr_rewire, greedy_exact_rewire, random_rewire, RewireConfig, RewireResult, Selection,
    TrajectoryRecord,
};
pub use smoothing::{rate_of_smoothing, verify_theorem1, LinearLayerSpec, SmoothingReport};
pub use spectral::{
    cheeger_bruteforce, second_eigen_power, spectral_gap_exact, CheegerReport, PowerInit,
    SpectralEstimate,
};
