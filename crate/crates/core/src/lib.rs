//! Exact graph invariants around the coboundary map of an oriented multigraph.
//!
//! The crate computes Tutte polynomials and their deletion/contraction
//! recurrences (`tutte`), discrete Fourier analysis on `Z_q` (`fourier`),
//! tension and flow spaces with their weight enumerators (`tension_flow`),
//! sparse expansions of edge-kernel graph polynomials modulo `x^q - 1`
//! (`graph_poly`), and numeric cross-checks that tie the independent routes
//! together (`verify`).
//!
//! Everything is sized for exact desk-scale work: polynomial coefficients are
//! arbitrary-precision integers, numeric values are `Complex64`, and the
//! brute-force enumerations refuse inputs past fixed size guards instead of
//! grinding forever.

pub mod error;
pub mod fourier;
pub mod graph;
pub mod graph_poly;
pub mod tension_flow;
pub mod tol;
pub mod tutte;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeClass, Family, GraphStats, Multigraph};

/// Complex double, the numeric scalar used throughout.
pub type C64 = num_complex::Complex64;
