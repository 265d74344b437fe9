//! Least distance eigenvalues of complements of graphs with diameter greater
//! than three.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`graph`]: simple undirected graphs, graph6, BFS distances, complements.
//! * [`spectra`]: a cyclic Jacobi eigensolver, least eigenpairs, exact
//!   characteristic polynomials, interlacing and the complement identity
//!   `D(G^c) = J - I + A(G)`.
//! * [`poly`]: exact integer polynomials and rigorous real-root isolation.
//! * [`families`]: the extremal constructions `K'`, `K''`, `K(a,b)` and the
//!   order-5 tree `T`.
//! * [`quotient`]: 5x5 equitable quotient matrices and their closed-form
//!   characteristic polynomials.
//! * [`transforms`]: eigenvector sign partitions, edge moves, monotonicity
//!   checks and a greedy local search.
//! * [`enumeration`]: exhaustive labeled enumeration for small orders,
//!   canonical forms and the extremal scan.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod enumeration;
pub mod families;
pub mod graph;
pub mod poly;
pub mod quotient;
pub mod spectra;
pub mod transforms;

pub use enumeration::{canonical_form, ScanAccumulator, ScanReport, TheoremVerdict};
pub use families::{FamilyKind, FamilySpec};
pub use graph::{DistanceMatrix, Graph, GraphError};
pub use poly::IntPolynomial;
pub use spectra::{EigenPair, Matrix, Spectrum, SpectraError};
pub use transforms::{EdgeMove, SignPartition};
