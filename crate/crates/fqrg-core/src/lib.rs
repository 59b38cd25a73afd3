//! Exact classification of digital quantum Riemannian geometries over GF(2).
//!
//! The library enumerates finite unital algebras, their differential calculi,
//! quantum metrics and quantum Levi-Civita connections by exhaustive
//! constrained search over structure constants, and computes curvature,
//! Laplacian, Ricci and Einstein invariants, all in exact arithmetic over the
//! two-element field.

pub mod algebra;
pub mod calculus;
pub mod catalog;
pub mod connection;
pub mod error;
pub mod exterior;
pub mod f2;
pub mod geometry;
pub mod jsonio;
pub mod metric;
pub mod reproduce;
pub mod worker;
