//! Certification of finite group presentations against generalized small
//! cancellation conditions (the vertex conditions W*, V* and the cell
//! conditions W, V), plus bounded solvers for the word and conjugacy
//! problems in certified presentations.
//!
//! The library is organized bottom-up:
//!
//! - [`words`]: letters, free words, free reduction, cyclic words, roots.
//! - [`presentation`]: the presentation type, a small text grammar, and
//!   structural validation.
//! - [`stargraph`]: the star graph of a presentation and enumeration of
//!   reduced circuits.
//! - [`pieces`]: the symmetrized relator set, pieces, and
//!   piece-decomposition search.
//! - [`conditions`]: the condition tables and the four certification
//!   checks.
//! - [`diagram`]: van Kampen / spherical / annular diagrams as dart maps,
//!   reducedness tests, reduction moves, and exact curvature accounting.
//! - [`generate`]: seeded random diagram generation for testing.
//! - [`solvers`]: area bounds, conjugator-length bounds, and the bounded
//!   word / conjugacy search.
//! - [`report`]: JSON report types shared with the CLI.

pub mod conditions;
pub mod diagram;
pub mod generate;
pub mod pieces;
pub mod presentation;
pub mod report;
pub mod solvers;
pub mod stargraph;
pub mod words;

/// Exact rational scalar used throughout the curvature computations.
pub type Rational = num_rational::BigRational;
