//! The doubly stochastic inverse `B = (I + h L_G)^{-1}` of a simple graph.
//!
//! Three engines compute it: a dense Cholesky solve ([`dense`]), a
//! linear-time-per-column algorithm for trees ([`tree`]) and Fibonacci
//! closed forms for paths ([`path`]). [`analysis`] verifies the structural
//! properties and bounds of `B` and cross-checks it against a
//! rooted-forest counting oracle; [`heat`] uses the same solves as an
//! implicit-Euler diffusion step.
//!
//! ```
//! use modlap::{families, tree::compute_b_tree, Rational};
//! use num_traits::One;
//!
//! let p4 = families::path(4).unwrap();
//! let b = compute_b_tree(&p4, &Rational::one()).unwrap();
//! assert_eq!(b.get(0, 0).to_string(), "13/21");
//! ```

#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod cli;
pub mod compute;
pub mod dense;
pub mod dsmatrix;
pub mod error;
pub mod families;
pub mod graph;
pub mod heat;
pub mod matrix;
pub mod path;
pub mod scalar;
pub mod tree;

pub use dsmatrix::{DsMatrix, Engine};
pub use error::{Error, ParseError, Result};
pub use graph::Graph;
pub use matrix::SymMatrix;
pub use scalar::{Rational, Scalar};
