//! Exact reduction of triangular resistor grids and the Circuit Array.
//!
//! - [`arith`]: exact rationals and rational functions behind one [`arith::Field`] trait.
//! - [`grid`]: labelled triangular m-grids, their symmetries and graph form.
//! - [`reduction`]: Δ/Y, series merge and the one-row grid reduction.
//! - [`array`]: the Circuit Array, its closed forms and row recursions.
//! - [`sequence`]: leftmost-diagonal analysis (Hankel determinants,
//!   symbolic formulas, asymptotics).
//! - [`oracle`]: independent checks on explicit graphs (Laplacian solves,
//!   graph-level transforms, Fibonacci identities).
//! - [`report`]: pass/fail findings shared by all verification routines.

pub mod arith;
pub mod array;
pub mod grid;
pub mod oracle;
mod par;
pub mod reduction;
pub mod report;
pub mod sequence;

pub use arith::{ArithError, Field, Polynomial, Rational, RationalFunction};
pub use grid::{EdgeRef, Grid, GridError, GridVertex, Side, Symmetry};
pub use report::{Finding, Report, Status};
