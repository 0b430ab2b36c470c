//! Exact-arithmetic toolkit for equational theories of fields.
//!
//! The crate provides three rewriting pipelines over a shared formula IR
//! (lambda-functions over separably closed fields, the s-function over
//! differentially closed fields of positive characteristic, and tame
//! formulae over proper pairs of algebraically closed fields), together
//! with concrete computable field models that validate every pass by
//! brute-force semantic evaluation, and a descending-chain lab for the
//! model-theoretic notion of an equation.

pub mod algebra;
pub mod exterior;
pub mod fuzz;
pub mod formula;
pub mod oracle;
pub mod pairs;
pub mod scf;
pub mod chain;
pub mod cli;
pub mod corpus;
pub mod dcf;
pub mod error;

pub use error::{Error, Result};
