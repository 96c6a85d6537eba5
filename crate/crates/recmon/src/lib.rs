//! Runtime monitors for Hennessy-Milner logic with recursion over finite and
//! infinite traces.
//!
//! The crate covers the formula and monitor languages, linear, finfinite and
//! branching semantics, monitor execution and instrumentation, synthesis,
//! the parallel-to-regular automaton pipeline, and slim normal forms.

pub mod cli;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod normalize;
pub mod selftest;
pub mod semantics;
pub mod synthesis;
pub mod syntax;
pub mod transform;

pub use error::{Error, Result};
