//! Hierarchical reasoning in local theory extensions.
//!
//! Extension axioms of a `.loc` task are instantiated over the ground terms of
//! the query and purified until only the base theory is left, which an
//! SMT-LIB solver then decides.

pub mod backend;
pub mod clausifier;
pub mod cli;
pub mod error;
pub mod fragments;
pub mod parser;
pub mod pipeline;
pub mod preprocess;
pub mod reduce;
pub mod syntax;

pub use error::Error;
