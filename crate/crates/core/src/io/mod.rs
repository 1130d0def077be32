//! Text formats: expressions, seed files, orbit graphs and JSON-lines reports.

mod expr;
mod orbit;
pub mod report;
mod seedfile;

pub use expr::{parse_expression, parse_laurent, Parsed};
pub use orbit::{explore_orbit, to_dot, OrbitEdge, OrbitGraph, OrbitNode};
pub use seedfile::{FormSpec, SeedDocument, SeedError};

use std::fmt;

/// Syntax error in an expression; `position` is a character offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}
