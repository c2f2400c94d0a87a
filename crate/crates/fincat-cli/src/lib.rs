//! Workspace loading, JSON/DOT rendering and the input schema behind the
//! `fincat` binary, exposed as a library for integration testing.

pub mod dot;
pub mod load;
pub mod output;
pub mod schema;
