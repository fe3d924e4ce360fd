//! Command-line companion to `indmod-core`: argument handling, JSON and DOT
//! rendering, the Hecke-multiplication certification oracle, and the
//! verification suites behind `verify-all` and the acceptance tests.

pub mod config;
pub mod hecke;
pub mod output;
pub mod suites;
