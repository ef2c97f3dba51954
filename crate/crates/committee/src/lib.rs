//! Profile files, LP export, benchmarks and command-line plumbing around
//! `committee-core`.

pub mod benchmark;
pub mod config;
pub mod json;
pub mod lp;
pub mod preflib;
pub mod runner;

pub use committee_core as core;
