//! Command-line plumbing around `fuscoh-core`: input parsing, the JSON cache,
//! independent group-cohomology oracles, fixtures and property reports.

pub mod context;
pub mod fixtures;
pub mod input;
pub mod oracle;
pub mod verify;
