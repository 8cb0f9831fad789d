//! Command-line layer over `abspin-core`: argument parsing, parameter scans,
//! CSV/JSON output and the `verify` self-check suite.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod output;
pub mod run;
pub mod scan;
pub mod verify;
