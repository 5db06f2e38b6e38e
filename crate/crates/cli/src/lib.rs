//! Library surface of the command-line driver, shared with its tests:
//! subcommand implementations, report documents, fixture parsing, and
//! plot-data emission.

// negated float comparisons keep NaN on the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod fixtures;
pub mod plot;
pub mod report;
