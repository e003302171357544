//! Input parsing and report generation for the `logsplit` binary.

pub mod parse;
pub mod report;
