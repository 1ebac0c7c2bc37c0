//! Commands, countermodel search and the report of worked examples.

pub mod checks;
pub mod commands;
pub mod examples;
pub mod report;
pub mod search;
