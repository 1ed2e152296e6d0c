//! Command-line front end: scenario files, commands and output formats.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
