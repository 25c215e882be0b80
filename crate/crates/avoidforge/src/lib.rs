//! File formats, experiment configuration, reports and the command line for
//! [`avoidforge_core`].

pub mod cli;
pub mod config;
pub mod errors;
pub mod experiments;
pub mod formats;
pub mod report;
