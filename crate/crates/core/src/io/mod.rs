pub mod config;
pub mod initial;
pub mod report;
pub mod snapshot;
