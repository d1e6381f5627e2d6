//! File formats, thread-parallel drivers, JSON reports and the command
//! line for `qturan-core`.

pub mod acceptance;
pub mod cli;
pub mod formats;
pub mod parallel;
pub mod report;
