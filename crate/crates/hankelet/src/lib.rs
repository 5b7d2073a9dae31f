//! Std companion to `hankelet-core`: TOML battery descriptions, a
//! multi-threaded battery driver, JSON and CSV report writers, and the
//! wavelet diagnostic table behind the command-line interface.

pub mod config;
pub mod info;
pub mod report_io;
pub mod runner;
