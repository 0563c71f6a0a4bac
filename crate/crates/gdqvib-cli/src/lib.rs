//! Library surface of the command-line frontend: configuration parsing,
//! artifact writers, and the run pipeline. The binary in `main.rs` is a
//! thin argument-parsing shell over these.

pub mod config;
pub mod output;
pub mod plot;
pub mod run;
