//! Campaign runner and reports on top of `biquad2-core`.

pub mod campaign;
pub mod memo;
pub mod report;
pub mod sweep;

pub use biquad2_core as core;
