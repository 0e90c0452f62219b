pub mod bwb;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod opcalc;
pub mod rootsystem;
pub mod svariety;
pub mod weyl;

pub use error::{Error, Result};
