//! JSON documents, text reports and the command-line driver for
//! `opcohom-core`.

pub use opcohom_core as core;

pub mod cli;
pub mod doc;
pub mod render;
