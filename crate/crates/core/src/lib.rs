//! Equivariant group cohomology H³_Γ(Π, A), Gr-categories of type (Π, A),
//! factor sets and their crossed products, at desk scale.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod cochain;
pub mod crossed;
pub mod error;
pub mod factorset;
pub mod grcat;
pub mod homology;
pub mod linalg;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use report::{Check, Report};
