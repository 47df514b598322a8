pub mod error;
pub mod kernel;
pub mod base_domain;
pub mod lattice;
pub mod pullback;
pub mod star_ops;
pub mod class_groups;
pub mod exec;
pub mod harness;

pub use error::{Error, Result};
