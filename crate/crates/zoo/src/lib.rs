//! Closed-form hierarchical spaces and their finite windows.

pub mod error;
pub mod f2xdxd;
pub mod free;
pub mod window;

pub use error::{Result, ZooError};
pub mod grid;
pub mod tree;
pub mod zoo;

pub use zoo::{build, parse_reference, Family, NamedSubset, ZooModel, ZooParams};
