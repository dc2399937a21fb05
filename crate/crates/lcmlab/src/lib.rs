//! Catalog files, group-spec strings, report rendering and the scan and
//! verification drivers behind the `lcmlab` binary.

pub mod catalog;
pub mod error;
pub mod named;
pub mod pcfile;
pub mod report;
pub mod scan;
pub mod spec;
pub mod verify;

pub use error::{Error, Result};
