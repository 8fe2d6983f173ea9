#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod class;
pub mod commands;
pub mod error;
pub mod gallery;
pub mod io;
pub mod linalg;
pub mod random;
pub mod report;
pub mod sequence;
pub mod suite;

pub use error::{Error, Result};
