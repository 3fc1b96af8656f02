//! Grids, time evolution, file formats and command implementations built on
//! `dirac_loc_core`.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod fields;
pub mod grid;
pub mod output;
pub mod verify;

pub use error::{Error, Result};
