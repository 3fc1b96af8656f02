//! Core numerics for localizing sequences of positive-energy free Dirac
//! states: spinor algebra, momentum profiles, state construction, radial
//! transforms, momentum-space observables, nonrelativistic reference
//! formulas and space-time transformations of localization labels.
//!
//! The crate is `no_std` (it needs `alloc`). Grids, FFTs and file formats
//! live in the `dirac-loc` companion crate.
//!
//! Units are natural throughout: `ħ = c = m = 1`, so lengths are in Compton
//! wavelengths `λ_C`, momenta in `mc`, times in `λ_C/c` and energies in
//! `mc²`.
#![no_std]
// When a dependency links `std` (as dev-dependencies do under `cargo test`),
// inherent float methods shadow the libm-backed `Float` trait imports.
#![allow(unused_imports)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bessel;
pub mod dirac;
pub mod error;
pub mod nr;
pub mod observables;
pub mod profile;
pub mod quadrature;
pub mod radial;
pub mod spinor;
pub mod state;
pub mod symmetry;
pub mod vec3;

pub use dirac::SpinLabel;
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use profile::MomentumProfile;
pub use spinor::{Matrix4, Spinor4};
pub use state::{LocalizationLabel, MomentumState};
pub use vec3::{Momentum, Vec3};
