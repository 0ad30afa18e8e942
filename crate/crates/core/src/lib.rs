//! Mutual-information bounds for PAM energy detection (ED) receivers with
//! large antenna arrays.
//!
//! The receiver averages the received energy over `M` antennas,
//!
//! ```text
//! z = sh·x + sn + w·√x
//! ```
//!
//! where `sh` and `sn` are the antenna-averaged channel and noise energies and
//! `w` is the averaged signal/noise cross term. For large `M` all three are
//! well approximated by Gaussians, which makes `z` a Gaussian mixture in the
//! transmitted energy `x`. The crate evaluates two lower and two upper bounds
//! on `I(x; z)` by conditioning on `sh` or `w`, an exact-MI oracle under the
//! same Gaussian model, a SIMO capacity benchmark, and a sample-level
//! simulator of the physical receiver.
//!
//! Module map:
//! - [`model`]: constellation, channel parameters, conditional moments.
//! - [`entropy`]: Gaussian and Gaussian-mixture differential entropies.
//! - [`bounds`]: the four bounds, composites, exact MI.
//! - [`benchmark`]: SIMO capacity and adaptive constellation selection.
//! - [`sim`]: exact ED output sampler, KS distance, plug-in MI.
//! - [`cli`]: sweep/validate front end writing CSV.

pub mod benchmark;
pub mod bounds;
pub mod cli;
pub mod entropy;
mod error;
pub mod model;
mod quadrature;
pub mod sim;

pub use error::{Error, Result};
