//! Dual-axis agrivoltaic tracking by model predictive control.
//!
//! The crate simulates a field of elevated dual-axis PV trackers over a crop
//! and chooses panel tilts that trade electricity revenue against crop yield.

pub mod crop_epic;
pub mod error;
pub mod geometry;
pub mod mpc_engine;
pub mod optimizer;
pub mod pv_array;
pub mod report;
pub mod shading;
pub mod solar_geometry;
pub mod weather;

pub use error::{Error, Result};
