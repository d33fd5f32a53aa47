//! Procedural marine-snow synthesis for underwater images, with classical
//! removal baselines and PSNR/SSIM scoring.
//!
//! The crate is organized bottom-up:
//!
//! - [`artifact`]: closed-form highland/volcanic intensity profiles over
//!   three concentric ellipses, and rasterization of one artifact;
//! - [`sampling`] and [`profile`]: parameter distributions per task;
//! - [`synthesis`] and [`dataset`]: compositing onto clean images and
//!   writing replayable paired datasets;
//! - [`restore`], [`metrics`] and [`benchmark`]: baselines and scoring.
//!
//! All randomness flows through [`rng::StreamKey`], so results depend only
//! on the master seed.

pub mod artifact;
pub mod benchmark;
pub mod blur;
pub mod dataset;
mod error;
pub mod metrics;
pub mod profile;
pub mod raster;
pub mod restore;
pub mod rng;
pub mod sampling;
pub mod synthesis;

pub use error::{Error, Result};
pub use raster::{FloatImage, RasterImage};
pub use rng::StreamKey;
