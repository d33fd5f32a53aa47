//! Classical marine-snow removal baselines: plain and selective median
//! filtering. Channels are filtered independently with replicate padding.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::RasterImage;

/// Default margin of the selective filter, in intensity units.
pub const DEFAULT_THRESHOLD: f64 = 10.0;

fn check_kernel(kernel: usize) -> Result<()> {
    if kernel == 0 || kernel % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "median kernel must be odd and >= 1, got {kernel}"
        )));
    }
    Ok(())
}

/// Runs `decide(pixel, median)` for every sample and collects the result.
fn filter_with<F>(image: &RasterImage, kernel: usize, decide: F) -> Result<RasterImage>
where
    F: Fn(u8, u8) -> u8 + Sync,
{
    check_kernel(kernel)?;
    let (h, w) = (image.height(), image.width());
    let r = kernel / 2;
    let src = image.as_raw();
    let mut out = vec![0u8; src.len()];
    out.par_chunks_mut(w * 3).enumerate().for_each(|(y, line)| {
        let mut window = Vec::with_capacity(kernel * kernel);
        let rows: Vec<usize> = (0..kernel)
            .map(|k| (y + k).saturating_sub(r).min(h - 1))
            .collect();
        for x in 0..w {
            let cols = (0..kernel).map(|k| (x + k).saturating_sub(r).min(w - 1));
            for t in 0..3 {
                window.clear();
                for &yy in &rows {
                    let base = yy * w * 3;
                    window.extend(cols.clone().map(|xx| src[base + xx * 3 + t]));
                }
                let mid = window.len() / 2;
                let median = *window.select_nth_unstable(mid).1;
                line[x * 3 + t] = decide(src[(y * w + x) * 3 + t], median);
            }
        }
    });
    RasterImage::new(h, w, out)
}

/// Replaces every sample with the median of its `kernel × kernel`
/// neighborhood.
pub fn median_filter(image: &RasterImage, kernel: usize) -> Result<RasterImage> {
    filter_with(image, kernel, |_, median| median)
}

/// Replaces a sample with its neighborhood median only when it exceeds the
/// median by more than `threshold`. Dark outliers are left alone.
pub fn adaptive_median_filter(
    image: &RasterImage,
    kernel: usize,
    threshold: f64,
) -> Result<RasterImage> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "threshold must be >= 0, got {threshold}"
        )));
    }
    filter_with(image, kernel, |pixel, median| {
        if f64::from(pixel) > f64::from(median) + threshold {
            median
        } else {
            pixel
        }
    })
}

/// A restoration baseline as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Mf3,
    Mf5,
    Amf3,
    Amf5,
    /// The degraded input itself.
    Identity,
}

impl Method {
    pub const BASELINES: [Method; 4] = [Method::Mf3, Method::Mf5, Method::Amf3, Method::Amf5];

    pub fn label(self) -> &'static str {
        match self {
            Method::Mf3 => "MF (3x3)",
            Method::Mf5 => "MF (5x5)",
            Method::Amf3 => "Adaptive MF (3x3)",
            Method::Amf5 => "Adaptive MF (5x5)",
            Method::Identity => "Synthesized image",
        }
    }

    pub fn apply(self, image: &RasterImage, threshold: f64) -> Result<RasterImage> {
        match self {
            Method::Mf3 => median_filter(image, 3),
            Method::Mf5 => median_filter(image, 5),
            Method::Amf3 => adaptive_median_filter(image, 3, threshold),
            Method::Amf5 => adaptive_median_filter(image, 5, threshold),
            Method::Identity => Ok(image.clone()),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Mf3 => "mf3",
            Method::Mf5 => "mf5",
            Method::Amf3 => "amf3",
            Method::Amf5 => "amf5",
            Method::Identity => "identity",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mf3" => Ok(Method::Mf3),
            "mf5" => Ok(Method::Mf5),
            "amf3" => Ok(Method::Amf3),
            "amf5" => Ok(Method::Amf5),
            "identity" => Ok(Method::Identity),
            other => Err(Error::InvalidParameter(format!(
                "unknown method {other:?} (expected mf3, mf5, amf3, amf5)"
            ))),
        }
    }
}
