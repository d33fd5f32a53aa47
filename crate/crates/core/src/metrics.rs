//! Full-reference quality metrics and per-method evaluation reports.
//!
//! PSNR uses the mean squared error over all pixels and all three channels
//! jointly, with a 255 peak; identical images score [`PSNR_CAP`]. SSIM is
//! the single-scale index with an 11×11 Gaussian window (sigma 1.5),
//! `K1 = 0.01`, `K2 = 0.03`, `L = 255`, averaged over the valid window
//! positions of each channel and then over channels.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::{list_images, RasterImage};

pub const PSNR_CAP: f64 = 100.0;
pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
const PEAK: f64 = 255.0;
const C1: f64 = (0.01 * PEAK) * (0.01 * PEAK);
const C2: f64 = (0.03 * PEAK) * (0.03 * PEAK);

pub fn mse(a: &RasterImage, b: &RasterImage) -> Result<f64> {
    a.same_size(b)?;
    let sum: u64 = a
        .as_raw()
        .iter()
        .zip(b.as_raw())
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            (d * d) as u64
        })
        .sum();
    Ok(sum as f64 / a.as_raw().len() as f64)
}

pub fn psnr(a: &RasterImage, b: &RasterImage) -> Result<f64> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Ok(PSNR_CAP);
    }
    Ok((10.0 * (PEAK * PEAK / mse).log10()).min(PSNR_CAP))
}

fn ssim_kernel() -> [f64; SSIM_WINDOW] {
    let r = (SSIM_WINDOW / 2) as f64;
    let mut k = [0.0; SSIM_WINDOW];
    for (i, w) in k.iter_mut().enumerate() {
        let x = i as f64 - r;
        *w = (-x * x / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let sum: f64 = k.iter().sum();
    k.map(|w| w / sum)
}

/// Separable 'valid' filtering of a `h × w` plane.
fn filter_valid(plane: &[f64], h: usize, w: usize, k: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let (oh, ow) = (h - SSIM_WINDOW + 1, w - SSIM_WINDOW + 1);
    let mut horiz = vec![0.0; h * ow];
    for y in 0..h {
        let row = &plane[y * w..(y + 1) * w];
        for x in 0..ow {
            horiz[y * ow + x] = k
                .iter()
                .zip(&row[x..x + SSIM_WINDOW])
                .map(|(a, b)| a * b)
                .sum();
        }
    }
    let mut out = vec![0.0; oh * ow];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = k
                .iter()
                .enumerate()
                .map(|(i, wk)| wk * horiz[(y + i) * ow + x])
                .sum();
        }
    }
    out
}

fn ssim_plane(x: &[f64], y: &[f64], h: usize, w: usize) -> f64 {
    let k = ssim_kernel();
    let xx: Vec<f64> = x.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = y.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = x.iter().zip(y).map(|(a, b)| a * b).collect();
    let [mx, my, sxx, syy, sxy] =
        [x, y, &xx[..], &yy[..], &xy[..]].map(|p| filter_valid(p, h, w, &k));
    let n = mx.len();
    let total: f64 = (0..n)
        .map(|i| {
            let (mu_x, mu_y) = (mx[i], my[i]);
            let var_x = sxx[i] - mu_x * mu_x;
            let var_y = syy[i] - mu_y * mu_y;
            let cov = sxy[i] - mu_x * mu_y;
            ((2.0 * mu_x * mu_y + C1) * (2.0 * cov + C2))
                / ((mu_x * mu_x + mu_y * mu_y + C1) * (var_x + var_y + C2))
        })
        .sum();
    total / n as f64
}

pub fn ssim(a: &RasterImage, b: &RasterImage) -> Result<f64> {
    a.same_size(b)?;
    let (h, w) = (a.height(), a.width());
    if h < SSIM_WINDOW || w < SSIM_WINDOW {
        return Err(Error::ImageTooSmall {
            height: h,
            width: w,
            window: SSIM_WINDOW,
        });
    }
    let plane = |img: &RasterImage, t: usize| -> Vec<f64> {
        img.as_raw()
            .iter()
            .skip(t)
            .step_by(3)
            .map(|&v| f64::from(v))
            .collect()
    };
    let sum: f64 = (0..3)
        .map(|t| ssim_plane(&plane(a, t), &plane(b, t), h, w))
        .sum();
    Ok((sum / 3.0).clamp(-1.0, 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageScore {
    pub id: String,
    pub psnr: f64,
    pub ssim: f64,
}

/// Mean and population standard deviation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
}

impl Summary {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let values: Vec<f64> = values.into_iter().collect();
        if values.is_empty() {
            return Summary::default();
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        Summary {
            mean,
            std: var.sqrt(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub method: String,
    pub count: usize,
    pub psnr: Summary,
    pub ssim: Summary,
    pub images: Vec<ImageScore>,
}

impl EvalReport {
    pub fn from_scores(method: impl Into<String>, images: Vec<ImageScore>) -> Self {
        EvalReport {
            method: method.into(),
            count: images.len(),
            psnr: Summary::of(images.iter().map(|s| s.psnr)),
            ssim: Summary::of(images.iter().map(|s| s.ssim)),
            images,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "method: {}", self.method)?;
        writeln!(f, "{:<24} {:>10} {:>8}", "image", "PSNR", "SSIM")?;
        for s in &self.images {
            writeln!(f, "{:<24} {:>10.3} {:>8.4}", s.id, s.psnr, s.ssim)?;
        }
        writeln!(
            f,
            "{:<24} {:>10.3} {:>8.4}  (n = {})",
            "mean", self.psnr.mean, self.ssim.mean, self.count
        )?;
        write!(
            f,
            "{:<24} {:>10.3} {:>8.4}",
            "std", self.psnr.std, self.ssim.std
        )
    }
}

pub fn score_pair(
    id: impl Into<String>,
    restored: &RasterImage,
    truth: &RasterImage,
) -> Result<ImageScore> {
    Ok(ImageScore {
        id: id.into(),
        psnr: psnr(restored, truth)?,
        ssim: ssim(restored, truth)?,
    })
}

/// Scores every image in `restored` against the identically named image in
/// `ground_truth`, ordered by file name.
pub fn evaluate_directory(
    method: &str,
    restored: &Path,
    ground_truth: &Path,
) -> Result<EvalReport> {
    let names = |dir: &Path| -> Result<BTreeSet<String>> {
        Ok(list_images(dir)?
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect())
    };
    let restored_names = names(restored)?;
    let truth_names = names(ground_truth)?;
    if restored_names != truth_names {
        return Err(Error::NameMismatch {
            missing: truth_names.difference(&restored_names).cloned().collect(),
            extra: restored_names.difference(&truth_names).cloned().collect(),
        });
    }
    if truth_names.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no images in {}",
            ground_truth.display()
        )));
    }
    let names: Vec<String> = truth_names.into_iter().collect();
    let scores = names
        .par_iter()
        .map(|name| {
            let r = RasterImage::load(&restored.join(name))?;
            let g = RasterImage::load(&ground_truth.join(name))?;
            score_pair(name.clone(), &r, &g)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvalReport::from_scores(method, scores))
}
