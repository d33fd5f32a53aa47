//! Separable Gaussian blur with a `(2r+1)`-tap window, `sigma = r / 2`,
//! replicate padding.
//!
//! The whole-image blur and the rectangle blur share one code path, so a
//! pixel's blurred value does not depend on how much of the image was
//! blurred around it.

use crate::artifact::{Rect, MAX_BLUR_RADIUS};
use crate::error::{Error, Result};
use crate::raster::{FloatImage, RasterImage};

/// Normalized 1-D taps for radius `r`.
pub fn gaussian_kernel(radius: u8) -> Result<Vec<f32>> {
    if !(1..=MAX_BLUR_RADIUS).contains(&radius) {
        return Err(Error::InvalidParameter(format!(
            "blur radius must be in 1..={MAX_BLUR_RADIUS}, got {radius}"
        )));
    }
    let r = i32::from(radius);
    let sigma = f64::from(radius) / 2.0;
    let raw: Vec<f64> = (-r..=r)
        .map(|x| (-f64::from(x * x) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|w| (w / sum) as f32).collect())
}

pub fn gaussian_blur(image: &FloatImage, radius: u8) -> Result<FloatImage> {
    let rect = Rect {
        top: 0,
        left: 0,
        height: image.height(),
        width: image.width(),
    };
    let data = blur_rect(image, radius, rect)?;
    FloatImage::new(image.height(), image.width(), data)
}

/// 8-bit convenience wrapper; the result is rounded back to 8 bits.
pub fn gaussian_blur_raster(image: &RasterImage, radius: u8) -> Result<RasterImage> {
    Ok(gaussian_blur(&image.to_float(), radius)?.to_raster())
}

/// Blurred values over `rect` (interleaved RGB, row-major), reading from
/// the whole image with replicate padding at the image border. Output is
/// clamped to `[0, 255]`.
pub fn blur_rect(image: &FloatImage, radius: u8, rect: Rect) -> Result<Vec<f32>> {
    let kernel = gaussian_kernel(radius)?;
    if rect.is_empty() {
        return Ok(Vec::new());
    }
    if rect.bottom() > image.height() || rect.right() > image.width() {
        return Err(Error::InvalidParameter(
            "blur rectangle exceeds the image".into(),
        ));
    }
    let r = usize::from(radius);
    let (h, w) = (image.height(), image.width());
    let src = image.as_slice();

    // Horizontal pass over every row the vertical pass can reach.
    let row_lo = rect.top.saturating_sub(r);
    let row_hi = (rect.bottom() - 1 + r).min(h - 1);
    let rows = row_hi - row_lo + 1;
    let mut horiz = vec![0f32; rows * rect.width * 3];
    for (i, y) in (row_lo..=row_hi).enumerate() {
        let line = &src[y * w * 3..(y + 1) * w * 3];
        for (j, x) in (rect.left..rect.right()).enumerate() {
            let mut acc = [0f32; 3];
            for (k, &weight) in kernel.iter().enumerate() {
                let xx = (x + k).saturating_sub(r).min(w - 1);
                let px = &line[xx * 3..xx * 3 + 3];
                acc[0] += weight * px[0];
                acc[1] += weight * px[1];
                acc[2] += weight * px[2];
            }
            let o = (i * rect.width + j) * 3;
            horiz[o..o + 3].copy_from_slice(&acc);
        }
    }

    let mut out = vec![0f32; rect.height * rect.width * 3];
    for (i, y) in (rect.top..rect.bottom()).enumerate() {
        for j in 0..rect.width {
            let mut acc = [0f32; 3];
            for (k, &weight) in kernel.iter().enumerate() {
                let yy = (y + k).saturating_sub(r).min(h - 1) - row_lo;
                let o = (yy * rect.width + j) * 3;
                acc[0] += weight * horiz[o];
                acc[1] += weight * horiz[o + 1];
                acc[2] += weight * horiz[o + 2];
            }
            let o = (i * rect.width + j) * 3;
            for t in 0..3 {
                out[o + t] = acc[t].clamp(0.0, 255.0);
            }
        }
    }
    Ok(out)
}
