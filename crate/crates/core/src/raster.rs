//! RGB images: 8-bit storage, a floating-point working plane, PNG I/O and
//! source preprocessing.

use std::fs;
use std::io::Cursor;
use std::path::{Path, PathBuf};

use image::imageops::FilterType;
use image::{ColorType, DynamicImage, ImageFormat, ImageReader, RgbImage};

use crate::error::{Error, Result};

/// File extensions accepted as image inputs.
pub const IMAGE_EXTENSIONS: &[&str] = &["png", "jpg", "jpeg"];

/// `height × width × 3` image with interleaved 8-bit samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterImage {
    height: usize,
    width: usize,
    data: Vec<u8>,
}

impl RasterImage {
    pub fn new(height: usize, width: usize, data: Vec<u8>) -> Result<Self> {
        Self::from_interleaved(height, width, 3, data)
    }

    /// Accepts interleaved samples with an explicit channel count; anything
    /// but three channels is a format error.
    pub fn from_interleaved(
        height: usize,
        width: usize,
        channels: usize,
        data: Vec<u8>,
    ) -> Result<Self> {
        if channels != 3 {
            return Err(Error::Format(format!(
                "expected 3 channels, got {channels}"
            )));
        }
        if height == 0 || width == 0 {
            return Err(Error::InvalidParameter(
                "image dimensions must be >= 1".into(),
            ));
        }
        if data.len() != height * width * 3 {
            return Err(Error::InvalidParameter(format!(
                "buffer of {} bytes does not match {height}x{width}x3",
                data.len()
            )));
        }
        Ok(RasterImage {
            height,
            width,
            data,
        })
    }

    pub fn filled(height: usize, width: usize, rgb: [u8; 3]) -> Self {
        let data = rgb
            .iter()
            .copied()
            .cycle()
            .take(height * width * 3)
            .collect();
        Self::new(height, width, data).expect("filled image has valid dimensions")
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, row: usize, col: usize, channel: usize) -> u8 {
        self.data[(row * self.width + col) * 3 + channel]
    }

    pub fn set(&mut self, row: usize, col: usize, channel: usize, value: u8) {
        self.data[(row * self.width + col) * 3 + channel] = value;
    }

    pub fn as_raw(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    pub fn same_size(&self, other: &RasterImage) -> Result<()> {
        if self.height != other.height || self.width != other.width {
            return Err(Error::DimensionMismatch {
                left_h: self.height,
                left_w: self.width,
                right_h: other.height,
                right_w: other.width,
            });
        }
        Ok(())
    }

    pub fn to_float(&self) -> FloatImage {
        FloatImage {
            height: self.height,
            width: self.width,
            data: self.data.iter().map(|&v| f32::from(v)).collect(),
        }
    }

    pub fn from_rgb_image(img: RgbImage) -> Result<Self> {
        let (w, h) = img.dimensions();
        Self::new(h as usize, w as usize, img.into_raw())
    }

    pub fn to_rgb_image(&self) -> RgbImage {
        RgbImage::from_raw(self.width as u32, self.height as u32, self.data.clone())
            .expect("buffer length matches dimensions")
    }

    /// Decodes an image that must carry exactly three color channels
    /// (8 or 16 bits per sample; 16-bit input is reduced to 8 bits).
    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let img = ImageReader::new(Cursor::new(bytes))
            .with_guessed_format()
            .map_err(|e| Error::Codec(image::ImageError::IoError(e)))?
            .decode()?;
        Self::from_dynamic(img)
    }

    pub fn decode_png(bytes: &[u8]) -> Result<Self> {
        let img = image::load_from_memory_with_format(bytes, ImageFormat::Png)?;
        Self::from_dynamic(img)
    }

    fn from_dynamic(img: DynamicImage) -> Result<Self> {
        match img.color() {
            ColorType::Rgb8 | ColorType::Rgb16 | ColorType::Rgb32F => {
                Self::from_rgb_image(img.into_rgb8())
            }
            other => Err(Error::Format(format!(
                "expected a 3-channel RGB image, got {other:?}"
            ))),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::decode(&bytes).map_err(|e| match e {
            Error::Codec(source) => Error::image(path, source),
            Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn encode_png(&self) -> Result<Vec<u8>> {
        let mut out = Cursor::new(Vec::new());
        self.to_rgb_image().write_to(&mut out, ImageFormat::Png)?;
        Ok(out.into_inner())
    }

    pub fn save_png(&self, path: &Path) -> Result<()> {
        let bytes = self.encode_png()?;
        fs::write(path, bytes).map_err(|e| Error::io(path, e))
    }

    /// Center-crops to a square and resamples (bilinear) to `size × size`.
    pub fn square_resized(&self, size: u32) -> Result<Self> {
        let side = self.height.min(self.width);
        let top = (self.height - side) / 2;
        let left = (self.width - side) / 2;
        let mut cropped = Vec::with_capacity(side * side * 3);
        for row in top..top + side {
            let start = (row * self.width + left) * 3;
            cropped.extend_from_slice(&self.data[start..start + side * 3]);
        }
        if side == size as usize {
            return Self::new(side, side, cropped);
        }
        let img = RgbImage::from_raw(side as u32, side as u32, cropped)
            .expect("crop buffer matches dimensions");
        let resized = image::imageops::resize(&img, size, size, FilterType::Triangle);
        Self::from_rgb_image(resized)
    }
}

/// Floating-point working plane with the same layout as [`RasterImage`].
#[derive(Clone, Debug, PartialEq)]
pub struct FloatImage {
    height: usize,
    width: usize,
    data: Vec<f32>,
}

impl FloatImage {
    pub fn new(height: usize, width: usize, data: Vec<f32>) -> Result<Self> {
        if height == 0 || width == 0 || data.len() != height * width * 3 {
            return Err(Error::InvalidParameter(format!(
                "buffer of {} samples does not match {height}x{width}x3",
                data.len()
            )));
        }
        Ok(FloatImage {
            height,
            width,
            data,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, row: usize, col: usize, channel: usize) -> f32 {
        self.data[(row * self.width + col) * 3 + channel]
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f32] {
        &mut self.data
    }

    /// Rounds to nearest and saturates to `[0, 255]`.
    pub fn to_raster(&self) -> RasterImage {
        let data = self
            .data
            .iter()
            .map(|&v| v.round().clamp(0.0, 255.0) as u8)
            .collect();
        RasterImage {
            height: self.height,
            width: self.width,
            data,
        }
    }
}

fn has_image_extension(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

/// Image files directly inside `dir`, sorted by file name.
pub fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && has_image_extension(&path) {
            paths.push(path);
        }
    }
    paths.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(paths)
}

/// Checks that a file decodes as a 3-channel image without decoding pixels.
pub fn probe_image(path: &Path) -> Result<(u32, u32)> {
    let decoder = ImageReader::open(path)
        .map_err(|e| Error::io(path, e))?
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?
        .into_decoder()
        .map_err(|e| Error::image(path, e))?;
    use image::ImageDecoder;
    match decoder.color_type() {
        ColorType::Rgb8 | ColorType::Rgb16 | ColorType::Rgb32F => Ok(decoder.dimensions()),
        other => Err(Error::Format(format!(
            "{}: expected a 3-channel RGB image, got {other:?}",
            path.display()
        ))),
    }
}
