use rand::Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{ArtifactGeometry, Point};
use crate::error::{Error, Result};
use crate::rng::StreamKey;

/// Largest blur radius the synthesis supports.
pub const MAX_BLUR_RADIUS: u8 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArtifactKind {
    /// Flat-topped frustum.
    Highland,
    /// Frustum with a raised crater rim.
    Volcanic,
}

/// Per-channel appearance of one artifact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAppearance", into = "RawAppearance")]
pub struct ArtifactAppearance {
    kind: ArtifactKind,
    core_intensity: [u8; 3],
    rim_height: Option<[u8; 3]>,
    roughness: f64,
    blur_radius: u8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAppearance {
    kind: ArtifactKind,
    core_intensity: [u8; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rim_height: Option<[u8; 3]>,
    roughness: f64,
    blur_radius: u8,
}

impl TryFrom<RawAppearance> for ArtifactAppearance {
    type Error = Error;

    fn try_from(raw: RawAppearance) -> Result<Self> {
        ArtifactAppearance::new(
            raw.kind,
            raw.core_intensity,
            raw.rim_height,
            raw.roughness,
            raw.blur_radius,
        )
    }
}

impl From<ArtifactAppearance> for RawAppearance {
    fn from(a: ArtifactAppearance) -> Self {
        RawAppearance {
            kind: a.kind,
            core_intensity: a.core_intensity,
            rim_height: a.rim_height,
            roughness: a.roughness,
            blur_radius: a.blur_radius,
        }
    }
}

impl ArtifactAppearance {
    /// `rim_height` must be present exactly for volcanic artifacts.
    pub fn new(
        kind: ArtifactKind,
        core_intensity: [u8; 3],
        rim_height: Option<[u8; 3]>,
        roughness: f64,
        blur_radius: u8,
    ) -> Result<Self> {
        match (kind, rim_height.is_some()) {
            (ArtifactKind::Highland, true) => {
                return Err(Error::InvalidParameter(
                    "highland artifact cannot carry a rim height".into(),
                ))
            }
            (ArtifactKind::Volcanic, false) => {
                return Err(Error::InvalidParameter(
                    "volcanic artifact needs a rim height".into(),
                ))
            }
            _ => {}
        }
        if !(roughness.is_finite() && roughness >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "roughness must be finite and >= 0, got {roughness}"
            )));
        }
        if !(1..=MAX_BLUR_RADIUS).contains(&blur_radius) {
            return Err(Error::InvalidParameter(format!(
                "blur radius must be in 1..={MAX_BLUR_RADIUS}, got {blur_radius}"
            )));
        }
        Ok(ArtifactAppearance {
            kind,
            core_intensity,
            rim_height,
            roughness,
            blur_radius,
        })
    }

    pub fn kind(&self) -> ArtifactKind {
        self.kind
    }

    pub fn core_intensity(&self) -> [u8; 3] {
        self.core_intensity
    }

    pub fn rim_height(&self) -> Option<[u8; 3]> {
        self.rim_height
    }

    pub fn roughness(&self) -> f64 {
        self.roughness
    }

    pub fn blur_radius(&self) -> u8 {
        self.blur_radius
    }
}

/// Axis-aligned pixel rectangle; `top..top+height`, `left..left+width`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rect {
    pub top: usize,
    pub left: usize,
    pub height: usize,
    pub width: usize,
}

impl Rect {
    pub fn is_empty(&self) -> bool {
        self.height == 0 || self.width == 0
    }

    pub fn bottom(&self) -> usize {
        self.top + self.height
    }

    pub fn right(&self) -> usize {
        self.left + self.width
    }
}

/// One rendered artifact, restricted to its clipped bounding box.
#[derive(Clone, Debug, PartialEq)]
pub struct ArtifactPatch {
    rect: Rect,
    /// Interleaved RGB values over `rect`, row-major.
    values: Vec<f32>,
    support: Vec<bool>,
}

impl ArtifactPatch {
    pub fn empty() -> Self {
        ArtifactPatch {
            rect: Rect::default(),
            values: Vec::new(),
            support: Vec::new(),
        }
    }

    /// Builds a patch from raw parts. `values` holds three samples per pixel.
    pub fn from_parts(rect: Rect, values: Vec<f32>, support: Vec<bool>) -> Result<Self> {
        let n = rect.height * rect.width;
        if support.len() != n || values.len() != 3 * n {
            return Err(Error::InvalidParameter(format!(
                "patch buffers do not match a {}x{} rect",
                rect.height, rect.width
            )));
        }
        Ok(ArtifactPatch {
            rect,
            values,
            support,
        })
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn is_empty(&self) -> bool {
        self.rect.is_empty()
    }

    /// Value at absolute image coordinates; zero outside the box.
    pub fn value(&self, row: usize, col: usize, channel: usize) -> f32 {
        match self.index(row, col) {
            Some(i) => self.values[3 * i + channel],
            None => 0.0,
        }
    }

    pub fn in_support(&self, row: usize, col: usize) -> bool {
        self.index(row, col).is_some_and(|i| self.support[i])
    }

    pub fn support_len(&self) -> usize {
        self.support.iter().filter(|&&s| s).count()
    }

    pub(crate) fn values(&self) -> &[f32] {
        &self.values
    }

    pub(crate) fn support(&self) -> &[bool] {
        &self.support
    }

    fn index(&self, row: usize, col: usize) -> Option<usize> {
        let r = &self.rect;
        (row >= r.top && row < r.bottom() && col >= r.left && col < r.right())
            .then(|| (row - r.top) * r.width + (col - r.left))
    }
}

/// Pixel rectangle covering the outer ellipse, clipped to a
/// `height × width` image. Pixel centers sit at integer coordinates.
pub fn footprint(geometry: &ArtifactGeometry, height: usize, width: usize) -> Rect {
    let (ext_r, ext_c) = geometry.outer_half_extent();
    let c = geometry.center();
    let span = |center: f64, ext: f64, len: usize| -> Option<(usize, usize)> {
        let lo = (center - ext).ceil().max(0.0);
        let hi = (center + ext).floor().min(len as f64 - 1.0);
        (len > 0 && lo <= hi).then(|| (lo as usize, hi as usize - lo as usize + 1))
    };
    match (span(c.row, ext_r, height), span(c.col, ext_c, width)) {
        (Some((top, h)), Some((left, w))) => Rect {
            top,
            left,
            height: h,
            width: w,
        },
        _ => Rect::default(),
    }
}

/// Rasterizes one artifact at integer pixel centers inside a
/// `height × width` image.
///
/// Geometry and kind are shared by the three channels; each channel has its
/// own intensities and its own roughness stream `noise.child(channel)`.
/// Roughness is drawn once per support pixel per channel in row-major order.
pub fn render_artifact(
    geometry: &ArtifactGeometry,
    appearance: &ArtifactAppearance,
    noise: StreamKey,
    height: usize,
    width: usize,
) -> Result<ArtifactPatch> {
    let rim = match (appearance.kind(), geometry.has_rim()) {
        (ArtifactKind::Highland, false) => [0.0; 3],
        (ArtifactKind::Volcanic, true) => {
            appearance.rim_height().unwrap_or_default().map(f64::from)
        }
        _ => {
            return Err(Error::InvalidParameter(
                "artifact kind does not match its geometry".into(),
            ))
        }
    };
    let rect = footprint(geometry, height, width);
    if rect.is_empty() {
        return Ok(ArtifactPatch::empty());
    }
    let core = appearance.core_intensity().map(f64::from);
    let eps_max = appearance.roughness();
    let mut streams = [0u64, 1, 2].map(|t| noise.child(t).rng());

    let n = rect.height * rect.width;
    let mut values = vec![0f32; 3 * n];
    let mut support = vec![false; n];
    for i in 0..rect.height {
        for j in 0..rect.width {
            let p = Point::new((rect.top + i) as f64, (rect.left + j) as f64);
            let s = geometry.sample(p);
            if !s.region.in_support() {
                continue;
            }
            let idx = i * rect.width + j;
            support[idx] = true;
            for t in 0..3 {
                let eps = if eps_max > 0.0 {
                    streams[t].random_range(-eps_max..=eps_max)
                } else {
                    0.0
                };
                let value = (core[t] * s.fade + eps).max(0.0) + rim[t] * s.ridge;
                values[3 * idx + t] = value as f32;
            }
        }
    }
    Ok(ArtifactPatch {
        rect,
        values,
        support,
    })
}
