//! Random artifact plans drawn from a [`TaskProfile`].
//!
//! Stream layout below an image key:
//! - `image.child(COUNT_STREAM)` draws the artifact count;
//! - `image.child(i)` is artifact `i`; its `child(PARAM_STREAM)` draws kind,
//!   size class, geometry and appearance, and `child(NOISE_STREAM)` feeds
//!   the per-channel roughness streams used at render time.

use std::f64::consts::PI;

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::artifact::{ArtifactAppearance, ArtifactGeometry, ArtifactKind, Ellipse, Point};
use crate::error::Result;
use crate::profile::{FloatRange, IntRange, TaskProfile};
use crate::rng::StreamKey;

const COUNT_STREAM: u64 = u64::MAX;
const PARAM_STREAM: u64 = 0;
const NOISE_STREAM: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeClass {
    Small,
    Large,
}

/// One artifact scheduled for composition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtifactPlan {
    /// Position in the composition sequence.
    pub order: usize,
    pub size_class: SizeClass,
    pub geometry: ArtifactGeometry,
    pub appearance: ArtifactAppearance,
}

impl ArtifactPlan {
    /// Key of the roughness streams for this artifact within its image.
    pub fn noise_key(&self, image: StreamKey) -> StreamKey {
        image.child(self.order as u64).child(NOISE_STREAM)
    }
}

/// Uniform draw from the open interval `(min, max)`, or `min` when the
/// interval is degenerate.
fn open_uniform<R: Rng + ?Sized>(rng: &mut R, range: FloatRange) -> f64 {
    if range.min >= range.max {
        return range.min;
    }
    loop {
        let u: f64 = rng.sample(Open01);
        let x = range.min + (range.max - range.min) * u;
        if x > range.min && x < range.max {
            return x;
        }
    }
}

fn discrete<R: Rng + ?Sized>(rng: &mut R, range: IntRange) -> u32 {
    rng.random_range(range.min..=range.max)
}

/// Draws one artifact footprint. Centers are uniform over the continuous
/// image rectangle `[-0.5, height - 0.5) × [-0.5, width - 0.5)`.
pub fn sample_geometry<R: Rng + ?Sized>(
    profile: &TaskProfile,
    size_class: SizeClass,
    kind: ArtifactKind,
    height: usize,
    width: usize,
    rng: &mut R,
) -> Result<ArtifactGeometry> {
    let class = match size_class {
        SizeClass::Small => &profile.small,
        SizeClass::Large => &profile.large,
    };
    let core_major = open_uniform(rng, class.core_major);
    let core_minor = core_major * open_uniform(rng, class.core_minor_ratio);
    let aspect = core_minor / core_major;
    let outer_major = core_major * open_uniform(rng, profile.outer_ratio);
    let rim = match kind {
        ArtifactKind::Highland => None,
        ArtifactKind::Volcanic => {
            let a = core_major * open_uniform(rng, profile.rim_ratio);
            Some(Ellipse::new(a, a * aspect))
        }
    };
    let theta = rng.random_range(0.0..PI);
    let row = rng.random_range(-0.5..height as f64 - 0.5);
    let col = rng.random_range(-0.5..width as f64 - 0.5);
    ArtifactGeometry::new(
        Point::new(row, col),
        theta,
        Ellipse::new(outer_major, outer_major * aspect),
        Ellipse::new(core_major, core_minor),
        rim,
    )
}

pub fn sample_appearance<R: Rng + ?Sized>(
    kind: ArtifactKind,
    profile: &TaskProfile,
    rng: &mut R,
) -> Result<ArtifactAppearance> {
    let core = [0; 3].map(|_: u8| discrete(rng, profile.intensity) as u8);
    let rim = match kind {
        ArtifactKind::Highland => None,
        ArtifactKind::Volcanic => Some([0; 3].map(|_: u8| discrete(rng, profile.rim_height) as u8)),
    };
    let radius = discrete(rng, profile.blur_radius) as u8;
    ArtifactAppearance::new(kind, core, rim, profile.roughness, radius)
}

/// Draws the artifact sequence for one `height × width` image.
pub fn plan_image(
    profile: &TaskProfile,
    image: StreamKey,
    height: usize,
    width: usize,
) -> Result<Vec<ArtifactPlan>> {
    let count = discrete(&mut image.child(COUNT_STREAM).rng(), profile.count) as usize;
    (0..count)
        .map(|order| {
            let mut rng = image.child(order as u64).child(PARAM_STREAM).rng();
            let kind = if rng.random_bool(profile.p_highland) {
                ArtifactKind::Highland
            } else {
                ArtifactKind::Volcanic
            };
            let size_class = if rng.random_bool(profile.p_small) {
                SizeClass::Small
            } else {
                SizeClass::Large
            };
            let geometry = sample_geometry(profile, size_class, kind, height, width, &mut rng)?;
            let appearance = sample_appearance(kind, profile, &mut rng)?;
            Ok(ArtifactPlan {
                order,
                size_class,
                geometry,
                appearance,
            })
        })
        .collect()
}
