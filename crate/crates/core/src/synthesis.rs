//! Compositing artifacts onto a clean image.
//!
//! Inside an artifact's support the output is `M + G`, where `G` is the
//! Gaussian blur of the image with the artifact's radius; every other pixel
//! keeps its current value. Artifacts are applied one at a time in plan
//! order.

use crate::artifact::{render_artifact, ArtifactPatch};
use crate::blur::blur_rect;
use crate::error::Result;
use crate::profile::{BlurSource, TaskProfile};
use crate::raster::{FloatImage, RasterImage};
use crate::rng::StreamKey;
use crate::sampling::{plan_image, ArtifactPlan};

/// Applies one patch to `target` in place. `G` is taken from `blur_from`
/// when given, otherwise from `target` itself.
pub fn composite_into(
    target: &mut FloatImage,
    blur_from: Option<&FloatImage>,
    patch: &ArtifactPatch,
    radius: u8,
) -> Result<()> {
    if patch.is_empty() {
        return Ok(());
    }
    let rect = patch.rect();
    let blurred = blur_rect(blur_from.unwrap_or(&*target), radius, rect)?;
    let width = target.width();
    let out = target.as_mut_slice();
    let values = patch.values();
    for (idx, _) in patch.support().iter().enumerate().filter(|(_, &s)| s) {
        let (i, j) = (idx / rect.width, idx % rect.width);
        let o = ((rect.top + i) * width + rect.left + j) * 3;
        for t in 0..3 {
            out[o + t] = (values[idx * 3 + t] + blurred[idx * 3 + t]).clamp(0.0, 255.0);
        }
    }
    Ok(())
}

/// Pure form of [`composite_into`] blurring the current image.
pub fn composite_artifact(
    current: &FloatImage,
    patch: &ArtifactPatch,
    radius: u8,
) -> Result<FloatImage> {
    let mut out = current.clone();
    composite_into(&mut out, None, patch, radius)?;
    Ok(out)
}

/// Renders and composites `plans` in order onto `clean`.
pub fn apply_plans(
    clean: &RasterImage,
    plans: &[ArtifactPlan],
    blur_source: BlurSource,
    image: StreamKey,
) -> Result<RasterImage> {
    let pristine = clean.to_float();
    let mut working = pristine.clone();
    let (h, w) = (clean.height(), clean.width());
    for plan in plans {
        let patch = render_artifact(
            &plan.geometry,
            &plan.appearance,
            plan.noise_key(image),
            h,
            w,
        )?;
        let blur_from = match blur_source {
            BlurSource::Current => None,
            BlurSource::Pristine => Some(&pristine),
        };
        composite_into(
            &mut working,
            blur_from,
            &patch,
            plan.appearance.blur_radius(),
        )?;
    }
    Ok(working.to_raster())
}

/// Plans and composites one degraded image. Returns the degraded image and
/// the realized plans.
pub fn synthesize_pair(
    clean: &RasterImage,
    profile: &TaskProfile,
    image: StreamKey,
) -> Result<(RasterImage, Vec<ArtifactPlan>)> {
    profile.validate()?;
    let plans = plan_image(profile, image, clean.height(), clean.width())?;
    let degraded = apply_plans(clean, &plans, profile.blur_source, image)?;
    Ok((degraded, plans))
}
