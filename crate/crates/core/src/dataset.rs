//! Paired dataset generation and the manifest that makes it replayable.
//!
//! Layout under the output directory:
//!
//! ```text
//! gt/00000.png        clean image after crop/resample
//! degraded/00000.png  same image with synthesized artifacts
//! manifest.json       DatasetManifest
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::TaskProfile;
use crate::raster::{probe_image, RasterImage};
use crate::rng::StreamKey;
use crate::sampling::ArtifactPlan;
use crate::synthesis::{apply_plans, synthesize_pair};

pub const MANIFEST_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";
pub const GROUND_TRUTH_DIR: &str = "gt";
pub const DEGRADED_DIR: &str = "degraded";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub index: usize,
    /// File name of the source image the pair was made from.
    pub source: String,
    /// Image stream key; replaying the artifacts needs only this and the
    /// ground-truth image.
    pub seed: u64,
    pub artifact_count: usize,
    pub artifacts: Vec<ArtifactPlan>,
    /// Paths relative to the dataset root.
    pub ground_truth: String,
    pub degraded: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub master_seed: u64,
    pub profile: TaskProfile,
    pub pairs: Vec<PairRecord>,
}

impl DatasetManifest {
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Parses and validates a manifest.
    pub fn from_json(text: &str) -> Result<Self> {
        let manifest: DatasetManifest = serde_json::from_str(text)?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(format!("manifest: {msg}")));
        if self.format_version != MANIFEST_VERSION {
            return bad(format!(
                "unsupported format_version {}",
                self.format_version
            ));
        }
        self.profile.validate()?;
        for (i, pair) in self.pairs.iter().enumerate() {
            if pair.index != i {
                return bad(format!("pair {i} has index {}", pair.index));
            }
            if pair.artifact_count != pair.artifacts.len() {
                return bad(format!("pair {i} artifact_count disagrees with its list"));
            }
            if pair.artifacts.iter().enumerate().any(|(k, a)| a.order != k) {
                return bad(format!("pair {i} artifacts are out of order"));
            }
            if pair
                .artifacts
                .iter()
                .any(|a| a.geometry.has_rim() != a.appearance.rim_height().is_some())
            {
                return bad(format!(
                    "pair {i} has an artifact whose kind disagrees with its geometry"
                ));
            }
        }
        Ok(())
    }
}

/// Zero-padded file name for pair `index`.
pub fn pair_file_name(index: usize) -> String {
    format!("{index:05}.png")
}

/// Key of pair `index` under `master_seed`.
pub fn pair_key(master_seed: u64, index: usize) -> StreamKey {
    StreamKey::new(master_seed).child(index as u64)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Generates `pair_count` pairs from `sources` (cycled in order) into `out`.
///
/// Every source that will be used is probed before anything is written.
/// Pairs are produced in parallel on the current rayon pool; output does
/// not depend on the pool size.
pub fn generate_dataset(
    sources: &[PathBuf],
    profile: &TaskProfile,
    master_seed: u64,
    pair_count: usize,
    out: &Path,
) -> Result<DatasetManifest> {
    profile.validate()?;
    if sources.is_empty() {
        return Err(Error::InvalidParameter("no source images".into()));
    }
    if pair_count == 0 {
        return Err(Error::InvalidParameter("pair count must be >= 1".into()));
    }
    let used = &sources[..sources.len().min(pair_count)];
    used.par_iter().try_for_each(|p| probe_image(p).map(drop))?;

    let gt_dir = out.join(GROUND_TRUTH_DIR);
    let degraded_dir = out.join(DEGRADED_DIR);
    for dir in [&gt_dir, &degraded_dir] {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }

    let pairs = (0..pair_count)
        .into_par_iter()
        .map(|index| {
            let source = &sources[index % sources.len()];
            let clean = RasterImage::load(source)?.square_resized(profile.image_size)?;
            let key = pair_key(master_seed, index);
            let (degraded, artifacts) = synthesize_pair(&clean, profile, key)?;
            let name = pair_file_name(index);
            clean.save_png(&gt_dir.join(&name))?;
            degraded.save_png(&degraded_dir.join(&name))?;
            Ok(PairRecord {
                index,
                source: file_name(source),
                seed: key.value(),
                artifact_count: artifacts.len(),
                artifacts,
                ground_truth: format!("{GROUND_TRUTH_DIR}/{name}"),
                degraded: format!("{DEGRADED_DIR}/{name}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let manifest = DatasetManifest {
        format_version: MANIFEST_VERSION,
        master_seed,
        profile: profile.clone(),
        pairs,
    };
    let path = out.join(MANIFEST_FILE);
    fs::write(&path, manifest.to_json()?).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}

/// Re-renders one pair's degraded image from its manifest entry and the
/// stored ground-truth image.
pub fn replay_pair(manifest: &DatasetManifest, index: usize, root: &Path) -> Result<RasterImage> {
    let record = manifest
        .pairs
        .get(index)
        .ok_or_else(|| Error::InvalidParameter(format!("manifest has no pair {index}")))?;
    let clean = RasterImage::load(&root.join(&record.ground_truth))?;
    apply_plans(
        &clean,
        &record.artifacts,
        manifest.profile.blur_source,
        StreamKey::new(record.seed),
    )
}
