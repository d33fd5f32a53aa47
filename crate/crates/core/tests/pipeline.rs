use marine_snow::artifact::{render_artifact, ArtifactKind};
use marine_snow::blur::gaussian_blur;
use marine_snow::dataset::{DatasetManifest, PairRecord, MANIFEST_VERSION};
use marine_snow::profile::{TaskName, TaskProfile};
use marine_snow::sampling::{plan_image, sample_appearance};
use marine_snow::synthesis::{composite_artifact, synthesize_pair};
use marine_snow::{RasterImage, StreamKey};

fn textured(h: usize, w: usize) -> RasterImage {
    let data = (0..h * w * 3)
        .map(|i| ((i * 37 + (i / 7) * 11) % 200 + 20) as u8)
        .collect();
    RasterImage::new(h, w, data).unwrap()
}

/// Chi-square statistic of 100,000 core intensities over `{10, …, 80}`
/// against the uniform expectation; 112.32 is the 0.999 quantile with 70
/// degrees of freedom.
#[test]
fn core_intensity_is_uniform() {
    let profile = TaskProfile::task2();
    let mut rng = StreamKey::new(99).rng();
    let mut counts = [0u64; 71];
    let mut draws = 0u64;
    while draws < 100_000 {
        let app = sample_appearance(ArtifactKind::Highland, &profile, &mut rng).unwrap();
        for c in app.core_intensity() {
            counts[usize::from(c) - 10] += 1;
            draws += 1;
        }
    }
    let expected = draws as f64 / 71.0;
    let chi2: f64 = counts
        .iter()
        .map(|&n| (n as f64 - expected).powi(2) / expected)
        .sum();
    assert!(chi2 < 112.32, "chi-square {chi2}");
}

#[test]
fn artifacts_only_brighten_over_the_blur() {
    let clean = textured(64, 64).to_float();
    let image = StreamKey::new(5);
    let plans = plan_image(&TaskProfile::task2(), image, 64, 64).unwrap();
    for plan in plans.iter().take(40) {
        let r = plan.appearance.blur_radius();
        let patch = render_artifact(
            &plan.geometry,
            &plan.appearance,
            plan.noise_key(image),
            64,
            64,
        )
        .unwrap();
        let out = composite_artifact(&clean, &patch, r).unwrap();
        let blurred = gaussian_blur(&clean, r).unwrap();
        for row in 0..64 {
            for col in 0..64 {
                for t in 0..3 {
                    let (o, u) = (out.get(row, col, t), clean.get(row, col, t));
                    if patch.in_support(row, col) {
                        assert!(o >= blurred.get(row, col, t) - 1e-4);
                    } else {
                        assert_eq!(o, u);
                    }
                }
            }
        }
    }
}

#[test]
fn task2_mixes_size_classes() {
    let clean = textured(96, 96);
    let (_, plans) = synthesize_pair(&clean, &TaskProfile::task2(), StreamKey::new(8)).unwrap();
    let large = plans
        .iter()
        .filter(|p| p.geometry.core().semi_major > 3.0)
        .count();
    assert!(large > 0 && large < plans.len());
}

#[test]
fn manifest_field_names_are_stable() {
    let clean = textured(32, 32);
    let mut profile = TaskProfile::for_task(TaskName::Custom);
    profile.image_size = 32;
    let key = StreamKey::new(3);
    let (_, artifacts) = synthesize_pair(&clean, &profile, key).unwrap();
    let manifest = DatasetManifest {
        format_version: MANIFEST_VERSION,
        master_seed: 3,
        profile,
        pairs: vec![PairRecord {
            index: 0,
            source: "a.png".into(),
            seed: key.value(),
            artifact_count: artifacts.len(),
            artifacts,
            ground_truth: "gt/00000.png".into(),
            degraded: "degraded/00000.png".into(),
        }],
    };
    let value: serde_json::Value = serde_json::from_str(&manifest.to_json().unwrap()).unwrap();
    for key in ["format_version", "master_seed", "profile", "pairs"] {
        assert!(value.get(key).is_some(), "{key}");
    }
    let pair = &value["pairs"][0];
    for key in [
        "index",
        "source",
        "seed",
        "artifact_count",
        "artifacts",
        "ground_truth",
        "degraded",
    ] {
        assert!(pair.get(key).is_some(), "{key}");
    }
    let artifact = &pair["artifacts"][0];
    for key in ["order", "size_class", "geometry", "appearance"] {
        assert!(artifact.get(key).is_some(), "{key}");
    }
    for key in ["center_row", "center_col", "theta", "outer", "core"] {
        assert!(artifact["geometry"].get(key).is_some(), "{key}");
    }
}
