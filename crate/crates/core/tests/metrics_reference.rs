mod support;

use marine_snow::metrics::{psnr, ssim};
use marine_snow::RasterImage;
use support::ssim_fixtures::{self, checkerboard, fixture, INVERSION};

/// SSIM evaluated window by window: full 11×11 Gaussian weights at every
/// valid position, statistics in one pass, no separable filtering.
fn direct_ssim(a: &RasterImage, b: &RasterImage) -> f64 {
    let weights: Vec<f64> = (-5i32..=5).map(|x| (-(x * x) as f64 / 4.5).exp()).collect();
    let norm: f64 = weights.iter().sum::<f64>().powi(2);
    let (c1, c2) = ((0.01f64 * 255.0).powi(2), (0.03f64 * 255.0).powi(2));
    let (h, w) = (a.height(), a.width());
    let mut total = 0.0;
    for t in 0..3 {
        let mut sum = 0.0;
        for r in 0..=h - 11 {
            for c in 0..=w - 11 {
                let (mut mx, mut my, mut xx, mut yy, mut xy) = (0.0, 0.0, 0.0, 0.0, 0.0);
                for i in 0..11 {
                    for j in 0..11 {
                        let k = weights[i] * weights[j] / norm;
                        let x = f64::from(a.get(r + i, c + j, t));
                        let y = f64::from(b.get(r + i, c + j, t));
                        mx += k * x;
                        my += k * y;
                        xx += k * x * x;
                        yy += k * y * y;
                        xy += k * x * y;
                    }
                }
                let (vx, vy, cov) = (xx - mx * mx, yy - my * my, xy - mx * my);
                sum += (2.0 * mx * my + c1) * (2.0 * cov + c2)
                    / ((mx * mx + my * my + c1) * (vx + vy + c2));
            }
        }
        total += sum / ((h - 10) * (w - 10)) as f64;
    }
    total / 3.0
}

#[test]
fn matches_frozen_reference() {
    let worst = ssim_fixtures::max_reference_error(|a, b| ssim(a, b).unwrap());
    assert!(worst <= 1e-4, "max deviation {worst}");
}

#[test]
fn matches_direct_window_evaluation() {
    for seed in [0, 3, 7, 12, 18] {
        let (a, b) = fixture(seed);
        let (fast, slow) = (ssim(&a, &b).unwrap(), direct_ssim(&a, &b));
        assert!((fast - slow).abs() < 1e-9, "seed {seed}: {fast} vs {slow}");
    }
    let (x, y) = checkerboard();
    assert!((direct_ssim(&x, &y) - INVERSION).abs() < 1e-4);
}

#[test]
fn zero_variance_closed_form() {
    let a = RasterImage::filled(16, 16, [100; 3]);
    let b = RasterImage::filled(16, 16, [110; 3]);
    let c1 = 6.5025;
    let expected = (2.0 * 100.0 * 110.0 + c1) / (100.0f64.powi(2) + 110.0f64.powi(2) + c1);
    assert!((ssim(&a, &b).unwrap() - expected).abs() < 1e-9);
    assert!((expected - 0.99548).abs() < 1e-4);
}

#[test]
fn psnr_analytic_cases() {
    let zero = RasterImage::filled(9, 7, [0; 3]);
    let one = RasterImage::filled(9, 7, [1; 3]);
    let full = RasterImage::filled(9, 7, [255; 3]);
    assert!((psnr(&zero, &one).unwrap() - 20.0 * 255f64.log10()).abs() < 1e-9);
    assert!(psnr(&zero, &full).unwrap().abs() < 1e-9);
    assert_eq!(psnr(&one, &one).unwrap(), 100.0);
}
