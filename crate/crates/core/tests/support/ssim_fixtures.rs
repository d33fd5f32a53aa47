//! Image pairs with SSIM values computed by scikit-image 0.25
//! (`structural_similarity` with `gaussian_weights=True`, `sigma=1.5`,
//! `use_sample_covariance=False`, `data_range=255`, `channel_axis=-1`).
//!
//! Fixture `seed` is a uniform-noise image `a` and `b = clamp(a + d)` with
//! `d` uniform on `[-amp, amp]`, `amp = 8·(seed mod 8) + 1`, both drawn from
//! the xorshift32 stream below.

#![allow(dead_code)]

use marine_snow::RasterImage;

/// `(seed, height, width, ssim)`.
pub const REFERENCE: [(u32, usize, usize, f64); 20] = [
    (0, 25, 17, 0.999942874132),
    (1, 34, 29, 0.997162107365),
    (2, 18, 39, 0.990340767640),
    (3, 22, 23, 0.980581272111),
    (4, 31, 21, 0.967575772718),
    (5, 19, 24, 0.944005897463),
    (6, 19, 17, 0.936057257511),
    (7, 31, 23, 0.914544900750),
    (8, 28, 19, 0.999940015792),
    (9, 16, 30, 0.997410915099),
    (10, 32, 21, 0.990731292569),
    (11, 28, 19, 0.979759496045),
    (12, 37, 32, 0.968281065246),
    (13, 17, 23, 0.952977024390),
    (14, 33, 17, 0.931668884657),
    (15, 30, 17, 0.895213753298),
    (16, 27, 37, 0.999936857401),
    (17, 33, 35, 0.997203710057),
    (18, 39, 35, 0.990319147588),
    (19, 25, 23, 0.979298479408),
];

/// Same reference on a 32×32 checkerboard of 4 px black/white blocks
/// against its inversion.
pub const INVERSION: f64 = -0.903411668366;

struct XorShift(u32);

impl XorShift {
    fn new(seed: u32) -> Self {
        let s = seed.wrapping_mul(2_654_435_761).wrapping_add(1);
        XorShift(if s == 0 { 1 } else { s })
    }

    fn next(&mut self) -> u32 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 17;
        self.0 ^= self.0 << 5;
        self.0
    }
}

pub fn fixture(seed: u32) -> (RasterImage, RasterImage) {
    let mut g = XorShift::new(seed);
    let h = 16 + (g.next() % 24) as usize;
    let w = 16 + (g.next() % 24) as usize;
    let amp = (8 * (seed % 8) + 1) as i64;
    let a: Vec<u8> = (0..h * w * 3).map(|_| (g.next() >> 24) as u8).collect();
    let b = a
        .iter()
        .map(|&v| {
            let d = i64::from(g.next() >> 24) % (2 * amp + 1) - amp;
            (i64::from(v) + d).clamp(0, 255) as u8
        })
        .collect();
    (
        RasterImage::new(h, w, a).unwrap(),
        RasterImage::new(h, w, b).unwrap(),
    )
}

pub fn checkerboard() -> (RasterImage, RasterImage) {
    let data: Vec<u8> = (0..32 * 32)
        .flat_map(|i| {
            let (r, c) = (i / 32, i % 32);
            let v = if (r / 4 + c / 4) % 2 == 1 { 255 } else { 0 };
            [v; 3]
        })
        .collect();
    let inverted = data.iter().map(|v| 255 - v).collect();
    (
        RasterImage::new(32, 32, data).unwrap(),
        RasterImage::new(32, 32, inverted).unwrap(),
    )
}

/// Largest deviation of `ssim` from the frozen reference over all fixtures,
/// including the inversion case.
pub fn max_reference_error(ssim: impl Fn(&RasterImage, &RasterImage) -> f64) -> f64 {
    let mut worst = 0.0f64;
    for &(seed, h, w, expected) in &REFERENCE {
        let (a, b) = fixture(seed);
        assert_eq!((a.height(), a.width()), (h, w), "fixture {seed} shape");
        worst = worst.max((ssim(&a, &b) - expected).abs());
    }
    let (x, y) = checkerboard();
    worst.max((ssim(&x, &y) - INVERSION).abs())
}
