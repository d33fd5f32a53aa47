//! Procedural stand-ins for underwater photographs.
//!
//! Scenes follow the dead-leaves model: occluding disks with a power-law
//! radius distribution, which reproduces the scale-invariant edge
//! statistics of natural images. Colors are drawn around a blue-green water
//! cast that darkens with depth. Scenes are rendered at twice the size and
//! box-downsampled so edges are antialiased like a resampled photo.

use marine_snow::RasterImage;

struct Hash(u64);

impl Hash {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

const MIN_RADIUS: f64 = 1.0;
const MAX_RADIUS: f64 = 120.0;

/// Radius with density proportional to `r^-3` on `[MIN_RADIUS, MAX_RADIUS]`.
fn leaf_radius(hash: &mut Hash) -> f64 {
    let (lo, hi) = (MIN_RADIUS.powi(-2), MAX_RADIUS.powi(-2));
    (lo - hash.unit() * (lo - hi)).powf(-0.5)
}

pub fn scene(seed: u64, size: usize) -> RasterImage {
    let mut hash = Hash(seed.wrapping_mul(0xA24B_AED4_963E_E407) ^ 0x5851_F42D);
    let cast = [
        hash.range(0.2, 0.5),
        hash.range(0.7, 1.0),
        hash.range(0.75, 1.0),
    ];
    let spread = hash.range(120.0, 220.0);
    let fine = 2 * size;

    let mut canvas = vec![[0.0f64; 3]; fine * fine];
    let leaves = 6 * fine * fine / 28;
    for _ in 0..leaves {
        let radius = 2.0 * leaf_radius(&mut hash);
        let (cy, cx) = (hash.range(0.0, fine as f64), hash.range(0.0, fine as f64));
        let depth = cy / fine as f64;
        let shade = hash.range(0.15, 1.0) * spread * (1.0 - 0.5 * depth);
        let tint = [
            hash.range(0.7, 1.3),
            hash.range(0.7, 1.3),
            hash.range(0.7, 1.3),
        ];
        let color: [f64; 3] = std::array::from_fn(|k| 10.0 + shade * cast[k] * tint[k]);
        let top = (cy - radius).floor().max(0.0) as usize;
        let bottom = ((cy + radius).ceil() as usize).min(fine - 1);
        let left = (cx - radius).floor().max(0.0) as usize;
        let right = ((cx + radius).ceil() as usize).min(fine - 1);
        for y in top..=bottom {
            for x in left..=right {
                let (dy, dx) = (y as f64 + 0.5 - cy, x as f64 + 0.5 - cx);
                if dy * dy + dx * dx <= radius * radius {
                    canvas[y * fine + x] = color;
                }
            }
        }
    }

    let mut data = Vec::with_capacity(size * size * 3);
    for r in 0..size {
        for c in 0..size {
            let mut sum = [0.0f64; 3];
            for (dy, dx) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let fine_px = canvas[(2 * r + dy) * fine + 2 * c + dx];
                sum.iter_mut().zip(fine_px).for_each(|(s, v)| *s += v);
            }
            for s in sum {
                let grain = hash.range(-2.0, 2.0);
                data.push((s / 4.0 + grain).round().clamp(0.0, 255.0) as u8);
            }
        }
    }
    RasterImage::new(size, size, data).expect("scene buffer has the right length")
}
