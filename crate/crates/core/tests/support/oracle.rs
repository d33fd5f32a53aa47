//! Brute-force reference for the artifact intensity model.
//!
//! Ellipse membership uses the general conic form in image coordinates
//! rather than a rotated local frame. Ray/ellipse intersections are found by
//! bisection and intensities are formed from literal Euclidean distances
//! between the located points.

#![allow(dead_code)]

use std::f64::consts::PI;

use marine_snow::artifact::{ArtifactGeometry, Ellipse, Point};

/// SplitMix64, enough for reproducible test inputs.
pub struct Gen(u64);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * ((self.next_u64() >> 11) as f64 / (1u64 << 53) as f64)
    }
}

/// `A·dr² + B·dr·dc + C·dc²` for an ellipse whose major axis points along
/// `(cos theta, sin theta)` in `(row, col)` coordinates.
fn conic(e: Ellipse, theta: f64, dr: f64, dc: f64) -> f64 {
    let (s, c) = (theta.sin(), theta.cos());
    let (ia, ib) = (
        1.0 / (e.semi_major * e.semi_major),
        1.0 / (e.semi_minor * e.semi_minor),
    );
    let a = c * c * ia + s * s * ib;
    let b = 2.0 * s * c * (ia - ib);
    let cc = s * s * ia + c * c * ib;
    a * dr * dr + b * dr * dc + cc * dc * dc
}

fn inside(g: &ArtifactGeometry, e: Ellipse, p: Point) -> bool {
    let o = g.center();
    conic(e, g.theta(), p.row - o.row, p.col - o.col) <= 1.0
}

/// Intersection of the ray `center → p` with `e`, by bisection on the ray
/// parameter.
pub fn crossing(g: &ArtifactGeometry, e: Ellipse, p: Point) -> Point {
    let o = g.center();
    let (dr, dc) = (p.row - o.row, p.col - o.col);
    let level = |t: f64| conic(e, g.theta(), t * dr, t * dc);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while level(hi) < 1.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if level(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Point::new(o.row + t * dr, o.col + t * dc)
}

pub fn dist(a: Point, b: Point) -> f64 {
    (a.row - b.row).hypot(a.col - b.col)
}

/// Type H intensity with no roughness.
pub fn highland(g: &ArtifactGeometry, c: f64, p: Point) -> f64 {
    if inside(g, g.core(), p) {
        return c;
    }
    if !inside(g, g.outer(), p) {
        return 0.0;
    }
    let q1 = crossing(g, g.outer(), p);
    let q2 = crossing(g, g.core(), p);
    (c * dist(p, q1) / dist(q1, q2)).max(0.0)
}

/// Rim ridge term.
pub fn rim(g: &ArtifactGeometry, c_r: f64, p: Point) -> f64 {
    let f3 = g.rim().expect("rim geometry");
    if !inside(g, g.core(), p) || inside(g, f3, p) {
        return 0.0;
    }
    let q2 = crossing(g, g.core(), p);
    let q3 = crossing(g, f3, p);
    let mid = Point::new(0.5 * (q2.row + q3.row), 0.5 * (q2.col + q3.col));
    c_r * (1.0 - dist(p, mid) / (0.5 * dist(q2, q3)))
}

pub fn random_geometry(gen: &mut Gen) -> ArtifactGeometry {
    let center = Point::new(gen.uniform(-50.0, 50.0), gen.uniform(-50.0, 50.0));
    let theta = gen.uniform(0.0, 2.0 * PI);
    let a2 = gen.uniform(0.5, 20.0);
    let ratio = gen.uniform(0.2, 1.0);
    let a1 = a2 * gen.uniform(1.05, 3.0);
    let a3 = a2 * gen.uniform(0.1, 0.95);
    ArtifactGeometry::new(
        center,
        theta,
        Ellipse::new(a1, a1 * ratio),
        Ellipse::new(a2, a2 * ratio),
        Some(Ellipse::new(a3, a3 * ratio)),
    )
    .expect("valid random geometry")
}

/// A point at distance up to 1.3 outer semi-major axes from the center, in
/// a uniformly random direction.
pub fn random_point(gen: &mut Gen, g: &ArtifactGeometry) -> Point {
    let o = g.center();
    let phi = gen.uniform(0.0, 2.0 * PI);
    let s = gen.uniform(0.0, 1.3 * g.outer().semi_major);
    Point::new(o.row + s * phi.cos(), o.col + s * phi.sin())
}

/// Largest deviation of the closed forms from the oracle over
/// `geometries × points` random samples. Both the type H and the rim term
/// are checked at every point.
pub fn max_oracle_error(seed: u64, geometries: usize, points: usize) -> f64 {
    let mut gen = Gen::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..geometries {
        let g = random_geometry(&mut gen);
        let c = gen.uniform(10.0, 80.0);
        let c_r = gen.uniform(1.0, 40.0);
        for _ in 0..points {
            let p = random_point(&mut gen, &g);
            worst = worst.max((g.eval_highland(c, 0.0, p) - highland(&g, c, p)).abs());
            worst = worst.max((g.eval_rim(c_r, p).unwrap() - rim(&g, c_r, p)).abs());
        }
    }
    worst
}

/// Distance from the center to where the ray at angle `phi` meets `e`.
fn ray_extent(g: &ArtifactGeometry, e: Ellipse, phi: f64) -> f64 {
    let o = g.center();
    let probe = Point::new(o.row + phi.cos(), o.col + phi.sin());
    dist(o, crossing(g, e, probe))
}

fn along(g: &ArtifactGeometry, phi: f64, s: f64) -> Point {
    let o = g.center();
    Point::new(o.row + s * phi.cos(), o.col + s * phi.sin())
}

/// Largest residual of type H fade values from the straight line through
/// `(s2, c)` and `(s1, 0)` along random rays, including both endpoints.
pub fn max_linearity_residual(seed: u64, rays: usize, samples: usize) -> f64 {
    let mut gen = Gen::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..rays {
        let g = random_geometry(&mut gen);
        let c = gen.uniform(10.0, 80.0);
        let phi = gen.uniform(0.0, 2.0 * PI);
        let s1 = ray_extent(&g, g.outer(), phi);
        let s2 = ray_extent(&g, g.core(), phi);
        for k in 0..=samples {
            let s = s2 + (s1 - s2) * k as f64 / samples as f64;
            let line = c * (s1 - s) / (s1 - s2);
            worst = worst.max((g.eval_highland(c, 0.0, along(&g, phi, s)) - line).abs());
        }
    }
    worst
}

/// Largest residual of the rim term from the triangle with feet at the f3
/// and f2 crossings and apex `c_r` at their midpoint. The apex itself is
/// always among the samples.
pub fn max_rim_residual(seed: u64, rays: usize, samples: usize) -> f64 {
    let mut gen = Gen::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..rays {
        let g = random_geometry(&mut gen);
        let c_r = gen.uniform(1.0, 40.0);
        let phi = gen.uniform(0.0, 2.0 * PI);
        let s2 = ray_extent(&g, g.core(), phi);
        let s3 = ray_extent(&g, g.rim().unwrap(), phi);
        let (mid, half) = (0.5 * (s2 + s3), 0.5 * (s2 - s3));
        let steps = samples + samples % 2;
        for k in 0..=steps {
            let s = s3 + (s2 - s3) * k as f64 / steps as f64;
            let triangle = c_r * (1.0 - (s - mid).abs() / half);
            worst = worst.max((g.eval_rim(c_r, along(&g, phi, s)).unwrap() - triangle).abs());
        }
        worst = worst.max((g.eval_rim(c_r, along(&g, phi, mid)).unwrap() - c_r).abs());
    }
    worst
}

/// Largest change in type V intensity when geometry and point are rotated
/// together about the center.
pub fn max_rotation_error(seed: u64, cases: usize) -> f64 {
    let mut gen = Gen::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let g = random_geometry(&mut gen);
        let (c, c_r) = (gen.uniform(10.0, 80.0), gen.uniform(1.0, 40.0));
        let p = random_point(&mut gen, &g);
        let alpha = gen.uniform(-PI, PI);
        let o = g.center();
        let (dr, dc) = (p.row - o.row, p.col - o.col);
        let (s, co) = alpha.sin_cos();
        let turned = Point::new(o.row + dr * co - dc * s, o.col + dr * s + dc * co);
        let rotated = g.with_pose(o, g.theta() + alpha);
        let before = g.eval_volcanic(c, c_r, 0.0, p).unwrap();
        let after = rotated.eval_volcanic(c, c_r, 0.0, turned).unwrap();
        worst = worst.max((before - after).abs());
    }
    worst
}
