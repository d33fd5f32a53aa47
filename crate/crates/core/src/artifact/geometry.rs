//! Concentric rotated ellipses and the closed-form intensity profiles built
//! on them.
//!
//! Coordinates are `(row, col)` pairs in pixel units. Each ellipse is
//! expressed in a local frame obtained by rotating the offset from the
//! center by `-theta`; the semi-major axis lies along the first local axis.
//! The intersection of the ray `center → point` with ellipse `i` is
//! `center + t_i · (point − center)`, so every distance ratio along that ray
//! reduces to a ratio of radial scales.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on the shared axis ratio of the three ellipses.
pub const ECCENTRICITY_TOLERANCE: f64 = 1e-9;

/// A continuous image coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub row: f64,
    pub col: f64,
}

impl Point {
    pub const fn new(row: f64, col: f64) -> Self {
        Point { row, col }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    pub semi_major: f64,
    pub semi_minor: f64,
}

impl Ellipse {
    pub const fn new(semi_major: f64, semi_minor: f64) -> Self {
        Ellipse {
            semi_major,
            semi_minor,
        }
    }

    fn aspect(&self) -> f64 {
        self.semi_major / self.semi_minor
    }

    /// Value of the implicit form `(u/a)² + (v/b)²` in the local frame.
    fn level(&self, u: f64, v: f64) -> f64 {
        let x = u / self.semi_major;
        let y = v / self.semi_minor;
        x * x + y * y
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EllipseId {
    /// Outer boundary of the fade halo.
    Outer,
    /// Boundary of the flat core.
    Core,
    /// Inner boundary of the crater rim (volcanic artifacts only).
    Rim,
}

/// Radial region of a point relative to an artifact.
///
/// `RimBand` is a refinement of the core: it marks core points that also
/// lie strictly outside the rim ellipse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    Core,
    RimBand,
    Fade,
    Outside,
}

impl Region {
    pub fn is_core(self) -> bool {
        matches!(self, Region::Core | Region::RimBand)
    }

    pub fn in_support(self) -> bool {
        self != Region::Outside
    }
}

/// Footprint of one artifact: three concentric, co-rotated ellipses sharing
/// one axis ratio.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGeometry", into = "RawGeometry")]
pub struct ArtifactGeometry {
    center: Point,
    theta: f64,
    outer: Ellipse,
    core: Ellipse,
    rim: Option<Ellipse>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    center_row: f64,
    center_col: f64,
    theta: f64,
    outer: Ellipse,
    core: Ellipse,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rim: Option<Ellipse>,
}

impl TryFrom<RawGeometry> for ArtifactGeometry {
    type Error = Error;

    fn try_from(raw: RawGeometry) -> Result<Self> {
        ArtifactGeometry::new(
            Point::new(raw.center_row, raw.center_col),
            raw.theta,
            raw.outer,
            raw.core,
            raw.rim,
        )
    }
}

impl From<ArtifactGeometry> for RawGeometry {
    fn from(g: ArtifactGeometry) -> Self {
        RawGeometry {
            center_row: g.center.row,
            center_col: g.center.col,
            theta: g.theta,
            outer: g.outer,
            core: g.core,
            rim: g.rim,
        }
    }
}

impl ArtifactGeometry {
    pub fn new(
        center: Point,
        theta: f64,
        outer: Ellipse,
        core: Ellipse,
        rim: Option<Ellipse>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGeometry(msg));
        let finite = [center.row, center.col, theta]
            .into_iter()
            .chain(
                [outer, core]
                    .into_iter()
                    .chain(rim)
                    .flat_map(|e| [e.semi_major, e.semi_minor]),
            )
            .all(f64::is_finite);
        if !finite {
            return bad("non-finite value".into());
        }
        for e in [outer, core].iter().chain(rim.iter()) {
            if !(e.semi_minor > 0.0 && e.semi_minor <= e.semi_major) {
                return bad(format!(
                    "axes must satisfy 0 < minor <= major, got {} / {}",
                    e.semi_minor, e.semi_major
                ));
            }
        }
        if !(outer.semi_major > core.semi_major && outer.semi_minor > core.semi_minor) {
            return bad("outer ellipse must strictly contain the core".into());
        }
        let aspect = core.aspect();
        if (outer.aspect() - aspect).abs() > ECCENTRICITY_TOLERANCE * aspect {
            return bad("outer and core axis ratios differ".into());
        }
        if let Some(r) = rim {
            if !(core.semi_major > r.semi_major && core.semi_minor > r.semi_minor) {
                return bad("rim ellipse must lie strictly inside the core".into());
            }
            if (r.aspect() - aspect).abs() > ECCENTRICITY_TOLERANCE * aspect {
                return bad("rim and core axis ratios differ".into());
            }
        }
        Ok(ArtifactGeometry {
            center,
            theta,
            outer,
            core,
            rim,
        })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn outer(&self) -> Ellipse {
        self.outer
    }

    pub fn core(&self) -> Ellipse {
        self.core
    }

    pub fn rim(&self) -> Option<Ellipse> {
        self.rim
    }

    pub fn has_rim(&self) -> bool {
        self.rim.is_some()
    }

    /// Same geometry moved to a new center and rotation.
    pub fn with_pose(&self, center: Point, theta: f64) -> Self {
        ArtifactGeometry {
            center,
            theta,
            ..*self
        }
    }

    fn ellipse(&self, which: EllipseId) -> Result<Ellipse> {
        match which {
            EllipseId::Outer => Ok(self.outer),
            EllipseId::Core => Ok(self.core),
            EllipseId::Rim => self.rim.ok_or(Error::MissingRim),
        }
    }

    /// Offset from the center expressed in the ellipse-aligned frame.
    fn local(&self, p: Point) -> (f64, f64) {
        let (sin, cos) = self.theta.sin_cos();
        let dr = p.row - self.center.row;
        let dc = p.col - self.center.col;
        (cos * dr + sin * dc, cos * dc - sin * dr)
    }

    /// Half extents `(rows, cols)` of the axis-aligned box around the outer
    /// ellipse.
    pub fn outer_half_extent(&self) -> (f64, f64) {
        let (sin, cos) = self.theta.sin_cos();
        let (a, b) = (self.outer.semi_major, self.outer.semi_minor);
        (
            ((a * cos).powi(2) + (b * sin).powi(2)).sqrt(),
            ((a * sin).powi(2) + (b * cos).powi(2)).sqrt(),
        )
    }

    /// Scale `t > 0` such that `center + t · (point − center)` lies on the
    /// requested ellipse.
    pub fn radial_scale(&self, which: EllipseId, point: Point) -> Result<f64> {
        let ellipse = self.ellipse(which)?;
        let (u, v) = self.local(point);
        if u == 0.0 && v == 0.0 {
            return Err(Error::DegenerateRay);
        }
        Ok(ellipse.level(u, v).sqrt().recip())
    }

    pub fn classify_region(&self, point: Point) -> Region {
        let (u, v) = self.local(point);
        self.classify_local(u, v).0
    }

    /// Region plus the implicit-form levels `(outer, core, rim)` that
    /// decided it. Levels are reused by the evaluators: `t_i = level_i^-1/2`.
    fn classify_local(&self, u: f64, v: f64) -> (Region, Levels) {
        let core = self.core.level(u, v);
        let rim = self.rim.map(|r| r.level(u, v));
        if core <= 1.0 {
            let region = match rim {
                Some(level) if level > 1.0 => Region::RimBand,
                _ => Region::Core,
            };
            return (
                region,
                Levels {
                    outer: f64::NAN,
                    core,
                    rim,
                },
            );
        }
        let outer = self.outer.level(u, v);
        let region = if outer <= 1.0 {
            Region::Fade
        } else {
            Region::Outside
        };
        (region, Levels { outer, core, rim })
    }

    /// Type H intensity: a flat core of height `c` fading linearly along each
    /// ray to zero at the outer ellipse, plus the roughness sample `eps`
    /// inside the support. Clamped below at zero.
    pub fn eval_highland(&self, c: f64, eps: f64, point: Point) -> f64 {
        let (u, v) = self.local(point);
        let (region, levels) = self.classify_local(u, v);
        highland_from(region, &levels, c, eps)
    }

    /// Crater rim term: a triangular ridge across the band between the rim
    /// and core ellipses, peaking at `c_r` halfway between them.
    pub fn eval_rim(&self, c_r: f64, point: Point) -> Result<f64> {
        if self.rim.is_none() {
            return Err(Error::MissingRim);
        }
        let (u, v) = self.local(point);
        let (region, levels) = self.classify_local(u, v);
        Ok(rim_from(region, &levels, c_r))
    }

    /// Type V intensity: type H plus the rim term.
    pub fn eval_volcanic(&self, c: f64, c_r: f64, eps: f64, point: Point) -> Result<f64> {
        if self.rim.is_none() {
            return Err(Error::MissingRim);
        }
        let (u, v) = self.local(point);
        let (region, levels) = self.classify_local(u, v);
        Ok(highland_from(region, &levels, c, eps) + rim_from(region, &levels, c_r))
    }

    /// Evaluates region and unperturbed profile pieces once for a point so
    /// per-channel values can be formed without repeating the geometry.
    pub(crate) fn sample(&self, point: Point) -> Sample {
        let (u, v) = self.local(point);
        let (region, levels) = self.classify_local(u, v);
        let fade = match region {
            Region::Fade => fade_fraction(&levels),
            _ => 1.0,
        };
        let ridge = match region {
            Region::RimBand => ridge_fraction(&levels),
            _ => 0.0,
        };
        Sample {
            region,
            fade,
            ridge,
        }
    }
}

struct Levels {
    outer: f64,
    core: f64,
    rim: Option<f64>,
}

/// `d(p, q1) / d(q1, q2)` along the ray, as `(t1 − 1) / (t1 − t2)`.
fn fade_fraction(levels: &Levels) -> f64 {
    let t_outer = levels.outer.sqrt().recip();
    let t_core = levels.core.sqrt().recip();
    (t_outer - 1.0) / (t_outer - t_core)
}

/// `1 − d(p, mid(q2, q3)) / (d(q2, q3) / 2)` along the ray.
fn ridge_fraction(levels: &Levels) -> f64 {
    let t_core = levels.core.sqrt().recip();
    let t_rim = levels.rim.map_or(f64::NAN, |l| l.sqrt().recip());
    let mid = 0.5 * (t_core + t_rim);
    let half = 0.5 * (t_core - t_rim);
    (1.0 - (1.0 - mid).abs() / half).max(0.0)
}

fn highland_from(region: Region, levels: &Levels, c: f64, eps: f64) -> f64 {
    match region {
        Region::Core | Region::RimBand => (c + eps).max(0.0),
        Region::Fade => (c * fade_fraction(levels) + eps).max(0.0),
        Region::Outside => 0.0,
    }
}

fn rim_from(region: Region, levels: &Levels, c_r: f64) -> f64 {
    match region {
        Region::RimBand => c_r * ridge_fraction(levels),
        _ => 0.0,
    }
}

/// Channel-independent evaluation of a point: region, fade multiplier
/// (1 in the core) and ridge multiplier (0 off the rim band).
#[derive(Clone, Copy, Debug)]
pub(crate) struct Sample {
    pub region: Region,
    pub fade: f64,
    pub ridge: f64,
}
