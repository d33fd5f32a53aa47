//! Marine-snow artifact model: closed-form intensity profiles and
//! rasterization of one artifact into a sparse patch.

mod geometry;
mod render;

pub use geometry::{ArtifactGeometry, Ellipse, EllipseId, Point, Region, ECCENTRICITY_TOLERANCE};
pub use render::{
    footprint, render_artifact, ArtifactAppearance, ArtifactKind, ArtifactPatch, Rect,
    MAX_BLUR_RADIUS,
};
