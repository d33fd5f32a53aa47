//! Sampling configuration for a dataset task, and its plain-text form.
//!
//! The config format is one `key = value` pair per line. Anything after a
//! `#` is a comment, and blank lines are ignored. Keys not given take the defaults of
//! the profile named by `name` (`custom` starts from the task 2 defaults).
//! A profile named `task1` or `task2` must match that task exactly; any
//! override requires `name = custom`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::artifact::MAX_BLUR_RADIUS;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskName {
    Task1,
    Task2,
    Custom,
}

impl TaskName {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskName::Task1 => "task1",
            TaskName::Task2 => "task2",
            TaskName::Custom => "custom",
        }
    }
}

impl FromStr for TaskName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "task1" | "1" => Ok(TaskName::Task1),
            "task2" | "2" => Ok(TaskName::Task2),
            "custom" => Ok(TaskName::Custom),
            other => Err(Error::InvalidProfile(format!(
                "unknown task name {other:?}"
            ))),
        }
    }
}

/// Which image the per-artifact Gaussian blur is taken from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlurSource {
    /// The working image, already containing earlier artifacts.
    #[default]
    Current,
    /// The clean source image.
    Pristine,
}

impl BlurSource {
    fn as_str(self) -> &'static str {
        match self {
            BlurSource::Current => "current",
            BlurSource::Pristine => "pristine",
        }
    }
}

/// Inclusive integer range for discrete uniform draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntRange {
    pub min: u32,
    pub max: u32,
}

/// Open interval for continuous uniform draws; `min == max` is a constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatRange {
    pub min: f64,
    pub max: f64,
}

const fn ints(min: u32, max: u32) -> IntRange {
    IntRange { min, max }
}

const fn floats(min: f64, max: f64) -> FloatRange {
    FloatRange { min, max }
}

/// Ranges for one artifact size class. Minor axis and ellipse ratios are
/// relative to the core semi-major axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizeClassRanges {
    pub core_major: FloatRange,
    pub core_minor_ratio: FloatRange,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskProfile {
    pub name: TaskName,
    pub image_size: u32,
    pub count: IntRange,
    pub p_highland: f64,
    /// Probability an artifact is drawn from the small size class.
    pub p_small: f64,
    pub intensity: IntRange,
    pub rim_height: IntRange,
    pub blur_radius: IntRange,
    pub small: SizeClassRanges,
    pub large: SizeClassRanges,
    pub outer_ratio: FloatRange,
    pub rim_ratio: FloatRange,
    /// Roughness amplitude: perturbations are uniform on `[-roughness, roughness]`.
    pub roughness: f64,
    pub blur_source: BlurSource,
}

impl TaskProfile {
    /// Small artifacts only.
    pub fn task1() -> Self {
        TaskProfile {
            name: TaskName::Task1,
            image_size: 384,
            count: ints(100, 600),
            p_highland: 0.7,
            p_small: 1.0,
            intensity: ints(10, 80),
            rim_height: ints(1, 40),
            blur_radius: ints(1, 6),
            small: SizeClassRanges {
                core_major: floats(1.0, 3.0),
                core_minor_ratio: floats(0.3, 1.0),
            },
            large: SizeClassRanges {
                core_major: floats(3.0, 16.0),
                core_minor_ratio: floats(0.8, 1.0),
            },
            outer_ratio: floats(1.0, 2.0),
            rim_ratio: floats(0.5, 1.0),
            roughness: 5.0,
            blur_source: BlurSource::Current,
        }
    }

    /// Mixed small and large artifacts.
    pub fn task2() -> Self {
        TaskProfile {
            name: TaskName::Task2,
            p_small: 0.7,
            ..Self::task1()
        }
    }

    pub fn for_task(name: TaskName) -> Self {
        match name {
            TaskName::Task1 => Self::task1(),
            TaskName::Task2 => Self::task2(),
            TaskName::Custom => TaskProfile {
                name: TaskName::Custom,
                ..Self::task2()
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidProfile(msg));
        if self.image_size == 0 {
            return fail("image_size must be >= 1".into());
        }
        for (key, p) in [("p_highland", self.p_highland), ("p_small", self.p_small)] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{key} must lie in [0, 1], got {p}"));
            }
        }
        for (key, r) in [
            ("count", self.count),
            ("intensity", self.intensity),
            ("rim_height", self.rim_height),
            ("blur_radius", self.blur_radius),
        ] {
            if r.min > r.max {
                return fail(format!("{key}_min exceeds {key}_max"));
            }
        }
        if self.intensity.max > 255 || self.rim_height.max > 255 {
            return fail("intensities must lie in 0..=255".into());
        }
        if self.blur_radius.min < 1 || self.blur_radius.max > u32::from(MAX_BLUR_RADIUS) {
            return fail(format!("blur_radius must lie in 1..={MAX_BLUR_RADIUS}"));
        }
        for (key, r) in [
            ("small_core_major", self.small.core_major),
            ("large_core_major", self.large.core_major),
        ] {
            if !(r.min > 0.0 && r.min <= r.max && r.max.is_finite()) {
                return fail(format!("{key} needs 0 < min <= max"));
            }
        }
        for (key, r) in [
            ("small_core_minor_ratio", self.small.core_minor_ratio),
            ("large_core_minor_ratio", self.large.core_minor_ratio),
        ] {
            if !(r.min > 0.0 && r.min <= r.max && r.max <= 1.0) {
                return fail(format!("{key} needs 0 < min <= max <= 1"));
            }
        }
        let o = self.outer_ratio;
        if !(o.min >= 1.0 && o.min <= o.max && o.max > 1.0 && o.max.is_finite()) {
            return fail("outer_ratio needs 1 <= min <= max and max > 1".into());
        }
        let r = self.rim_ratio;
        if !(r.min > 0.0 && r.min <= r.max && r.max <= 1.0 && r.min < 1.0) {
            return fail("rim_ratio needs 0 < min <= max <= 1 and min < 1".into());
        }
        if !(self.roughness.is_finite() && self.roughness >= 0.0) {
            return fail("roughness must be finite and >= 0".into());
        }
        if self.name != TaskName::Custom && *self != Self::for_task(self.name) {
            return fail(format!(
                "profile named {} differs from its defaults; use name = custom",
                self.name.as_str()
            ));
        }
        Ok(())
    }

    /// Parses the `key = value` config format.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, &str, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config {
                    line: line_no,
                    message: "expected `key = value`".into(),
                });
            };
            let key = key.trim();
            if entries.iter().any(|(_, k, _)| *k == key) {
                return Err(Error::Config {
                    line: line_no,
                    message: format!("duplicate key {key:?}"),
                });
            }
            entries.push((line_no, key, value.trim()));
        }

        let name = match entries.iter().find(|(_, k, _)| *k == "name") {
            Some((line, _, v)) => v.parse::<TaskName>().map_err(|e| Error::Config {
                line: *line,
                message: e.to_string(),
            })?,
            None => TaskName::Custom,
        };
        let mut profile = Self::for_task(name);
        for (line, key, value) in entries {
            profile
                .set(key, value)
                .map_err(|message| Error::Config { line, message })?;
        }
        profile.validate()?;
        Ok(profile)
    }

    fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        fn num<T: FromStr>(key: &str, v: &str) -> std::result::Result<T, String> {
            v.parse()
                .map_err(|_| format!("invalid value {v:?} for {key}"))
        }
        fn float(key: &str, v: &str) -> std::result::Result<f64, String> {
            let x: f64 = num(key, v)?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("{key} must be finite"))
            }
        }
        match key {
            "name" => {}
            "image_size" => self.image_size = num(key, value)?,
            "count_min" => self.count.min = num(key, value)?,
            "count_max" => self.count.max = num(key, value)?,
            "p_highland" => self.p_highland = float(key, value)?,
            "p_small" => self.p_small = float(key, value)?,
            "intensity_min" => self.intensity.min = num(key, value)?,
            "intensity_max" => self.intensity.max = num(key, value)?,
            "rim_height_min" => self.rim_height.min = num(key, value)?,
            "rim_height_max" => self.rim_height.max = num(key, value)?,
            "blur_radius_min" => self.blur_radius.min = num(key, value)?,
            "blur_radius_max" => self.blur_radius.max = num(key, value)?,
            "small_core_major_min" => self.small.core_major.min = float(key, value)?,
            "small_core_major_max" => self.small.core_major.max = float(key, value)?,
            "small_core_minor_ratio_min" => self.small.core_minor_ratio.min = float(key, value)?,
            "small_core_minor_ratio_max" => self.small.core_minor_ratio.max = float(key, value)?,
            "large_core_major_min" => self.large.core_major.min = float(key, value)?,
            "large_core_major_max" => self.large.core_major.max = float(key, value)?,
            "large_core_minor_ratio_min" => self.large.core_minor_ratio.min = float(key, value)?,
            "large_core_minor_ratio_max" => self.large.core_minor_ratio.max = float(key, value)?,
            "outer_ratio_min" => self.outer_ratio.min = float(key, value)?,
            "outer_ratio_max" => self.outer_ratio.max = float(key, value)?,
            "rim_ratio_min" => self.rim_ratio.min = float(key, value)?,
            "rim_ratio_max" => self.rim_ratio.max = float(key, value)?,
            "roughness" => self.roughness = float(key, value)?,
            "blur_source" => {
                self.blur_source = match value {
                    "current" => BlurSource::Current,
                    "pristine" => BlurSource::Pristine,
                    _ => return Err(format!("invalid value {value:?} for blur_source")),
                }
            }
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Renders the profile in the config format; parsing the result gives
    /// back an equal profile.
    pub fn to_config_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TaskProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name = {}", self.name.as_str())?;
        writeln!(f, "image_size = {}", self.image_size)?;
        writeln!(f, "count_min = {}", self.count.min)?;
        writeln!(f, "count_max = {}", self.count.max)?;
        writeln!(f, "p_highland = {}", self.p_highland)?;
        writeln!(f, "p_small = {}", self.p_small)?;
        writeln!(f, "intensity_min = {}", self.intensity.min)?;
        writeln!(f, "intensity_max = {}", self.intensity.max)?;
        writeln!(f, "rim_height_min = {}", self.rim_height.min)?;
        writeln!(f, "rim_height_max = {}", self.rim_height.max)?;
        writeln!(f, "blur_radius_min = {}", self.blur_radius.min)?;
        writeln!(f, "blur_radius_max = {}", self.blur_radius.max)?;
        for (prefix, class) in [("small", &self.small), ("large", &self.large)] {
            writeln!(f, "{prefix}_core_major_min = {}", class.core_major.min)?;
            writeln!(f, "{prefix}_core_major_max = {}", class.core_major.max)?;
            writeln!(
                f,
                "{prefix}_core_minor_ratio_min = {}",
                class.core_minor_ratio.min
            )?;
            writeln!(
                f,
                "{prefix}_core_minor_ratio_max = {}",
                class.core_minor_ratio.max
            )?;
        }
        writeln!(f, "outer_ratio_min = {}", self.outer_ratio.min)?;
        writeln!(f, "outer_ratio_max = {}", self.outer_ratio.max)?;
        writeln!(f, "rim_ratio_min = {}", self.rim_ratio.min)?;
        writeln!(f, "rim_ratio_max = {}", self.rim_ratio.max)?;
        writeln!(f, "roughness = {}", self.roughness)?;
        writeln!(f, "blur_source = {}", self.blur_source.as_str())
    }
}
