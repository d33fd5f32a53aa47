//! One-shot benchmark: synthesize a test corpus per task, run every
//! baseline on it and score against the clean images.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{score_pair, EvalReport, ImageScore};
use crate::profile::{TaskName, TaskProfile};
use crate::raster::RasterImage;
use crate::restore::Method;
use crate::rng::StreamKey;
use crate::synthesis::synthesize_pair;

/// Row order of the report.
pub const METHOD_ORDER: [Method; 5] = [
    Method::Mf3,
    Method::Mf5,
    Method::Amf3,
    Method::Amf5,
    Method::Identity,
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskResult {
    pub task: TaskName,
    pub methods: Vec<EvalReport>,
}

impl TaskResult {
    pub fn method(&self, method: Method) -> Option<&EvalReport> {
        self.methods.iter().find(|r| r.method == method.label())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub master_seed: u64,
    pub pairs_per_task: usize,
    pub threshold: f64,
    pub tasks: Vec<TaskResult>,
}

impl BenchReport {
    pub fn task(&self, task: TaskName) -> Option<&TaskResult> {
        self.tasks.iter().find(|t| t.task == task)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<20}", "Method")?;
        for t in &self.tasks {
            write!(f, " | {:^17}", t.task.as_str())?;
        }
        writeln!(f)?;
        write!(f, "{:<20}", "")?;
        for _ in &self.tasks {
            write!(f, " | {:>8} {:>8}", "PSNR", "SSIM")?;
        }
        writeln!(f)?;
        for method in METHOD_ORDER {
            write!(f, "{:<20}", method.label())?;
            for t in &self.tasks {
                match t.method(method) {
                    Some(r) => write!(f, " | {:>8.2} {:>8.3}", r.psnr.mean, r.ssim.mean)?,
                    None => write!(f, " | {:>8} {:>8}", "-", "-")?,
                }
            }
            writeln!(f)?;
        }
        write!(
            f,
            "({} pairs per task, seed {}, threshold {})",
            self.pairs_per_task, self.master_seed, self.threshold
        )
    }
}

/// Key of benchmark pair `index` for `task`.
pub fn bench_pair_key(master_seed: u64, task: TaskName, index: usize) -> StreamKey {
    let task_index = match task {
        TaskName::Task1 => 1,
        TaskName::Task2 => 2,
        TaskName::Custom => 3,
    };
    StreamKey::new(master_seed)
        .child(task_index)
        .child(index as u64)
}

/// Benchmarks one profile. `sources` must already have the profile's size;
/// they are cycled when fewer than `pairs`.
pub fn bench_task(
    sources: &[RasterImage],
    profile: &TaskProfile,
    master_seed: u64,
    pairs: usize,
    threshold: f64,
) -> Result<TaskResult> {
    if sources.is_empty() || pairs == 0 {
        return Err(Error::InvalidParameter(
            "benchmark needs at least one source and one pair".into(),
        ));
    }
    let per_pair: Vec<Vec<ImageScore>> = (0..pairs)
        .into_par_iter()
        .map(|index| {
            let clean = &sources[index % sources.len()];
            let key = bench_pair_key(master_seed, profile.name, index);
            let (degraded, _) = synthesize_pair(clean, profile, key)?;
            let id = format!("{index:05}");
            METHOD_ORDER
                .iter()
                .map(|m| score_pair(id.clone(), &m.apply(&degraded, threshold)?, clean))
                .collect()
        })
        .collect::<Result<_>>()?;
    let methods = METHOD_ORDER
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let scores = per_pair.iter().map(|row| row[k].clone()).collect();
            EvalReport::from_scores(m.label(), scores)
        })
        .collect();
    Ok(TaskResult {
        task: profile.name,
        methods,
    })
}

/// Runs task 1 and task 2 on the same sources.
pub fn run_benchmark(
    sources: &[RasterImage],
    master_seed: u64,
    pairs: usize,
    threshold: f64,
) -> Result<BenchReport> {
    let tasks = [TaskProfile::task1(), TaskProfile::task2()]
        .iter()
        .map(|p| bench_task(sources, p, master_seed, pairs, threshold))
        .collect::<Result<_>>()?;
    Ok(BenchReport {
        master_seed,
        pairs_per_task: pairs,
        threshold,
        tasks,
    })
}
