//! `msb`: marine-snow dataset generation, baseline removal and scoring.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use marine_snow::benchmark::run_benchmark;
use marine_snow::dataset::generate_dataset;
use marine_snow::metrics::evaluate_directory;
use marine_snow::profile::{TaskName, TaskProfile};
use marine_snow::raster::{list_images, probe_image};
use marine_snow::restore::{Method, DEFAULT_THRESHOLD};
use marine_snow::synthesis::synthesize_pair;
use marine_snow::{RasterImage, StreamKey};

/// Environment variable capping the worker thread count.
const THREADS_ENV: &str = "MSB_THREADS";

#[derive(Parser)]
#[command(
    name = "msb",
    version,
    about = "Marine-snow synthesis and removal benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate paired (clean, degraded) images with a replay manifest.
    Gen(GenArgs),
    /// Add synthesized marine snow to one image, keeping its size.
    Degrade(DegradeArgs),
    /// Apply a removal baseline to every image in a directory.
    Restore(RestoreArgs),
    /// Score restored images against identically named ground truth.
    Eval(EvalArgs),
    /// Synthesize task 1 and task 2 test sets and score every baseline.
    Bench(BenchArgs),
}

#[derive(Args)]
struct TaskArgs {
    /// Task profile: 1, 2 or custom.
    #[arg(long, value_parser = parse_task)]
    task: TaskName,
    /// Profile config file; required with `--task custom`.
    #[arg(long, value_name = "FILE")]
    profile: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Directory of clean source images (PNG or JPEG).
    #[arg(long, value_name = "DIR")]
    src: PathBuf,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[command(flatten)]
    task: TaskArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pairs: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct DegradeArgs {
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output PNG.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[command(flatten)]
    task: TaskArgs,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct RestoreArgs {
    #[arg(long = "in", value_name = "DIR")]
    input: PathBuf,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// mf3, mf5, amf3 or amf5.
    #[arg(long, value_parser = parse_baseline)]
    method: Method,
    /// Margin above the local median before the adaptive filters replace a
    /// sample.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = parse_threshold)]
    threshold: f64,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_name = "DIR")]
    restored: PathBuf,
    #[arg(long, value_name = "DIR")]
    gt: PathBuf,
    /// Report file.
    #[arg(long, value_name = "FILE")]
    json: PathBuf,
    /// Label stored in the report.
    #[arg(long, default_value = "restored")]
    label: String,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of clean source images, cycled when fewer than `--pairs`.
    #[arg(long, value_name = "DIR")]
    src: PathBuf,
    #[arg(long)]
    seed: u64,
    /// Pairs per task.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pairs: u64,
    /// Report file.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = parse_threshold)]
    threshold: f64,
}

fn parse_task(s: &str) -> Result<TaskName, String> {
    s.parse().map_err(|e: marine_snow::Error| e.to_string())
}

fn parse_baseline(s: &str) -> Result<Method, String> {
    match s.parse::<Method>() {
        Ok(Method::Identity) | Err(_) => Err(format!(
            "unknown method {s:?} (expected mf3, mf5, amf3, amf5)"
        )),
        Ok(m) => Ok(m),
    }
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t >= 0.0 => Ok(t),
        _ => Err(format!("threshold must be a number >= 0, got {s:?}")),
    }
}

impl TaskArgs {
    fn resolve(&self) -> Result<TaskProfile> {
        match (self.task, &self.profile) {
            (TaskName::Custom, None) => bail!("--task custom requires --profile FILE"),
            (TaskName::Custom, Some(path)) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read {}", path.display()))?;
                let profile = TaskProfile::from_config_str(&text)
                    .with_context(|| format!("invalid profile {}", path.display()))?;
                ensure!(
                    profile.name == TaskName::Custom,
                    "{}: profile name must be custom, got {}",
                    path.display(),
                    profile.name.as_str()
                );
                Ok(profile)
            }
            (task, Some(_)) => bail!(
                "--profile is only accepted with --task custom (task {} is fixed)",
                task.as_str()
            ),
            (task, None) => Ok(TaskProfile::for_task(task)),
        }
    }
}

fn source_images(dir: &Path) -> Result<Vec<PathBuf>> {
    let sources = list_images(dir)?;
    ensure!(
        !sources.is_empty(),
        "no PNG or JPEG images in {}",
        dir.display()
    );
    Ok(sources)
}

fn write_report(path: &Path, json: &str) -> Result<()> {
    fs::write(path, json).with_context(|| format!("cannot write {}", path.display()))
}

fn gen(args: GenArgs) -> Result<()> {
    let profile = args.task.resolve()?;
    let sources = source_images(&args.src)?;
    let manifest = generate_dataset(
        &sources,
        &profile,
        args.seed,
        args.pairs as usize,
        &args.out,
    )?;
    eprintln!(
        "wrote {} pairs to {} ({} artifacts)",
        manifest.pairs.len(),
        args.out.display(),
        manifest
            .pairs
            .iter()
            .map(|p| p.artifact_count)
            .sum::<usize>()
    );
    Ok(())
}

fn degrade(args: DegradeArgs) -> Result<()> {
    let profile = args.task.resolve()?;
    let clean = RasterImage::load(&args.input)?;
    let (degraded, plans) = synthesize_pair(&clean, &profile, StreamKey::new(args.seed))?;
    degraded.save_png(&args.out)?;
    eprintln!("wrote {} ({} artifacts)", args.out.display(), plans.len());
    Ok(())
}

fn restore(args: RestoreArgs) -> Result<()> {
    let inputs = source_images(&args.input)?;
    let mut names = BTreeSet::new();
    let mut jobs = Vec::with_capacity(inputs.len());
    for path in inputs {
        let stem = path.file_stem().unwrap_or_default().to_string_lossy();
        let name = format!("{stem}.png");
        ensure!(
            names.insert(name.clone()),
            "two inputs would both be written as {name}"
        );
        jobs.push((path, name));
    }
    jobs.par_iter()
        .try_for_each(|(path, _)| probe_image(path).map(drop))?;
    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    jobs.par_iter().try_for_each(|(path, name)| -> Result<()> {
        let restored = args
            .method
            .apply(&RasterImage::load(path)?, args.threshold)?;
        restored.save_png(&args.out.join(name))?;
        Ok(())
    })?;
    eprintln!(
        "{}: restored {} images into {}",
        args.method.label(),
        jobs.len(),
        args.out.display()
    );
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let report = evaluate_directory(&args.label, &args.restored, &args.gt)?;
    write_report(&args.json, &report.to_json()?)?;
    println!("{report}");
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let paths = source_images(&args.src)?;
    let size = TaskProfile::task1().image_size;
    let sources = paths
        .par_iter()
        .map(|p| RasterImage::load(p).and_then(|img| img.square_resized(size)))
        .collect::<marine_snow::Result<Vec<_>>>()?;
    let report = run_benchmark(&sources, args.seed, args.pairs as usize, args.threshold)?;
    write_report(&args.out, &report.to_json()?)?;
    println!("{report}");
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Some(raw) = std::env::var_os(THREADS_ENV) else {
        return Ok(());
    };
    let threads = raw
        .to_str()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .with_context(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("cannot start worker threads")
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Degrade(args) => degrade(args),
        Command::Restore(args) => restore(args),
        Command::Eval(args) => eval(args),
        Command::Bench(args) => bench(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("msb: error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
