//! Job runner: build a space of rational PH curves from a job file, solve
//! the interpolation problem and write a report, samples and a plot.

pub mod builtin;
pub mod config;
pub mod number;
pub mod output;
pub mod pipeline;

use std::path::{Path, PathBuf};

pub use builtin::{builtin, BUILTINS};
pub use config::JobConfig;
pub use pipeline::{run_job, sample_curve, JobError, JobReport, JobRun, Sample, Stage};

use crate::number::Literal;
use crate::output::PlotLayer;
use crate::pipeline::ErrorKind;

/// Command-line adjustments applied on top of a job file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub quadrature_tol: Option<f64>,
    pub bernstein_degree: Option<usize>,
    pub relax_cusp: Option<f64>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut JobConfig) {
        if let Some(t) = self.quadrature_tol {
            cfg.numerics.quadrature_tol = t;
        }
        if let Some(m) = self.bernstein_degree {
            cfg.cusp.degree = Some(m);
            cfg.cusp.elevation = 0;
        }
        if let Some(b) = self.relax_cusp {
            cfg.cusp.bound = Literal::Float(b);
        }
    }
}

/// A job file path, or the name of a built-in job.
pub fn load_job(spec: &str) -> Result<JobConfig, JobError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| JobError::config(format!("{spec}: {e}")))?;
        JobConfig::from_toml(&text).map_err(|e| JobError::config(format!("{spec}: {e}")))
    } else {
        builtin(spec).map_err(JobError::config)
    }
}

fn output_error(e: impl std::fmt::Display) -> JobError {
    JobError { stage: Stage::Output, kind: ErrorKind::Io(e.to_string()) }
}

/// Files a job writes: configured paths, or `<out>/<name>.{json,csv,svg}`
/// when an output directory is given. Configured relative paths resolve
/// against `out` when present.
pub fn output_paths(cfg: &JobConfig, out: Option<&Path>) -> [Option<PathBuf>; 3] {
    let pick = |configured: &Option<String>, ext: &str| match (configured, out) {
        (Some(p), Some(dir)) => Some(dir.join(p)),
        (Some(p), None) => Some(PathBuf::from(p)),
        (None, Some(dir)) => Some(dir.join(format!("{}.{ext}", cfg.name))),
        (None, None) => None,
    };
    [pick(&cfg.output.report, "json"), pick(&cfg.output.samples, "csv"), pick(&cfg.output.plot, "svg")]
}

/// Runs a job and writes its outputs.
pub fn run_and_write(cfg: &JobConfig, out: Option<&Path>) -> Result<JobRun, JobError> {
    let run = run_job(cfg)?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(output_error)?;
    }
    let [report, samples, plot] = output_paths(cfg, out);
    if let Some(p) = report {
        output::write_report(&p, &run.report).map_err(output_error)?;
    }
    if let Some(p) = samples {
        output::write_samples(&p, &run.samples).map_err(output_error)?;
    }
    if let Some(p) = plot {
        let layer = PlotLayer { label: &cfg.name, samples: &run.samples, arrows: &run.arrows };
        output::emit_plot(&p, &[layer]).map_err(output_error)?;
    }
    Ok(run)
}

pub type BatchResults = Vec<(PathBuf, Result<JobRun, JobError>)>;

/// Every `*.toml` job in `dir`, sorted by file name, run in parallel.
pub fn run_batch(dir: &Path, overrides: &Overrides, out: Option<&Path>) -> Result<BatchResults, JobError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| JobError::config(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(files.len().max(1));
    let mut results: Vec<Option<Result<JobRun, JobError>>> = vec![None; files.len()];
    std::thread::scope(|scope| {
        let chunk = files.len().div_ceil(workers).max(1);
        for (paths, slots) in files.chunks(chunk).zip(results.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (path, slot) in paths.iter().zip(slots) {
                    let job = load_job(&path.to_string_lossy()).and_then(|mut cfg| {
                        overrides.apply(&mut cfg);
                        run_and_write(&cfg, out)
                    });
                    *slot = Some(job);
                }
            });
        }
    });
    Ok(files.into_iter().zip(results.into_iter().map(|r| r.expect("every job ran"))).collect())
}
