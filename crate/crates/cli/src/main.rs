use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use phspace_cli::pipeline::{EXIT_CONFIG, EXIT_OK};
use phspace_cli::{load_job, run_and_write, run_batch, JobRun, Overrides, BUILTINS};

#[derive(Parser)]
#[command(name = "phspace", version, about = "Optimal Hermite interpolation by rational PH curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one job: a TOML file or a built-in name such as `c1_quintic_table1:10`.
    Run {
        job: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run every `*.toml` job in a directory.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// List the built-in jobs.
    ListBuiltin,
    /// Print a built-in job as TOML.
    ShowBuiltin { name: String },
}

#[derive(Args)]
struct Common {
    /// Quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Bernstein degree of the cusp rows (replaces degree and elevation).
    #[arg(long)]
    bernstein_degree: Option<usize>,
    /// Right-hand side of the cusp rows; negative values relax them.
    #[arg(long, allow_hyphen_values = true)]
    relax_cusp: Option<f64>,
    /// Seed for randomized checks; built-in and file jobs are deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for `<name>.json`, `<name>.csv` and `<name>.svg`.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides { quadrature_tol: self.tol, bernstein_degree: self.bernstein_degree, relax_cusp: self.relax_cusp }
    }
}

fn summary(run: &JobRun) -> String {
    let r = &run.report;
    let length = r.arc_length.map_or(String::new(), |l| format!(" length {l:.6}"));
    format!("{}: {} dim {} degree {} energy {:.6}{length} objective {:.6}", r.name, r.status, r.dim, r.curve_degree, r.energy, r.objective_value)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::ListBuiltin => {
            for b in BUILTINS {
                match b.parameter {
                    Some(p) => println!("{:<22} {} [{p}]", b.name, b.summary),
                    None => println!("{:<22} {}", b.name, b.summary),
                }
            }
            EXIT_OK
        }
        Command::ShowBuiltin { name } => match phspace_cli::builtin(&name) {
            Ok(cfg) => {
                print!("{}", cfg.to_toml());
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_CONFIG
            }
        },
        Command::Run { job, common } => {
            let _ = common.seed;
            match load_job(&job).and_then(|mut cfg| {
                common.overrides().apply(&mut cfg);
                run_and_write(&cfg, common.out.as_deref())
            }) {
                Ok(run) => {
                    println!("{}", summary(&run));
                    for w in &run.report.warnings {
                        eprintln!("warning: {w}");
                    }
                    run.exit_code()
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Batch { dir, common } => match run_batch(&dir, &common.overrides(), common.out.as_deref()) {
            Ok(results) => {
                let mut worst = EXIT_OK;
                for (path, res) in results {
                    let code = match res {
                        Ok(run) => {
                            println!("{}", summary(&run));
                            run.exit_code()
                        }
                        Err(e) => {
                            eprintln!("{}: error: {e}", path.display());
                            e.exit_code()
                        }
                    };
                    worst = worst.max(code);
                }
                worst
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
    };
    ExitCode::from(code as u8)
}
