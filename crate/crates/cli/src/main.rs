//! `boundary-maps`: sample quadrangulations with a boundary, run the
//! invariant suites and statistical experiments, and generate continuum
//! objects on grids. Every run writes `<out>/<name>/<timestamp>/` with a
//! manifest, a data file and a `samples/` directory.
//!
//! Exit codes: 0 success, 1 an invariant was violated, 2 usage or input error.

mod experiment;
mod output;
mod verify;

use anyhow::{bail, Context, Result};
use boundary_maps::bdg::sample_quadrangulation;
use boundary_maps::continuum::{default_glue_eps, grid_metric_d, sample_bd, sample_bhp, sample_bp, sample_ibd, ContinuumSample};
use boundary_maps::encoding::EncodedTriplet;
use boundary_maps::metrics::diameter;
use boundary_maps::RngConfig;
use clap::{Parser, Subcommand, ValueEnum};
use output::{git_describe, now, write_csv, write_json, Format, Manifest, RunDir};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const THREADS_ENV: &str = "BOUNDARY_MAPS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "boundary-maps", version, about = "Random quadrangulations with a boundary and their continuum limits")]
struct Cli {
    /// Seed of all random streams.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads; falls back to BOUNDARY_MAPS_THREADS, then to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Root of the output tree.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Format of the main data file.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a uniform pointed quadrangulation with n inner faces and perimeter 2·sigma.
    SampleQuad {
        /// Number of inner faces.
        #[arg(long)]
        n: usize,
        /// Half-perimeter of the boundary face.
        #[arg(long)]
        sigma: usize,
    },
    /// Run the invariant suites; exits with 1 if any check fails.
    Verify {
        /// `fast` runs in seconds; `full` uses the acceptance sizes.
        #[arg(long, value_enum, default_value_t = verify::Level::Fast)]
        level: verify::Level,
    },
    /// Run the experiment described by a JSON spec file.
    Experiment {
        /// JSON spec file, for example one from `specs/`.
        spec: PathBuf,
    },
    /// Sample a continuum object on a grid.
    Continuum {
        #[arg(value_enum)]
        object: Object,
        /// Grid points (per side for the two-sided objects).
        #[arg(long, default_value_t = 500)]
        m: usize,
        /// Duration of the Brownian disk.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Perimeter of the Brownian disk and of the infinite-volume disk.
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Skewness of the half-plane.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        /// Time horizon of the non-compact objects.
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
        /// Also compute the glued pseudo-metric on the grid.
        #[arg(long)]
        metric: bool,
        /// Gluing tolerance of the metric; defaults to the lattice value.
        #[arg(long)]
        eps: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Object {
    Bp,
    Bd,
    Bhp,
    Ibd,
}

/// Input problems reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Serialize)]
struct GridRow {
    index: usize,
    time: f64,
    contour: f64,
    floor: f64,
    snake: f64,
    label: f64,
}

fn threads(cli: &Cli) -> Result<usize> {
    let n = match cli.threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.parse().map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?),
            Err(_) => None,
        },
    };
    match n {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(n) => {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
            Ok(n)
        }
        None => Ok(rayon::current_num_threads()),
    }
}

fn manifest<'a, P: Serialize>(cli: &Cli, command: &'a str, threads: usize, parameters: P) -> Manifest<'a, P> {
    Manifest {
        command,
        seed: cli.seed,
        threads,
        format: cli.format,
        git_describe: git_describe(),
        version: env!("CARGO_PKG_VERSION"),
        created: now(),
        parameters,
    }
}

fn out_root(cli: &Cli) -> PathBuf {
    cli.out.clone().unwrap_or_else(|| PathBuf::from("out"))
}

fn sample_quad(cli: &Cli, threads: usize, n: usize, sigma: usize) -> Result<bool> {
    if n == 0 || sigma == 0 {
        return Err(usage("n and sigma must be at least 1"));
    }
    let mut rng = RngConfig::new(cli.seed).rng();
    let (q, cp, b) = sample_quadrangulation(n, sigma, &mut rng)?;
    let dir = RunDir::create(&out_root(cli), "sample-quad")?;
    #[derive(Serialize)]
    struct Params {
        n: usize,
        sigma: usize,
    }
    dir.write_manifest(&manifest(cli, "sample-quad", threads, Params { n, sigma }))?;
    let json = q.to_json();
    match cli.format {
        Format::Json => write_json(&dir.file("data.json"), &json)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct EdgeRow {
                tail: u32,
                head: u32,
                root: bool,
            }
            let root = json.root;
            let rows: Vec<EdgeRow> = json
                .edges
                .iter()
                .map(|&[u, v]| EdgeRow { tail: u, head: v, root: root == Some([u, v]) || root == Some([v, u]) })
                .collect();
            write_csv(&dir.file("data.csv"), &rows)?;
        }
    }
    let f = boundary_maps::encoding::forest_of_contour(&cp);
    write_json(&dir.sample("encoding.json"), &EncodedTriplet::new(&f, &b)?)?;
    println!("{}", serde_json::to_string(&json)?);
    eprintln!(
        "{} vertices, {} edges, diameter {}; written to {}",
        q.num_vertices(),
        q.map.num_edges(),
        diameter(&q.map),
        dir.path.display()
    );
    Ok(true)
}

fn run_verify(cli: &Cli, threads: usize, level: verify::Level) -> Result<bool> {
    let results = verify::run(level, cli.seed);
    let dir = RunDir::create(&out_root(cli), "verify")?;
    #[derive(Serialize)]
    struct Params {
        level: verify::Level,
    }
    dir.write_manifest(&manifest(cli, "verify", threads, Params { level }))?;
    match cli.format {
        Format::Json => write_json(&dir.file("data.json"), &results)?,
        Format::Csv => write_csv(&dir.file("data.csv"), &results)?,
    }
    let mut ok = true;
    for r in &results {
        println!("{:<40} {:>10} checked {:>6} violations", r.check, r.checked, r.violations);
        ok &= r.violations == 0;
    }
    Ok(ok)
}

fn run_experiment(cli: &Cli, threads: usize, path: &Path) -> Result<bool> {
    if !path.exists() {
        return Err(usage(format!("spec file {} does not exist", path.display())));
    }
    let file = experiment::SpecFile::load(path).map_err(|e| usage(format!("{e:#}")))?;
    let records = experiment::run(&file).map_err(|e| match e.downcast_ref::<boundary_maps::Error>() {
        Some(boundary_maps::Error::InvalidParameter(m)) => usage(m.clone()),
        _ => e,
    })?;
    let root = cli.out.clone().or_else(|| file.spec.out.clone()).unwrap_or_else(|| PathBuf::from("out"));
    let dir = RunDir::create(&root, &file.spec.name)?;
    dir.write_manifest(&manifest(cli, "experiment", threads, &file))?;
    match cli.format {
        Format::Json => write_json(&dir.file("data.json"), &records)?,
        Format::Csv => write_csv(&dir.file("data.csv"), &records)?,
    }
    for r in records.iter().filter(|r| r.replicate.is_none()) {
        println!("{} n={} sigma={} {} = {}", r.name, r.n, r.sigma, r.statistic, r.value);
    }
    eprintln!("{} records written to {}", records.len(), dir.path.display());
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn run_continuum(
    cli: &Cli,
    threads: usize,
    object: Object,
    m: usize,
    t: f64,
    sigma: f64,
    theta: f64,
    horizon: f64,
    metric: bool,
    eps: Option<f64>,
) -> Result<bool> {
    if m < 2 {
        return Err(usage("--m must be at least 2"));
    }
    if theta < 0.0 || !theta.is_finite() {
        return Err(usage("--theta must be a nonnegative number"));
    }
    for (name, v) in [("--t", t), ("--sigma", sigma), ("--horizon", horizon)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(usage(format!("{name} must be positive")));
        }
    }
    let mut rng = RngConfig::new(cli.seed).rng();
    let sample: ContinuumSample = match object {
        Object::Bp => sample_bp(horizon, m, &mut rng),
        Object::Bd => sample_bd(t, sigma, m, &mut rng),
        Object::Bhp => sample_bhp(theta, horizon, m, &mut rng),
        Object::Ibd => sample_ibd(sigma, horizon, m, &mut rng),
    }
    .map_err(|e| usage(e.to_string()))?;
    let name = format!("continuum-{}", serde_json::to_value(object)?.as_str().unwrap_or("object"));
    let dir = RunDir::create(&out_root(cli), &name)?;
    #[derive(Serialize)]
    struct Params {
        object: Object,
        m: usize,
        t: f64,
        sigma: f64,
        theta: f64,
        horizon: f64,
        metric: bool,
        eps: Option<f64>,
    }
    dir.write_manifest(&manifest(cli, "continuum", threads, Params { object, m, t, sigma, theta, horizon, metric, eps }))?;
    let c = &sample.contour;
    let rows: Vec<GridRow> = (0..c.x.len())
        .map(|i| GridRow {
            index: i,
            time: c.x.time(i),
            contour: c.x.values[i],
            floor: c.floor.values[i],
            snake: sample.snake.values[i],
            label: sample.labels.values[i],
        })
        .collect();
    match cli.format {
        Format::Json => write_json(&dir.file("data.json"), &sample)?,
        Format::Csv => write_csv(&dir.file("data.csv"), &rows)?,
    }
    if metric {
        if c.x.len() > 4000 {
            bail!(usage("the full metric is limited to 4000 grid points"));
        }
        let eps = eps.unwrap_or_else(|| default_glue_eps(&c.x));
        let d = grid_metric_d(&c.x, &sample.labels, eps)?;
        d.check_pseudometric(1e-9).context("grid metric")?;
        match cli.format {
            Format::Json => write_json(&dir.sample("metric.json"), &d)?,
            Format::Csv => {
                let mut w = csv::Writer::from_path(dir.sample("metric.csv"))?;
                for i in 0..c.x.len() {
                    w.write_record(d.row(i).iter().map(|v| v.to_string()))?;
                }
                w.flush()?;
            }
        }
    }
    eprintln!("{} grid points written to {}", rows.len(), dir.path.display());
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    let threads = threads(cli)?;
    match &cli.command {
        Command::SampleQuad { n, sigma } => sample_quad(cli, threads, *n, *sigma),
        Command::Verify { level } => run_verify(cli, threads, *level),
        Command::Experiment { spec } => run_experiment(cli, threads, spec),
        Command::Continuum { object, m, t, sigma, theta, horizon, metric, eps } => {
            run_continuum(cli, threads, *object, *m, *t, *sigma, *theta, *horizon, *metric, *eps)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
