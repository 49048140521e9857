//! `projlab`: run the projection-inequality experiments and emit result
//! tables as CSV or JSON. Exit code 0 means every assertion passed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use projbody::experiments::{
    exp_example_cap, exp_lemma_suite, exp_orlicz_ratio, exp_petty, exp_stability_sign,
    exp_steiner_monotone, rows_to_csv, rows_to_json, sort_rows, ExperimentConfig, ExperimentError,
    ResultRow,
};
use projbody::orlicz::PhiSpec;

#[derive(Parser)]
#[command(
    name = "projlab",
    about = "Numerical experiments on projection bodies: the Petty and Orlicz-Petty \
             projection inequalities, symmetrization monotonicity, and stability trends",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON experiment configuration; flags below override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Ambient dimension (2 or 3).
    #[arg(long, global = true)]
    dim: Option<usize>,

    /// Orlicz function as inline JSON (e.g. '{"kind":"power","p":2}') or a
    /// path to a JSON file.
    #[arg(long, global = true)]
    phi: Option<String>,

    /// Spherical quadrature resolution.
    #[arg(long, global = true)]
    grid: Option<usize>,

    /// Seed for the randomized corpora.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Override a named tolerance, e.g. --tol quad_rel=5e-4 (repeatable).
    #[arg(long = "tol", global = true, value_parser = parse_tol)]
    tolerances: Vec<(String, f64)>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Petty products over the corpus against the sharp bound.
    Petty,
    /// Orlicz-Petty volume ratios against the ball.
    OrliczRatio,
    /// Steiner monotonicity of the polar projection body (2D corpus).
    SteinerMonotone,
    /// Cap-body deficit scaling and the distance lower bound.
    ExampleCap,
    /// Sign and trend of the stability deficit.
    StabilitySign,
    /// Randomized scalar deficit-bound suites.
    LemmaSuite,
    /// Every experiment in sequence.
    All,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got '{s}'"))?;
    let v: f64 = value.parse().map_err(|e| format!("bad tolerance value '{value}': {e}"))?;
    if v <= 0.0 {
        return Err("tolerances must be positive".into());
    }
    Ok((name.to_string(), v))
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            let cfg: ExperimentConfig =
                serde_json::from_str(&text).map_err(|e| format!("bad config: {e}"))?;
            if let Some(dim) = cli.dim {
                if dim != cfg.dim {
                    return Err(format!(
                        "--dim {dim} contradicts the config's dimension {}",
                        cfg.dim
                    ));
                }
            }
            cfg
        }
        None => {
            // Fresh default: the seed shapes the generated corpus.
            ExperimentConfig::for_dim(cli.dim.unwrap_or(2), cli.seed.unwrap_or(0))
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(grid) = cli.grid {
        cfg.grid_resolution = grid;
    }
    if let Some(phi) = &cli.phi {
        let text = if phi.trim_start().starts_with('{') {
            phi.clone()
        } else {
            fs::read_to_string(phi).map_err(|e| format!("cannot read phi spec {phi}: {e}"))?
        };
        cfg.phi = serde_json::from_str::<PhiSpec>(&text)
            .map_err(|e| format!("bad phi spec: {e}"))?;
    }
    for (name, value) in &cli.tolerances {
        cfg.tolerances.insert(name.clone(), *value);
    }
    if let Some(out) = &cli.out {
        cfg.output_path = Some(out.display().to_string());
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Vec<ResultRow>, String> {
    let cfg = load_config(cli)?;
    let go = |r: Result<Vec<ResultRow>, ExperimentError>| r.map_err(|e| e.to_string());
    let mut rows = match cli.command {
        Command::Petty => go(exp_petty(&cfg))?,
        Command::OrliczRatio => go(exp_orlicz_ratio(&cfg))?,
        Command::SteinerMonotone => go(exp_steiner_monotone(&cfg))?,
        Command::ExampleCap => go(exp_example_cap(&cfg))?,
        Command::StabilitySign => go(exp_stability_sign(&cfg))?,
        Command::LemmaSuite => go(exp_lemma_suite(&cfg))?,
        Command::All => go(projbody::experiments::run_all(&cfg))?,
    };
    sort_rows(&mut rows);
    let text = match cli.format {
        Format::Csv => rows_to_csv(&rows),
        Format::Json => rows_to_json(&rows),
    };
    match &cfg.output_path {
        Some(path) => fs::write(path, &text).map_err(|e| format!("cannot write {path}: {e}"))?,
        None => print!("{text}"),
    }
    Ok(rows)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rows) => {
            let failures: Vec<&ResultRow> = rows.iter().filter(|r| !r.passed).collect();
            if failures.is_empty() {
                eprintln!("ok: {} assertions passed", rows.len());
                ExitCode::SUCCESS
            } else {
                eprintln!("FAILED: {} of {} assertions", failures.len(), rows.len());
                for f in failures {
                    eprintln!(
                        "  {} / {}: value {} vs reference {} (tolerance {})",
                        f.experiment, f.body, f.value, f.reference, f.tolerance
                    );
                }
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
