use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use regen_core::harness::{
    adversary_report, run_adversary, run_oracle, run_random_sweep, run_replay, sweep_instance, Algorithm, Construction,
    ExperimentConfig, Family, Mode, OutputFormat,
};
use regen_core::pmax::PmaxVariant;
use regen_core::{Error, Instance};
use serde_json::json;

/// Online regenerator placement: replay, sweep, adversaries and oracles.
#[derive(Parser)]
#[command(name = "regen", version)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report format.
    #[arg(long, global = true, default_value = "json")]
    format: OutputFormat,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Path-maximization variant: sweep or two-start.
    #[arg(long, global = true, default_value = "sweep")]
    pmax_variant: PmaxVariant,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay an instance file against an online algorithm.
    Run {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "grid")]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Generate random instances and compare an algorithm to the oracle.
    Sweep {
        #[arg(long, default_value = "grid")]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Record wall time per row (reports are no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Run a lower-bound construction against an algorithm.
    Adversary {
        #[arg(long)]
        construction: Construction,
        /// d, l or n depending on the construction; number of sets for setcover-fig1.
        #[arg(long)]
        param: usize,
        #[arg(long, default_value = "grid")]
        algorithm: Algorithm,
        /// Also write the generated instance file(s) here.
        #[arg(long)]
        instance_out: Option<PathBuf>,
    },
    /// Print the offline optimum and its witness.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Generate one random instance file.
    Gen {
        #[command(flatten)]
        shape: Shape,
        /// Which instance of the seeded stream to emit.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

#[derive(Args)]
struct Shape {
    #[arg(long, value_delimiter = ',')]
    family: Vec<Family>,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    max_paths: Option<usize>,
}

fn config(cli: &Cli, mode: Mode, algorithm: Algorithm) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(mode, algorithm);
    c.seed = cli.seed;
    c.format = cli.format;
    c.pmax_variant = cli.pmax_variant;
    c
}

fn apply_shape(c: &mut ExperimentConfig, shape: &Shape) {
    c.d = shape.d;
    c.families = shape.family.clone();
    c.max_nodes = shape.max_nodes;
    c.max_paths = shape.max_paths;
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Instance::from_json(&text)?)
}

fn instance_value(inst: &Instance) -> serde_json::Value {
    serde_json::from_str(&inst.to_json()).expect("instance json is valid")
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Run { instance, algorithm, trials } => {
            let inst = read_instance(instance)?;
            let mut c = config(cli, Mode::Replay, *algorithm);
            c.trials = *trials;
            let id = instance.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned());
            Ok(run_replay(&c, &inst, &id)?.render(cli.format)?)
        }
        Command::Sweep { algorithm, instances, shape, trials, timing } => {
            let mut c = config(cli, Mode::RandomSweep, *algorithm);
            apply_shape(&mut c, shape);
            c.instances = *instances;
            c.trials = *trials;
            c.timing = *timing;
            Ok(run_random_sweep(&c)?.render(cli.format)?)
        }
        Command::Adversary { construction, param, algorithm, instance_out } => {
            let c = config(cli, Mode::Adversary, *algorithm);
            let traces = run_adversary(&c, *construction, *param)?;
            if let Some(base) = instance_out {
                for (i, t) in traces.iter().enumerate() {
                    let path = if traces.len() == 1 { base.clone() } else { numbered(base, i + 1) };
                    fs::write(&path, t.instance.to_json()).with_context(|| format!("writing {}", path.display()))?;
                }
            }
            match cli.format {
                OutputFormat::Csv => Ok(adversary_report(&c, &traces).to_csv()?),
                OutputFormat::Json => {
                    let items: Vec<serde_json::Value> =
                        traces.iter().map(|t| json!({"trace": t, "instance": instance_value(&t.instance)})).collect();
                    Ok(serde_json::to_string_pretty(&items)?)
                }
            }
        }
        Command::Oracle { instance } => {
            let inst = read_instance(instance)?;
            let result = run_oracle(&inst, &ExperimentConfig::new(Mode::Oracle, Algorithm::Grid).limits)?;
            Ok(serde_json::to_string_pretty(&result)?)
        }
        Command::Gen { shape, index } => {
            let mut c = config(cli, Mode::RandomSweep, Algorithm::Grid);
            apply_shape(&mut c, shape);
            if c.families.is_empty() {
                c.families = vec![Family::Path];
            }
            let (_, inst, _) = sweep_instance(&c, *index)?;
            Ok(inst.to_json())
        }
    }
}

/// `dir/name.json` becomes `dir/name-<i>.json`.
fn numbered(base: &Path, i: usize) -> PathBuf {
    let stem = base.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned());
    let name = match base.extension() {
        Some(ext) => format!("{stem}-{i}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{i}"),
    };
    base.with_file_name(name)
}

/// 2 for a violated invariant or misbehaving algorithm, 1 for anything the
/// caller supplied wrongly.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Invariant(_) | Error::InvalidAlgorithm(_) | Error::UnmatchedCase(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|text| {
        let text = if text.ends_with('\n') { text } else { text + "\n" };
        match &cli.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
