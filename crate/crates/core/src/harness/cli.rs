//! Command-line driver behind the `iabsim` binary.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use super::compare::{run_comparison, AllocatorModel};
use super::config::{AllocatorVariant, ExperimentConfig};
use super::metrics::Method;
use super::report;
use crate::allocator::{train_allocator, MAX_EPISODE_REWARD};
use crate::error::{Error, Result};
use crate::net_model::{generate_day, save_trace};
use crate::rl::{checkpoint_load, checkpoint_save};
use crate::scheduler::{accuracy, train_scheduler};

#[derive(Debug, Parser)]
#[command(name = "iabsim", version, about = "mmWave IAB scheduling and slice allocation simulator")]
pub struct Cli {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides `output.dir`).
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    /// Worker threads for evaluation (overrides `threads`).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write one simulated day as a trace file.
    Generate {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train the link scheduler and write its checkpoint and reward curve.
    TrainScheduler {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        episodes: Option<usize>,
    },
    /// Train the bandwidth and antenna agents of one allocator variant.
    TrainAllocator {
        #[arg(long, value_enum, default_value = "config1")]
        variant: AllocatorVariant,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        episodes: Option<usize>,
    },
    /// Score a scheduler checkpoint against the oracle on one fresh day.
    Evaluate {
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare trained allocators with the baseline and the oracle.
    Compare {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        days: Option<usize>,
    },
}

impl clap::ValueEnum for AllocatorVariant {
    fn value_variants<'a>() -> &'a [Self] {
        &AllocatorVariant::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

pub fn scheduler_checkpoint(dir: &Path) -> PathBuf {
    dir.join("scheduler.ckpt")
}

/// Band and antenna checkpoint paths of `variant`.
pub fn allocator_checkpoints(dir: &Path, variant: AllocatorVariant) -> (PathBuf, PathBuf) {
    (
        dir.join(format!("allocator_{variant}_band.ckpt")),
        dir.join(format!("allocator_{variant}_antenna.ckpt")),
    )
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn write_file<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let mut w = create(path)?;
    body(&mut w)?;
    w.flush()?;
    Ok(())
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    if let Command::TrainAllocator { variant, .. } = &cli.command {
        cfg.apply_variant(*variant);
    }
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    cfg.apply_process_env()?;
    if let Some(dir) = &cli.out_dir {
        cfg.output_dir = dir.clone();
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    match &cli.command {
        Command::TrainScheduler { seed, episodes } => {
            cfg.train_seed = seed.unwrap_or(cfg.train_seed);
            cfg.scheduler.episodes = episodes.unwrap_or(cfg.scheduler.episodes);
        }
        Command::TrainAllocator { seed, episodes, .. } => {
            cfg.train_seed = seed.unwrap_or(cfg.train_seed);
            cfg.allocator.episodes = episodes.unwrap_or(cfg.allocator.episodes);
        }
        Command::Generate { seed, .. } => cfg.train_seed = seed.unwrap_or(cfg.train_seed),
        Command::Evaluate { seed, .. } => cfg.eval_seed = seed.unwrap_or(cfg.eval_seed),
        Command::Compare { seed, days } => {
            cfg.eval_seed = seed.unwrap_or(cfg.eval_seed);
            cfg.eval_days = days.unwrap_or(cfg.eval_days);
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let dir = cfg.output_dir.as_path();
    match &cli.command {
        Command::Generate { out, .. } => {
            let day = generate_day(cfg.train_seed, &cfg.scenario)?;
            let path = out
                .clone()
                .unwrap_or_else(|| dir.join(format!("day_{}.trace", cfg.train_seed)));
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            save_trace(&day, &path)?;
            println!("wrote {}", path.display());
        }
        Command::TrainScheduler { .. } => {
            let trained = train_scheduler(
                &cfg.scheduler.train_config(cfg.train_seed),
                &cfg.scheduler.epsilon,
                &cfg.scheduler_setup(),
            )?;
            fs::create_dir_all(dir)?;
            checkpoint_save(&trained.net, &trained.adam, &scheduler_checkpoint(dir))?;
            write_file(&dir.join("scheduler_rewards.csv"), |w| {
                report::write_scheduler_rewards(w, cfg.train_seed, &trained.rewards, &trained.link_counts)
            })?;
            let tail = &trained.rewards[trained.rewards.len().saturating_sub(50)..];
            println!(
                "scheduler: {} episodes, mean reward over last {} = {:.4}",
                trained.rewards.len(),
                tail.len(),
                tail.iter().sum::<f64>() / tail.len() as f64
            );
        }
        Command::TrainAllocator { variant, .. } => {
            let trained = train_allocator(
                &cfg.allocator.train_config(cfg.train_seed),
                &cfg.allocator.epsilon,
                &cfg.allocator_setup(),
            )?;
            fs::create_dir_all(dir)?;
            let (band_path, antenna_path) = allocator_checkpoints(dir, *variant);
            checkpoint_save(&trained.band_net, &trained.band_adam, &band_path)?;
            checkpoint_save(&trained.antenna_net, &trained.antenna_adam, &antenna_path)?;
            write_file(&dir.join(format!("allocator_{variant}_rewards.csv")), |w| {
                report::write_reward_curves(w, cfg.train_seed, &trained.band_rewards, &trained.antenna_rewards)
            })?;
            let last = trained.band_rewards.len() - 1;
            write_file(&dir.join(format!("allocator_{variant}_decisions.csv")), |w| {
                report::write_decision_log(w, cfg.train_seed, last, &trained.final_decisions)
            })?;
            println!(
                "allocator {variant}: final band {:.2} / antenna {:.2} of {MAX_EPISODE_REWARD}",
                trained.band_rewards[last], trained.antenna_rewards[last]
            );
        }
        Command::Evaluate { checkpoint, .. } => {
            let path = checkpoint.clone().unwrap_or_else(|| scheduler_checkpoint(dir));
            let (net, _) = checkpoint_load(&path)?;
            if net.input_dim() != 2 * cfg.n_max || net.output_dim() != cfg.n_max {
                return Err(Error::Consistency(format!(
                    "{} does not match scenario.n_max = {}",
                    path.display(),
                    cfg.n_max
                )));
            }
            let day = generate_day(cfg.eval_seed, &cfg.scenario)?;
            let rep = accuracy(&net, &day.snapshots, cfg.n_max, cfg.threads)?;
            write_file(&dir.join("evaluation.csv"), |w| {
                report::write_evaluation(w, cfg.eval_seed, &rep)
            })?;
            println!(
                "accuracy {:.4} over {} snapshots, mean inference {:.6} s",
                rep.accuracy,
                rep.rows.len(),
                rep.mean_infer_seconds
            );
        }
        Command::Compare { .. } => {
            let mut models = Vec::new();
            for variant in AllocatorVariant::ALL {
                let (band_path, antenna_path) = allocator_checkpoints(dir, variant);
                if !band_path.exists() && !antenna_path.exists() {
                    continue;
                }
                let (band_net, _) = checkpoint_load(&band_path)?;
                let (antenna_net, _) = checkpoint_load(&antenna_path)?;
                models.push(AllocatorModel {
                    variant,
                    band_net,
                    antenna_net,
                });
            }
            if models.is_empty() {
                return Err(Error::MissingModel(
                    allocator_checkpoints(dir, AllocatorVariant::Config1).0,
                ));
            }
            let cmp = run_comparison(&cfg.scenario, &models, cfg.eval_seed, cfg.eval_days)?;
            let seed = cfg.eval_seed;
            write_file(&dir.join("compare_rewards.csv"), |w| {
                report::write_comparison_rewards(w, seed, &cmp)
            })?;
            write_file(&dir.join("compare_throughput.csv"), |w| {
                report::write_throughput(w, seed, &cmp.throughput)
            })?;
            write_file(&dir.join("compare_decisions.csv"), |w| {
                report::write_comparison_decisions(w, seed, &cmp)
            })?;
            let baseline = cmp.mean_total(Method::Baseline).unwrap_or(0.0);
            for m in &models {
                let drl = cmp.mean_total(Method::Drl(m.variant)).unwrap_or(0.0);
                println!(
                    "drl-{}: mean day reward {drl:.2} vs baseline {baseline:.2} ({:+.2}%)",
                    m.variant,
                    100.0 * (drl - baseline) / baseline
                );
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("iabsim: {e}");
            e.exit_code()
        }
    }
}
