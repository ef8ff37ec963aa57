//! Experiment configuration: line-oriented `key = value` text with `#`
//! comments and dotted keys, overridable from `IABSIM_*` environment
//! variables.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::allocator::{AllocatorSetup, DaySource};
use crate::error::{Error, Result};
use crate::net_model::ScenarioConfig;
use crate::rl::{EpsilonSchedule, TrainConfig, DEFAULT_REPLAY_CAPACITY};
use crate::scheduler::{SchedulerSetup, DEFAULT_N_MAX};

/// Prefix of environment variables that override config keys.
pub const ENV_PREFIX: &str = "IABSIM_";

/// Hyperparameters of one learning agent.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentSettings {
    pub learning_rate: f64,
    pub discount: f64,
    pub batch_size: usize,
    pub target_sync_interval: u64,
    pub episodes: usize,
    pub epsilon: EpsilonSchedule,
    pub hidden_layers: usize,
    pub hidden_units: usize,
    pub replay_capacity: usize,
}

impl AgentSettings {
    pub fn train_config(&self, seed: u64) -> TrainConfig {
        TrainConfig {
            learning_rate: self.learning_rate,
            discount: self.discount,
            batch_size: self.batch_size,
            target_sync_interval: self.target_sync_interval,
            episodes: self.episodes,
            seed,
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let tag = |e: Error| match e {
            Error::Config(msg) => Error::Config(format!("{name}: {msg}")),
            other => other,
        };
        self.train_config(0).validate().map_err(tag)?;
        self.epsilon.validate().map_err(tag)?;
        if self.hidden_layers == 0 || self.hidden_units == 0 {
            return Err(Error::Config(format!("{name}: needs at least one hidden unit and layer")));
        }
        if self.replay_capacity < self.batch_size {
            return Err(Error::Config(format!(
                "{name}: replay capacity {} is below the batch size {}",
                self.replay_capacity, self.batch_size
            )));
        }
        Ok(())
    }
}

/// The two allocator network configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AllocatorVariant {
    /// Two hidden layers, 500 episodes, exploration decay 0.99.
    Config1,
    /// One hidden layer, 21 episodes, exploration decay 0.01.
    Config2,
}

impl AllocatorVariant {
    pub const ALL: [AllocatorVariant; 2] = [AllocatorVariant::Config1, AllocatorVariant::Config2];

    pub fn name(self) -> &'static str {
        match self {
            AllocatorVariant::Config1 => "config1",
            AllocatorVariant::Config2 => "config2",
        }
    }

    /// (hidden layers, episodes, exploration decay).
    pub fn preset(self) -> (usize, usize, f64) {
        match self {
            AllocatorVariant::Config1 => (2, 500, 0.99),
            AllocatorVariant::Config2 => (1, 21, 0.01),
        }
    }
}

impl fmt::Display for AllocatorVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AllocatorVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AllocatorVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown allocator variant `{s}`")))
    }
}

/// Whether allocator training replays one day or draws a new one per episode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DayMode {
    Fixed,
    Fresh,
}

impl DayMode {
    pub fn name(self) -> &'static str {
        match self {
            DayMode::Fixed => "fixed",
            DayMode::Fresh => "fresh",
        }
    }

    pub fn source(self, seed: u64) -> DaySource {
        match self {
            DayMode::Fixed => DaySource::Fixed(seed),
            DayMode::Fresh => DaySource::Fresh(seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: ScenarioConfig,
    pub n_max: usize,
    pub scheduler: AgentSettings,
    pub allocator: AgentSettings,
    pub allocator_days: DayMode,
    pub train_seed: u64,
    pub eval_seed: u64,
    /// Number of evaluation days used by `compare`.
    pub eval_days: usize,
    pub output_dir: PathBuf,
    pub threads: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let (layers, episodes, decay) = AllocatorVariant::Config1.preset();
        ExperimentConfig {
            scenario: ScenarioConfig::default(),
            n_max: DEFAULT_N_MAX,
            scheduler: AgentSettings {
                learning_rate: 0.001,
                discount: 0.99,
                batch_size: 32,
                target_sync_interval: 2,
                episodes: 1000,
                epsilon: EpsilonSchedule {
                    epsilon0: 0.9,
                    decay: 0.995,
                    epsilon_min: 0.01,
                },
                hidden_layers: 2,
                hidden_units: 32,
                replay_capacity: DEFAULT_REPLAY_CAPACITY,
            },
            allocator: AgentSettings {
                learning_rate: 0.0001,
                discount: 0.99,
                batch_size: 64,
                target_sync_interval: 2,
                episodes,
                epsilon: EpsilonSchedule {
                    epsilon0: 0.99,
                    decay,
                    epsilon_min: 0.01,
                },
                hidden_layers: layers,
                hidden_units: 32,
                replay_capacity: DEFAULT_REPLAY_CAPACITY,
            },
            allocator_days: DayMode::Fixed,
            train_seed: 1,
            eval_seed: 1001,
            eval_days: 5,
            output_dir: PathBuf::from("out"),
            threads: 1,
        }
    }
}

/// Every recognised key, in serialization order.
pub const KEYS: &[&str] = &[
    "scenario.base_stations",
    "scenario.user_equipments",
    "scenario.antennas",
    "scenario.cap_mb",
    "scenario.n_max",
    "scheduler.alpha",
    "scheduler.gamma",
    "scheduler.batch",
    "scheduler.sync_interval",
    "scheduler.episodes",
    "scheduler.epsilon0",
    "scheduler.epsilon_decay",
    "scheduler.epsilon_min",
    "scheduler.hidden_layers",
    "scheduler.hidden_units",
    "scheduler.replay_capacity",
    "allocator.alpha",
    "allocator.gamma",
    "allocator.batch",
    "allocator.sync_interval",
    "allocator.episodes",
    "allocator.epsilon0",
    "allocator.epsilon_decay",
    "allocator.epsilon_min",
    "allocator.hidden_layers",
    "allocator.hidden_units",
    "allocator.replay_capacity",
    "allocator.days",
    "seeds.train",
    "seeds.eval",
    "eval.days",
    "output.dir",
    "threads",
];

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value `{value}` for `{key}`")))
}

impl AgentSettings {
    fn set(&mut self, field: &str, key: &str, value: &str) -> Result<bool> {
        match field {
            "alpha" => self.learning_rate = parse_value(key, value)?,
            "gamma" => self.discount = parse_value(key, value)?,
            "batch" => self.batch_size = parse_value(key, value)?,
            "sync_interval" => self.target_sync_interval = parse_value(key, value)?,
            "episodes" => self.episodes = parse_value(key, value)?,
            "epsilon0" => self.epsilon.epsilon0 = parse_value(key, value)?,
            "epsilon_decay" => self.epsilon.decay = parse_value(key, value)?,
            "epsilon_min" => self.epsilon.epsilon_min = parse_value(key, value)?,
            "hidden_layers" => self.hidden_layers = parse_value(key, value)?,
            "hidden_units" => self.hidden_units = parse_value(key, value)?,
            "replay_capacity" => self.replay_capacity = parse_value(key, value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn get(&self, field: &str) -> Option<String> {
        Some(match field {
            "alpha" => self.learning_rate.to_string(),
            "gamma" => self.discount.to_string(),
            "batch" => self.batch_size.to_string(),
            "sync_interval" => self.target_sync_interval.to_string(),
            "episodes" => self.episodes.to_string(),
            "epsilon0" => self.epsilon.epsilon0.to_string(),
            "epsilon_decay" => self.epsilon.decay.to_string(),
            "epsilon_min" => self.epsilon.epsilon_min.to_string(),
            "hidden_layers" => self.hidden_layers.to_string(),
            "hidden_units" => self.hidden_units.to_string(),
            "replay_capacity" => self.replay_capacity.to_string(),
            _ => return None,
        })
    }
}

impl ExperimentConfig {
    /// Sets one dotted key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let known = match key.split_once('.') {
            Some(("scheduler", field)) => self.scheduler.set(field, key, value)?,
            Some(("allocator", "days")) => {
                self.allocator_days = match value {
                    "fixed" => DayMode::Fixed,
                    "fresh" => DayMode::Fresh,
                    _ => return Err(Error::Config(format!("bad value `{value}` for `{key}`"))),
                };
                true
            }
            Some(("allocator", field)) => self.allocator.set(field, key, value)?,
            _ => {
                match key {
                    "scenario.base_stations" => self.scenario.base_stations = parse_value(key, value)?,
                    "scenario.user_equipments" => {
                        self.scenario.user_equipments = parse_value(key, value)?
                    }
                    "scenario.antennas" => self.scenario.antennas = parse_value(key, value)?,
                    "scenario.cap_mb" => self.scenario.bandwidth_cap_mb = parse_value(key, value)?,
                    "scenario.n_max" => self.n_max = parse_value(key, value)?,
                    "seeds.train" => self.train_seed = parse_value(key, value)?,
                    "seeds.eval" => self.eval_seed = parse_value(key, value)?,
                    "eval.days" => self.eval_days = parse_value(key, value)?,
                    "output.dir" => self.output_dir = PathBuf::from(value),
                    "threads" => self.threads = parse_value(key, value)?,
                    _ => return Err(Error::Config(format!("unknown key `{key}`"))),
                }
                true
            }
        };
        if !known {
            return Err(Error::Config(format!("unknown key `{key}`")));
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<String> {
        match key.split_once('.') {
            Some(("scheduler", field)) => self.scheduler.get(field),
            Some(("allocator", "days")) => Some(self.allocator_days.name().to_string()),
            Some(("allocator", field)) => self.allocator.get(field),
            _ => Some(match key {
                "scenario.base_stations" => self.scenario.base_stations.to_string(),
                "scenario.user_equipments" => self.scenario.user_equipments.to_string(),
                "scenario.antennas" => self.scenario.antennas.to_string(),
                "scenario.cap_mb" => self.scenario.bandwidth_cap_mb.to_string(),
                "scenario.n_max" => self.n_max.to_string(),
                "seeds.train" => self.train_seed.to_string(),
                "seeds.eval" => self.eval_seed.to_string(),
                "eval.days" => self.eval_days.to_string(),
                "output.dir" => self.output_dir.display().to_string(),
                "threads" => self.threads.to_string(),
                _ => return None,
            }),
        }
    }

    /// Applies `key = value` lines on top of the current values.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", n + 1)))?;
            self.set(key.trim(), value)
                .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    /// Environment variable name of a dotted key: `seeds.train` is
    /// `IABSIM_SEEDS_TRAIN`.
    pub fn env_name(key: &str) -> String {
        format!("{ENV_PREFIX}{}", key.replace('.', "_").to_uppercase())
    }

    /// Overrides every key whose variable `lookup` resolves.
    pub fn apply_env<F: Fn(&str) -> Option<String>>(&mut self, lookup: F) -> Result<()> {
        for key in KEYS {
            let name = Self::env_name(key);
            if let Some(value) = lookup(&name) {
                self.set(key, &value)
                    .map_err(|e| Error::Config(format!("{name}: {e}")))?;
            }
        }
        Ok(())
    }

    pub fn apply_process_env(&mut self) -> Result<()> {
        self.apply_env(|name| std::env::var(name).ok())
    }

    pub fn apply_variant(&mut self, variant: AllocatorVariant) {
        let (layers, episodes, decay) = variant.preset();
        self.allocator.hidden_layers = layers;
        self.allocator.episodes = episodes;
        self.allocator.epsilon.decay = decay;
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.scenario.link_count() > self.n_max {
            return Err(Error::Config(format!(
                "{} candidate links exceed scenario.n_max = {}",
                self.scenario.link_count(),
                self.n_max
            )));
        }
        self.scheduler.validate("scheduler")?;
        self.allocator.validate("allocator")?;
        if self.threads == 0 {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        if self.eval_days == 0 {
            return Err(Error::Config("eval.days must be at least 1".into()));
        }
        Ok(())
    }

    pub fn scheduler_setup(&self) -> SchedulerSetup {
        SchedulerSetup {
            scenario: self.scenario.clone(),
            n_max: self.n_max,
            hidden: vec![self.scheduler.hidden_units; self.scheduler.hidden_layers],
            replay_capacity: self.scheduler.replay_capacity,
        }
    }

    pub fn allocator_setup(&self) -> AllocatorSetup {
        AllocatorSetup {
            scenario: self.scenario.clone(),
            hidden_layers: self.allocator.hidden_layers,
            hidden_units: self.allocator.hidden_units,
            replay_capacity: self.allocator.replay_capacity,
            days: self.allocator_days.source(self.train_seed),
        }
    }
}

impl fmt::Display for ExperimentConfig {
    /// Serializes every key; parsing the output reproduces `self`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut section = "";
        for key in KEYS {
            let head = key.split_once('.').map_or("", |(h, _)| h);
            if head != section && !out.is_empty() {
                out.push('\n');
            }
            section = head;
            let value = self.get(key).expect("every listed key has a value");
            let _ = writeln!(out, "{key} = {value}");
        }
        f.write_str(&out)
    }
}
