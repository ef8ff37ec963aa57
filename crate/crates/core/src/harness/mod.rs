//! Experiment driver: configuration, comparison runs, metrics and CSV output.

pub mod cli;
mod compare;
mod config;
mod metrics;
pub mod report;

pub use compare::{eval_day_seed, run_comparison, AllocatorModel, Comparison, DayReward};
pub use config::{AgentSettings, AllocatorVariant, DayMode, ExperimentConfig, ENV_PREFIX, KEYS};
pub use metrics::{throughput_metrics, Method, MetricsRow};
