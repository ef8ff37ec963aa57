//! Deterministic simulator of a dynamic mmWave integrated access and backhaul
//! (IAB) network with a greedy double-DQN link scheduler and a dual
//! double-DQN slice resource allocator.
//!
//! The pipeline per 15-minute interval is: generate a hub topology, schedule
//! links under antenna budgets, derive the residual load of every base
//! station, and let the congested hub BS1 borrow bandwidth and antennas from
//! its neighbours for its three slices.
//!
//! ```
//! use iabsim::net_model::{generate_day, ScenarioConfig};
//! use iabsim::scheduler::{oracle_schedule, schedule_reward};
//!
//! let day = generate_day(42, &ScenarioConfig::default()).unwrap();
//! let snap = &day.snapshots[0];
//! let schedule = oracle_schedule(snap);
//! assert!(schedule_reward(snap, &schedule) <= snap.links.len() as f64);
//! ```

pub mod allocator;
pub mod baseline;
pub mod error;
pub mod harness;
pub mod net_model;
pub mod rl;
pub mod scheduler;

pub use error::{Error, Result};
