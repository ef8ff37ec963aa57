//! Trains the greedy DDQN link scheduler and scores it against the oracle
//! on a fresh day.
//!
//! `cargo run --release --example train_scheduler -- [episodes] [antennas]`

use iabsim::harness::ExperimentConfig;
use iabsim::net_model::generate_day;
use iabsim::scheduler::{accuracy, train_scheduler};

fn main() -> iabsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut cfg = ExperimentConfig::default();
    if let Some(e) = args.next() {
        cfg.scheduler.episodes = e.parse().expect("episodes must be an integer");
    }
    if let Some(k) = args.next() {
        cfg.scenario.antennas = k.parse().expect("antennas must be an integer");
    }

    let trained = train_scheduler(
        &cfg.scheduler.train_config(cfg.train_seed),
        &cfg.scheduler.epsilon,
        &cfg.scheduler_setup(),
    )?;
    let n = trained.rewards.len();
    for (i, chunk) in trained.rewards.chunks((n / 10).max(1)).enumerate() {
        let mean = chunk.iter().sum::<f64>() / chunk.len() as f64;
        println!("episodes {:4}..: mean reward {mean:.3}", i * (n / 10).max(1));
    }

    let day = generate_day(cfg.eval_seed, &cfg.scenario)?;
    let report = accuracy(&trained.net, &day.snapshots, cfg.n_max, 1)?;
    println!(
        "agreement with oracle {:.4}, mean inference {:.3} ms",
        report.accuracy,
        report.mean_infer_seconds * 1e3
    );
    Ok(())
}
