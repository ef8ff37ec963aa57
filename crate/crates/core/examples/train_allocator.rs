//! Trains the bandwidth and antenna agents on one day.
//!
//! `cargo run --release --example train_allocator -- [config1|config2] [seed]`

use iabsim::allocator::{train_allocator, MAX_EPISODE_REWARD};
use iabsim::harness::{AllocatorVariant, ExperimentConfig};

fn main() -> iabsim::Result<()> {
    let mut args = std::env::args().skip(1);
    let variant: AllocatorVariant = args.next().as_deref().unwrap_or("config2").parse()?;
    let mut cfg = ExperimentConfig::default();
    cfg.apply_variant(variant);
    if let Some(seed) = args.next() {
        cfg.train_seed = seed.parse().expect("seed must be an integer");
    }

    let start = std::time::Instant::now();
    let trained = train_allocator(
        &cfg.allocator.train_config(cfg.train_seed),
        &cfg.allocator.epsilon,
        &cfg.allocator_setup(),
    )?;
    let n = trained.band_rewards.len();
    let step = (n / 20).max(1);
    for i in (0..n).step_by(step).chain([n - 1]) {
        println!(
            "episode {i:3}: band {:6.2}  antenna {:6.2}  (of {MAX_EPISODE_REWARD})",
            trained.band_rewards[i], trained.antenna_rewards[i]
        );
    }
    println!("{variant} trained in {:.1} s", start.elapsed().as_secs_f64());
    Ok(())
}
