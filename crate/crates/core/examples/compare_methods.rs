//! Trains a Config 2 allocator and compares it with the baseline and the
//! exhaustive oracle on fresh evaluation days.

use iabsim::allocator::train_allocator;
use iabsim::harness::{run_comparison, AllocatorModel, AllocatorVariant, ExperimentConfig, Method};

fn main() -> iabsim::Result<()> {
    let mut cfg = ExperimentConfig::default();
    cfg.apply_variant(AllocatorVariant::Config2);
    let trained = train_allocator(
        &cfg.allocator.train_config(cfg.train_seed),
        &cfg.allocator.epsilon,
        &cfg.allocator_setup(),
    )?;
    let model = AllocatorModel {
        variant: AllocatorVariant::Config2,
        band_net: trained.band_net,
        antenna_net: trained.antenna_net,
    };

    let cmp = run_comparison(&cfg.scenario, &[model], cfg.eval_seed, 3)?;
    for r in &cmp.rewards {
        println!(
            "day {} {:12} band {:6.2} antenna {:6.2} total {:6.2}",
            r.day_seed,
            r.method.to_string(),
            r.band_reward,
            r.antenna_reward,
            r.total()
        );
    }
    let drl = cmp.mean_total(Method::Drl(AllocatorVariant::Config2)).unwrap_or(0.0);
    let base = cmp.mean_total(Method::Baseline).unwrap_or(0.0);
    println!("drl over baseline: {:+.2}%", 100.0 * (drl - base) / base);

    let waste: f64 = cmp
        .throughput
        .iter()
        .filter(|row| row.method == Method::Oracle)
        .map(|row| row.waste)
        .sum();
    println!("oracle waste summed over all intervals: {waste:.3}");
    Ok(())
}
