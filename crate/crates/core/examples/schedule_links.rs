//! Schedules one snapshot with the rank oracle and derives the residual
//! resources of every base station.

use iabsim::net_model::{generate_day, residual_load, ScenarioConfig};
use iabsim::scheduler::{oracle_schedule, rank_order, schedule_reward};

fn main() -> iabsim::Result<()> {
    // a small antenna budget makes the hub BS1 a real bottleneck
    let scenario = ScenarioConfig {
        antennas: 4,
        ..ScenarioConfig::default()
    };
    let day = generate_day(3, &scenario)?;
    let snap = &day.snapshots[10];

    let schedule = oracle_schedule(snap);
    for idx in rank_order(&snap.links) {
        let link = &snap.links[idx];
        let state = if schedule.is_activated(link.link_id) { "on " } else { "off" };
        println!("{state} link {:2} w={:.3} type={}", link.link_id, link.weight, link.link_type.as_u8());
    }
    println!(
        "activated {}/{} links, reward {:.4}, budgets respected: {}",
        schedule.activated.len(),
        snap.links.len(),
        schedule_reward(snap, &schedule),
        schedule.respects_budgets(snap)
    );

    let load = residual_load(snap, &schedule)?;
    for (i, (b, a)) in load.residual_band.iter().zip(&load.residual_antennas).enumerate() {
        println!("BS{}: residual band {b:.3}, antennas {a:.3}", i + 1);
    }
    Ok(())
}
