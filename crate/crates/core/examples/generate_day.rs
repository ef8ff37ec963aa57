//! Generates one simulated day, writes it as a trace and reads it back.
//!
//! `cargo run --example generate_day -- [seed]`

use iabsim::net_model::{generate_day, load_trace, save_trace, LinkType, ScenarioConfig};

fn main() -> iabsim::Result<()> {
    let seed = std::env::args().nth(1).map_or(Ok(42), |s| s.parse()).expect("seed must be an integer");
    let day = generate_day(seed, &ScenarioConfig::default())?;

    let snap = &day.snapshots[0];
    println!("interval 0: {} nodes, {} candidate links", snap.nodes.len(), snap.links.len());
    for link in &snap.links {
        let kind = match link.link_type {
            LinkType::Infrastructure => "backhaul",
            LinkType::Access => "access",
        };
        println!("  link {:2}: {:2} - {:2}  w={:.3}  {kind}", link.link_id, link.src, link.dst, link.weight);
    }
    for s in &day.slice_profiles[0] {
        println!(
            "  {:5} demand: band {:.3} ({:.0} MB), antennas {:.3}",
            s.slice_id.name(),
            s.band_demand,
            s.band_demand_mb(day.scenario.bandwidth_cap_mb),
            s.antenna_demand
        );
    }

    let path = std::env::temp_dir().join(format!("iabsim_day_{seed}.trace"));
    save_trace(&day, &path)?;
    let back = load_trace(&path)?;
    assert_eq!(back, day);
    println!("round trip through {} is exact", path.display());
    Ok(())
}
