use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    DayTrace, LinkCandidate, LinkType, LoadProfile, NodeId, NodeKind, ScenarioConfig, SliceId,
    SliceProfile, TopologySnapshot, ANTENNA_DEMAND_RANGE, INTERVALS_PER_DAY,
};
use crate::error::{Error, Result};
use crate::scheduler::ScheduleResult;

/// Seedable random stream used throughout the simulator.
pub type RandomStream = ChaCha8Rng;

pub fn stream(seed: u64) -> RandomStream {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `id` under the same seed (ChaCha stream selection).
pub fn substream(seed: u64, id: u64) -> RandomStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Link weights are kept on a 1e-6 grid so trace files round-trip exactly.
fn quantized_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    (rng.gen::<f64>() * 1e6).round() / 1e6
}

pub fn generate_day(seed: u64, config: &ScenarioConfig) -> Result<DayTrace> {
    config.validate()?;
    let mut rng = stream(seed);
    let mut snapshots = Vec::with_capacity(INTERVALS_PER_DAY);
    let mut slice_profiles = Vec::with_capacity(INTERVALS_PER_DAY);
    for t in 0..INTERVALS_PER_DAY {
        snapshots.push(generate_snapshot(&mut rng, config, t));
        slice_profiles.push(sample_slice_profiles(&mut rng, config, t));
    }
    Ok(DayTrace {
        seed,
        scenario: config.clone(),
        snapshots,
        slice_profiles,
    })
}

/// Draws one hub topology: BS1 linked to every other BS and to the donor,
/// every UE associated with one uniformly chosen BS, all weights uniform.
pub fn generate_snapshot<R: Rng + ?Sized>(
    rng: &mut R,
    config: &ScenarioConfig,
    t: usize,
) -> TopologySnapshot {
    let b = config.base_stations;
    let nodes = TopologySnapshot::scenario_nodes(b, config.user_equipments, config.antennas);

    let association: Vec<usize> = (0..config.user_equipments)
        .map(|_| rng.gen_range(1..=b))
        .collect();

    let mut endpoints = Vec::with_capacity(config.link_count());
    for j in 2..=b {
        endpoints.push((NodeId::bs(1), NodeId::bs(j), LinkType::Infrastructure));
    }
    endpoints.push((NodeId::DONOR, NodeId::bs(1), LinkType::Infrastructure));
    for (u, &bs) in association.iter().enumerate() {
        endpoints.push((NodeId(b + 1 + u), NodeId::bs(bs), LinkType::Access));
    }

    let links = endpoints
        .into_iter()
        .enumerate()
        .map(|(link_id, (src, dst, link_type))| LinkCandidate {
            link_id,
            src,
            dst,
            weight: quantized_unit(rng),
            link_type,
        })
        .collect();

    TopologySnapshot {
        interval_index: t,
        nodes,
        links,
    }
}

/// Samples the three BS1 slice demands of interval `t`, in slice order.
///
/// Bandwidth is drawn as an integer MB amount and divided by the cap; the
/// antenna count is an integer divided by K (clamped at K).
pub fn sample_slice_profiles<R: Rng + ?Sized>(
    rng: &mut R,
    config: &ScenarioConfig,
    t: usize,
) -> [SliceProfile; 3] {
    SliceId::ALL.map(|slice_id| {
        let (lo, hi) = slice_id.band_range_mb();
        let raw_mb = rng.gen_range(lo..=hi);
        let raw_antennas = rng.gen_range(ANTENNA_DEMAND_RANGE.0..=ANTENNA_DEMAND_RANGE.1);
        SliceProfile {
            interval_index: t,
            bs: NodeId::bs(1),
            slice_id,
            band_demand: f64::from(raw_mb) / f64::from(config.bandwidth_cap_mb),
            antenna_demand: f64::from(raw_antennas.min(config.antennas))
                / f64::from(config.antennas),
        }
    })
}

/// Residual bandwidth and antenna share at every BS after `schedule`.
pub fn residual_load(snapshot: &TopologySnapshot, schedule: &ScheduleResult) -> Result<LoadProfile> {
    if schedule.interval_index != snapshot.interval_index {
        return Err(Error::Consistency(format!(
            "schedule for interval {} applied to snapshot {}",
            schedule.interval_index, snapshot.interval_index
        )));
    }
    if schedule.assigned_weight.len() != snapshot.links.len()
        || schedule.antenna_usage.len() != snapshot.nodes.len()
    {
        return Err(Error::Consistency(format!(
            "schedule covers {} links / {} nodes, snapshot has {} / {}",
            schedule.assigned_weight.len(),
            schedule.antenna_usage.len(),
            snapshot.links.len(),
            snapshot.nodes.len()
        )));
    }
    if let Some(&bad) = schedule
        .activated
        .iter()
        .find(|&&id| id >= snapshot.links.len())
    {
        return Err(Error::Consistency(format!(
            "schedule activates unknown link {bad}"
        )));
    }

    let bs_nodes: Vec<_> = snapshot
        .nodes
        .iter()
        .filter(|n| n.kind == NodeKind::BaseStation)
        .collect();
    let mut residual_band = Vec::with_capacity(bs_nodes.len());
    let mut residual_antennas = Vec::with_capacity(bs_nodes.len());
    for node in bs_nodes {
        let used_band: f64 = schedule
            .activated
            .iter()
            .map(|&id| &snapshot.links[id])
            .filter(|l| l.touches(node.id))
            .map(|l| l.weight)
            .sum();
        residual_band.push(1.0 - used_band.clamp(0.0, 1.0));
        let used = schedule.antenna_usage[node.id.0].min(node.antenna_budget);
        residual_antennas
            .push(f64::from(node.antenna_budget - used) / f64::from(node.antenna_budget));
    }

    Ok(LoadProfile {
        interval_index: snapshot.interval_index,
        residual_band,
        residual_antennas,
    })
}

/// Lists every violated snapshot invariant; empty when the snapshot is valid.
pub fn validate_snapshot(snapshot: &TopologySnapshot) -> Vec<String> {
    let mut violations = Vec::new();
    let node_count = snapshot.nodes.len();

    if snapshot.interval_index >= INTERVALS_PER_DAY {
        violations.push(format!(
            "interval index {} outside [0, {}]",
            snapshot.interval_index,
            INTERVALS_PER_DAY - 1
        ));
    }
    for (i, node) in snapshot.nodes.iter().enumerate() {
        if node.id.0 != i {
            violations.push(format!("node at position {i} carries id {}", node.id));
        }
        if node.antenna_budget == 0 {
            violations.push(format!("node {i} has zero antenna budget"));
        }
    }

    let mut ids: Vec<usize> = snapshot.links.iter().map(|l| l.link_id).collect();
    ids.sort_unstable();
    if ids.iter().enumerate().any(|(i, &id)| i != id) {
        violations.push("link ids are not unique and dense from 0".to_string());
    }

    let kind_of = |id: NodeId| snapshot.nodes.get(id.0).map(|n| n.kind);
    for link in &snapshot.links {
        if link.src == link.dst {
            violations.push(format!("link {} is a self-loop", link.link_id));
        }
        if !(0.0..=1.0).contains(&link.weight) {
            violations.push(format!(
                "link {} weight {} outside [0, 1]",
                link.link_id, link.weight
            ));
        }
        match (kind_of(link.src), kind_of(link.dst)) {
            (Some(a), Some(b)) => {
                let infra = a.is_infrastructure() && b.is_infrastructure();
                if infra != (link.link_type == LinkType::Infrastructure) {
                    violations.push(format!(
                        "link {} type {} does not match its endpoints",
                        link.link_id,
                        link.link_type.as_u8()
                    ));
                }
            }
            _ => violations.push(format!(
                "link {} references a node outside 0..{node_count}",
                link.link_id
            )),
        }
    }

    let has_infra = |a: NodeId, b: NodeId| snapshot.links.iter().any(|l| l.connects(a, b));
    let bs_count = snapshot.base_station_count();
    if bs_count >= 1 {
        for j in 2..=bs_count {
            if !has_infra(NodeId::bs(1), NodeId::bs(j)) {
                violations.push(format!("missing mandatory link BS1-BS{j}"));
            }
        }
        if !has_infra(NodeId::bs(1), NodeId::DONOR) {
            violations.push("missing mandatory link BS1-Donor".to_string());
        }
    }

    for node in snapshot
        .nodes
        .iter()
        .filter(|n| n.kind == NodeKind::UserEquipment)
    {
        let access = snapshot
            .links
            .iter()
            .filter(|l| l.link_type == LinkType::Access && l.touches(node.id))
            .count();
        if access != 1 {
            violations.push(format!(
                "UE node {} has {access} association links, expected 1",
                node.id
            ));
        }
    }

    violations
}
