//! Dual DDQN slice resource allocation for the congested hub BS1.
//!
//! Per interval and per slice, a bandwidth agent and then an antenna agent
//! each pick one base station (BS1 itself included). The chosen station
//! grants its whole residual of that resource, which is then consumed, and
//! the decision earns `1 - (granted - demand)^2`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::net_model::{
    generate_day, residual_load, substream, DayTrace, LoadProfile, Resource, ScenarioConfig,
    SliceId, SliceProfile, INTERVALS_PER_DAY,
};
use crate::rl::{AdamState, DdqnAgent, EpsilonSchedule, QNetwork, TrainConfig, Transition};
use crate::scheduler::oracle_schedule;

/// Agent input: both slice demands, then band residuals BS1..BSB, then
/// antenna residuals BS1..BSB.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation(pub Vec<f64>);

impl Observation {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(base_stations: usize) -> usize {
        2 + 2 * base_stations
    }
}

pub fn build_observation(
    slice: &SliceProfile,
    load: &LoadProfile,
    base_stations: usize,
) -> Result<Observation> {
    if load.residual_band.len() != base_stations || load.residual_antennas.len() != base_stations {
        return Err(Error::Consistency(format!(
            "load profile covers {}/{} base stations, expected {base_stations}",
            load.residual_band.len(),
            load.residual_antennas.len()
        )));
    }
    let mut v = Vec::with_capacity(Observation::dim(base_stations));
    v.push(slice.band_demand);
    v.push(slice.antenna_demand);
    v.extend(&load.residual_band);
    v.extend(&load.residual_antennas);
    if let Some(bad) = v.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::Consistency(format!(
            "observation entry {bad} outside [0, 1]"
        )));
    }
    Ok(Observation(v))
}

/// Grants BS `bs`'s full residual of `resource` (1-based index) and zeroes it.
pub fn apply_action(load: &mut LoadProfile, bs: usize, resource: Resource) -> Result<f64> {
    let count = load.base_station_count();
    let slot = bs
        .checked_sub(1)
        .and_then(|i| load.residuals_mut(resource).get_mut(i))
        .ok_or_else(|| Error::Action(format!("base station {bs} outside 1..={count}")))?;
    Ok(std::mem::take(slot))
}

pub fn allocation_reward(granted: f64, demand: f64) -> f64 {
    1.0 - (granted - demand).powi(2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AllocationDecision {
    pub interval: usize,
    pub slice_id: SliceId,
    pub resource: Resource,
    pub chosen_bs: usize,
    pub demand: f64,
    pub granted: f64,
    pub reward: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalOutcome {
    /// Band then antenna decision for each slice in processing order.
    pub decisions: Vec<AllocationDecision>,
    pub band_transitions: Vec<Transition>,
    pub antenna_transitions: Vec<Transition>,
}

impl IntervalOutcome {
    pub fn reward(&self, resource: Resource) -> f64 {
        self.decisions
            .iter()
            .filter(|d| d.resource == resource)
            .map(|d| d.reward)
            .sum()
    }

    pub fn decisions_for(&self, resource: Resource) -> impl Iterator<Item = &AllocationDecision> {
        self.decisions.iter().filter(move |d| d.resource == resource)
    }
}

fn check_agent(net: &QNetwork, base_stations: usize) -> Result<()> {
    let dim = Observation::dim(base_stations);
    if net.input_dim() != dim {
        return Err(Error::Shape {
            context: "allocator network input",
            expected: dim,
            actual: net.input_dim(),
        });
    }
    if net.output_dim() != base_stations {
        return Err(Error::Shape {
            context: "allocator network output",
            expected: base_stations,
            actual: net.output_dim(),
        });
    }
    Ok(())
}

/// Allocates both resources for the three slices of one interval.
///
/// Slices go in fixed order; for each one the bandwidth agent acts, then the
/// antenna agent, each on a fresh observation. Each agent's transitions link
/// its consecutive decisions; its last decision of the interval is terminal.
pub fn run_interval<R: Rng + ?Sized>(
    band_net: &QNetwork,
    antenna_net: &QNetwork,
    slices: &[SliceProfile],
    mut load: LoadProfile,
    epsilon: f64,
    rng: &mut R,
) -> Result<IntervalOutcome> {
    let bs_count = load.base_station_count();
    check_agent(band_net, bs_count)?;
    check_agent(antenna_net, bs_count)?;

    let mut decisions = Vec::with_capacity(2 * slices.len());
    let mut pending: [Vec<(Vec<f64>, usize, f64)>; 2] = [Vec::new(), Vec::new()];
    for slice in slices {
        for (k, (resource, net)) in [(Resource::Bandwidth, band_net), (Resource::Antenna, antenna_net)]
            .into_iter()
            .enumerate()
        {
            let obs = build_observation(slice, &load, bs_count)?;
            let q = net.forward(obs.as_slice())?;
            let action = crate::rl::epsilon_greedy(&q, None, epsilon, rng)
                .expect("allocator action set is never empty");
            let chosen_bs = action + 1;
            let demand = slice.demand(resource);
            let granted = apply_action(&mut load, chosen_bs, resource)?;
            let reward = allocation_reward(granted, demand);
            decisions.push(AllocationDecision {
                interval: load.interval_index,
                slice_id: slice.slice_id,
                resource,
                chosen_bs,
                demand,
                granted,
                reward,
            });
            pending[k].push((obs.0, action, reward));
        }
    }

    // next_state of decision i is the same agent's observation at decision i+1.
    let final_obs = |slice: &SliceProfile| build_observation(slice, &load, bs_count).map(|o| o.0);
    let last_slice = slices.last();
    let into_transitions = |steps: Vec<(Vec<f64>, usize, f64)>| -> Result<Vec<Transition>> {
        let n = steps.len();
        let states: Vec<Vec<f64>> = steps.iter().map(|s| s.0.clone()).collect();
        steps
            .into_iter()
            .enumerate()
            .map(|(i, (state, action, reward))| {
                let terminal = i + 1 == n;
                let next_state = if terminal {
                    final_obs(last_slice.expect("non-empty"))?
                } else {
                    states[i + 1].clone()
                };
                Ok(Transition {
                    state,
                    action,
                    reward,
                    next_state,
                    terminal,
                    next_mask: None,
                })
            })
            .collect()
    };
    let [band_steps, antenna_steps] = pending;
    let band_transitions = into_transitions(band_steps)?;
    let antenna_transitions = into_transitions(antenna_steps)?;
    Ok(IntervalOutcome {
        decisions,
        band_transitions,
        antenna_transitions,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleAllocation {
    /// 1-based base station per slice.
    pub choices: Vec<usize>,
    pub granted: Vec<f64>,
    pub total_reward: f64,
}

/// Exhaustive search over every assignment of base stations to slices
/// (repeats allowed, a repeated station grants 0). Ties keep the
/// lexicographically smallest choice tuple.
pub fn greedy_oracle_allocation(demands: &[f64], residuals: &[f64]) -> OracleAllocation {
    let b = residuals.len();
    let n = demands.len();
    let mut best = OracleAllocation {
        choices: vec![1; n],
        granted: vec![0.0; n],
        total_reward: f64::NEG_INFINITY,
    };
    if b == 0 {
        best.total_reward = demands.iter().map(|&d| allocation_reward(0.0, d)).sum();
        best.choices.clear();
        return best;
    }
    let mut tuple = vec![0usize; n];
    let mut left = vec![0.0; b];
    let mut granted = vec![0.0; n];
    loop {
        left.copy_from_slice(residuals);
        let mut total = 0.0;
        for (i, (&choice, &demand)) in tuple.iter().zip(demands).enumerate() {
            granted[i] = std::mem::take(&mut left[choice]);
            total += allocation_reward(granted[i], demand);
        }
        if total > best.total_reward + 1e-12 {
            best.total_reward = total;
            best.choices = tuple.iter().map(|c| c + 1).collect();
            best.granted.copy_from_slice(&granted);
        }
        // odometer increment, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return best;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < b {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaySource {
    /// The same day (generated from this seed) every episode.
    Fixed(u64),
    /// A new day per episode, seeded from this base seed and the episode index.
    Fresh(u64),
}

impl DaySource {
    pub fn day_seed(&self, episode: usize) -> u64 {
        match *self {
            DaySource::Fixed(seed) => seed,
            DaySource::Fresh(base) => base
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(episode as u64 + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AllocatorSetup {
    pub scenario: ScenarioConfig,
    pub hidden_layers: usize,
    pub hidden_units: usize,
    pub replay_capacity: usize,
    pub days: DaySource,
}

impl AllocatorSetup {
    pub fn layer_dims(&self) -> Vec<usize> {
        let b = self.scenario.base_stations;
        let mut dims = vec![Observation::dim(b)];
        dims.extend(std::iter::repeat(self.hidden_units).take(self.hidden_layers));
        dims.push(b);
        dims
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.hidden_layers == 0 || self.hidden_units == 0 {
            return Err(Error::Config("allocator needs at least one hidden layer".into()));
        }
        Ok(())
    }
}

/// Loads and slice demands of every interval of a day, after oracle scheduling.
pub fn day_environment(day: &DayTrace) -> Result<Vec<(LoadProfile, [SliceProfile; 3])>> {
    day.snapshots
        .iter()
        .zip(&day.slice_profiles)
        .map(|(snap, slices)| {
            let load = residual_load(snap, &oracle_schedule(snap))?;
            Ok((load, slices.clone()))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct TrainedAllocator {
    pub band_net: QNetwork,
    pub band_adam: AdamState,
    pub antenna_net: QNetwork,
    pub antenna_adam: AdamState,
    /// Per-episode summed bandwidth rewards (at most 288 on the default day).
    pub band_rewards: Vec<f64>,
    pub antenna_rewards: Vec<f64>,
    /// Decisions of the last training episode, both resources.
    pub final_decisions: Vec<AllocationDecision>,
}

const ENV_STREAM: u64 = 11;
const AGENT_STREAM: u64 = 12;

/// Trains both agents concurrently; one episode is one full day.
///
/// Each decision is one environment step for the agent that made it. The
/// exploration rate decays per episode.
pub fn train_allocator(
    config: &TrainConfig,
    schedule: &EpsilonSchedule,
    setup: &AllocatorSetup,
) -> Result<TrainedAllocator> {
    config.validate()?;
    schedule.validate()?;
    setup.validate()?;
    let dims = setup.layer_dims();
    let mut rng = substream(config.seed, AGENT_STREAM);
    let mut band = DdqnAgent::new(&dims, config.clone(), setup.replay_capacity, &mut rng)?;
    let mut antenna = DdqnAgent::new(&dims, config.clone(), setup.replay_capacity, &mut rng)?;
    let mut env_rng = substream(config.seed, ENV_STREAM);

    let mut cached: Option<(u64, Vec<(LoadProfile, [SliceProfile; 3])>)> = None;
    let mut band_rewards = Vec::with_capacity(config.episodes);
    let mut antenna_rewards = Vec::with_capacity(config.episodes);
    let mut final_decisions = Vec::new();
    for episode in 0..config.episodes {
        let seed = setup.days.day_seed(episode);
        if cached.as_ref().map(|c| c.0) != Some(seed) {
            let day = generate_day(seed, &setup.scenario)?;
            cached = Some((seed, day_environment(&day)?));
        }
        let env = &cached.as_ref().unwrap().1;
        let epsilon = schedule.at(episode as u64);
        let (mut band_total, mut antenna_total) = (0.0, 0.0);
        let last = episode + 1 == config.episodes;
        for (load, slices) in env {
            let outcome = run_interval(
                &band.online,
                &antenna.online,
                slices,
                load.clone(),
                epsilon,
                &mut env_rng,
            )?;
            band_total += outcome.reward(Resource::Bandwidth);
            antenna_total += outcome.reward(Resource::Antenna);
            if last {
                final_decisions.extend(outcome.decisions.iter().cloned());
            }
            let tag = |e: Error| match e {
                Error::Numeric(msg) => Error::Numeric(format!("episode {episode}: {msg}")),
                other => other,
            };
            for (b, a) in outcome
                .band_transitions
                .into_iter()
                .zip(outcome.antenna_transitions)
            {
                band.remember(b);
                band.env_step(&mut rng).map_err(tag)?;
                antenna.remember(a);
                antenna.env_step(&mut rng).map_err(tag)?;
            }
        }
        band_rewards.push(band_total);
        antenna_rewards.push(antenna_total);
    }
    Ok(TrainedAllocator {
        band_net: band.online,
        band_adam: band.adam,
        antenna_net: antenna.online,
        antenna_adam: antenna.adam,
        band_rewards,
        antenna_rewards,
        final_decisions,
    })
}

/// Greedy (epsilon = 0) allocation over every interval of `day`.
pub fn evaluate_day(band_net: &QNetwork, antenna_net: &QNetwork, day: &DayTrace) -> Result<Vec<IntervalOutcome>> {
    let mut rng = substream(day.seed, 0);
    day_environment(day)?
        .into_iter()
        .map(|(load, slices)| run_interval(band_net, antenna_net, &slices, load, 0.0, &mut rng))
        .collect()
}

/// Largest attainable per-episode reward for one resource on a full day.
pub const MAX_EPISODE_REWARD: f64 = (INTERVALS_PER_DAY * 3) as f64;
