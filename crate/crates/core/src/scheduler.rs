//! Greedy DDQN link scheduling under per-node antenna budgets.
//!
//! A snapshot is encoded as `N_max` rows of `(weight, link_type)`, padded
//! with `(0, 1)`. The agent picks one feasible link per step; the picked
//! link's row is zeroed and the episode ends when no feasible link is left.
//! The rank oracle activates links in `(-weight, type, link_id)` order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;

use crate::error::{Error, Result};
use crate::net_model::{
    generate_snapshot, substream, LinkCandidate, ScenarioConfig, TopologySnapshot,
    INTERVALS_PER_DAY,
};
use crate::rl::{epsilon_greedy, AdamState, DdqnAgent, EpsilonSchedule, QNetwork, TrainConfig, Transition};

pub const DEFAULT_N_MAX: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleState {
    pub rows: Vec<[f64; 2]>,
}

impl ScheduleState {
    /// Row-major `[w1, t1, w2, t2, ...]`.
    pub fn flatten(&self) -> Vec<f64> {
        self.rows.iter().flatten().copied().collect()
    }
}

pub fn encode_state(snapshot: &TopologySnapshot, n_max: usize) -> Result<ScheduleState> {
    if snapshot.links.len() > n_max || snapshot.links.iter().any(|l| l.link_id >= n_max) {
        return Err(Error::Capacity {
            links: snapshot.links.len(),
            n_max,
        });
    }
    let mut rows = vec![[0.0, 1.0]; n_max];
    for link in &snapshot.links {
        rows[link.link_id] = [link.weight, f64::from(link.link_type.as_u8())];
    }
    Ok(ScheduleState { rows })
}

/// Scheduling priority key; smaller keys are scheduled first.
pub fn rank_key(link: &LinkCandidate) -> (f64, u8) {
    (-link.weight, link.link_type.as_u8())
}

fn rank_cmp(a: &LinkCandidate, b: &LinkCandidate) -> Ordering {
    let (ka, kb) = (rank_key(a), rank_key(b));
    ka.0.total_cmp(&kb.0)
        .then(ka.1.cmp(&kb.1))
        .then(a.link_id.cmp(&b.link_id))
}

/// Link indices in scheduling priority order (ties broken by lower link id).
pub fn rank_order(links: &[LinkCandidate]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..links.len()).collect();
    order.sort_by(|&a, &b| rank_cmp(&links[a], &links[b]));
    order
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleResult {
    pub interval_index: usize,
    pub activated: BTreeSet<usize>,
    /// Per link id: the link's weight if activated, else 0.
    pub assigned_weight: Vec<f64>,
    /// Per node index: antennas in use.
    pub antenna_usage: Vec<u32>,
}

impl ScheduleResult {
    pub fn empty(snapshot: &TopologySnapshot) -> ScheduleResult {
        ScheduleResult {
            interval_index: snapshot.interval_index,
            activated: BTreeSet::new(),
            assigned_weight: vec![0.0; snapshot.links.len()],
            antenna_usage: vec![0; snapshot.nodes.len()],
        }
    }

    pub fn is_activated(&self, link_id: usize) -> bool {
        self.activated.contains(&link_id)
    }

    /// Both endpoints still have a free antenna.
    pub fn is_feasible(&self, snapshot: &TopologySnapshot, link: &LinkCandidate) -> bool {
        [link.src, link.dst].iter().all(|n| {
            snapshot
                .node(*n)
                .is_some_and(|node| self.antenna_usage[n.0] < node.antenna_budget)
        })
    }

    fn activate(&mut self, link: &LinkCandidate) {
        self.activated.insert(link.link_id);
        self.assigned_weight[link.link_id] = link.weight;
        self.antenna_usage[link.src.0] += 1;
        self.antenna_usage[link.dst.0] += 1;
    }

    /// True when no node exceeds its antenna budget.
    pub fn respects_budgets(&self, snapshot: &TopologySnapshot) -> bool {
        snapshot
            .nodes
            .iter()
            .all(|n| self.antenna_usage[n.id.0] <= n.antenna_budget)
    }
}

pub fn oracle_schedule(snapshot: &TopologySnapshot) -> ScheduleResult {
    let mut result = ScheduleResult::empty(snapshot);
    for i in rank_order(&snapshot.links) {
        let link = &snapshot.links[i];
        if result.is_feasible(snapshot, link) {
            result.activate(link);
        }
    }
    result
}

/// `sum_i 1 - (w_i - w_hat_i)^2` over the snapshot's real links.
pub fn schedule_reward(snapshot: &TopologySnapshot, result: &ScheduleResult) -> f64 {
    snapshot
        .links
        .iter()
        .map(|l| {
            let assigned = result.assigned_weight.get(l.link_id).copied().unwrap_or(0.0);
            1.0 - (l.weight - assigned).powi(2)
        })
        .sum()
}

fn feasible_mask(
    snapshot: &TopologySnapshot,
    result: &ScheduleResult,
    processed: &[bool],
    n_max: usize,
) -> Vec<bool> {
    let mut mask = vec![false; n_max];
    for link in &snapshot.links {
        mask[link.link_id] = !processed[link.link_id] && result.is_feasible(snapshot, link);
    }
    mask
}

/// Runs the Q-guided greedy policy over one snapshot.
///
/// Each step emits a transition whose reward is the processed link's term of
/// the scheduling reward. Links that were never processed (their endpoints ran
/// out of antennas) are charged on the terminal step, so an episode's rewards
/// sum to [`schedule_reward`].
pub fn agent_schedule<R: Rng + ?Sized>(
    net: &QNetwork,
    snapshot: &TopologySnapshot,
    n_max: usize,
    epsilon: f64,
    rng: &mut R,
) -> Result<(ScheduleResult, Vec<Transition>)> {
    if net.input_dim() != 2 * n_max || net.output_dim() != n_max {
        return Err(Error::Shape {
            context: "scheduler network",
            expected: 2 * n_max,
            actual: net.input_dim(),
        });
    }
    let mut state = encode_state(snapshot, n_max)?.flatten();
    let mut result = ScheduleResult::empty(snapshot);
    let mut processed = vec![false; n_max];
    let mut transitions = Vec::new();
    let mut mask = feasible_mask(snapshot, &result, &processed, n_max);

    while mask.iter().any(|&m| m) {
        let q = net.forward(&state)?;
        let action = epsilon_greedy(&q, Some(&mask), epsilon, rng)
            .expect("mask has at least one allowed action");
        let link = &snapshot.links[action];
        if result.is_feasible(snapshot, link) {
            result.activate(link);
        }
        processed[action] = true;
        let prev = state.clone();
        state[2 * action] = 0.0;
        state[2 * action + 1] = 0.0;

        mask = feasible_mask(snapshot, &result, &processed, n_max);
        let terminal = !mask.iter().any(|&m| m);
        let mut reward = 1.0 - (link.weight - result.assigned_weight[action]).powi(2);
        if terminal {
            reward += snapshot
                .links
                .iter()
                .filter(|l| !processed[l.link_id])
                .map(|l| 1.0 - l.weight * l.weight)
                .sum::<f64>();
        }
        transitions.push(Transition {
            state: prev,
            action,
            reward,
            next_state: state.clone(),
            terminal,
            next_mask: Some(mask.clone()),
        });
    }
    Ok((result, transitions))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchedulerSetup {
    pub scenario: ScenarioConfig,
    pub n_max: usize,
    pub hidden: Vec<usize>,
    pub replay_capacity: usize,
}

impl Default for SchedulerSetup {
    fn default() -> Self {
        SchedulerSetup {
            scenario: ScenarioConfig::default(),
            n_max: DEFAULT_N_MAX,
            hidden: vec![32, 32],
            replay_capacity: crate::rl::DEFAULT_REPLAY_CAPACITY,
        }
    }
}

impl SchedulerSetup {
    pub fn layer_dims(&self) -> Vec<usize> {
        let mut dims = vec![2 * self.n_max];
        dims.extend(&self.hidden);
        dims.push(self.n_max);
        dims
    }
}

#[derive(Debug, Clone)]
pub struct TrainedScheduler {
    pub net: QNetwork,
    pub adam: AdamState,
    /// Scheduling reward of every training episode.
    pub rewards: Vec<f64>,
    /// Link count of every training episode.
    pub link_counts: Vec<usize>,
}

const ENV_STREAM: u64 = 1;
const AGENT_STREAM: u64 = 2;

/// Trains the scheduling agent; one episode schedules one fresh snapshot.
///
/// The exploration rate decays per episode. Every processed link is one
/// environment step: its transition is stored, one replay batch is trained
/// once the buffer holds `batch_size` transitions and the target network
/// is synced every `target_sync_interval` steps.
pub fn train_scheduler(
    config: &TrainConfig,
    schedule: &EpsilonSchedule,
    setup: &SchedulerSetup,
) -> Result<TrainedScheduler> {
    config.validate()?;
    schedule.validate()?;
    setup.scenario.validate()?;
    if setup.scenario.link_count() > setup.n_max {
        return Err(Error::Capacity {
            links: setup.scenario.link_count(),
            n_max: setup.n_max,
        });
    }
    let mut env_rng = substream(config.seed, ENV_STREAM);
    let mut agent_rng = substream(config.seed, AGENT_STREAM);
    let mut agent = DdqnAgent::new(
        &setup.layer_dims(),
        config.clone(),
        setup.replay_capacity,
        &mut agent_rng,
    )?;

    let mut rewards = Vec::with_capacity(config.episodes);
    let mut link_counts = Vec::with_capacity(config.episodes);
    for episode in 0..config.episodes {
        let snapshot = generate_snapshot(&mut env_rng, &setup.scenario, episode % INTERVALS_PER_DAY);
        let epsilon = schedule.at(episode as u64);
        let (result, transitions) =
            agent_schedule(&agent.online, &snapshot, setup.n_max, epsilon, &mut agent_rng)?;
        for tr in transitions {
            agent.remember(tr);
            agent.env_step(&mut agent_rng).map_err(|e| match e {
                Error::Numeric(msg) => Error::Numeric(format!("episode {episode}: {msg}")),
                other => other,
            })?;
        }
        rewards.push(schedule_reward(&snapshot, &result));
        link_counts.push(snapshot.links.len());
    }
    Ok(TrainedScheduler {
        net: agent.online,
        adam: agent.adam,
        rewards,
        link_counts,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotEvaluation {
    pub snapshot: usize,
    pub links: usize,
    pub activated_agent: usize,
    pub activated_oracle: usize,
    pub matches: usize,
    pub reward_agent: f64,
    pub reward_oracle: f64,
    pub infer_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyReport {
    /// Fraction of links whose activation status agrees with the oracle.
    pub accuracy: f64,
    pub mean_infer_seconds: f64,
    pub median_infer_seconds: f64,
    pub rows: Vec<SnapshotEvaluation>,
}

fn evaluate_one(net: &QNetwork, snapshot: &TopologySnapshot, n_max: usize) -> Result<SnapshotEvaluation> {
    let oracle = oracle_schedule(snapshot);
    // epsilon = 0 never consults the stream's explore branch outcome
    let mut rng = substream(0, 0);
    let start = Instant::now();
    let (agent, _) = agent_schedule(net, snapshot, n_max, 0.0, &mut rng)?;
    let infer_seconds = start.elapsed().as_secs_f64();
    let matches = snapshot
        .links
        .iter()
        .filter(|l| agent.is_activated(l.link_id) == oracle.is_activated(l.link_id))
        .count();
    Ok(SnapshotEvaluation {
        snapshot: snapshot.interval_index,
        links: snapshot.links.len(),
        activated_agent: agent.activated.len(),
        activated_oracle: oracle.activated.len(),
        matches,
        reward_agent: schedule_reward(snapshot, &agent),
        reward_oracle: schedule_reward(snapshot, &oracle),
        infer_seconds,
    })
}

/// Per-link agreement of the greedy (epsilon = 0) agent with the rank oracle.
/// With `threads > 1` the snapshots are sharded across scoped threads.
pub fn accuracy(
    net: &QNetwork,
    snapshots: &[TopologySnapshot],
    n_max: usize,
    threads: usize,
) -> Result<AccuracyReport> {
    let rows: Vec<SnapshotEvaluation> = if threads <= 1 || snapshots.len() < 2 {
        snapshots
            .iter()
            .map(|s| evaluate_one(net, s, n_max))
            .collect::<Result<_>>()?
    } else {
        let chunk = snapshots.len().div_ceil(threads);
        let parts = std::thread::scope(|scope| {
            let handles: Vec<_> = snapshots
                .chunks(chunk)
                .map(|part| {
                    let local = net.clone();
                    scope.spawn(move || {
                        part.iter()
                            .map(|s| evaluate_one(&local, s, n_max))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("evaluation worker panicked"))
                .collect::<Vec<_>>()
        });
        let mut rows = Vec::with_capacity(snapshots.len());
        for part in parts {
            rows.extend(part?);
        }
        rows
    };

    let total_links: usize = rows.iter().map(|r| r.links).sum();
    let matched: usize = rows.iter().map(|r| r.matches).sum();
    let accuracy = if total_links == 0 {
        1.0
    } else {
        matched as f64 / total_links as f64
    };
    let mut times: Vec<f64> = rows.iter().map(|r| r.infer_seconds).collect();
    times.sort_by(f64::total_cmp);
    let mean = if times.is_empty() {
        0.0
    } else {
        times.iter().sum::<f64>() / times.len() as f64
    };
    let median = match times.len() {
        0 => 0.0,
        n if n % 2 == 1 => times[n / 2],
        n => 0.5 * (times[n / 2 - 1] + times[n / 2]),
    };
    Ok(AccuracyReport {
        accuracy,
        mean_infer_seconds: mean,
        median_infer_seconds: median,
        rows,
    })
}

/// Network whose Q-values are `-rank position` of each link of `snapshot`;
/// padding outputs sit below every real link.
pub fn rank_mimic_network(snapshot: &TopologySnapshot, n_max: usize) -> Result<QNetwork> {
    let mut net = QNetwork::zeros(&[2 * n_max, n_max])?;
    let biases = &mut net.layers_mut()[0].biases;
    biases.iter_mut().for_each(|b| *b = -(n_max as f64) - 1.0);
    for (pos, idx) in rank_order(&snapshot.links).into_iter().enumerate() {
        biases[snapshot.links[idx].link_id] = -(pos as f64);
    }
    Ok(net)
}
