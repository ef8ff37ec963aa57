//! DRL vs baseline vs exhaustive oracle on seeded evaluation days, all
//! scored with the quadratic allocation reward.

use super::config::AllocatorVariant;
use super::metrics::{throughput_metrics, Method, MetricsRow};
use crate::allocator::{
    allocation_reward, day_environment, greedy_oracle_allocation, run_interval, AllocationDecision,
    Observation,
};
use crate::baseline::baseline_select;
use crate::error::{Error, Result};
use crate::net_model::{generate_day, substream, LoadProfile, Resource, ScenarioConfig, SliceId, SliceProfile};
use crate::rl::QNetwork;

/// A trained bandwidth/antenna agent pair.
#[derive(Debug, Clone)]
pub struct AllocatorModel {
    pub variant: AllocatorVariant,
    pub band_net: QNetwork,
    pub antenna_net: QNetwork,
}

/// Cumulative quadratic reward of one method over one evaluation day.
#[derive(Debug, Clone, PartialEq)]
pub struct DayReward {
    pub episode: usize,
    pub day_seed: u64,
    pub method: Method,
    pub band_reward: f64,
    pub antenna_reward: f64,
}

impl DayReward {
    pub fn total(&self) -> f64 {
        self.band_reward + self.antenna_reward
    }
}

#[derive(Debug, Clone, Default)]
pub struct Comparison {
    pub rewards: Vec<DayReward>,
    pub throughput: Vec<MetricsRow>,
    /// Every decision, tagged with its method and evaluation episode.
    pub decisions: Vec<(Method, usize, AllocationDecision)>,
}

impl Comparison {
    /// Mean total reward of `method` over all evaluation days.
    pub fn mean_total(&self, method: Method) -> Option<f64> {
        let totals: Vec<f64> = self
            .rewards
            .iter()
            .filter(|r| r.method == method)
            .map(DayReward::total)
            .collect();
        (!totals.is_empty()).then(|| totals.iter().sum::<f64>() / totals.len() as f64)
    }
}

/// Seed of evaluation day `episode`.
pub fn eval_day_seed(eval_seed: u64, episode: usize) -> u64 {
    eval_seed.wrapping_add(episode as u64)
}

fn check_model(model: &AllocatorModel, scenario: &ScenarioConfig) -> Result<()> {
    let b = scenario.base_stations;
    for net in [&model.band_net, &model.antenna_net] {
        if net.input_dim() != Observation::dim(b) || net.output_dim() != b {
            return Err(Error::Consistency(format!(
                "{} checkpoint expects {} inputs / {} actions, scenario has {} base stations",
                model.variant,
                net.input_dim(),
                net.output_dim(),
                b
            )));
        }
    }
    Ok(())
}

fn reference_decisions(
    method: Method,
    load: &LoadProfile,
    slices: &[SliceProfile; 3],
) -> Vec<AllocationDecision> {
    let mut out = Vec::with_capacity(6);
    for resource in Resource::ALL {
        let demands: Vec<f64> = slices.iter().map(|s| s.demand(resource)).collect();
        let residuals = load.residuals(resource);
        let picks: Vec<(usize, f64)> = match method {
            Method::Oracle => {
                let o = greedy_oracle_allocation(&demands, residuals);
                o.choices.into_iter().zip(o.granted).collect()
            }
            _ => baseline_select(&demands, residuals)
                .0
                .into_iter()
                .map(|d| (d.chosen_bs, d.granted))
                .collect(),
        };
        for ((&demand, slice_id), (chosen_bs, granted)) in demands.iter().zip(SliceId::ALL).zip(picks) {
            out.push(AllocationDecision {
                interval: load.interval_index,
                slice_id,
                resource,
                chosen_bs,
                demand,
                granted,
                reward: allocation_reward(granted, demand),
            });
        }
    }
    out
}

/// Evaluates every model plus the baseline and the oracle on `days`
/// consecutive evaluation days starting at `eval_seed`.
pub fn run_comparison(
    scenario: &ScenarioConfig,
    models: &[AllocatorModel],
    eval_seed: u64,
    days: usize,
) -> Result<Comparison> {
    for m in models {
        check_model(m, scenario)?;
    }
    let mut methods: Vec<Method> = models.iter().map(|m| Method::Drl(m.variant)).collect();
    methods.extend([Method::Baseline, Method::Oracle]);

    let mut out = Comparison::default();
    for episode in 0..days {
        let day_seed = eval_day_seed(eval_seed, episode);
        let env = day_environment(&generate_day(day_seed, scenario)?)?;
        for &method in &methods {
            let mut rng = substream(day_seed, 0);
            let mut totals = [0.0; 2];
            for (load, slices) in &env {
                let decisions = match method {
                    Method::Drl(v) => {
                        let m = models.iter().find(|m| m.variant == v).expect("listed model");
                        run_interval(&m.band_net, &m.antenna_net, slices, load.clone(), 0.0, &mut rng)?
                            .decisions
                    }
                    _ => reference_decisions(method, load, slices),
                };
                for (k, resource) in Resource::ALL.into_iter().enumerate() {
                    let mine: Vec<AllocationDecision> =
                        decisions.iter().filter(|d| d.resource == resource).cloned().collect();
                    let row = throughput_metrics(method, episode, load.interval_index, resource, &mine);
                    totals[k] += row.reward;
                    out.throughput.push(row);
                }
                out.decisions
                    .extend(decisions.into_iter().map(|d| (method, episode, d)));
            }
            out.rewards.push(DayReward {
                episode,
                day_seed,
                method,
                band_reward: totals[0],
                antenna_reward: totals[1],
            });
        }
    }
    Ok(out)
}
