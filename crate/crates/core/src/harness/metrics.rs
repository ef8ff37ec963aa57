use std::fmt;

use super::config::AllocatorVariant;
use crate::allocator::AllocationDecision;
use crate::net_model::Resource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Drl(AllocatorVariant),
    Baseline,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Drl(v) => write!(f, "drl-{v}"),
            Method::Baseline => f.write_str("baseline"),
            Method::Oracle => f.write_str("oracle"),
        }
    }
}

/// Per-interval allocation totals of one method for one resource.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub method: Method,
    pub episode: usize,
    pub interval: usize,
    pub resource: Resource,
    pub reward: f64,
    pub allocated_total: f64,
    pub demand_total: f64,
    /// `allocated_total - demand_total`.
    pub waste: f64,
}

/// Sums grants, demands and rewards of `decisions` (one interval, one resource).
pub fn throughput_metrics(
    method: Method,
    episode: usize,
    interval: usize,
    resource: Resource,
    decisions: &[AllocationDecision],
) -> MetricsRow {
    let allocated_total: f64 = decisions.iter().map(|d| d.granted).sum();
    let demand_total: f64 = decisions.iter().map(|d| d.demand).sum();
    MetricsRow {
        method,
        episode,
        interval,
        resource,
        reward: decisions.iter().map(|d| d.reward).sum(),
        allocated_total,
        demand_total,
        waste: allocated_total - demand_total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocator::allocation_reward;
    use crate::net_model::SliceId;

    fn decision(slice_id: SliceId, demand: f64, granted: f64) -> AllocationDecision {
        AllocationDecision {
            interval: 0,
            slice_id,
            resource: Resource::Bandwidth,
            chosen_bs: 1,
            demand,
            granted,
            reward: allocation_reward(granted, demand),
        }
    }

    #[test]
    fn worked_interval() {
        let d = [
            decision(SliceId::Embb, 0.81, 0.75),
            decision(SliceId::Urllc, 0.54, 0.52),
            decision(SliceId::Emtc, 0.22, 0.37),
        ];
        let row = throughput_metrics(Method::Oracle, 0, 0, Resource::Bandwidth, &d);
        assert!((row.allocated_total - 1.64).abs() < 1e-12);
        assert!((row.demand_total - 1.57).abs() < 1e-12);
        assert!((row.waste - 0.07).abs() < 1e-12);
        assert!((row.reward - 2.9735).abs() < 1e-12);
    }

    #[test]
    fn zero_grants_and_exact_matches() {
        let d = [decision(SliceId::Embb, 0.4, 0.0), decision(SliceId::Urllc, 0.1, 0.0)];
        let row = throughput_metrics(Method::Baseline, 0, 3, Resource::Bandwidth, &d);
        assert_eq!(row.allocated_total, 0.0);
        assert!((row.waste + 0.5).abs() < 1e-12);
        let d = [decision(SliceId::Embb, 0.4, 0.4), decision(SliceId::Urllc, 0.1, 0.1)];
        let row = throughput_metrics(Method::Baseline, 0, 3, Resource::Bandwidth, &d);
        assert_eq!(row.waste, 0.0);
        assert_eq!(row.reward, 2.0);
    }

    #[test]
    fn method_names() {
        assert_eq!(Method::Drl(AllocatorVariant::Config2).to_string(), "drl-config2");
        assert_eq!(Method::Baseline.to_string(), "baseline");
    }
}
