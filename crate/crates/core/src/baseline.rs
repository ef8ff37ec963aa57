//! Benchmark allocator: each slice in turn takes the base station with the
//! largest remaining residual (lowest index on ties) and consumes it.
//! Its own score gives +1 whenever the grant meets or exceeds the demand and
//! quadratic partial credit otherwise.

use crate::allocator::allocation_reward;
use crate::net_model::SliceId;

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineDecision {
    pub slice_id: SliceId,
    pub chosen_bs: usize,
    pub demand: f64,
    pub granted: f64,
    /// Meets-or-exceeds score.
    pub reward: f64,
}

impl BaselineDecision {
    /// The same decision scored with the allocator's quadratic reward.
    pub fn quadratic_reward(&self) -> f64 {
        allocation_reward(self.granted, self.demand)
    }
}

pub fn meets_or_exceeds_reward(granted: f64, demand: f64) -> f64 {
    if granted >= demand {
        1.0
    } else {
        allocation_reward(granted, demand)
    }
}

/// Returns the per-slice decisions and their summed meets-or-exceeds reward.
/// `demands` follow the fixed slice order.
pub fn baseline_select(demands: &[f64], residuals: &[f64]) -> (Vec<BaselineDecision>, f64) {
    let mut left = residuals.to_vec();
    let decisions: Vec<BaselineDecision> = demands
        .iter()
        .zip(SliceId::ALL.iter().cycle())
        .map(|(&demand, &slice_id)| {
            let pick = left
                .iter()
                .enumerate()
                .fold(None::<(usize, f64)>, |best, (i, &r)| match best {
                    Some((_, b)) if r <= b => best,
                    _ => Some((i, r)),
                })
                .map(|(i, _)| i);
            let (chosen_bs, granted) = match pick {
                Some(i) => (i + 1, std::mem::take(&mut left[i])),
                None => (1, 0.0),
            };
            BaselineDecision {
                slice_id,
                chosen_bs,
                demand,
                granted,
                reward: meets_or_exceeds_reward(granted, demand),
            }
        })
        .collect();
    let total = decisions.iter().map(|d| d.reward).sum();
    (decisions, total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let (d, total) = baseline_select(
            &[0.81, 0.54, 0.22],
            &[0.50, 0.39, 0.65, 0.75, 0.41, 0.37, 0.52],
        );
        let picks: Vec<usize> = d.iter().map(|x| x.chosen_bs).collect();
        assert_eq!(picks, vec![4, 3, 7]);
        assert!((d[0].reward - 0.9964).abs() < 1e-12);
        assert_eq!(d[1].reward, 1.0);
        assert_eq!(d[2].reward, 1.0);
        assert!((total - 2.9964).abs() < 1e-12);
        let quad: f64 = d.iter().map(BaselineDecision::quadratic_reward).sum();
        assert!((quad - (0.9964 + (1.0 - 0.11f64.powi(2)) + (1.0 - 0.3f64.powi(2)))).abs() < 1e-12);
    }

    #[test]
    fn ample_and_empty_residuals() {
        let (_, total) = baseline_select(&[0.2, 0.1, 0.3], &[0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.35]);
        assert_eq!(total, 3.0);
        let demands = [0.2, 0.1, 0.3];
        let (d, total) = baseline_select(&demands, &[0.0; 7]);
        assert!(d.iter().all(|x| x.granted == 0.0 && x.chosen_bs == 1));
        let expected: f64 = demands.iter().map(|r| 1.0 - r * r).sum();
        assert!((total - expected).abs() < 1e-12);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let (d, _) = baseline_select(&[0.1], &[0.3, 0.5, 0.5]);
        assert_eq!(d[0].chosen_bs, 2);
    }
}
