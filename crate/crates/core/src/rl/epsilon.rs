use rand::Rng;

use super::mlp::argmax_masked;
use crate::error::{Error, Result};

/// Exponentially decaying exploration rate with a floor:
/// `max(epsilon_min, epsilon0 * decay^t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonSchedule {
    pub epsilon0: f64,
    pub decay: f64,
    pub epsilon_min: f64,
}

impl EpsilonSchedule {
    pub fn new(epsilon0: f64, decay: f64, epsilon_min: f64) -> Result<EpsilonSchedule> {
        let sched = EpsilonSchedule {
            epsilon0,
            decay,
            epsilon_min,
        };
        sched.validate()?;
        Ok(sched)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.decay) {
            return Err(Error::Config(format!("epsilon decay {} outside [0, 1]", self.decay)));
        }
        if !(0.0..=1.0).contains(&self.epsilon_min) || !(0.0..=1.0).contains(&self.epsilon0) {
            return Err(Error::Config("epsilon values must lie in [0, 1]".into()));
        }
        if self.epsilon_min > self.epsilon0 {
            return Err(Error::Config(format!(
                "epsilon_min {} exceeds epsilon0 {}",
                self.epsilon_min, self.epsilon0
            )));
        }
        Ok(())
    }

    pub fn at(&self, t: u64) -> f64 {
        let exp = i32::try_from(t).unwrap_or(i32::MAX);
        self.epsilon_min.max(self.epsilon0 * self.decay.powi(exp))
    }
}

pub fn epsilon_at(sched: &EpsilonSchedule, t: u64) -> f64 {
    sched.at(t)
}

/// Epsilon-greedy choice over the allowed actions. One uniform draw decides
/// explore vs exploit; exploring draws a second index among allowed actions.
pub fn epsilon_greedy<R: Rng + ?Sized>(
    q_values: &[f64],
    mask: Option<&[bool]>,
    epsilon: f64,
    rng: &mut R,
) -> Option<usize> {
    if rng.gen::<f64>() < epsilon {
        let allowed: Vec<usize> = (0..q_values.len())
            .filter(|&i| mask.map_or(true, |m| m.get(i).copied().unwrap_or(false)))
            .collect();
        if allowed.is_empty() {
            None
        } else {
            Some(allowed[rng.gen_range(0..allowed.len())])
        }
    } else {
        argmax_masked(q_values, mask)
    }
}
