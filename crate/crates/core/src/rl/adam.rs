use super::mlp::{Dense, QNetwork};
use crate::error::{Error, Result};

pub const DEFAULT_BETA1: f64 = 0.9;
pub const DEFAULT_BETA2: f64 = 0.999;
pub const DEFAULT_EPS_HAT: f64 = 1e-8;

/// Adam moment estimates for one network.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub first_moment: Vec<Dense>,
    pub second_moment: Vec<Dense>,
    pub step_count: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps_hat: f64,
}

impl AdamState {
    pub fn new(net: &QNetwork) -> AdamState {
        AdamState {
            first_moment: net.zeros_like(),
            second_moment: net.zeros_like(),
            step_count: 0,
            beta1: DEFAULT_BETA1,
            beta2: DEFAULT_BETA2,
            eps_hat: DEFAULT_EPS_HAT,
        }
    }

    pub fn matches(&self, net: &QNetwork) -> bool {
        let shape = |blocks: &[Dense]| {
            blocks.len() == net.layers().len()
                && blocks
                    .iter()
                    .zip(net.layers())
                    .all(|(b, l)| b.inputs == l.inputs && b.outputs == l.outputs)
        };
        shape(&self.first_moment) && shape(&self.second_moment)
    }

    pub fn is_finite(&self) -> bool {
        self.first_moment
            .iter()
            .chain(&self.second_moment)
            .flat_map(Dense::params)
            .all(|v| v.is_finite())
    }

    /// One bias-corrected Adam update of `net` with gradients `grads`.
    pub fn step(&mut self, net: &mut QNetwork, grads: &[Dense], learning_rate: f64) -> Result<()> {
        if !self.matches(net) || grads.len() != net.layers().len() {
            return Err(Error::Shape {
                context: "adam step",
                expected: net.layers().len(),
                actual: grads.len(),
            });
        }
        self.step_count += 1;
        let t = self.step_count as f64;
        let (b1, b2, eps) = (self.beta1, self.beta2, self.eps_hat);
        let corr1 = 1.0 - b1.powf(t);
        let corr2 = 1.0 - b2.powf(t);

        for (((layer, g), m), v) in net
            .layers_mut()
            .iter_mut()
            .zip(grads)
            .zip(&mut self.first_moment)
            .zip(&mut self.second_moment)
        {
            for (((p, &g), m), v) in layer
                .params_mut()
                .zip(g.params())
                .zip(m.params_mut())
                .zip(v.params_mut())
            {
                *m = b1 * *m + (1.0 - b1) * g;
                *v = b2 * *v + (1.0 - b2) * g * g;
                let m_hat = *m / corr1;
                let v_hat = *v / corr2;
                *p -= learning_rate * m_hat / (v_hat.sqrt() + eps);
            }
        }
        Ok(())
    }
}
