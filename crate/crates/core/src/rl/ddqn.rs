use rand::Rng;

use super::adam::AdamState;
use super::epsilon::epsilon_greedy;
use super::mlp::{argmax_masked, Dense, QNetwork};
use super::replay::{ReplayBuffer, Transition};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub discount: f64,
    pub batch_size: usize,
    /// Environment steps between target-network syncs.
    pub target_sync_interval: u64,
    pub episodes: usize,
    pub seed: u64,
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Config(format!("learning rate {}", self.learning_rate)));
        }
        if !(0.0..=1.0).contains(&self.discount) {
            return Err(Error::Config(format!("discount {} outside [0, 1]", self.discount)));
        }
        if self.batch_size == 0 || self.target_sync_interval == 0 || self.episodes == 0 {
            return Err(Error::Config(
                "batch size, sync interval and episodes must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn check_pair(online: &QNetwork, target: &QNetwork) -> Result<()> {
    if !online.same_shape(target) {
        return Err(Error::Shape {
            context: "online/target networks",
            expected: online.parameter_count(),
            actual: target.parameter_count(),
        });
    }
    Ok(())
}

fn check_transition(tr: &Transition, net: &QNetwork) -> Result<()> {
    for (len, context) in [(tr.state.len(), "transition state"), (tr.next_state.len(), "transition next state")] {
        if len != net.input_dim() {
            return Err(Error::Shape {
                context,
                expected: net.input_dim(),
                actual: len,
            });
        }
    }
    if tr.action >= net.output_dim() {
        return Err(Error::Shape {
            context: "transition action",
            expected: net.output_dim(),
            actual: tr.action,
        });
    }
    Ok(())
}

/// Double-Q target: the online network picks the next action, the target
/// network values it. Terminal transitions return the reward alone.
pub fn ddqn_target(tr: &Transition, online: &QNetwork, target: &QNetwork, discount: f64) -> Result<f64> {
    check_pair(online, target)?;
    check_transition(tr, online)?;
    if tr.terminal {
        return Ok(tr.reward);
    }
    let next_online = online.forward(&tr.next_state)?;
    let Some(best) = argmax_masked(&next_online, tr.next_mask.as_deref()) else {
        return Ok(tr.reward);
    };
    let next_target = target.forward(&tr.next_state)?;
    Ok(tr.reward + discount * next_target[best])
}

/// Mean squared Bellman error over `batch` for fixed `targets`, with its
/// gradient. Only the taken action's output contributes.
pub fn loss_and_gradients(
    online: &QNetwork,
    batch: &[&Transition],
    targets: &[f64],
) -> Result<(f64, Vec<Dense>)> {
    if batch.is_empty() || batch.len() != targets.len() {
        return Err(Error::Shape {
            context: "training batch",
            expected: targets.len(),
            actual: batch.len(),
        });
    }
    let scale = 1.0 / batch.len() as f64;
    let mut grads = online.zeros_like();
    let mut loss = 0.0;
    let mut out_grad = vec![0.0; online.output_dim()];
    for (tr, &y) in batch.iter().zip(targets) {
        check_transition(tr, online)?;
        let acts = online.forward_trace(&tr.state)?;
        let q = acts.last().unwrap()[tr.action];
        let err = q - y;
        loss += err * err * scale;
        out_grad.iter_mut().for_each(|g| *g = 0.0);
        out_grad[tr.action] = 2.0 * err * scale;
        online.backward(&acts, &out_grad, &mut grads);
    }
    Ok((loss, grads))
}

/// One Adam step on the mean squared double-Q error. Returns the pre-update loss.
pub fn train_on_batch(
    online: &mut QNetwork,
    target: &QNetwork,
    batch: &[&Transition],
    config: &TrainConfig,
    adam: &mut AdamState,
) -> Result<f64> {
    if batch.is_empty() {
        return Err(Error::InsufficientData { have: 0, need: 1 });
    }
    let targets = batch
        .iter()
        .map(|tr| ddqn_target(tr, online, target, config.discount))
        .collect::<Result<Vec<_>>>()?;
    let (loss, grads) = loss_and_gradients(online, batch, &targets)?;
    if !loss.is_finite() {
        return Err(Error::Numeric(format!(
            "loss {loss} at optimizer step {}",
            adam.step_count + 1
        )));
    }
    adam.step(online, &grads, config.learning_rate)?;
    if !online.is_finite() {
        return Err(Error::Numeric(format!(
            "parameters diverged at optimizer step {}",
            adam.step_count
        )));
    }
    Ok(loss)
}

pub fn sync_target(online: &QNetwork, target: &mut QNetwork) -> Result<()> {
    target.copy_from(online)
}

/// Online/target pair with its optimizer state and replay memory.
#[derive(Debug, Clone)]
pub struct DdqnAgent {
    pub online: QNetwork,
    pub target: QNetwork,
    pub adam: AdamState,
    pub replay: ReplayBuffer,
    pub config: TrainConfig,
    env_steps: u64,
}

impl DdqnAgent {
    pub fn new<R: Rng + ?Sized>(
        layer_dims: &[usize],
        config: TrainConfig,
        replay_capacity: usize,
        rng: &mut R,
    ) -> Result<DdqnAgent> {
        config.validate()?;
        let online = QNetwork::new(layer_dims, rng)?;
        Ok(DdqnAgent {
            target: online.clone(),
            adam: AdamState::new(&online),
            online,
            replay: ReplayBuffer::new(replay_capacity),
            config,
            env_steps: 0,
        })
    }

    pub fn env_steps(&self) -> u64 {
        self.env_steps
    }

    pub fn act<R: Rng + ?Sized>(
        &self,
        state: &[f64],
        mask: Option<&[bool]>,
        epsilon: f64,
        rng: &mut R,
    ) -> Result<usize> {
        let q = self.online.forward(state)?;
        epsilon_greedy(&q, mask, epsilon, rng)
            .ok_or_else(|| Error::Action("no allowed action".into()))
    }

    pub fn remember(&mut self, transition: Transition) {
        self.replay.push(transition);
    }

    /// Accounts for one environment step: trains on a replay batch once the
    /// buffer holds a full batch, then syncs the target every C steps.
    pub fn env_step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Option<f64>> {
        let mut loss = None;
        if self.replay.len() >= self.config.batch_size {
            let batch = self.replay.sample(self.config.batch_size, rng)?;
            loss = Some(train_on_batch(
                &mut self.online,
                &self.target,
                &batch,
                &self.config,
                &mut self.adam,
            )?);
        }
        self.env_steps += 1;
        if self.env_steps % self.config.target_sync_interval == 0 {
            sync_target(&self.online, &mut self.target)?;
        }
        Ok(loss)
    }
}
