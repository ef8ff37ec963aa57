use std::collections::VecDeque;

use rand::Rng;

use crate::error::{Error, Result};

pub const DEFAULT_REPLAY_CAPACITY: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub state: Vec<f64>,
    pub action: usize,
    pub reward: f64,
    pub next_state: Vec<f64>,
    pub terminal: bool,
    /// Actions allowed in `next_state`; `None` means all of them.
    pub next_mask: Option<Vec<bool>>,
}

/// Bounded FIFO experience store; the oldest transition is evicted first.
#[derive(Debug, Clone)]
pub struct ReplayBuffer {
    capacity: usize,
    storage: VecDeque<Transition>,
}

impl ReplayBuffer {
    pub fn new(capacity: usize) -> ReplayBuffer {
        assert!(capacity > 0, "replay capacity must be positive");
        ReplayBuffer {
            capacity,
            storage: VecDeque::with_capacity(capacity.min(4096)),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.storage.len()
    }

    pub fn is_empty(&self) -> bool {
        self.storage.is_empty()
    }

    pub fn push(&mut self, transition: Transition) {
        if self.storage.len() == self.capacity {
            self.storage.pop_front();
        }
        self.storage.push_back(transition);
    }

    /// Stored transitions, oldest first.
    pub fn iter(&self) -> impl Iterator<Item = &Transition> {
        self.storage.iter()
    }

    /// Draws `batch_size` transitions uniformly with replacement.
    pub fn sample<R: Rng + ?Sized>(&self, batch_size: usize, rng: &mut R) -> Result<Vec<&Transition>> {
        if batch_size == 0 || self.storage.len() < batch_size {
            return Err(Error::InsufficientData {
                have: self.storage.len(),
                need: batch_size,
            });
        }
        Ok((0..batch_size)
            .map(|_| &self.storage[rng.gen_range(0..self.storage.len())])
            .collect())
    }
}
