//! Small dense Q-networks and double-DQN training machinery shared by the
//! link scheduler and the slice allocator. Everything runs in f64 on one
//! thread; trained networks are plain values.

mod adam;
pub mod checkpoint;
mod ddqn;
mod epsilon;
mod mlp;
mod replay;

pub use adam::{AdamState, DEFAULT_BETA1, DEFAULT_BETA2, DEFAULT_EPS_HAT};
pub use checkpoint::{checkpoint_load, checkpoint_save};
pub use ddqn::{
    ddqn_target, loss_and_gradients, sync_target, train_on_batch, DdqnAgent, TrainConfig,
};
pub use epsilon::{epsilon_at, epsilon_greedy, EpsilonSchedule};
pub use mlp::{argmax_masked, Dense, QNetwork};
pub use replay::{ReplayBuffer, Transition, DEFAULT_REPLAY_CAPACITY};
