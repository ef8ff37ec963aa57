//! Trains a small Q-network for a few steps, checkpoints it with its Adam
//! state and restores both bit-exactly.

use iabsim::net_model::stream;
use iabsim::rl::{checkpoint_load, checkpoint_save, train_on_batch, AdamState, QNetwork, TrainConfig, Transition};

fn main() -> iabsim::Result<()> {
    let mut rng = stream(5);
    let mut online = QNetwork::new(&[4, 8, 3], &mut rng)?;
    let target = online.clone();
    let mut adam = AdamState::new(&online);
    let cfg = TrainConfig {
        learning_rate: 0.01,
        discount: 0.9,
        batch_size: 2,
        target_sync_interval: 2,
        episodes: 1,
        seed: 5,
    };
    let batch = [
        Transition {
            state: vec![0.1, 0.2, 0.3, 0.4],
            action: 1,
            reward: 1.0,
            next_state: vec![0.0; 4],
            terminal: true,
            next_mask: None,
        },
        Transition {
            state: vec![0.9, 0.1, 0.0, 0.5],
            action: 2,
            reward: 0.5,
            next_state: vec![0.1, 0.2, 0.3, 0.4],
            terminal: false,
            next_mask: None,
        },
    ];
    let refs: Vec<&Transition> = batch.iter().collect();
    for step in 0..5 {
        let loss = train_on_batch(&mut online, &target, &refs, &cfg, &mut adam)?;
        println!("step {step}: loss {loss:.6}");
    }

    let path = std::env::temp_dir().join("iabsim_example.ckpt");
    checkpoint_save(&online, &adam, &path)?;
    let (net, restored) = checkpoint_load(&path)?;
    assert_eq!(net, online);
    assert_eq!(restored, adam);
    println!("restored {} parameters from {}", net.parameter_count(), path.display());
    Ok(())
}
