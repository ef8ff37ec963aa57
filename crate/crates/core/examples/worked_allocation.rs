//! One interval of bandwidth borrowing for BS1: exhaustive oracle versus
//! the largest-residual baseline.

use iabsim::allocator::{allocation_reward, greedy_oracle_allocation};
use iabsim::baseline::{baseline_select, BaselineDecision};

fn main() {
    let demands = [0.81, 0.54, 0.22];
    let residuals = [0.50, 0.39, 0.65, 0.75, 0.41, 0.37, 0.52];

    let oracle = greedy_oracle_allocation(&demands, &residuals);
    let allocated: f64 = oracle.granted.iter().sum();
    let demanded: f64 = demands.iter().sum();
    println!("oracle picks {:?}", oracle.choices);
    for ((bs, g), d) in oracle.choices.iter().zip(&oracle.granted).zip(&demands) {
        println!("  BS{bs} grants {g:.2} for demand {d:.2}: reward {:.4}", allocation_reward(*g, *d));
    }
    println!(
        "  total {:.4}, allocated {allocated:.2} for {demanded:.2}, waste {:.2}",
        oracle.total_reward,
        allocated - demanded
    );

    let (picks, native) = baseline_select(&demands, &residuals);
    let quadratic: f64 = picks.iter().map(BaselineDecision::quadratic_reward).sum();
    let chosen: Vec<usize> = picks.iter().map(|p| p.chosen_bs).collect();
    println!("baseline picks {chosen:?}: meets-or-exceeds score {native:.4}, quadratic score {quadratic:.4}");
}
