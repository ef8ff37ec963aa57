//! CSV emission. Every file opens with `#iabsim v<version> seed=<seed>`.

use std::io::{self, Write};

use super::compare::Comparison;
use super::metrics::MetricsRow;
use crate::allocator::AllocationDecision;
use crate::scheduler::AccuracyReport;

pub fn csv_header(seed: u64) -> String {
    format!("#iabsim v{} seed={seed}", env!("CARGO_PKG_VERSION"))
}

pub fn write_scheduler_rewards<W: Write>(
    w: &mut W,
    seed: u64,
    rewards: &[f64],
    link_counts: &[usize],
) -> io::Result<()> {
    writeln!(w, "{}", csv_header(seed))?;
    writeln!(w, "episode,reward,links")?;
    for (i, (r, n)) in rewards.iter().zip(link_counts).enumerate() {
        writeln!(w, "{i},{r:.6},{n}")?;
    }
    Ok(())
}

pub fn write_reward_curves<W: Write>(w: &mut W, seed: u64, band: &[f64], antenna: &[f64]) -> io::Result<()> {
    writeln!(w, "{}", csv_header(seed))?;
    writeln!(w, "episode,band_reward,antenna_reward")?;
    for (i, (b, a)) in band.iter().zip(antenna).enumerate() {
        writeln!(w, "{i},{b:.6},{a:.6}")?;
    }
    Ok(())
}

fn decision_fields(d: &AllocationDecision) -> String {
    format!(
        "{},{},{},{},{:.6},{:.6},{:.6}",
        d.interval, d.slice_id, d.resource, d.chosen_bs, d.demand, d.granted, d.reward
    )
}

pub fn write_decision_log<W: Write>(
    w: &mut W,
    seed: u64,
    episode: usize,
    decisions: &[AllocationDecision],
) -> io::Result<()> {
    writeln!(w, "{}", csv_header(seed))?;
    writeln!(w, "episode,interval,slice,resource,chosen_bs,demand,granted,reward")?;
    for d in decisions {
        writeln!(w, "{episode},{}", decision_fields(d))?;
    }
    Ok(())
}

/// Per-snapshot rows followed by a `#summary` comment line.
pub fn write_evaluation<W: Write>(w: &mut W, seed: u64, report: &AccuracyReport) -> io::Result<()> {
    writeln!(w, "{}", csv_header(seed))?;
    writeln!(
        w,
        "snapshot,links,activated_agent,activated_oracle,matches,reward_agent,reward_oracle,infer_seconds"
    )?;
    for r in &report.rows {
        writeln!(
            w,
            "{},{},{},{},{},{:.6},{:.6},{:.9}",
            r.snapshot,
            r.links,
            r.activated_agent,
            r.activated_oracle,
            r.matches,
            r.reward_agent,
            r.reward_oracle,
            r.infer_seconds
        )?;
    }
    let reward_agent: f64 = report.rows.iter().map(|r| r.reward_agent).sum();
    let reward_oracle: f64 = report.rows.iter().map(|r| r.reward_oracle).sum();
    writeln!(
        w,
        "#summary accuracy={:.6} reward_agent={reward_agent:.6} reward_oracle={reward_oracle:.6} mean_infer_s={:.9} median_infer_s={:.9}",
        report.accuracy, report.mean_infer_seconds, report.median_infer_seconds
    )
}

pub fn write_comparison_rewards<W: Write>(w: &mut W, seed: u64, cmp: &Comparison) -> io::Result<()> {
    writeln!(w, "{}", csv_header(seed))?;
    writeln!(w, "episode,day_seed,method,band_reward,antenna_reward,total_reward")?;
    for r in &cmp.rewards {
        writeln!(
            w,
            "{},{},{},{:.6},{:.6},{:.6}",
            r.episode,
            r.day_seed,
            r.method,
            r.band_reward,
            r.antenna_reward,
            r.total()
        )?;
    }
    Ok(())
}

pub fn write_throughput<W: Write>(w: &mut W, seed: u64, rows: &[MetricsRow]) -> io::Result<()> {
    writeln!(w, "{}", csv_header(seed))?;
    writeln!(w, "episode,interval,method,resource,reward,allocated_total,demand_total,waste")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6}",
            r.episode, r.interval, r.method, r.resource, r.reward, r.allocated_total, r.demand_total, r.waste
        )?;
    }
    Ok(())
}

pub fn write_comparison_decisions<W: Write>(w: &mut W, seed: u64, cmp: &Comparison) -> io::Result<()> {
    writeln!(w, "{}", csv_header(seed))?;
    writeln!(w, "method,episode,interval,slice,resource,chosen_bs,demand,granted,reward")?;
    for (method, episode, d) in &cmp.decisions {
        writeln!(w, "{method},{episode},{}", decision_fields(d))?;
    }
    Ok(())
}
