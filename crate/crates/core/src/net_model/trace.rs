//! Line-oriented day trace files.
//!
//! ```text
//! #seed=42
//! #cap_mb=25000
//! #K=14
//! T 0
//! L <link_id> <src> <dst> <weight> <type>
//! S <slice> <band_demand> <antenna_demand>
//! ```
//!
//! Reals are written with six decimals. Weights are generated on that grid
//! and antenna demands are snapped back to `count / K` on read, so
//! write -> parse -> write reproduces the file byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{
    DayTrace, LinkCandidate, LinkType, NodeId, ScenarioConfig, SliceId, SliceProfile,
    TopologySnapshot, INTERVALS_PER_DAY,
};
use crate::error::{Error, Result};

pub fn write_trace(day: &DayTrace) -> String {
    let mut out = String::new();
    writeln!(out, "#seed={}", day.seed).unwrap();
    writeln!(out, "#cap_mb={}", day.scenario.bandwidth_cap_mb).unwrap();
    writeln!(out, "#K={}", day.scenario.antennas).unwrap();
    for (snap, slices) in day.snapshots.iter().zip(&day.slice_profiles) {
        writeln!(out, "T {}", snap.interval_index).unwrap();
        for l in &snap.links {
            writeln!(
                out,
                "L {} {} {} {:.6} {}",
                l.link_id,
                l.src,
                l.dst,
                l.weight,
                l.link_type.as_u8()
            )
            .unwrap();
        }
        for s in slices {
            writeln!(
                out,
                "S {} {:.6} {:.6}",
                s.slice_id, s.band_demand, s.antenna_demand
            )
            .unwrap();
        }
    }
    out
}

pub fn save_trace(day: &DayTrace, path: &Path) -> Result<()> {
    fs::write(path, write_trace(day))?;
    Ok(())
}

pub fn load_trace(path: &Path) -> Result<DayTrace> {
    parse_trace(&fs::read_to_string(path)?)
}

struct RawInterval {
    t: usize,
    links: Vec<LinkCandidate>,
    slices: Vec<(SliceId, f64, f64)>,
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line_no: usize, what: &str) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Format(format!("line {line_no}: bad or missing {what}")))
}

fn header<T: std::str::FromStr>(line: Option<&str>, key: &str) -> Result<T> {
    line.and_then(|l| l.strip_prefix('#'))
        .and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Format(format!("missing or malformed header #{key}")))
}

pub fn parse_trace(text: &str) -> Result<DayTrace> {
    let mut lines = text.lines();
    let seed: u64 = header(lines.next(), "seed")?;
    let cap_mb: u32 = header(lines.next(), "cap_mb")?;
    let antennas: u32 = header(lines.next(), "K")?;
    if antennas == 0 {
        return Err(Error::Format("K must be positive".into()));
    }

    let mut intervals: Vec<RawInterval> = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 4;
        let mut toks = line.split_ascii_whitespace();
        match toks.next() {
            Some("T") => intervals.push(RawInterval {
                t: field(toks.next(), line_no, "interval index")?,
                links: Vec::new(),
                slices: Vec::new(),
            }),
            Some("L") => {
                let cur = intervals
                    .last_mut()
                    .ok_or_else(|| Error::Format(format!("line {line_no}: L before T")))?;
                let link_id = field(toks.next(), line_no, "link id")?;
                let src = NodeId(field(toks.next(), line_no, "src")?);
                let dst = NodeId(field(toks.next(), line_no, "dst")?);
                let weight = field(toks.next(), line_no, "weight")?;
                let ty: u8 = field(toks.next(), line_no, "link type")?;
                let link_type = LinkType::from_u8(ty)
                    .ok_or_else(|| Error::Format(format!("line {line_no}: link type {ty}")))?;
                cur.links.push(LinkCandidate {
                    link_id,
                    src,
                    dst,
                    weight,
                    link_type,
                });
            }
            Some("S") => {
                let cur = intervals
                    .last_mut()
                    .ok_or_else(|| Error::Format(format!("line {line_no}: S before T")))?;
                let name: String = field(toks.next(), line_no, "slice id")?;
                let slice = SliceId::parse(&name)
                    .ok_or_else(|| Error::Format(format!("line {line_no}: slice {name}")))?;
                let band: f64 = field(toks.next(), line_no, "band demand")?;
                let antenna: f64 = field(toks.next(), line_no, "antenna demand")?;
                cur.slices.push((slice, band, antenna));
            }
            None => continue,
            Some(other) => {
                return Err(Error::Format(format!(
                    "line {line_no}: unknown record '{other}'"
                )))
            }
        }
        if toks.next().is_some() {
            return Err(Error::Format(format!("line {line_no}: trailing fields")));
        }
    }

    if intervals.len() != INTERVALS_PER_DAY {
        return Err(Error::Format(format!(
            "expected {INTERVALS_PER_DAY} intervals, found {}",
            intervals.len()
        )));
    }

    let first = &intervals[0].links;
    let base_stations = first
        .iter()
        .filter(|l| l.link_type == LinkType::Infrastructure)
        .count();
    let user_equipments = first.len() - base_stations;
    let scenario = ScenarioConfig {
        base_stations,
        user_equipments,
        antennas,
        bandwidth_cap_mb: cap_mb,
    };

    let mut snapshots = Vec::with_capacity(INTERVALS_PER_DAY);
    let mut slice_profiles = Vec::with_capacity(INTERVALS_PER_DAY);
    for raw in intervals {
        if raw.slices.len() != 3 {
            return Err(Error::Format(format!(
                "interval {} has {} slice lines, expected 3",
                raw.t,
                raw.slices.len()
            )));
        }
        let k = f64::from(antennas);
        let profiles: Vec<SliceProfile> = raw
            .slices
            .into_iter()
            .map(|(slice_id, band, antenna)| SliceProfile {
                interval_index: raw.t,
                bs: NodeId::bs(1),
                slice_id,
                band_demand: band,
                antenna_demand: (antenna * k).round() / k,
            })
            .collect();
        slice_profiles.push(
            <[SliceProfile; 3]>::try_from(profiles).expect("length checked above"),
        );
        snapshots.push(TopologySnapshot {
            interval_index: raw.t,
            nodes: TopologySnapshot::scenario_nodes(base_stations, user_equipments, antennas),
            links: raw.links,
        });
    }

    Ok(DayTrace {
        seed,
        scenario,
        snapshots,
        slice_profiles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_model::generate_day;

    #[test]
    fn round_trip_is_exact() {
        let day = generate_day(42, &ScenarioConfig::default()).unwrap();
        let text = write_trace(&day);
        let parsed = parse_trace(&text).unwrap();
        assert_eq!(parsed, day);
        assert_eq!(write_trace(&parsed), text);
    }

    #[test]
    fn header_and_record_layout() {
        let day = generate_day(7, &ScenarioConfig::default()).unwrap();
        let text = write_trace(&day);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("#seed=7"));
        assert_eq!(lines.next(), Some("#cap_mb=25000"));
        assert_eq!(lines.next(), Some("#K=14"));
        assert_eq!(lines.next(), Some("T 0"));
        let l = lines.next().unwrap();
        assert!(l.starts_with("L 0 1 2 "), "{l}");
        // 1 T + 17 L + 3 S per interval
        assert_eq!(text.lines().count(), 3 + 96 * 21);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(parse_trace(""), Err(Error::Format(_))));
        let day = generate_day(1, &ScenarioConfig::default()).unwrap();
        let text = write_trace(&day);
        let truncated: String = text.lines().take(200).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_trace(&truncated), Err(Error::Format(_))));
        let garbled = text.replacen("L 0 1 2", "X 0 1 2", 1);
        assert!(matches!(parse_trace(&garbled), Err(Error::Format(_))));
    }
}
