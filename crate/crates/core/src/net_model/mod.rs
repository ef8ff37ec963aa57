//! Network data model: nodes, candidate links, slice demand and residual load
//! profiles, plus the deterministic day-trace generator.
//!
//! Node numbering is fixed: index 0 is the donor, `1..=B` are the base
//! stations BS1..BSB and `B+1..=B+U` are the user equipments UE1..UEU.

mod generate;
mod trace;

use std::fmt;

pub use generate::{
    generate_day, generate_snapshot, residual_load, sample_slice_profiles, stream, substream,
    validate_snapshot, RandomStream,
};
pub use trace::{load_trace, parse_trace, save_trace, write_trace};

use crate::error::{Error, Result};

/// Number of 15-minute intervals in one simulated day.
pub const INTERVALS_PER_DAY: usize = 96;

/// Raw slice bandwidth ranges in MB, inclusive.
pub const EMBB_RANGE_MB: (u32, u32) = (8000, 20000);
pub const URLLC_RANGE_MB: (u32, u32) = (500, 3000);
pub const EMTC_RANGE_MB: (u32, u32) = (500, 2500);
/// Raw per-slice antenna demand range, inclusive.
pub const ANTENNA_DEMAND_RANGE: (u32, u32) = (1, 10);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    pub const DONOR: NodeId = NodeId(0);

    /// Base station `n` (1-based, BS1 is `bs(1)`).
    pub fn bs(n: usize) -> NodeId {
        NodeId(n)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Donor,
    BaseStation,
    UserEquipment,
}

impl NodeKind {
    pub fn is_infrastructure(self) -> bool {
        !matches!(self, NodeKind::UserEquipment)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub antenna_budget: u32,
}

/// Link class: 0 for BS-BS / BS-donor backhaul, 1 for UE access.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkType {
    Infrastructure = 0,
    Access = 1,
}

impl LinkType {
    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn from_u8(v: u8) -> Option<LinkType> {
        match v {
            0 => Some(LinkType::Infrastructure),
            1 => Some(LinkType::Access),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkCandidate {
    pub link_id: usize,
    pub src: NodeId,
    pub dst: NodeId,
    /// Normalized bandwidth demand / urgency in [0, 1].
    pub weight: f64,
    pub link_type: LinkType,
}

impl LinkCandidate {
    pub fn touches(&self, node: NodeId) -> bool {
        self.src == node || self.dst == node
    }

    pub fn connects(&self, a: NodeId, b: NodeId) -> bool {
        (self.src == a && self.dst == b) || (self.src == b && self.dst == a)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopologySnapshot {
    pub interval_index: usize,
    pub nodes: Vec<Node>,
    pub links: Vec<LinkCandidate>,
}

impl TopologySnapshot {
    pub fn base_station_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::BaseStation)
            .count()
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(id.0)
    }

    /// Builds the node list of the hub scenario.
    pub fn scenario_nodes(base_stations: usize, user_equipments: usize, antennas: u32) -> Vec<Node> {
        let mut nodes = Vec::with_capacity(1 + base_stations + user_equipments);
        nodes.push(Node {
            id: NodeId::DONOR,
            kind: NodeKind::Donor,
            antenna_budget: antennas,
        });
        for b in 1..=base_stations {
            nodes.push(Node {
                id: NodeId(b),
                kind: NodeKind::BaseStation,
                antenna_budget: antennas,
            });
        }
        for u in 1..=user_equipments {
            nodes.push(Node {
                id: NodeId(base_stations + u),
                kind: NodeKind::UserEquipment,
                antenna_budget: 1,
            });
        }
        nodes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SliceId {
    Embb,
    Urllc,
    Emtc,
}

impl SliceId {
    /// Fixed processing order of slices within an interval.
    pub const ALL: [SliceId; 3] = [SliceId::Embb, SliceId::Urllc, SliceId::Emtc];

    pub fn name(self) -> &'static str {
        match self {
            SliceId::Embb => "eMBB",
            SliceId::Urllc => "uRLLC",
            SliceId::Emtc => "eMTC",
        }
    }

    pub fn parse(s: &str) -> Option<SliceId> {
        SliceId::ALL.into_iter().find(|id| id.name() == s)
    }

    pub fn band_range_mb(self) -> (u32, u32) {
        match self {
            SliceId::Embb => EMBB_RANGE_MB,
            SliceId::Urllc => URLLC_RANGE_MB,
            SliceId::Emtc => EMTC_RANGE_MB,
        }
    }
}

impl fmt::Display for SliceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Resource {
    Bandwidth,
    Antenna,
}

impl Resource {
    pub const ALL: [Resource; 2] = [Resource::Bandwidth, Resource::Antenna];

    pub fn name(self) -> &'static str {
        match self {
            Resource::Bandwidth => "bandwidth",
            Resource::Antenna => "antenna",
        }
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceProfile {
    pub interval_index: usize,
    pub bs: NodeId,
    pub slice_id: SliceId,
    /// Fraction of the network bandwidth cap.
    pub band_demand: f64,
    /// Fraction of the per-BS antenna count K.
    pub antenna_demand: f64,
}

impl SliceProfile {
    pub fn demand(&self, resource: Resource) -> f64 {
        match resource {
            Resource::Bandwidth => self.band_demand,
            Resource::Antenna => self.antenna_demand,
        }
    }

    /// Bandwidth demand in MB under the given cap.
    pub fn band_demand_mb(&self, cap_mb: u32) -> f64 {
        self.band_demand * f64::from(cap_mb)
    }
}

/// Residual resources per base station after link scheduling. Index `i`
/// holds BS(i+1).
#[derive(Debug, Clone, PartialEq)]
pub struct LoadProfile {
    pub interval_index: usize,
    pub residual_band: Vec<f64>,
    pub residual_antennas: Vec<f64>,
}

impl LoadProfile {
    pub fn base_station_count(&self) -> usize {
        self.residual_band.len()
    }

    pub fn residuals(&self, resource: Resource) -> &[f64] {
        match resource {
            Resource::Bandwidth => &self.residual_band,
            Resource::Antenna => &self.residual_antennas,
        }
    }

    pub fn residuals_mut(&mut self, resource: Resource) -> &mut [f64] {
        match resource {
            Resource::Bandwidth => &mut self.residual_band,
            Resource::Antenna => &mut self.residual_antennas,
        }
    }

    /// Residual of BS `bs` (1-based).
    pub fn residual(&self, resource: Resource, bs: usize) -> Option<f64> {
        bs.checked_sub(1)
            .and_then(|i| self.residuals(resource).get(i).copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub base_stations: usize,
    pub user_equipments: usize,
    /// Directional antennas per BS and at the donor (K).
    pub antennas: u32,
    /// Bandwidth normalization cap in MB.
    pub bandwidth_cap_mb: u32,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            base_stations: 7,
            user_equipments: 10,
            antennas: 14,
            bandwidth_cap_mb: 25_000,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.base_stations == 0 {
            return Err(Error::Config("scenario needs at least one base station".into()));
        }
        if self.antennas == 0 {
            return Err(Error::Config("antenna count K must be at least 1".into()));
        }
        if self.bandwidth_cap_mb < EMBB_RANGE_MB.1 {
            return Err(Error::Config(format!(
                "bandwidth cap {} MB is below the largest slice demand {} MB",
                self.bandwidth_cap_mb, EMBB_RANGE_MB.1
            )));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        1 + self.base_stations + self.user_equipments
    }

    pub fn link_count(&self) -> usize {
        self.base_stations + self.user_equipments
    }
}

/// One simulated day: 96 snapshots with the BS1 slice demands of each interval.
#[derive(Debug, Clone, PartialEq)]
pub struct DayTrace {
    pub seed: u64,
    pub scenario: ScenarioConfig,
    pub snapshots: Vec<TopologySnapshot>,
    pub slice_profiles: Vec<[SliceProfile; 3]>,
}
