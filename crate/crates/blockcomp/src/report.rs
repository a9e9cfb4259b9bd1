//! Stats records, one JSON object per line.

use blockcomp_core::engine::OpCounter;
use blockcomp_core::export::GateStats;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct StatsRecord {
    pub model: String,
    pub n: usize,
    pub style: String,
    pub target: String,
    pub path: String,
    pub steps: usize,
    pub time: f64,
    pub cnots: usize,
    pub rotations: usize,
    pub depth: usize,
    pub gates: usize,
    pub turnovers: u64,
    pub fusions: u64,
    pub effective_turnovers: u64,
    pub effective_fusions: u64,
    pub rearrangement_turnovers: u64,
}

impl StatsRecord {
    pub fn fill(&mut self, g: &GateStats, compression: &OpCounter, rearrangement: &OpCounter) {
        self.cnots = g.cnots;
        self.rotations = g.two_qubit_rotations;
        self.depth = g.depth;
        self.gates = g.gates;
        self.turnovers = compression.turnovers;
        self.fusions = compression.fusions;
        self.effective_turnovers = compression.effective_turnovers;
        self.effective_fusions = compression.effective_fusions;
        self.rearrangement_turnovers = rearrangement.turnovers;
    }

    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain struct serializes");
        s.push('\n');
        s
    }
}
