//! Run configuration and persisted run reports.

use crate::circuit::GateCountReport;
use crate::error::{Error, Result};
use crate::hamiltonian::TermFilter;
use crate::simulator::{Executor, OccupationDistribution};
use crate::theory::ModelParams;
use crate::lattice::ModeOrdering;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Everything one run needs; JSON on disk, flags override fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub model: ModelParams,
    pub lattice_spacing: f64,
    pub lattice_extent: u32,
    pub term_filter: TermFilter,
    pub executor: Executor,
    /// Run oracle comparisons where register sizes allow.
    pub oracle: bool,
    pub snapshot_stride: u32,
    pub seed: u64,
    pub out_dir: String,
    /// Shot-sampling emulation; `None` reports exact marginals.
    pub shots: Option<u32>,
    /// Midpoint slice evaluation instead of the left endpoint.
    #[serde(default)]
    pub midpoint: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: ModelParams::default(),
            lattice_spacing: 1.0,
            lattice_extent: 1,
            term_filter: TermFilter::all(),
            executor: Executor::Strings,
            oracle: false,
            snapshot_stride: 1,
            seed: 7,
            out_dir: "out".into(),
            shots: None,
            midpoint: false,
        }
    }
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("bad config JSON: {e}")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LayoutSummary {
    pub total_qubits: usize,
    pub active_qubits: usize,
    pub fermionic_modes: usize,
    pub boson_modes: usize,
}

/// Persisted artifact of one run. `wall_clock_ms` is volatile and zeroed
/// in the canonical (determinism-checked) serialization.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub layout: LayoutSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate_counts: Option<GateCountReport>,
    pub norms: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prep_ops: Option<usize>,
    /// (n, ‖ψ_trotter − ψ_exact‖₂) pairs when oracle comparison ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_comparison: Option<Vec<(u32, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub occupations_csv: Option<String>,
    pub wall_clock_ms: f64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Serialization with volatile fields zeroed; byte-identical across
    /// reruns of the same config and seed.
    pub fn canonical_json(&self) -> String {
        let mut clone = self.clone();
        clone.wall_clock_ms = 0.0;
        serde_json::to_string_pretty(&clone).expect("report serializes")
    }
}

/// Occupation time series as CSV: step, t, mode_kappa, occupation, probability.
pub fn occupations_csv(snapshots: &[OccupationDistribution], ordering: &ModeOrdering) -> String {
    let mut out = String::from("step,t,mode_kappa,occupation,probability\n");
    for snap in snapshots {
        for (mode, probs) in &snap.probs {
            let kappa = ordering.kappa(mode).unwrap_or(usize::MAX);
            for (occ, p) in probs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{:.17e},{},{},{:.17e}",
                    snap.step, snap.time_t, kappa, occ, p
                );
            }
        }
    }
    out
}

/// Mode-ordering listing as CSV:
/// kappa, species, site_x, site_y, site_z, color, spin_or_pol.
pub fn modes_csv(ordering: &ModeOrdering) -> String {
    use crate::lattice::Species;
    let mut out = String::from("kappa,species,site_x,site_y,site_z,color,spin_or_pol\n");
    for (kappa, mode) in ordering.modes().iter().enumerate() {
        let (color, sp): (i64, i64) = match mode.species {
            Species::Quark { color, spin } => (color as i64, spin as i64),
            Species::AntiQuark { color, spin } => (color as i64, spin as i64),
            Species::Ghost { adjoint } => (adjoint as i64, -1),
            Species::AntiGhost { adjoint } => (adjoint as i64, -1),
            Species::GaugeBoson { adjoint, polarization } => (adjoint as i64, polarization as i64),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            kappa,
            mode.species.label(),
            mode.site[0],
            mode.site[1],
            mode.site[2],
            color,
            sp
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_roundtrip_identity() {
        let mut cfg = RunConfig::default();
        cfg.model.group_n = 3;
        cfg.term_filter = TermFilter::only([crate::hamiltonian::TermLabel::Fi]);
        cfg.shots = Some(512);
        let json = cfg.to_json();
        let back = RunConfig::from_json(&json).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn canonical_report_zeroes_wall_clock() {
        let report = RunReport {
            config: RunConfig::default(),
            layout: LayoutSummary {
                total_qubits: 20,
                active_qubits: 20,
                fermionic_modes: 8,
                boson_modes: 6,
            },
            gate_counts: None,
            norms: vec![1.0],
            prep_ops: None,
            oracle_comparison: None,
            occupations_csv: None,
            wall_clock_ms: 123.4,
        };
        let a = report.canonical_json();
        let mut other = report.clone();
        other.wall_clock_ms = 999.9;
        assert_eq!(a, other.canonical_json());
        assert!(report.to_json().contains("123.4"));
    }

    #[test]
    fn modes_csv_has_header_and_rows() {
        let params = ModelParams::default();
        let lattice = crate::lattice::build_lattice(1.0, 1).unwrap();
        let ordering = crate::lattice::enumerate_modes(&lattice, &params).unwrap();
        let csv = modes_csv(&ordering);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "kappa,species,site_x,site_y,site_z,color,spin_or_pol");
        assert_eq!(lines.len(), 1 + ordering.len());
        assert!(lines[1].starts_with("0,quark,0,0,0,0,0"));
    }
}
