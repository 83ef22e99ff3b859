//! Physical parameters and continuum kinematics.
//!
//! Everything downstream (mode enumeration, Hamiltonian coefficients, gate
//! angles) is a function of the data built here: SU(N) generators t^a with
//! Tr(t^a t^b) = δ^{ab}/2 and their structure constants, Dirac matrices in
//! the standard (Dirac) representation, spinors normalized to u†u = 2ω,
//! polarization vectors in a fixed axis convention, and the complex vertex
//! coefficients W that become Pauli-term weights.

mod dirac;
mod group;
mod polarization;
mod vertex;

pub use dirac::{dirac_spinor, DiracData, SpinorKind};
pub use group::{su_n_generators, GroupData};
pub use polarization::polarization_vector;
pub use vertex::{
    fermion_vertex_w, fermion_vertex_w_general, gluon_vertex_w, FermionLeg, WCoeffFermion,
    WCoeffGluon,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Model parameters for one simulation run.
///
/// `gluon_mass_regulator` is a desk-scale infrared regulator: massless gauge
/// modes at zero lattice momentum have ω = 0 and the 1/√(2ω) field measure
/// is singular, so single-site runs set a small μ and use ω = √(|p|² + μ²)
/// for gluon and ghost modes. μ = 0 keeps the massless dispersion and any
/// active gauge mode with ω < 1e−9 is a hard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// N of SU(N); N ≥ 2.
    pub group_n: u32,
    /// Gauge coupling g.
    pub coupling_g: f64,
    /// Fermion mass m ≥ 0.
    pub fermion_mass_m: f64,
    /// Infrared regulator μ ≥ 0 for gauge/ghost dispersion.
    pub gluon_mass_regulator: f64,
    /// Boson occupation truncation 𝒩 ≥ 1.
    pub boson_cutoff: u32,
    /// Number of polarization states per gauge mode: 2 (transverse) or 4.
    pub polarization_count: u32,
    /// Whether ghost/antighost modes are enumerated and encoded.
    pub include_ghosts: bool,
    /// Trotter slice duration Δt > 0.
    pub dt: f64,
    /// Number of Trotter slices n ≥ 1.
    pub steps_n: u32,
    /// Evolution start time t₀.
    pub t0: f64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if self.group_n < 2 {
            return Err(Error::InvalidParameter(format!(
                "group_n must be ≥ 2, got {}",
                self.group_n
            )));
        }
        if self.boson_cutoff < 1 {
            return Err(Error::InvalidParameter("boson_cutoff must be ≥ 1".into()));
        }
        if !(self.dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be > 0, got {}", self.dt)));
        }
        if self.steps_n < 1 {
            return Err(Error::InvalidParameter("steps_n must be ≥ 1".into()));
        }
        if self.polarization_count != 2 && self.polarization_count != 4 {
            return Err(Error::InvalidParameter(format!(
                "polarization_count must be 2 or 4, got {}",
                self.polarization_count
            )));
        }
        if self.fermion_mass_m < 0.0 || self.gluon_mass_regulator < 0.0 {
            return Err(Error::InvalidParameter("masses must be ≥ 0".into()));
        }
        Ok(())
    }

    /// Quark/antiquark energy ω = √(|p|² + m²).
    pub fn fermion_omega(&self, p: [f64; 3]) -> f64 {
        (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + self.fermion_mass_m * self.fermion_mass_m)
            .sqrt()
    }

    /// Gauge-sector (gluon, ghost) energy with the infrared regulator.
    pub fn gauge_omega(&self, p: [f64; 3]) -> f64 {
        let mu = self.gluon_mass_regulator;
        (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mu * mu).sqrt()
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            group_n: 2,
            coupling_g: 0.1,
            fermion_mass_m: 1.0,
            gluon_mass_regulator: 1.0,
            boson_cutoff: 1,
            polarization_count: 2,
            include_ghosts: false,
            dt: 0.05,
            steps_n: 10,
            t0: 0.0,
        }
    }
}
