//! Momentum-space lattice Γ = aℤ³ and the total mode ordering 𝒦.
//!
//! Every second-quantized mode (species × lattice site × internal indices)
//! gets a stable integer key. Fermionic modes come first and consecutively
//! — quarks, antiquarks, ghosts, antighosts, each lexicographic in
//! (site, color, spin) — because Jordan-Wigner Z-strings are defined over
//! exactly this ordering. Gauge-boson modes follow.

use crate::error::{Error, Result};
use crate::theory::ModelParams;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Cubic momentum window of extent P̂ per axis, spacing a.
///
/// Coordinates run over a symmetric window around the origin,
/// {−⌊P̂/2⌋, …, −⌊P̂/2⌋ + P̂ − 1} per axis, so conjugate momenta exist for
/// odd extents. Physical momentum of a site is `spacing · coords`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumLattice {
    pub spacing_a: f64,
    pub extent_phat: u32,
    pub sites: Vec<[i32; 3]>,
}

impl MomentumLattice {
    pub fn volume(&self) -> usize {
        self.sites.len()
    }

    pub fn momentum(&self, site: [i32; 3]) -> [f64; 3] {
        [
            self.spacing_a * site[0] as f64,
            self.spacing_a * site[1] as f64,
            self.spacing_a * site[2] as f64,
        ]
    }

    pub fn contains(&self, site: [i32; 3]) -> bool {
        let lo = -(self.extent_phat as i32 / 2);
        let hi = lo + self.extent_phat as i32 - 1;
        site.iter().all(|&c| c >= lo && c <= hi)
    }
}

/// Build the lattice window.
pub fn build_lattice(spacing: f64, extent: u32) -> Result<MomentumLattice> {
    if !(spacing > 0.0) {
        return Err(Error::InvalidParameter(format!("lattice spacing must be > 0, got {spacing}")));
    }
    if extent < 1 {
        return Err(Error::InvalidParameter("lattice extent must be ≥ 1".into()));
    }
    let lo = -(extent as i32 / 2);
    let hi = lo + extent as i32 - 1;
    let mut sites = Vec::with_capacity((extent as usize).pow(3));
    for x in lo..=hi {
        for y in lo..=hi {
            for z in lo..=hi {
                sites.push([x, y, z]);
            }
        }
    }
    Ok(MomentumLattice {
        spacing_a: spacing,
        extent_phat: extent,
        sites,
    })
}

/// Species tag of a second-quantized mode; indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Species {
    Quark { color: u8, spin: u8 },
    AntiQuark { color: u8, spin: u8 },
    Ghost { adjoint: u8 },
    AntiGhost { adjoint: u8 },
    GaugeBoson { adjoint: u8, polarization: u8 },
}

impl Species {
    pub fn is_fermionic(&self) -> bool {
        !matches!(self, Species::GaugeBoson { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Species::Quark { .. } => "quark",
            Species::AntiQuark { .. } => "antiquark",
            Species::Ghost { .. } => "ghost",
            Species::AntiGhost { .. } => "antighost",
            Species::GaugeBoson { .. } => "gauge_boson",
        }
    }
}

/// One second-quantized mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeKey {
    pub species: Species,
    pub site: [i32; 3],
}

/// Bijection ModeKey ↔ 𝒦 with fermionic modes consecutive from zero.
#[derive(Debug, Clone)]
pub struct ModeOrdering {
    modes: Vec<ModeKey>,
    index: BTreeMap<ModeKey, usize>,
    fermionic_count: usize,
}

impl ModeOrdering {
    /// Build an ordering from an explicit mode list (restricted desk systems
    /// and oracle tests). Fermionic modes must precede bosonic ones and keys
    /// must be unique.
    pub fn from_modes(modes: Vec<ModeKey>) -> Result<Self> {
        let fermionic_count = modes.iter().filter(|m| m.species.is_fermionic()).count();
        if modes[..fermionic_count].iter().any(|m| !m.species.is_fermionic()) {
            return Err(Error::InvalidParameter(
                "fermionic modes must precede bosonic modes".into(),
            ));
        }
        let index: BTreeMap<ModeKey, usize> =
            modes.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        if index.len() != modes.len() {
            return Err(Error::InvalidParameter("duplicate mode keys".into()));
        }
        Ok(ModeOrdering { modes, index, fermionic_count })
    }

    pub fn kappa(&self, mode: &ModeKey) -> Option<usize> {
        self.index.get(mode).copied()
    }

    pub fn mode(&self, kappa: usize) -> Option<&ModeKey> {
        self.modes.get(kappa)
    }

    pub fn modes(&self) -> &[ModeKey] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Number of fermionic modes; these occupy 𝒦 = 0..fermionic_count.
    pub fn fermionic_count(&self) -> usize {
        self.fermionic_count
    }

    pub fn fermionic_modes(&self) -> &[ModeKey] {
        &self.modes[..self.fermionic_count]
    }

    pub fn boson_modes(&self) -> &[ModeKey] {
        &self.modes[self.fermionic_count..]
    }
}

/// Enumerate all modes of the model on the lattice in the frozen order.
pub fn enumerate_modes(lattice: &MomentumLattice, params: &ModelParams) -> Result<ModeOrdering> {
    params.validate()?;
    let n = params.group_n as u8;
    let adj = (params.group_n * params.group_n - 1) as u8;
    let mut modes = Vec::new();
    for site in &lattice.sites {
        for color in 0..n {
            for spin in 0..2u8 {
                modes.push(ModeKey { species: Species::Quark { color, spin }, site: *site });
            }
        }
    }
    // sites iterate in lattice order which is already lexicographic; species
    // classes are kept contiguous so Z-strings stay within the fermion block
    let push_class = |modes: &mut Vec<ModeKey>, f: &dyn Fn([i32; 3]) -> Vec<ModeKey>| {
        for site in &lattice.sites {
            modes.extend(f(*site));
        }
    };
    push_class(&mut modes, &|site| {
        let mut v = Vec::new();
        for color in 0..n {
            for spin in 0..2u8 {
                v.push(ModeKey { species: Species::AntiQuark { color, spin }, site });
            }
        }
        v
    });
    if params.include_ghosts {
        push_class(&mut modes, &|site| {
            (0..adj).map(|adjoint| ModeKey { species: Species::Ghost { adjoint }, site }).collect()
        });
        push_class(&mut modes, &|site| {
            (0..adj)
                .map(|adjoint| ModeKey { species: Species::AntiGhost { adjoint }, site })
                .collect()
        });
    }
    let fermionic_count = modes.len();
    push_class(&mut modes, &|site| {
        let mut v = Vec::new();
        for adjoint in 0..adj {
            for polarization in 0..params.polarization_count as u8 {
                v.push(ModeKey { species: Species::GaugeBoson { adjoint, polarization }, site });
            }
        }
        v
    });

    let index: BTreeMap<ModeKey, usize> =
        modes.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    debug_assert_eq!(index.len(), modes.len(), "mode keys must be unique");
    Ok(ModeOrdering { modes, index, fermionic_count })
}

/// All coordinate triples with p₁ − p₂ + p₃ = 0 inside the window.
pub fn momentum_conserving_triples(lattice: &MomentumLattice) -> Vec<[[i32; 3]; 3]> {
    triples_with_signs(lattice, [1, -1, 1])
}

/// All coordinate quadruples with p₁ + p₂ − p₃ − p₄ = 0 inside the window.
pub fn momentum_conserving_quadruples(lattice: &MomentumLattice) -> Vec<[[i32; 3]; 4]> {
    quadruples_with_signs(lattice, [1, 1, -1, -1])
}

/// Triples (p₁,p₂,p₃) with s₁p₁ + s₂p₂ + s₃p₃ = 0; the last momentum is
/// solved for and window-checked, so this is O(𝒱²).
pub fn triples_with_signs(lattice: &MomentumLattice, signs: [i32; 3]) -> Vec<[[i32; 3]; 3]> {
    let mut out = Vec::new();
    for &p1 in &lattice.sites {
        for &p2 in &lattice.sites {
            let mut p3 = [0i32; 3];
            for k in 0..3 {
                p3[k] = -(signs[0] * p1[k] + signs[1] * p2[k]) * signs[2];
            }
            if lattice.contains(p3) {
                out.push([p1, p2, p3]);
            }
        }
    }
    out
}

/// Quadruples with s₁p₁ + s₂p₂ + s₃p₃ + s₄p₄ = 0, O(𝒱³).
pub fn quadruples_with_signs(lattice: &MomentumLattice, signs: [i32; 4]) -> Vec<[[i32; 3]; 4]> {
    let mut out = Vec::new();
    for &p1 in &lattice.sites {
        for &p2 in &lattice.sites {
            for &p3 in &lattice.sites {
                let mut p4 = [0i32; 3];
                for k in 0..3 {
                    p4[k] =
                        -(signs[0] * p1[k] + signs[1] * p2[k] + signs[2] * p3[k]) * signs[3];
                }
                if lattice.contains(p4) {
                    out.push([p1, p2, p3, p4]);
                }
            }
        }
    }
    out
}
