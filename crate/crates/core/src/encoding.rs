//! Fock-occupation ↔ qubit-register maps.
//!
//! Fermionic modes get one qubit each (bit 1 = occupied), placed first so
//! that the qubit index of a fermionic mode equals its 𝒦. Each gauge-boson
//! mode gets a contiguous unary block of 𝒩+1 qubits; occupation h sets
//! exactly the marker bit at block position h. The all-unoccupied vacuum
//! therefore has every fermion bit clear and a marker at position 0 of
//! every block.

use crate::error::{Error, Result};
use crate::lattice::{ModeKey, ModeOrdering};
use crate::theory::ModelParams;
use serde::Serialize;
use std::collections::BTreeMap;

/// Hard cap on registers for which basis-index arithmetic is provided.
pub const INDEX_QUBIT_LIMIT: usize = 127;

#[derive(Debug, Clone)]
pub struct RegisterLayout {
    /// One qubit per fermionic mode, indexed by 𝒦.
    pub fermion_qubits: BTreeMap<ModeKey, usize>,
    /// Contiguous (𝒩+1)-qubit block start per gauge-boson mode.
    pub boson_blocks: BTreeMap<ModeKey, usize>,
    pub boson_levels: usize,
    pub total_qubits: usize,
}

impl RegisterLayout {
    /// Block qubits of a boson mode: start..start+𝒩+1.
    pub fn boson_block(&self, mode: &ModeKey) -> Option<std::ops::Range<usize>> {
        self.boson_blocks.get(mode).map(|&s| s..s + self.boson_levels)
    }

    pub fn qubit_of_fermion(&self, mode: &ModeKey) -> Option<usize> {
        self.fermion_qubits.get(mode).copied()
    }

    /// Per-qubit roles for the JSON dump.
    pub fn role_table(&self, ordering: &ModeOrdering) -> Vec<QubitRole> {
        let mut rows = vec![
            QubitRole { qubit: 0, mode_kappa: 0, role: String::new() };
            self.total_qubits
        ];
        for (mode, &q) in &self.fermion_qubits {
            rows[q] = QubitRole {
                qubit: q,
                mode_kappa: ordering.kappa(mode).unwrap_or(usize::MAX),
                role: "fermion".into(),
            };
        }
        for (mode, &start) in &self.boson_blocks {
            for h in 0..self.boson_levels {
                rows[start + h] = QubitRole {
                    qubit: start + h,
                    mode_kappa: ordering.kappa(mode).unwrap_or(usize::MAX),
                    role: format!("marker_{h}"),
                };
            }
        }
        rows
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QubitRole {
    pub qubit: usize,
    pub mode_kappa: usize,
    pub role: String,
}

/// Build the register layout from the mode ordering.
///
/// Always succeeds structurally; callers that need simulation must check
/// `total_qubits` against their capacity separately (gate counting works on
/// layouts of any size).
pub fn build_layout(ordering: &ModeOrdering, params: &ModelParams) -> Result<RegisterLayout> {
    params.validate()?;
    let levels = params.boson_cutoff as usize + 1;
    let mut fermion_qubits = BTreeMap::new();
    for (k, mode) in ordering.fermionic_modes().iter().enumerate() {
        fermion_qubits.insert(*mode, k);
    }
    let nf = ordering.fermionic_count();
    let mut boson_blocks = BTreeMap::new();
    for (b, mode) in ordering.boson_modes().iter().enumerate() {
        boson_blocks.insert(*mode, nf + b * levels);
    }
    let total_qubits = nf + ordering.boson_modes().len() * levels;
    Ok(RegisterLayout { fermion_qubits, boson_blocks, boson_levels: levels, total_qubits })
}

/// Occupation numbers for every mode: bosons in [0, 𝒩], fermions in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupationConfig {
    pub boson_occ: BTreeMap<ModeKey, u32>,
    pub fermion_occ: BTreeMap<ModeKey, u8>,
}

impl OccupationConfig {
    /// All-unoccupied vacuum over the layout's modes.
    pub fn vacuum(layout: &RegisterLayout) -> Self {
        OccupationConfig {
            boson_occ: layout.boson_blocks.keys().map(|m| (*m, 0)).collect(),
            fermion_occ: layout.fermion_qubits.keys().map(|m| (*m, 0)).collect(),
        }
    }
}

/// Basis index of an occupation configuration (qubit q ↔ bit q).
pub fn occ_to_basis_index(config: &OccupationConfig, layout: &RegisterLayout) -> Result<u128> {
    if layout.total_qubits > INDEX_QUBIT_LIMIT {
        return Err(Error::Capacity(format!(
            "basis-index arithmetic supports ≤ {INDEX_QUBIT_LIMIT} qubits, layout has {}",
            layout.total_qubits
        )));
    }
    let cutoff = layout.boson_levels as u32 - 1;
    let mut index: u128 = 0;
    for (mode, &q) in &layout.fermion_qubits {
        let occ = *config.fermion_occ.get(mode).ok_or_else(|| {
            Error::InvalidConfig(format!("missing fermion occupation for {mode:?}"))
        })?;
        if occ > 1 {
            return Err(Error::InvalidConfig(format!("fermion occupation {occ} > 1")));
        }
        index |= (occ as u128) << q;
    }
    for (mode, &start) in &layout.boson_blocks {
        let occ = *config.boson_occ.get(mode).ok_or_else(|| {
            Error::InvalidConfig(format!("missing boson occupation for {mode:?}"))
        })?;
        if occ > cutoff {
            return Err(Error::InvalidConfig(format!("boson occupation {occ} > cutoff {cutoff}")));
        }
        index |= 1u128 << (start + occ as usize);
    }
    Ok(index)
}

/// Inverse of [`occ_to_basis_index`]; fails on indices outside the valid
/// unary subspace.
pub fn basis_index_to_occ(index: u128, layout: &RegisterLayout) -> Result<OccupationConfig> {
    let mut config = OccupationConfig { boson_occ: BTreeMap::new(), fermion_occ: BTreeMap::new() };
    for (mode, &q) in &layout.fermion_qubits {
        config.fermion_occ.insert(*mode, ((index >> q) & 1) as u8);
    }
    for (mode, &start) in &layout.boson_blocks {
        let bits = (index >> start) & ((1u128 << layout.boson_levels) - 1);
        if bits.count_ones() != 1 {
            return Err(Error::InvalidConfig(format!(
                "boson block of {mode:?} has {} marker bits",
                bits.count_ones()
            )));
        }
        config.boson_occ.insert(*mode, bits.trailing_zeros());
    }
    Ok(config)
}

/// Predicate: every boson block carries exactly one marker bit.
pub fn valid_unary_subspace(layout: &RegisterLayout) -> impl Fn(u128) -> bool + '_ {
    move |index: u128| {
        layout.boson_blocks.values().all(|&start| {
            let bits = (index >> start) & ((1u128 << layout.boson_levels) - 1);
            bits.count_ones() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_lattice, enumerate_modes, Species};
    use proptest::prelude::*;

    fn setup(n: u32, cutoff: u32, extent: u32, ghosts: bool) -> (ModeOrdering, RegisterLayout, ModelParams) {
        let mut params = ModelParams::default();
        params.group_n = n;
        params.boson_cutoff = cutoff;
        params.include_ghosts = ghosts;
        let lattice = build_lattice(1.0, extent).unwrap();
        let ordering = enumerate_modes(&lattice, &params).unwrap();
        let layout = build_layout(&ordering, &params).unwrap();
        (ordering, layout, params)
    }

    #[test]
    fn qubit_totals_match_closed_form() {
        // [2(N²−1)(𝒩+1) + 4N]𝒱 with ghosts off, plus 2(N²−1)𝒱 with ghosts on.
        let (_, l, _) = setup(2, 1, 1, false);
        assert_eq!(l.total_qubits, 20);
        let (_, l, _) = setup(2, 1, 1, true);
        assert_eq!(l.total_qubits, 26);
        let (_, l, _) = setup(3, 1, 1, false);
        assert_eq!(l.total_qubits, 44);
    }

    #[test]
    fn qubit_total_formula_random_tuples() {
        let mut seed = 7u64;
        let mut rng = move |m: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % m
        };
        for _ in 0..10 {
            let n = 2 + rng(3) as u32;
            let cutoff = 1 + rng(3) as u32;
            let extent = 1 + rng(2) as u32;
            let (_, l, _) = setup(n, cutoff, extent, false);
            let v = (extent as usize).pow(3);
            let want = (2 * (n * n - 1) as usize * (cutoff as usize + 1) + 4 * n as usize) * v;
            assert_eq!(l.total_qubits, want, "N={n} 𝒩={cutoff} 𝒱={v}");
        }
    }

    #[test]
    fn vacuum_index_and_markers() {
        let (_, layout, _) = setup(2, 1, 1, false);
        let vac = OccupationConfig::vacuum(&layout);
        let idx = occ_to_basis_index(&vac, &layout).unwrap();
        // fermion bits all clear
        for &q in layout.fermion_qubits.values() {
            assert_eq!((idx >> q) & 1, 0);
        }
        // marker at position 0 of every block
        for &start in layout.boson_blocks.values() {
            assert_eq!((idx >> start) & 3, 1);
        }
        assert!(valid_unary_subspace(&layout)(idx));
    }

    #[test]
    fn single_quark_flips_one_bit() {
        let (ordering, layout, _) = setup(2, 1, 1, false);
        let vac = OccupationConfig::vacuum(&layout);
        let vac_idx = occ_to_basis_index(&vac, &layout).unwrap();
        let quark = *ordering
            .modes()
            .iter()
            .find(|m| matches!(m.species, Species::Quark { .. }))
            .unwrap();
        let mut cfg = vac.clone();
        cfg.fermion_occ.insert(quark, 1);
        let idx = occ_to_basis_index(&cfg, &layout).unwrap();
        assert_eq!((idx ^ vac_idx).count_ones(), 1);
    }

    #[test]
    fn top_occupation_marks_last_position() {
        let (ordering, layout, params) = setup(2, 2, 1, false);
        let boson = ordering.boson_modes()[0];
        let mut cfg = OccupationConfig::vacuum(&layout);
        cfg.boson_occ.insert(boson, params.boson_cutoff);
        let idx = occ_to_basis_index(&cfg, &layout).unwrap();
        let start = layout.boson_blocks[&boson];
        assert_eq!((idx >> (start + params.boson_cutoff as usize)) & 1, 1);
        assert_eq!((idx >> start) & 1, 0);
    }

    #[test]
    fn unary_predicate_rejects_bad_blocks() {
        let (_, layout, _) = setup(2, 1, 1, false);
        let ok = valid_unary_subspace(&layout);
        let vac = occ_to_basis_index(&OccupationConfig::vacuum(&layout), &layout).unwrap();
        assert!(ok(vac));
        let start = *layout.boson_blocks.values().next().unwrap();
        // two markers in one block
        assert!(!ok(vac | (1u128 << (start + 1))));
        // zero markers
        assert!(!ok(vac & !(1u128 << start)));
    }

    #[test]
    fn occupation_out_of_range_rejected() {
        let (ordering, layout, _) = setup(2, 1, 1, false);
        let mut cfg = OccupationConfig::vacuum(&layout);
        cfg.boson_occ.insert(ordering.boson_modes()[0], 2);
        assert!(occ_to_basis_index(&cfg, &layout).is_err());
    }

    proptest! {
        #[test]
        fn roundtrip_identity(seed in 0u64..5000) {
            let (ordering, layout, params) = setup(2, 2, 1, true);
            let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            let mut rng = move |m: u64| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) % m
            };
            let mut cfg = OccupationConfig::vacuum(&layout);
            for m in ordering.fermionic_modes() {
                cfg.fermion_occ.insert(*m, rng(2) as u8);
            }
            for m in ordering.boson_modes() {
                cfg.boson_occ.insert(*m, rng(params.boson_cutoff as u64 + 1) as u32);
            }
            let idx = occ_to_basis_index(&cfg, &layout).unwrap();
            let back = basis_index_to_occ(idx, &layout).unwrap();
            prop_assert_eq!(cfg, back);
        }
    }
}
