//! Occupation-probability extraction.

use super::exec::ActiveRegister;
use super::StateVector;
use crate::encoding::{OccupationConfig, RegisterLayout};
use crate::lattice::{ModeKey, ModeOrdering};
use rand::Rng;
use std::collections::BTreeMap;

/// Exact marginal occupation probabilities per mode at one time slice.
#[derive(Debug, Clone)]
pub struct OccupationDistribution {
    pub step: u32,
    pub time_t: f64,
    /// Probability vector over occupation values (length 2 for fermionic
    /// modes, 𝒩+1 for boson modes; a possible trailing entry collects
    /// weight outside the valid unary subspace).
    pub probs: BTreeMap<ModeKey, Vec<f64>>,
}

enum ModeBits {
    /// Fermionic qubit, either live on the compact register or frozen.
    Fermion(Result<usize, u8>),
    /// Boson block qubits low→high, each live or frozen.
    Boson(Vec<Result<usize, u8>>),
}

/// Exact marginals by a single pass over the amplitudes. Modes whose
/// qubits are not active keep their initial occupation with probability 1.
pub fn measure_occupations(
    state: &StateVector,
    active: &ActiveRegister,
    layout: &RegisterLayout,
    ordering: &ModeOrdering,
    initial: &OccupationConfig,
    step: u32,
    time_t: f64,
) -> OccupationDistribution {
    let mut plan: Vec<(ModeKey, ModeBits)> = Vec::new();
    for mode in ordering.modes() {
        if let Some(&q) = layout.fermion_qubits.get(mode) {
            let slot = active.compact(q as u32).ok_or(initial.fermion_occ[mode]);
            plan.push((*mode, ModeBits::Fermion(slot)));
        } else if let Some(block) = layout.boson_block(mode) {
            // frozen bit of block position h is 1 iff h is the initial occupation
            let slots = block
                .enumerate()
                .map(|(h, q)| {
                    active
                        .compact(q as u32)
                        .ok_or((initial.boson_occ[mode] as usize == h) as u8)
                })
                .collect();
            plan.push((*mode, ModeBits::Boson(slots)));
        }
    }

    let levels = layout.boson_levels;
    let mut probs: BTreeMap<ModeKey, Vec<f64>> = BTreeMap::new();
    for (mode, bits) in &plan {
        let len = match bits {
            ModeBits::Fermion(_) => 2,
            // extra bucket for weight outside the unary subspace
            ModeBits::Boson(_) => levels + 1,
        };
        probs.insert(*mode, vec![0.0; len]);
    }

    for (b, amp) in state.amplitudes().iter().enumerate() {
        let w = amp.norm_sqr();
        if w == 0.0 {
            continue;
        }
        for (mode, bits) in &plan {
            let acc = probs.get_mut(mode).unwrap();
            match bits {
                ModeBits::Fermion(slot) => {
                    let bit = match slot {
                        Ok(c) => (b >> c) & 1,
                        Err(frozen) => *frozen as usize,
                    };
                    acc[bit] += w;
                }
                ModeBits::Boson(slots) => {
                    let mut marker: Option<usize> = None;
                    let mut valid = true;
                    for (h, slot) in slots.iter().enumerate() {
                        let bit = match slot {
                            Ok(c) => (b >> c) & 1,
                            Err(frozen) => *frozen as usize,
                        };
                        if bit == 1 {
                            if marker.is_some() {
                                valid = false;
                                break;
                            }
                            marker = Some(h);
                        }
                    }
                    match (valid, marker) {
                        (true, Some(h)) => acc[h] += w,
                        _ => acc[levels] += w,
                    }
                }
            }
        }
    }
    OccupationDistribution { step, time_t, probs }
}

/// Shot-sampling emulation: draw basis states from |ψ|² with the given
/// seeded generator and count occupations.
pub fn sample_occupations(
    state: &StateVector,
    active: &ActiveRegister,
    layout: &RegisterLayout,
    ordering: &ModeOrdering,
    initial: &OccupationConfig,
    shots: u32,
    rng: &mut impl Rng,
) -> BTreeMap<ModeKey, BTreeMap<u32, u32>> {
    // cumulative distribution over basis states
    let mut cdf = Vec::with_capacity(state.amplitudes().len());
    let mut total = 0.0;
    for a in state.amplitudes() {
        total += a.norm_sqr();
        cdf.push(total);
    }
    let mut counts: BTreeMap<ModeKey, BTreeMap<u32, u32>> = BTreeMap::new();
    for _ in 0..shots {
        let x: f64 = rng.gen::<f64>() * total;
        let b = cdf.partition_point(|&c| c < x).min(cdf.len() - 1);
        for mode in ordering.modes() {
            let occ = if let Some(&q) = layout.fermion_qubits.get(mode) {
                match active.compact(q as u32) {
                    Some(c) => ((b >> c) & 1) as u32,
                    None => initial.fermion_occ[mode] as u32,
                }
            } else {
                let block = layout.boson_block(mode).unwrap();
                let mut marker = 0u32;
                for (h, q) in block.enumerate() {
                    let bit = match active.compact(q as u32) {
                        Some(c) => (b >> c) & 1,
                        None => (initial.boson_occ[mode] as usize == h) as usize,
                    };
                    if bit == 1 {
                        marker = h as u32;
                    }
                }
                marker
            };
            *counts.entry(*mode).or_default().entry(occ).or_insert(0) += 1;
        }
    }
    counts
}
