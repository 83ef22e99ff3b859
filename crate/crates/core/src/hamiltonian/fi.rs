//! Fermion-gluon interaction H_FI and the closed-form factor I₁.
//!
//! H_FI = −g ∫d³x (A^{a+}_μ ψ̄ γ^μ t^a ψ + …) expands into four
//! positive-gluon frequency structures (pair annihilation, antiquark
//! scattering, quark scattering, pair creation) plus their Hermitian
//! conjugates. Discretized, each structure becomes a sum over
//! momentum-conserving triples weighted by the measure, the spinor
//! contraction and the e^{−iωt} phase, with ladder operators composed in
//! the written field order A·ψ̄·ψ.

use super::{
    measure::measure_factor, BuildContext, FiStructure, HamiltonianTerm, TermAccumulator,
    TermFilter, TermLabel, VertexRecord,
};
use crate::error::{Error, Result};
use crate::lattice::{triples_with_signs, ModeKey, Species};
use crate::pauli::{jw_boson_ops, jw_fermion_ops, Pauli, PauliString, PauliSum};
use crate::theory::{fermion_vertex_w, fermion_vertex_w_general, FermionLeg};
use num_complex::Complex64;
use std::collections::BTreeMap;

type C = Complex64;

struct StructureSpec {
    structure: FiStructure,
    bar: FermionLeg,
    ket: FermionLeg,
    /// Frequency signs of (gluon, ψ̄ leg, ψ leg); positive frequency = +1.
    signs: [i32; 3],
}

const STRUCTURES: [StructureSpec; 4] = [
    StructureSpec {
        structure: FiStructure::PairAnnihilation,
        bar: FermionLeg::V,
        ket: FermionLeg::U,
        signs: [1, 1, 1],
    },
    StructureSpec {
        structure: FiStructure::AntiquarkScattering,
        bar: FermionLeg::V,
        ket: FermionLeg::V,
        signs: [1, 1, -1],
    },
    StructureSpec {
        structure: FiStructure::QuarkScattering,
        bar: FermionLeg::U,
        ket: FermionLeg::U,
        signs: [1, -1, 1],
    },
    StructureSpec {
        structure: FiStructure::PairCreation,
        bar: FermionLeg::U,
        ket: FermionLeg::V,
        signs: [1, -1, -1],
    },
];

/// ψ̄-leg operator: b† for the negative-frequency component, c for the
/// positive one; ψ-leg: b for positive, c† for negative.
fn fermion_leg_op(
    ctx: &BuildContext,
    cache: &mut BTreeMap<(ModeKey, bool), PauliSum>,
    mode: ModeKey,
    creation: bool,
) -> Result<Option<PauliSum>> {
    if ctx.ordering.kappa(&mode).is_none() {
        return Ok(None);
    }
    if let Some(op) = cache.get(&(mode, creation)) {
        return Ok(Some(op.clone()));
    }
    let (create, annih) = jw_fermion_ops(&mode, ctx.ordering)?;
    cache.insert((mode, true), create);
    cache.insert((mode, false), annih);
    Ok(cache.get(&(mode, creation)).cloned())
}

fn boson_leg_op(
    ctx: &BuildContext,
    cache: &mut BTreeMap<(ModeKey, bool), PauliSum>,
    mode: ModeKey,
    creation: bool,
) -> Result<Option<PauliSum>> {
    if ctx.layout.boson_block(&mode).is_none() {
        return Ok(None);
    }
    if let Some(op) = cache.get(&(mode, creation)) {
        return Ok(Some(op.clone()));
    }
    let (create, annih) = jw_boson_ops(&mode, ctx.layout)?;
    cache.insert((mode, true), create);
    cache.insert((mode, false), annih);
    Ok(cache.get(&(mode, creation)).cloned())
}

/// Build H_FI at time `t` under the filter.
pub fn build_h_fi(ctx: &BuildContext, t: f64, filter: &TermFilter) -> Result<HamiltonianTerm> {
    let mut acc = TermAccumulator::new(TermLabel::Fi, t);
    let g = ctx.params.coupling_g;
    let n = ctx.params.group_n as usize;
    let adj = n * n - 1;
    let pols = ctx.params.polarization_count as usize;
    let mut cache: BTreeMap<(ModeKey, bool), PauliSum> = BTreeMap::new();

    for spec in &STRUCTURES {
        if !filter.allows_structure(spec.structure) {
            continue;
        }
        for triple in triples_with_signs(ctx.lattice, spec.signs) {
            let [s1, s2, s3] = triple;
            let p1 = ctx.lattice.momentum(s1);
            let p2 = ctx.lattice.momentum(s2);
            let p3 = ctx.lattice.momentum(s3);
            let w1 = ctx.checked_gauge_omega(p1)?;
            let w2 = ctx.checked_fermion_omega(p2)?;
            let w3 = ctx.checked_fermion_omega(p3)?;
            let measure = measure_factor(ctx.lattice.spacing_a, &[w1, w2, w3])?;
            for a in 0..adj as u8 {
                if !filter.allows_adjoint(a) {
                    continue;
                }
                for l in 0..pols as u8 {
                    if !filter.allows_polarization(l) {
                        continue;
                    }
                    let gluon = ModeKey {
                        species: Species::GaugeBoson { adjoint: a, polarization: l },
                        site: s1,
                    };
                    let Some(gluon_op) = boson_leg_op(ctx, &mut cache, gluon, false)? else {
                        continue;
                    };
                    for i in 0..n as u8 {
                        for j in 0..n as u8 {
                            if ctx.group.generators[a as usize][(i as usize, j as usize)].norm()
                                == 0.0
                            {
                                continue;
                            }
                            for r in 0..2u8 {
                                for s in 0..2u8 {
                                    let vertex = fermion_vertex_w_general(
                                        ctx.params,
                                        &ctx.group,
                                        &ctx.dirac,
                                        p1,
                                        p2,
                                        p3,
                                        spec.bar,
                                        spec.ket,
                                        r as usize,
                                        s as usize,
                                        i as usize,
                                        j as usize,
                                        a as usize,
                                        l as usize,
                                        spec.signs,
                                        t,
                                    )?;
                                    let coeff = C::new(-g, 0.0) * C::new(measure, 0.0) * vertex;
                                    if coeff.norm() == 0.0 {
                                        continue;
                                    }
                                    let (bar_mode, bar_create) = match spec.bar {
                                        FermionLeg::U => (
                                            ModeKey {
                                                species: Species::Quark { color: i, spin: r },
                                                site: s2,
                                            },
                                            true,
                                        ),
                                        FermionLeg::V => (
                                            ModeKey {
                                                species: Species::AntiQuark { color: i, spin: r },
                                                site: s2,
                                            },
                                            false,
                                        ),
                                    };
                                    let (ket_mode, ket_create) = match spec.ket {
                                        FermionLeg::U => (
                                            ModeKey {
                                                species: Species::Quark { color: j, spin: s },
                                                site: s3,
                                            },
                                            false,
                                        ),
                                        FermionLeg::V => (
                                            ModeKey {
                                                species: Species::AntiQuark { color: j, spin: s },
                                                site: s3,
                                            },
                                            true,
                                        ),
                                    };
                                    let Some(bar_op) =
                                        fermion_leg_op(ctx, &mut cache, bar_mode, bar_create)?
                                    else {
                                        continue;
                                    };
                                    let Some(ket_op) =
                                        fermion_leg_op(ctx, &mut cache, ket_mode, ket_create)?
                                    else {
                                        continue;
                                    };
                                    let ops = gluon_op.mul(&bar_op).mul(&ket_op);
                                    let delta = [
                                        spec.signs[0] * s1[0] + spec.signs[1] * s2[0] + spec.signs[2] * s3[0],
                                        spec.signs[0] * s1[1] + spec.signs[1] * s2[1] + spec.signs[2] * s3[1],
                                        spec.signs[0] * s1[2] + spec.signs[1] * s2[2] + spec.signs[2] * s3[2],
                                    ];
                                    acc.push(
                                        coeff,
                                        ops,
                                        VertexRecord {
                                            structure: spec.structure.as_str().into(),
                                            sites: vec![s1, s2, s3],
                                            momentum_sum: delta,
                                            indices: format!("a={a} l={l} i={i} r={r} j={j} s={s}"),
                                            coeff_re: coeff.re,
                                            coeff_im: coeff.im,
                                            boson_number_delta: -1,
                                        },
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(acc.finish(true))
}

/// H₁: the quark-scattering structure of H_FI alone (ā b† b ū(ε·γ)t u + H.c.).
pub fn build_h1(ctx: &BuildContext, t: f64, filter: &TermFilter) -> Result<HamiltonianTerm> {
    let mut f = filter.clone();
    let allowed = f
        .fi_structures
        .map(|s| s.contains(&FiStructure::QuarkScattering))
        .unwrap_or(true);
    f.fi_structures = if allowed {
        Some([FiStructure::QuarkScattering].into())
    } else {
        Some(std::collections::BTreeSet::new())
    };
    build_h_fi(ctx, t, &f)
}

/// Pauli string `c · A_{q2} (Π Z between) B_{q3}` for q2 < q3 (or q2 = q3,
/// in which case the letters multiply on the shared qubit).
fn bridge(c: C, q2: u32, a: Pauli, q3: u32, b: Pauli) -> PauliString {
    if q2 == q3 {
        return PauliString::single(c, q2, a).mul(&PauliString::single(C::new(1.0, 0.0), q3, b));
    }
    let (lo, hi, plo, phi) = if q2 < q3 { (q2, q3, a, b) } else { (q3, q2, b, a) };
    let mut letters = BTreeMap::new();
    letters.insert(lo, plo);
    for q in lo + 1..hi {
        letters.insert(q, Pauli::Z);
    }
    letters.insert(hi, phi);
    PauliString { coeff: c, letters }
}

/// Two-letter string on a boson block pair (h, h+1).
fn pair(c: C, q: u32, a: Pauli, b: Pauli) -> PauliString {
    let mut letters = BTreeMap::new();
    letters.insert(q, a);
    letters.insert(q + 1, b);
    PauliString { coeff: c, letters }
}

/// One (l, r, s, h)-summand of the closed form, for explicit weight w.
///
/// With P_b = XX+YY and Q_b = XY−YX on block qubits (h, h+1), and
/// P_f = X Z̃ X + Y Z̃ Y, Q_f = X Z̃ Y − Y Z̃ X between the two fermion
/// qubits, the Hermitized summand is
/// (1/8)[w₁(P_bP_f − Q_bQ_f) − w₂(P_bQ_f + Q_bP_f)] for distinct fermion
/// modes, and (1/2)[w₁P_b − w₂Q_b] ⊗ (I−Z)/2 for the number-operator case.
pub(crate) fn i1_closed_summand(
    block_start: u32,
    h: u32,
    kappa2: u32,
    kappa3: u32,
    w: C,
) -> PauliSum {
    let one = C::new(1.0, 0.0);
    let q = block_start + h;
    let root = C::new(((h + 1) as f64).sqrt(), 0.0);
    let pb = PauliSum::from_strings(vec![
        pair(one, q, Pauli::X, Pauli::X),
        pair(one, q, Pauli::Y, Pauli::Y),
    ]);
    let qb = PauliSum::from_strings(vec![
        pair(one, q, Pauli::X, Pauli::Y),
        pair(one, q, Pauli::Y, Pauli::X).mul(&PauliString::identity(C::new(-1.0, 0.0))),
    ]);
    if kappa2 == kappa3 {
        // number operator branch: (1/2)(w₁P_b − w₂Q_b) ⊗ (I − Z)/2
        let nhat = PauliSum::from_strings(vec![
            PauliString::identity(C::new(0.5, 0.0)),
            PauliString::single(C::new(-0.5, 0.0), kappa2, Pauli::Z),
        ]);
        let combo = pb.scale(C::new(0.5 * w.re, 0.0)).sub(&qb.scale(C::new(0.5 * w.im, 0.0)));
        return combo.mul(&nhat).scale(root);
    }
    let pf = PauliSum::from_strings(vec![
        bridge(one, kappa2, Pauli::X, kappa3, Pauli::X),
        bridge(one, kappa2, Pauli::Y, kappa3, Pauli::Y),
    ]);
    let qf = PauliSum::from_strings(vec![
        bridge(one, kappa2, Pauli::X, kappa3, Pauli::Y),
        bridge(C::new(-1.0, 0.0), kappa2, Pauli::Y, kappa3, Pauli::X),
    ]);
    let w1_part = pb.mul(&pf).sub(&qb.mul(&qf)).scale(C::new(w.re / 8.0, 0.0));
    let w2_part = pb.mul(&qf).add(&qb.mul(&pf)).scale(C::new(w.im / 8.0, 0.0));
    w1_part.sub(&w2_part).scale(root)
}

/// Supplementary closed form of I₁ for the mode tuple
/// (p₁, a; p₂, i; p₃, j), summed over l, r, s:
/// Σ[ā b† b ū(ε_l·γ)t^a u e^{−iω₁t} + H.c.] without the −g·measure
/// prefactor of H₁.
///
/// Covers the ordering 𝒦(p₂, i, ·) ≤ 𝒦(p₃, j, ·); for the reversed
/// ordering build the conjugate tuple and take the adjoint.
#[allow(clippy::too_many_arguments)]
pub fn build_i1_closed_form(
    ctx: &BuildContext,
    site1: [i32; 3],
    a: u8,
    site2: [i32; 3],
    i: u8,
    site3: [i32; 3],
    j: u8,
    t: f64,
) -> Result<PauliSum> {
    let mode2 = |r: u8| ModeKey { species: Species::Quark { color: i, spin: r }, site: site2 };
    let mode3 = |s: u8| ModeKey { species: Species::Quark { color: j, spin: s }, site: site3 };
    let k2_base = ctx
        .ordering
        .kappa(&mode2(0))
        .ok_or_else(|| Error::InvalidParameter("quark mode (p2, i) not in ordering".into()))?;
    let k3_base = ctx
        .ordering
        .kappa(&mode3(0))
        .ok_or_else(|| Error::InvalidParameter("quark mode (p3, j) not in ordering".into()))?;
    if k2_base > k3_base {
        return Err(Error::NotCovered(
            "I₁ closed form covers 𝒦(p₂,i,·) ≤ 𝒦(p₃,j,·); swap the tuple and take the adjoint"
                .into(),
        ));
    }
    let p1 = ctx.lattice.momentum(site1);
    let p2 = ctx.lattice.momentum(site2);
    let p3 = ctx.lattice.momentum(site3);
    let mut out = PauliSum::zero();
    for l in 0..ctx.params.polarization_count as u8 {
        let gluon =
            ModeKey { species: Species::GaugeBoson { adjoint: a, polarization: l }, site: site1 };
        let Some(block) = ctx.layout.boson_block(&gluon) else {
            continue;
        };
        for r in 0..2u8 {
            for s in 0..2u8 {
                let w = i1_vertex(ctx, p1, p2, p3, r, s, i, j, a, l, t)?;
                if w.norm() == 0.0 {
                    continue;
                }
                let kappa2 = ctx.ordering.kappa(&mode2(r)).unwrap() as u32;
                let kappa3 = ctx.ordering.kappa(&mode3(s)).unwrap() as u32;
                for h in 0..ctx.layout.boson_levels as u32 - 1 {
                    out = out.add(&i1_closed_summand(block.start as u32, h, kappa2, kappa3, w));
                }
            }
        }
    }
    Ok(out)
}

/// The same I₁ content by generic composition: Σ ā·b†·b·w + H.c.
#[allow(clippy::too_many_arguments)]
pub fn i1_generic(
    ctx: &BuildContext,
    site1: [i32; 3],
    a: u8,
    site2: [i32; 3],
    i: u8,
    site3: [i32; 3],
    j: u8,
    t: f64,
) -> Result<PauliSum> {
    let p1 = ctx.lattice.momentum(site1);
    let p2 = ctx.lattice.momentum(site2);
    let p3 = ctx.lattice.momentum(site3);
    let mut raw = PauliSum::zero();
    for l in 0..ctx.params.polarization_count as u8 {
        let gluon =
            ModeKey { species: Species::GaugeBoson { adjoint: a, polarization: l }, site: site1 };
        if ctx.layout.boson_block(&gluon).is_none() {
            continue;
        }
        let (_, annih) = jw_boson_ops(&gluon, ctx.layout)?;
        for r in 0..2u8 {
            for s in 0..2u8 {
                let w = i1_vertex(ctx, p1, p2, p3, r, s, i, j, a, l, t)?;
                if w.norm() == 0.0 {
                    continue;
                }
                let m2 = ModeKey { species: Species::Quark { color: i, spin: r }, site: site2 };
                let m3 = ModeKey { species: Species::Quark { color: j, spin: s }, site: site3 };
                let (create2, _) = jw_fermion_ops(&m2, ctx.ordering)?;
                let (_, annih3) = jw_fermion_ops(&m3, ctx.ordering)?;
                raw = raw.add(&annih.mul(&create2).mul(&annih3).scale(w));
            }
        }
    }
    Ok(raw.plus_adjoint())
}

#[allow(clippy::too_many_arguments)]
fn i1_vertex(
    ctx: &BuildContext,
    p1: [f64; 3],
    p2: [f64; 3],
    p3: [f64; 3],
    r: u8,
    s: u8,
    i: u8,
    j: u8,
    a: u8,
    l: u8,
    t: f64,
) -> Result<C> {
    fermion_vertex_w_general(
        ctx.params,
        &ctx.group,
        &ctx.dirac,
        p1,
        p2,
        p3,
        FermionLeg::U,
        FermionLeg::U,
        r as usize,
        s as usize,
        i as usize,
        j as usize,
        a as usize,
        l as usize,
        [1, -1, 1],
        t,
    )
}

/// W coefficient entry point matching the H₁ vertex definition.
#[allow(clippy::too_many_arguments)]
pub fn h1_w_coefficient(
    ctx: &BuildContext,
    p2: [f64; 3],
    p3: [f64; 3],
    r: usize,
    s: usize,
    i: usize,
    j: usize,
    a: usize,
    l: usize,
    t: f64,
) -> Result<crate::theory::WCoeffFermion> {
    fermion_vertex_w(ctx.params, &ctx.group, &ctx.dirac, p2, p3, r, s, i, j, a, l, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::test_support::Fixture;
    use crate::lattice::ModeOrdering;
    use crate::pauli::to_dense_matrix;
    use crate::theory::ModelParams;
    use nalgebra::DMatrix;

    fn params(g: f64) -> ModelParams {
        ModelParams {
            coupling_g: g,
            gluon_mass_regulator: 1.0,
            ..Default::default()
        }
    }

    #[test]
    fn zero_coupling_gives_empty_sum() {
        let fx = Fixture::new(params(0.0), 1);
        let h = build_h_fi(&fx.ctx(), 0.0, &TermFilter::all()).unwrap();
        assert!(h.pauli.is_empty());
        assert!(h.provenance.is_empty());
    }

    #[test]
    fn h_fi_exactly_hermitian_and_gluon_number_selection() {
        let fx = Fixture::new(params(0.3), 1);
        let h = build_h_fi(&fx.ctx(), 0.2, &TermFilter::all()).unwrap();
        assert!(!h.pauli.is_empty());
        assert!(h.pauli.is_hermitian(0.0));
        for rec in &h.provenance {
            assert_eq!(rec.momentum_sum, [0, 0, 0]);
            assert_eq!(rec.boson_number_delta, -1);
        }
    }

    #[test]
    fn rest_frame_transverse_quark_scattering_vanishes() {
        // At p = 0 with transverse polarizations ū γⁱ u = 0, so the H₁
        // structure is empty on a single-site lattice.
        let fx = Fixture::new(params(0.5), 1);
        let h1 = build_h1(&fx.ctx(), 0.0, &TermFilter::all()).unwrap();
        assert!(h1.pauli.is_empty());
    }

    /// Restricted system: 4 quarks + the timelike-polarization boson modes
    /// of one adjoint color, small enough for dense oracles.
    fn restricted_fixture() -> Fixture {
        let mut p = params(0.4);
        p.polarization_count = 4;
        let mut fx = Fixture::new(p, 1);
        let mut modes: Vec<_> = fx
            .ordering
            .modes()
            .iter()
            .filter(|m| match m.species {
                Species::Quark { .. } => true,
                Species::GaugeBoson { adjoint, polarization } => {
                    adjoint == 0 && polarization == 3
                }
                _ => false,
            })
            .copied()
            .collect();
        modes.sort_by_key(|m| !m.species.is_fermionic());
        fx.ordering = ModeOrdering::from_modes(modes).unwrap();
        fx.layout = crate::encoding::build_layout(&fx.ordering, &fx.params).unwrap();
        fx
    }

    /// Dense ladder matrices built from raw bit manipulation, bypassing the
    /// Pauli algebra entirely.
    fn dense_boson_annih(block_start: usize, levels: usize, q: usize) -> DMatrix<C> {
        let dim = 1usize << q;
        let mut m = DMatrix::<C>::zeros(dim, dim);
        for b in 0..dim {
            for h in 0..levels - 1 {
                // annihilation moves a set bit h+1 → h
                if (b >> (block_start + h + 1)) & 1 == 1 && (b >> (block_start + h)) & 1 == 0 {
                    let bp = b ^ (1 << (block_start + h + 1)) ^ (1 << (block_start + h));
                    m[(bp, b)] += C::new(((h + 1) as f64).sqrt(), 0.0);
                }
            }
        }
        m
    }

    fn dense_fermion(kappa: usize, creation: bool, q: usize) -> DMatrix<C> {
        let dim = 1usize << q;
        let mut m = DMatrix::<C>::zeros(dim, dim);
        for b in 0..dim {
            let occupied = (b >> kappa) & 1 == 1;
            if creation == occupied {
                continue;
            }
            let below = b & ((1usize << kappa) - 1);
            let sign = if (below.count_ones()) % 2 == 0 { 1.0 } else { -1.0 };
            m[(b ^ (1 << kappa), b)] += C::new(sign, 0.0);
        }
        m
    }

    #[test]
    fn h1_matches_operator_product_oracle() {
        // Dense matrix of H₁ assembled from raw ladder matrices with the
        // same coefficients, bypassing the Pauli-string path.
        let fx = restricted_fixture();
        let ctx = fx.ctx();
        let t = 0.31;
        let h1 = build_h1(&ctx, t, &TermFilter::all()).unwrap();
        let q = fx.layout.total_qubits;
        assert!(q <= 12, "restricted register too large: {q}");
        let built = to_dense_matrix(&h1.pauli, q).unwrap();

        let mut oracle = DMatrix::<C>::zeros(1 << q, 1 << q);
        let spacing = fx.lattice.spacing_a;
        let p0 = [0.0; 3];
        let w1 = ctx.params.gauge_omega(p0);
        let w23 = ctx.params.fermion_omega(p0);
        let measure = measure_factor(spacing, &[w1, w23, w23]).unwrap();
        let gluon = ModeKey {
            species: Species::GaugeBoson { adjoint: 0, polarization: 3 },
            site: [0; 3],
        };
        let block = fx.layout.boson_block(&gluon).unwrap();
        let boson = dense_boson_annih(block.start, fx.layout.boson_levels, q);
        for i in 0..2u8 {
            for j in 0..2u8 {
                for r in 0..2u8 {
                    for s in 0..2u8 {
                        let w = i1_vertex(&ctx, p0, p0, p0, r, s, i, j, 0, 3, t).unwrap();
                        let coeff = C::new(-ctx.params.coupling_g * measure, 0.0) * w;
                        if coeff.norm() == 0.0 {
                            continue;
                        }
                        let k2 = ctx
                            .ordering
                            .kappa(&ModeKey {
                                species: Species::Quark { color: i, spin: r },
                                site: [0; 3],
                            })
                            .unwrap();
                        let k3 = ctx
                            .ordering
                            .kappa(&ModeKey {
                                species: Species::Quark { color: j, spin: s },
                                site: [0; 3],
                            })
                            .unwrap();
                        let term = &boson
                            * dense_fermion(k2, true, q)
                            * dense_fermion(k3, false, q)
                            * coeff;
                        oracle += &term + term.adjoint();
                    }
                }
            }
        }
        let diff = (&built - &oracle).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-10, "H₁ vs operator-product oracle differ by {diff:.2e}");
        assert!(!h1.pauli.is_empty());
    }

    #[test]
    fn i1_cross_path_equivalence_small() {
        let fx = restricted_fixture();
        let ctx = fx.ctx();
        for t in [0.0, 0.47] {
            let closed = build_i1_closed_form(&ctx, [0; 3], 0, [0; 3], 0, [0; 3], 1, t).unwrap();
            let generic = i1_generic(&ctx, [0; 3], 0, [0; 3], 0, [0; 3], 1, t).unwrap();
            let diff = closed.sub(&generic);
            assert!(
                diff.max_coeff_norm() < 1e-12,
                "closed vs generic I₁ differ by {:.2e} at t = {t}",
                diff.max_coeff_norm()
            );
            assert!(!closed.is_empty());
        }
    }

    #[test]
    fn i1_ordering_precondition() {
        let fx = restricted_fixture();
        let ctx = fx.ctx();
        // (p₂, i=1) > (p₃, j=0) in the quark ordering → not covered
        let res = build_i1_closed_form(&ctx, [0; 3], 0, [0; 3], 1, [0; 3], 0, 0.0);
        assert!(matches!(res, Err(Error::NotCovered(_))));
    }

    #[test]
    fn i1_summand_prefactor_and_w_selection() {
        // unit W₁, zero W₂: exactly the 8 P-group strings, each |coeff| 1/8
        let sum = i1_closed_summand(4, 0, 0, 2, C::new(1.0, 0.0));
        assert_eq!(sum.len(), 8);
        for s in sum.terms() {
            assert!((s.coeff.norm() - 0.125).abs() < 1e-15);
            assert!(s.coeff.im == 0.0);
        }
        // pure W₂ selects the complementary 8 strings
        let sum2 = i1_closed_summand(4, 0, 0, 2, C::new(0.0, 1.0));
        assert_eq!(sum2.len(), 8);
        let overlap: Vec<_> = sum
            .terms()
            .iter()
            .filter(|a| sum2.terms().iter().any(|b| a.pattern() == b.pattern()))
            .collect();
        assert!(overlap.is_empty());
    }
}
