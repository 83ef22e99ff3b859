//! Three- and four-gluon interactions and the closed-form factor I₂.
//!
//! H_G3I = g f^{abc}(∂_μA^a_ν)A^{μb}A^{νc}: the derivative contributes
//! −ip_μ on a positive-frequency leg and +ip_μ on a negative one, with
//! covariant p_μ = (ω, −p⃗). H_G4I = (g²/4) f^{eab}f^{ecd} A^a_μA^b_νA^{μc}A^{νd}.
//! Both expand over every frequency pattern of their legs; the full sums
//! are Hermitian (the color contractions make them self-conjugate under
//! leg relabeling) and the builders symmetrize once at the end, which is
//! exact at the coefficient level.

use super::{
    measure::measure_factor, BuildContext, HamiltonianTerm, TermAccumulator, TermFilter,
    TermLabel, VertexRecord,
};
use crate::error::{Error, Result};
use crate::lattice::{quadruples_with_signs, triples_with_signs, ModeKey, Species};
use crate::pauli::{jw_boson_ops, Pauli, PauliString, PauliSum};
use crate::theory::{gluon_vertex_w, polarization_vector};
use nalgebra::Vector4;
use num_complex::Complex64;
use std::collections::BTreeMap;

type C = Complex64;

fn minkowski(a: &Vector4<C>, b: &Vector4<C>) -> C {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// Cached gauge-boson ladder lookup; `None` when the mode is not encoded
/// (restricted desk systems).
struct BosonCache<'a> {
    ctx: &'a BuildContext<'a>,
    ops: BTreeMap<(ModeKey, bool), PauliSum>,
}

impl<'a> BosonCache<'a> {
    fn new(ctx: &'a BuildContext<'a>) -> Self {
        BosonCache { ctx, ops: BTreeMap::new() }
    }

    fn get(&mut self, mode: ModeKey, creation: bool) -> Result<Option<PauliSum>> {
        if self.ctx.layout.boson_block(&mode).is_none() {
            return Ok(None);
        }
        if !self.ops.contains_key(&(mode, creation)) {
            let (create, annih) = jw_boson_ops(&mode, self.ctx.layout)?;
            self.ops.insert((mode, true), create);
            self.ops.insert((mode, false), annih);
        }
        Ok(self.ops.get(&(mode, creation)).cloned())
    }
}

/// Polarization vector of a leg, conjugated on negative frequency.
fn leg_eps(ctx: &BuildContext, p: [f64; 3], l: u8, sign: i32) -> Result<Vector4<C>> {
    let e = polarization_vector(p, l as usize, ctx.params.polarization_count)?;
    Ok(if sign < 0 { e.map(|z| z.conj()) } else { e })
}

const SIGNS3: [[i32; 3]; 8] = [
    [1, 1, 1],
    [1, 1, -1],
    [1, -1, 1],
    [1, -1, -1],
    [-1, 1, 1],
    [-1, 1, -1],
    [-1, -1, 1],
    [-1, -1, -1],
];

/// Build the cubic gluon vertex at time `t`.
pub fn build_h_g3i(ctx: &BuildContext, t: f64, filter: &TermFilter) -> Result<HamiltonianTerm> {
    let mut acc = TermAccumulator::new(TermLabel::G3i, t);
    let g = ctx.params.coupling_g;
    let adj = (ctx.params.group_n * ctx.params.group_n - 1) as u8;
    let pols = ctx.params.polarization_count as u8;
    let mut cache = BosonCache::new(ctx);

    let mut color_triples = Vec::new();
    for a in 0..adj {
        for b in 0..adj {
            for c in 0..adj {
                let f = ctx.group.f(a as usize, b as usize, c as usize);
                if f != 0.0
                    && filter.allows_adjoint(a)
                    && filter.allows_adjoint(b)
                    && filter.allows_adjoint(c)
                {
                    color_triples.push((a, b, c, f));
                }
            }
        }
    }

    for signs in SIGNS3 {
        for triple in triples_with_signs(ctx.lattice, signs) {
            let [s1, s2, s3] = triple;
            let ps = [ctx.lattice.momentum(s1), ctx.lattice.momentum(s2), ctx.lattice.momentum(s3)];
            let mut omegas = [0.0; 3];
            for k in 0..3 {
                omegas[k] = ctx.checked_gauge_omega(ps[k])?;
            }
            let measure = measure_factor(ctx.lattice.spacing_a, &omegas)?;
            let phase_omega: f64 = (0..3).map(|k| signs[k] as f64 * omegas[k]).sum();
            let phase = C::new(0.0, -phase_omega * t).exp();
            // covariant derivative factor on leg 1: ∓i p_μ, contracted with leg 2
            let p1_four = Vector4::new(
                C::new(omegas[0], 0.0),
                C::new(ps[0][0], 0.0),
                C::new(ps[0][1], 0.0),
                C::new(ps[0][2], 0.0),
            );
            for &(a, b, c, f) in &color_triples {
                for l1 in 0..pols {
                    if !filter.allows_polarization(l1) {
                        continue;
                    }
                    for l2 in 0..pols {
                        if !filter.allows_polarization(l2) {
                            continue;
                        }
                        for l3 in 0..pols {
                            if !filter.allows_polarization(l3) {
                                continue;
                            }
                            let e1 = leg_eps(ctx, ps[0], l1, signs[0])?;
                            let e2 = leg_eps(ctx, ps[1], l2, signs[1])?;
                            let e3 = leg_eps(ctx, ps[2], l3, signs[2])?;
                            let deriv = C::new(0.0, -(signs[0] as f64));
                            let vertex = deriv * minkowski(&p1_four, &e2) * minkowski(&e1, &e3);
                            let coeff = C::new(g * f * measure, 0.0) * vertex * phase;
                            if coeff.norm() == 0.0 {
                                continue;
                            }
                            let legs = [(s1, a, l1, signs[0]), (s2, b, l2, signs[1]), (s3, c, l3, signs[2])];
                            let mut ops: Option<PauliSum> = None;
                            let mut missing = false;
                            for &(site, col, l, sg) in &legs {
                                let mode = ModeKey {
                                    species: Species::GaugeBoson { adjoint: col, polarization: l },
                                    site,
                                };
                                match cache.get(mode, sg < 0)? {
                                    None => {
                                        missing = true;
                                        break;
                                    }
                                    Some(op) => {
                                        ops = Some(match ops {
                                            None => op,
                                            Some(acc_op) => acc_op.mul(&op),
                                        });
                                    }
                                }
                            }
                            if missing {
                                continue;
                            }
                            let delta: i32 = signs.iter().map(|&s| -s).sum();
                            acc.push(
                                coeff,
                                ops.unwrap(),
                                VertexRecord {
                                    structure: format!(
                                        "g3i_{}{}{}",
                                        sgn(signs[0]),
                                        sgn(signs[1]),
                                        sgn(signs[2])
                                    ),
                                    sites: vec![s1, s2, s3],
                                    momentum_sum: [
                                        signs[0] * s1[0] + signs[1] * s2[0] + signs[2] * s3[0],
                                        signs[0] * s1[1] + signs[1] * s2[1] + signs[2] * s3[1],
                                        signs[0] * s1[2] + signs[1] * s2[2] + signs[2] * s3[2],
                                    ],
                                    indices: format!("a={a} b={b} c={c} l1={l1} l2={l2} l3={l3}"),
                                    coeff_re: coeff.re,
                                    coeff_im: coeff.im,
                                    boson_number_delta: delta,
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(acc.finish(false))
}

fn sgn(s: i32) -> char {
    if s > 0 {
        'p'
    } else {
        'm'
    }
}

/// Build the quartic gluon vertex at time `t`.
pub fn build_h_g4i(ctx: &BuildContext, t: f64, filter: &TermFilter) -> Result<HamiltonianTerm> {
    let mut acc = TermAccumulator::new(TermLabel::G4i, t);
    let g = ctx.params.coupling_g;
    let adj = (ctx.params.group_n * ctx.params.group_n - 1) as usize;
    let pols = ctx.params.polarization_count as u8;
    let mut cache = BosonCache::new(ctx);

    // Σ_e f^{eab}f^{ecd} folded per ordered color quadruple.
    let mut color_quads: Vec<(u8, u8, u8, u8, f64)> = Vec::new();
    for a in 0..adj {
        for b in 0..adj {
            for c in 0..adj {
                for d in 0..adj {
                    let ff: f64 = (0..adj).map(|e| ctx.group.f(e, a, b) * ctx.group.f(e, c, d)).sum();
                    if ff != 0.0
                        && [a, b, c, d].iter().all(|&x| filter.allows_adjoint(x as u8))
                    {
                        color_quads.push((a as u8, b as u8, c as u8, d as u8, ff));
                    }
                }
            }
        }
    }

    let pol_list: Vec<u8> = (0..pols).filter(|&l| filter.allows_polarization(l)).collect();

    for mask in 0..16u32 {
        let signs = [
            if mask & 1 == 0 { 1 } else { -1 },
            if mask & 2 == 0 { 1 } else { -1 },
            if mask & 4 == 0 { 1 } else { -1 },
            if mask & 8 == 0 { 1 } else { -1 },
        ];
        for quad in quadruples_with_signs(ctx.lattice, signs) {
            let sites = quad;
            let ps: Vec<[f64; 3]> = sites.iter().map(|&s| ctx.lattice.momentum(s)).collect();
            let mut omegas = [0.0; 4];
            for k in 0..4 {
                omegas[k] = ctx.checked_gauge_omega(ps[k])?;
            }
            let measure = measure_factor(ctx.lattice.spacing_a, &omegas)?;
            let phase_omega: f64 = (0..4).map(|k| signs[k] as f64 * omegas[k]).sum();
            let phase = C::new(0.0, -phase_omega * t).exp();
            for &l1 in &pol_list {
                for &l2 in &pol_list {
                    for &l3 in &pol_list {
                        for &l4 in &pol_list {
                            let e1 = leg_eps(ctx, ps[0], l1, signs[0])?;
                            let e2 = leg_eps(ctx, ps[1], l2, signs[1])?;
                            let e3 = leg_eps(ctx, ps[2], l3, signs[2])?;
                            let e4 = leg_eps(ctx, ps[3], l4, signs[3])?;
                            // μ contracts legs (1,3), ν contracts legs (2,4)
                            let vertex = minkowski(&e1, &e3) * minkowski(&e2, &e4);
                            if vertex.norm() == 0.0 {
                                continue;
                            }
                            for &(a, b, c, d, ff) in &color_quads {
                                let coeff = C::new(g * g / 4.0 * ff * measure, 0.0) * vertex * phase;
                                let ls = [l1, l2, l3, l4];
                                let cols = [a, b, c, d];
                                let mut ops: Option<PauliSum> = None;
                                let mut missing = false;
                                for k in 0..4 {
                                    let mode = ModeKey {
                                        species: Species::GaugeBoson {
                                            adjoint: cols[k],
                                            polarization: ls[k],
                                        },
                                        site: sites[k],
                                    };
                                    match cache.get(mode, signs[k] < 0)? {
                                        None => {
                                            missing = true;
                                            break;
                                        }
                                        Some(op) => {
                                            ops = Some(match ops {
                                                None => op,
                                                Some(acc_op) => acc_op.mul(&op),
                                            });
                                        }
                                    }
                                }
                                if missing {
                                    continue;
                                }
                                let delta: i32 = signs.iter().map(|&s| -s).sum();
                                acc.push(
                                    coeff,
                                    ops.unwrap(),
                                    VertexRecord {
                                        structure: format!(
                                            "g4i_{}{}{}{}",
                                            sgn(signs[0]),
                                            sgn(signs[1]),
                                            sgn(signs[2]),
                                            sgn(signs[3])
                                        ),
                                        sites: sites.to_vec(),
                                        momentum_sum: [
                                            (0..4).map(|k| signs[k] * sites[k][0]).sum(),
                                            (0..4).map(|k| signs[k] * sites[k][1]).sum(),
                                            (0..4).map(|k| signs[k] * sites[k][2]).sum(),
                                        ],
                                        indices: format!(
                                            "a={a} b={b} c={c} d={d} l1={l1} l2={l2} l3={l3} l4={l4}"
                                        ),
                                        coeff_re: coeff.re,
                                        coeff_im: coeff.im,
                                        boson_number_delta: delta,
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(acc.finish(false))
}

/// One gauge-boson leg label: (site, adjoint color, polarization).
pub type GluonLeg = ([i32; 3], u8, u8);

fn leg_mode(leg: GluonLeg) -> ModeKey {
    ModeKey { species: Species::GaugeBoson { adjoint: leg.1, polarization: leg.2 }, site: leg.0 }
}

/// Generic I₂ for one mode quadruple: ½(ā₁ā₂ā₃†ā₄† w + H.c.) with
/// w = W₃ + iW₄ from the polarization contraction at time `t`.
pub fn i2_generic(ctx: &BuildContext, legs: [GluonLeg; 4], t: f64) -> Result<PauliSum> {
    let ps = [
        ctx.lattice.momentum(legs[0].0),
        ctx.lattice.momentum(legs[1].0),
        ctx.lattice.momentum(legs[2].0),
        ctx.lattice.momentum(legs[3].0),
    ];
    let ls = [legs[0].2 as usize, legs[1].2 as usize, legs[2].2 as usize, legs[3].2 as usize];
    let w = gluon_vertex_w(ctx.params, ls, ps, t)?.as_complex();
    let mut ops: Option<PauliSum> = None;
    for (k, &leg) in legs.iter().enumerate() {
        let (create, annih) = jw_boson_ops(&leg_mode(leg), ctx.layout)?;
        let op = if k < 2 { annih } else { create };
        ops = Some(match ops {
            None => op,
            Some(acc) => acc.mul(&op),
        });
    }
    Ok(ops.unwrap().scale(w).symmetrized())
}

/// Closed form for the coincident-pair case
/// (p₁,a,l₁) = (p₃,c,l₃) ≠ (p₂,b,l₂) = (p₄,d,l₄):
/// I₂ = (ā ā†)₁ (ā ā†)₂ W₃.
pub fn build_i2_coincident(ctx: &BuildContext, leg1: GluonLeg, leg2: GluonLeg, t: f64) -> Result<PauliSum> {
    if leg1 == leg2 {
        return Err(Error::NotCovered("coincident I₂ needs two distinct modes".into()));
    }
    let p1 = ctx.lattice.momentum(leg1.0);
    let p2 = ctx.lattice.momentum(leg2.0);
    let w = gluon_vertex_w(
        ctx.params,
        [leg1.2 as usize, leg2.2 as usize, leg1.2 as usize, leg2.2 as usize],
        [p1, p2, p1, p2],
        t,
    )?;
    debug_assert!(w.w4.abs() < 1e-12);
    let (c1, a1) = jw_boson_ops(&leg_mode(leg1), ctx.layout)?;
    let (c2, a2) = jw_boson_ops(&leg_mode(leg2), ctx.layout)?;
    Ok(a1.mul(&c1).mul(&a2.mul(&c2)).scale(C::new(w.w3, 0.0)))
}

/// Pauli pair builders on one unary block at level h: P = XX + YY and
/// Q = XY − YX on qubits (start+h, start+h+1).
fn pair_p(start: u32, h: u32) -> PauliSum {
    let one = C::new(1.0, 0.0);
    PauliSum::from_strings(vec![
        two(one, start + h, Pauli::X, Pauli::X),
        two(one, start + h, Pauli::Y, Pauli::Y),
    ])
}

fn pair_q(start: u32, h: u32) -> PauliSum {
    PauliSum::from_strings(vec![
        two(C::new(1.0, 0.0), start + h, Pauli::X, Pauli::Y),
        two(C::new(-1.0, 0.0), start + h, Pauli::Y, Pauli::X),
    ])
}

fn two(c: C, q: u32, a: Pauli, b: Pauli) -> PauliString {
    let mut letters = BTreeMap::new();
    letters.insert(q, a);
    letters.insert(q + 1, b);
    PauliString { coeff: c, letters }
}

/// Closed form for four pairwise-distinct modes:
/// I₂ = (1/256) Σ_h √Π(hₖ+1) [W₃(US + VW) − W₄(VS − UW)] with
/// U = P₁P₂ − Q₁Q₂, V = Q₁P₂ + P₁Q₂ on the annihilated pair and
/// S = P₃P₄ − Q₃Q₄, W = Q₃P₄ + P₃Q₄ on the created pair.
pub fn build_i2_distinct(ctx: &BuildContext, legs: [GluonLeg; 4], t: f64) -> Result<PauliSum> {
    for i in 0..4 {
        for j in i + 1..4 {
            if legs[i] == legs[j] {
                return Err(Error::NotCovered("distinct-case I₂ needs four pairwise-distinct modes".into()));
            }
        }
    }
    let ps = [
        ctx.lattice.momentum(legs[0].0),
        ctx.lattice.momentum(legs[1].0),
        ctx.lattice.momentum(legs[2].0),
        ctx.lattice.momentum(legs[3].0),
    ];
    let ls = [legs[0].2 as usize, legs[1].2 as usize, legs[2].2 as usize, legs[3].2 as usize];
    let w = gluon_vertex_w(ctx.params, ls, ps, t)?;
    let starts: Vec<u32> = legs
        .iter()
        .map(|&leg| {
            ctx.layout
                .boson_block(&leg_mode(leg))
                .map(|r| r.start as u32)
                .ok_or_else(|| Error::InvalidParameter("gluon mode not encoded".into()))
        })
        .collect::<Result<_>>()?;
    let levels = ctx.layout.boson_levels as u32;
    let mut out = PauliSum::zero();
    for h1 in 0..levels - 1 {
        for h2 in 0..levels - 1 {
            for h3 in 0..levels - 1 {
                for h4 in 0..levels - 1 {
                    let root = (((h1 + 1) * (h2 + 1) * (h3 + 1) * (h4 + 1)) as f64).sqrt();
                    let u = pair_p(starts[0], h1)
                        .mul(&pair_p(starts[1], h2))
                        .sub(&pair_q(starts[0], h1).mul(&pair_q(starts[1], h2)));
                    let v = pair_q(starts[0], h1)
                        .mul(&pair_p(starts[1], h2))
                        .add(&pair_p(starts[0], h1).mul(&pair_q(starts[1], h2)));
                    let s = pair_p(starts[2], h3)
                        .mul(&pair_p(starts[3], h4))
                        .sub(&pair_q(starts[2], h3).mul(&pair_q(starts[3], h4)));
                    let wsum = pair_q(starts[2], h3)
                        .mul(&pair_p(starts[3], h4))
                        .add(&pair_p(starts[2], h3).mul(&pair_q(starts[3], h4)));
                    let w3_part = u.mul(&s).add(&v.mul(&wsum)).scale(C::new(w.w3, 0.0));
                    let w4_part = v.mul(&s).sub(&u.mul(&wsum)).scale(C::new(w.w4, 0.0));
                    out = out.add(&w3_part.sub(&w4_part).scale(C::new(root / 256.0, 0.0)));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::test_support::Fixture;
    use crate::theory::ModelParams;

    fn params(g: f64) -> ModelParams {
        ModelParams { coupling_g: g, gluon_mass_regulator: 1.0, ..Default::default() }
    }

    #[test]
    fn zero_coupling_empty() {
        let fx = Fixture::new(params(0.0), 1);
        let ctx = fx.ctx();
        assert!(build_h_g3i(&ctx, 0.0, &TermFilter::all()).unwrap().pauli.is_empty());
        assert!(build_h_g4i(&ctx, 0.0, &TermFilter::all()).unwrap().pauli.is_empty());
    }

    #[test]
    fn g3i_hermitian_with_odd_boson_number_changes() {
        // the derivative factor (p₁·ε₂) needs a timelike polarization to
        // survive at zero momentum, so run with the 4-polarization basis
        let mut p = params(0.4);
        p.polarization_count = 4;
        let fx = Fixture::new(p, 1);
        let ctx = fx.ctx();
        let h = build_h_g3i(&ctx, 0.15, &TermFilter::all()).unwrap();
        assert!(!h.pauli.is_empty());
        assert!(h.pauli.is_hermitian(0.0));
        for rec in &h.provenance {
            assert!(
                rec.boson_number_delta.abs() == 1 || rec.boson_number_delta.abs() == 3,
                "Δn = {}",
                rec.boson_number_delta
            );
            assert_eq!(rec.momentum_sum, [0, 0, 0]);
        }
    }

    #[test]
    fn g4i_hermitian_and_color_antisymmetry() {
        let fx = Fixture::new(params(0.4), 1);
        let ctx = fx.ctx();
        let h = build_h_g4i(&ctx, 0.0, &TermFilter::all()).unwrap();
        assert!(!h.pauli.is_empty());
        assert!(h.pauli.is_hermitian(0.0));
        // f^{eab} antisymmetry: no record with a = b or c = d
        for rec in &h.provenance {
            let idx: Vec<u8> = rec
                .indices
                .split_whitespace()
                .take(4)
                .map(|kv| kv.split('=').nth(1).unwrap().parse().unwrap())
                .collect();
            assert_ne!(idx[0], idx[1], "{}", rec.indices);
            assert_ne!(idx[2], idx[3], "{}", rec.indices);
        }
    }

    #[test]
    fn i2_coincident_matches_generic() {
        for cutoff in [1u32, 2] {
            let mut p = params(0.4);
            p.boson_cutoff = cutoff;
            let fx = Fixture::new(p, 1);
            let ctx = fx.ctx();
            let leg1 = ([0, 0, 0], 0u8, 0u8);
            let leg2 = ([0, 0, 0], 1u8, 1u8);
            for t in [0.0, 0.37] {
                let closed = build_i2_coincident(&ctx, leg1, leg2, t).unwrap();
                let generic = i2_generic(&ctx, [leg1, leg2, leg1, leg2], t).unwrap();
                let d = closed.sub(&generic).max_coeff_norm();
                assert!(d < 1e-12, "coincident I₂ differ by {d:.2e} (𝒩={cutoff})");
                assert!(!closed.is_empty());
            }
        }
    }

    #[test]
    fn i2_distinct_matches_generic() {
        for cutoff in [1u32, 2] {
            let mut p = params(0.4);
            p.boson_cutoff = cutoff;
            let fx = Fixture::new(p, 2);
            let ctx = fx.ctx();
            // different momenta so ω₂ ≠ 0 exercises the W₄ branch
            let legs = [
                ([0, 0, 0], 0u8, 0u8),
                ([0, 0, 0], 1u8, 0u8),
                ([0, 0, -1], 0u8, 0u8),
                ([0, 0, -1], 1u8, 0u8),
            ];
            for t in [0.0, 0.37] {
                let closed = build_i2_distinct(&ctx, legs, t).unwrap();
                let generic = i2_generic(&ctx, legs, t).unwrap();
                let d = closed.sub(&generic).max_coeff_norm();
                assert!(d < 1e-12, "distinct I₂ differ by {d:.2e} (𝒩={cutoff}, t={t})");
                assert!(!closed.is_empty());
            }
        }
    }

    #[test]
    fn i2_case_guards() {
        let fx = Fixture::new(params(0.4), 1);
        let ctx = fx.ctx();
        let leg = ([0, 0, 0], 0u8, 0u8);
        assert!(build_i2_coincident(&ctx, leg, leg, 0.0).is_err());
        let legs = [leg, leg, ([0, 0, 0], 1, 0), ([0, 0, 0], 1, 1)];
        assert!(build_i2_distinct(&ctx, legs, 0.0).is_err());
    }
}
