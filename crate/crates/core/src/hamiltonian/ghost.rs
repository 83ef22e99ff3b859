//! Ghost-gluon interaction H_FPI = −g f^{abc}(∂^μ c̄^a) A^b_μ c^c.
//!
//! The ghost fields expand as c = d e^{−ipx} + d† e^{ipx} and
//! c̄ = e e^{−ipx} − e† e^{ipx}; the explicit minus on the antighost
//! creation is part of the field definition and is kept here, on top of
//! the cross-slot operator realization of `jw_ghost_field_ops`.

use super::{
    measure::measure_factor, BuildContext, HamiltonianTerm, TermAccumulator, TermFilter,
    TermLabel, VertexRecord,
};
use crate::error::{Error, Result};
use crate::lattice::{triples_with_signs, ModeKey, Species};
use crate::pauli::{jw_boson_ops, jw_ghost_field_ops, PauliSum};
use crate::theory::polarization_vector;
use nalgebra::Vector4;
use num_complex::Complex64;
use std::collections::BTreeMap;

type C = Complex64;

fn minkowski(a: &Vector4<C>, b: &Vector4<C>) -> C {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
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

/// Build H_FPI at time `t`; requires ghost modes in the encoding.
pub fn build_h_fpi(ctx: &BuildContext, t: f64, filter: &TermFilter) -> Result<HamiltonianTerm> {
    if !ctx.params.include_ghosts {
        return Err(Error::Config(
            "H_FPI requires include_ghosts = true (ghost modes are not encoded)".into(),
        ));
    }
    let mut acc = TermAccumulator::new(TermLabel::Fpi, t);
    let g = ctx.params.coupling_g;
    let adj = (ctx.params.group_n * ctx.params.group_n - 1) as u8;
    let pols = ctx.params.polarization_count as u8;
    let mut ghost_cache: BTreeMap<(u8, [i32; 3]), crate::pauli::GhostOps> = BTreeMap::new();
    let mut boson_cache: BTreeMap<(ModeKey, bool), PauliSum> = BTreeMap::new();

    let mut color_triples = Vec::new();
    for a in 0..adj {
        for b in 0..adj {
            for c in 0..adj {
                let f = ctx.group.f(a as usize, b as usize, c as usize);
                if f != 0.0 && filter.allows_adjoint(b) {
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
            let p1_four = Vector4::new(
                C::new(omegas[0], 0.0),
                C::new(ps[0][0], 0.0),
                C::new(ps[0][1], 0.0),
                C::new(ps[0][2], 0.0),
            );
            for &(a, b, c, f) in &color_triples {
                // both ghost-sector mode pairs must exist in the encoding
                let has = |adjoint: u8, site: [i32; 3]| {
                    ctx.ordering
                        .kappa(&ModeKey { species: Species::Ghost { adjoint }, site })
                        .is_some()
                        && ctx
                            .ordering
                            .kappa(&ModeKey { species: Species::AntiGhost { adjoint }, site })
                            .is_some()
                };
                if !has(a, s1) || !has(c, s3) {
                    continue;
                }
                for l in 0..pols {
                    if !filter.allows_polarization(l) {
                        continue;
                    }
                    let gluon = ModeKey {
                        species: Species::GaugeBoson { adjoint: b, polarization: l },
                        site: s2,
                    };
                    if ctx.layout.boson_block(&gluon).is_none() {
                        continue;
                    }
                    let eps = {
                        let e = polarization_vector(ps[1], l as usize, ctx.params.polarization_count)?;
                        if signs[1] < 0 {
                            e.map(|z| z.conj())
                        } else {
                            e
                        }
                    };
                    let deriv = C::new(0.0, -(signs[0] as f64));
                    let vertex = deriv * minkowski(&p1_four, &eps);
                    let coeff = C::new(-g * f * measure, 0.0) * vertex * phase;
                    if coeff.norm() == 0.0 {
                        continue;
                    }
                    if !ghost_cache.contains_key(&(a, s1)) {
                        ghost_cache.insert((a, s1), jw_ghost_field_ops(a, s1, ctx.ordering)?);
                    }
                    if !ghost_cache.contains_key(&(c, s3)) {
                        ghost_cache.insert((c, s3), jw_ghost_field_ops(c, s3, ctx.ordering)?);
                    }
                    // c̄ leg: +e for positive frequency, −e† for negative
                    let gbar = &ghost_cache[&(a, s1)];
                    let bar_op = if signs[0] > 0 {
                        gbar.e.clone()
                    } else {
                        gbar.e_dag.scale(C::new(-1.0, 0.0))
                    };
                    // c leg: +d / +d†
                    let gc = &ghost_cache[&(c, s3)];
                    let ket_op = if signs[2] > 0 { gc.d.clone() } else { gc.d_dag.clone() };
                    if !boson_cache.contains_key(&(gluon, signs[1] < 0)) {
                        let (create, annih) = jw_boson_ops(&gluon, ctx.layout)?;
                        boson_cache.insert((gluon, true), create);
                        boson_cache.insert((gluon, false), annih);
                    }
                    let gluon_op = &boson_cache[&(gluon, signs[1] < 0)];
                    let ops = bar_op.mul(gluon_op).mul(&ket_op);
                    acc.push(
                        coeff,
                        ops,
                        VertexRecord {
                            structure: format!(
                                "fpi_{}{}{}",
                                if signs[0] > 0 { 'p' } else { 'm' },
                                if signs[1] > 0 { 'p' } else { 'm' },
                                if signs[2] > 0 { 'p' } else { 'm' }
                            ),
                            sites: vec![s1, s2, s3],
                            momentum_sum: [
                                signs[0] * s1[0] + signs[1] * s2[0] + signs[2] * s3[0],
                                signs[0] * s1[1] + signs[1] * s2[1] + signs[2] * s3[1],
                                signs[0] * s1[2] + signs[1] * s2[2] + signs[2] * s3[2],
                            ],
                            indices: format!("a={a} b={b} c={c} l={l}"),
                            coeff_re: coeff.re,
                            coeff_im: coeff.im,
                            boson_number_delta: -signs[1],
                        },
                    );
                }
            }
        }
    }
    Ok(acc.finish(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::test_support::Fixture;
    use crate::pauli::{Pauli, PauliString};
    use crate::theory::ModelParams;

    fn params() -> ModelParams {
        ModelParams {
            coupling_g: 0.5,
            gluon_mass_regulator: 1.0,
            include_ghosts: true,
            ..Default::default()
        }
    }

    #[test]
    fn requires_ghosts() {
        let mut p = params();
        p.include_ghosts = false;
        let fx = Fixture::new(p, 1);
        let ctx = fx.ctx();
        assert!(matches!(
            build_h_fpi(&ctx, 0.0, &TermFilter::all()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn hermitian_and_color_structure() {
        // zero-momentum derivative coupling needs the timelike polarization
        let mut p = params();
        p.polarization_count = 4;
        let fx = Fixture::new(p, 1);
        let ctx = fx.ctx();
        let h = build_h_fpi(&ctx, 0.21, &TermFilter::all()).unwrap();
        assert!(!h.pauli.is_empty());
        assert!(h.pauli.is_hermitian(0.0));
        for rec in &h.provenance {
            let idx: Vec<u8> = rec
                .indices
                .split_whitespace()
                .take(3)
                .map(|kv| kv.split('=').nth(1).unwrap().parse().unwrap())
                .collect();
            // f^{abc} antisymmetry: all three colors distinct
            assert_ne!(idx[0], idx[1]);
            assert_ne!(idx[1], idx[2]);
            assert_ne!(idx[0], idx[2]);
        }
    }

    #[test]
    fn ghost_number_conserved() {
        let mut p = params();
        p.polarization_count = 4;
        let fx = Fixture::new(p, 1);
        let ctx = fx.ctx();
        let h = build_h_fpi(&ctx, 0.4, &TermFilter::all()).unwrap();
        assert!(!h.pauli.is_empty());
        // Q_ghost = Σ (n_ghost − n_antighost) as a Pauli sum
        let mut strings = Vec::new();
        for m in fx.ordering.fermionic_modes() {
            let q = fx.ordering.kappa(m).unwrap() as u32;
            match m.species {
                Species::Ghost { .. } => {
                    strings.push(PauliString::single(C::new(-0.5, 0.0), q, Pauli::Z))
                }
                Species::AntiGhost { .. } => {
                    strings.push(PauliString::single(C::new(0.5, 0.0), q, Pauli::Z))
                }
                _ => {}
            }
        }
        let q_ghost = PauliSum::from_strings(strings);
        let comm = h.pauli.commutator(&q_ghost);
        assert!(
            comm.is_empty(),
            "[H_FPI, Q_ghost] has residual max coefficient {:.2e}",
            comm.max_coeff_norm()
        );
    }
}
