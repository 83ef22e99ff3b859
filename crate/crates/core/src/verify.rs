//! Verification suites: one runnable check per acceptance criterion,
//! shared by the `verify` CLI command and the acceptance test target.

use crate::circuit::{bounds, synthesize_pauli_exponential};
use crate::encoding::{build_layout, OccupationConfig};
use crate::error::Result;
use crate::hamiltonian::{
    build_h_fi, build_h_g4i, build_h_total, build_i1_closed_form, build_i2_coincident,
    build_i2_distinct, i1_generic, i2_generic, BuildContext, FiStructure, TermFilter, TermLabel,
};
use crate::hadronize::{build_t_matrix, prepare_singlet};
use crate::lattice::{build_lattice, enumerate_modes, ModeKey, ModeOrdering, Species};
use crate::pauli::{
    jw_boson_ops, jw_fermion_ops, jw_ghost_field_ops, max_abs_dense, to_dense_matrix, Pauli,
    PauliString, PauliSum,
};
use crate::report::{LayoutSummary, RunConfig, RunReport};
use crate::simulator::{
    apply_dense, evolve, exact_evolution_oracle, run_program, EvolveOptions,
    InitialState, StateVector,
};
use crate::theory::ModelParams;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

type C = Complex64;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl SuiteResult {
    fn pass(name: &str, details: String) -> Self {
        SuiteResult { name: name.into(), passed: true, details }
    }

    fn fail(name: &str, details: String) -> Self {
        SuiteResult { name: name.into(), passed: false, details }
    }

    pub fn line(&self) -> String {
        format!("{} {} — {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.details)
    }
}

fn max_abs(m: &DMatrix<C>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Criterion 1: the ladder-operator (anti)commutation contract on a small
/// register — 5 fermionic modes (quark, antiquark, ghost pair ×2 colors)
/// and 2 boson modes at 𝒩 = 2, all as dense matrices to 1e−12. The boson
/// commutator [ā, ā†] = 1 is checked on the unary subspace below the
/// cutoff (the truncation necessarily breaks it on the top level, where
/// the defining relations ā†|𝒩⟩ = 0, ā|0⟩ = 0 are checked instead).
pub fn criterion_operator_algebra() -> SuiteResult {
    let name = "operator-algebra";
    let tol = 1e-12;
    let modes = vec![
        ModeKey { species: Species::Quark { color: 0, spin: 0 }, site: [0; 3] },
        ModeKey { species: Species::AntiQuark { color: 0, spin: 0 }, site: [0; 3] },
        ModeKey { species: Species::Ghost { adjoint: 0 }, site: [0; 3] },
        ModeKey { species: Species::AntiGhost { adjoint: 0 }, site: [0; 3] },
        ModeKey { species: Species::Quark { color: 1, spin: 1 }, site: [0; 3] },
        ModeKey { species: Species::GaugeBoson { adjoint: 0, polarization: 0 }, site: [0; 3] },
        ModeKey { species: Species::GaugeBoson { adjoint: 1, polarization: 1 }, site: [0; 3] },
    ];
    let ordering = match ModeOrdering::from_modes(modes) {
        Ok(o) => o,
        Err(e) => return SuiteResult::fail(name, e.to_string()),
    };
    let params = ModelParams { boson_cutoff: 2, ..Default::default() };
    let layout = build_layout(&ordering, &params).expect("layout");
    let q = layout.total_qubits; // 5 + 2·3 = 11
    let dim = 1usize << q;
    let id = DMatrix::<C>::identity(dim, dim);
    let dm = |s: &PauliSum| to_dense_matrix(s, q).unwrap();
    let anti = |a: &DMatrix<C>, b: &DMatrix<C>| a * b + b * a;
    let comm = |a: &DMatrix<C>, b: &DMatrix<C>| a * b - b * a;
    let mut worst: f64 = 0.0;

    // fermionic pairs (standard species)
    let fermions: Vec<(PauliSum, PauliSum)> = (0..5)
        .map(|k| jw_fermion_ops(ordering.mode(k).unwrap(), &ordering).unwrap())
        .collect();
    for (a, (ca, aa)) in fermions.iter().enumerate() {
        for (b, (cb, ab)) in fermions.iter().enumerate() {
            let want = if a == b { id.clone() } else { DMatrix::zeros(dim, dim) };
            worst = worst.max(max_abs(&(anti(&dm(ab), &dm(ca)) - &want)));
            worst = worst.max(max_abs(&anti(&dm(aa), &dm(ab))));
            worst = worst.max(max_abs(&anti(&dm(ca), &dm(cb))));
        }
    }

    // ghost sector: {d, e†} = {e, d†} = −δ^{ab}, everything else vanishes
    let g0 = jw_ghost_field_ops(0, [0; 3], &ordering).unwrap();
    worst = worst.max(max_abs(&(anti(&dm(&g0.d), &dm(&g0.e_dag)) + &id)));
    worst = worst.max(max_abs(&(anti(&dm(&g0.e), &dm(&g0.d_dag)) + &id)));
    worst = worst.max(max_abs(&anti(&dm(&g0.d), &dm(&g0.d_dag))));
    worst = worst.max(max_abs(&anti(&dm(&g0.e), &dm(&g0.e_dag))));
    worst = worst.max(max_abs(&anti(&dm(&g0.d), &dm(&g0.e))));
    worst = worst.max(max_abs(&anti(&dm(&g0.d_dag), &dm(&g0.e_dag))));
    worst = worst.max(max_abs(&anti(&dm(&g0.d), &dm(&fermions[0].0))));

    // boson sector
    let boson_modes: Vec<ModeKey> = ordering.boson_modes().to_vec();
    let ladders: Vec<(PauliSum, PauliSum)> =
        boson_modes.iter().map(|m| jw_boson_ops(m, &layout).unwrap()).collect();
    // cross-mode commutators vanish exactly
    worst = worst.max(max_abs(&comm(&dm(&ladders[0].1), &dm(&ladders[1].0))));
    // bosons commute with fermions
    worst = worst.max(max_abs(&comm(&dm(&ladders[0].0), &dm(&fermions[0].0))));
    // same-mode [ā, ā†] = 1 on unary states below the cutoff
    let (create, annih) = (&ladders[0].0, &ladders[0].1);
    let commutator = comm(&dm(annih), &dm(create));
    let block = layout.boson_block(&boson_modes[0]).unwrap();
    let vacuum_rest: usize = 1 << layout.boson_block(&boson_modes[1]).unwrap().start;
    for h in 0..params.boson_cutoff as usize {
        let idx = (1usize << (block.start + h)) | vacuum_rest;
        let mut col = DMatrix::<C>::zeros(dim, 1);
        col[(idx, 0)] = C::new(1.0, 0.0);
        let out = &commutator * &col;
        for r in 0..dim {
            let want = if r == idx { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
            worst = worst.max((out[(r, 0)] - want).norm());
        }
    }
    // truncated ladder endpoints: ā†|𝒩⟩ = 0 and ā|0⟩ = 0
    let cd = dm(create);
    let ad = dm(annih);
    let top = (1usize << (block.start + params.boson_cutoff as usize)) | vacuum_rest;
    let bottom = (1usize << block.start) | vacuum_rest;
    for r in 0..dim {
        worst = worst.max(cd[(r, top)].norm());
        worst = worst.max(ad[(r, bottom)].norm());
    }
    // and ā†|h⟩ = √(h+1)|h+1⟩
    for h in 0..params.boson_cutoff as usize {
        let from = (1usize << (block.start + h)) | vacuum_rest;
        let to = (1usize << (block.start + h + 1)) | vacuum_rest;
        worst = worst.max((cd[(to, from)] - C::new(((h + 1) as f64).sqrt(), 0.0)).norm());
    }

    let details = format!("max deviation {worst:.2e} (tolerance {tol:.0e}) on an 11-qubit register");
    if worst <= tol {
        SuiteResult::pass(name, details)
    } else {
        SuiteResult::fail(name, details)
    }
}

/// Random small I₁ instance set shared by criterion 2.
fn i1_instances(rng: &mut ChaCha8Rng) -> Vec<(ModelParams, u32, [i32; 3], u8, [i32; 3], u8, [i32; 3], u8, f64)> {
    let mut out = Vec::new();
    // single-site SU(2)/SU(3) with 4 polarizations (timelike couples at rest)
    for _ in 0..14 {
        let n = if rng.gen_bool(0.5) { 2 } else { 3 };
        let params = ModelParams {
            group_n: n,
            polarization_count: 4,
            boson_cutoff: 1 + rng.gen_range(0..2),
            fermion_mass_m: 0.5 + rng.gen::<f64>(),
            gluon_mass_regulator: 1.0,
            ..Default::default()
        };
        let a = rng.gen_range(0..(n * n - 1)) as u8;
        let mut i = rng.gen_range(0..n) as u8;
        let mut j = rng.gen_range(0..n) as u8;
        if i > j {
            std::mem::swap(&mut i, &mut j);
        }
        out.push((params, 1, [0; 3], a, [0; 3], i, [0; 3], j, rng.gen::<f64>()));
    }
    // extent-2 SU(2) with transverse polarizations and equal fermion sites
    for _ in 0..8 {
        let params = ModelParams {
            group_n: 2,
            polarization_count: 2,
            boson_cutoff: 1,
            fermion_mass_m: 1.0,
            gluon_mass_regulator: 1.0,
            ..Default::default()
        };
        let site = [-(rng.gen_range(0..2i32)), rng.gen_range(-1..1), rng.gen_range(-1..1)];
        let mut i = rng.gen_range(0..2) as u8;
        let mut j = rng.gen_range(0..2) as u8;
        if i > j {
            std::mem::swap(&mut i, &mut j);
        }
        out.push((params, 2, [0; 3], 1, site, i, site, j, rng.gen::<f64>()));
    }
    out
}

/// Criterion 2: supplementary closed forms against the generic
/// Jordan-Wigner composition, as dense matrices to 1e−10.
pub fn criterion_cross_path() -> SuiteResult {
    let name = "cross-path-decomposition";
    let tol = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(0x51C2);
    let mut worst: f64 = 0.0;
    let mut count_i1 = 0;
    let mut nonzero_i1 = 0;

    for (params, extent, s1, a, s2, i, s3, j, t) in i1_instances(&mut rng) {
        let lattice = build_lattice(1.0, extent).unwrap();
        let ordering = enumerate_modes(&lattice, &params).unwrap();
        let layout = build_layout(&ordering, &params).unwrap();
        let ctx = BuildContext::new(&params, &lattice, &ordering, &layout).unwrap();
        let closed = match build_i1_closed_form(&ctx, s1, a, s2, i, s3, j, t) {
            Ok(c) => c,
            Err(e) => return SuiteResult::fail(name, format!("I₁ closed form: {e}")),
        };
        let generic = i1_generic(&ctx, s1, a, s2, i, s3, j, t).unwrap();
        let diff = closed.sub(&generic);
        if !diff.is_empty() {
            let (compact, q, _) = diff.compacted();
            if q > 20 {
                return SuiteResult::fail(name, format!("I₁ diff support too large: {q}"));
            }
            worst = worst.max(max_abs_dense(&compact, q).unwrap());
        }
        count_i1 += 1;
        if !closed.is_empty() {
            nonzero_i1 += 1;
        }
    }

    // I₂ instances on one- and two-site lattices
    let mut count_i2 = 0;
    for _ in 0..20 {
        let cutoff = 1 + rng.gen_range(0..2);
        let params = ModelParams {
            group_n: 2,
            boson_cutoff: cutoff,
            gluon_mass_regulator: 1.0,
            ..Default::default()
        };
        let extent = 1 + rng.gen_range(0..2);
        let lattice = build_lattice(1.0, extent).unwrap();
        let ordering = enumerate_modes(&lattice, &params).unwrap();
        let layout = build_layout(&ordering, &params).unwrap();
        let ctx = BuildContext::new(&params, &lattice, &ordering, &layout).unwrap();
        let site = |r: &mut ChaCha8Rng| {
            if extent == 1 {
                [0, 0, 0]
            } else {
                [r.gen_range(-1..1), r.gen_range(-1..1), r.gen_range(-1..1)]
            }
        };
        let t = rng.gen::<f64>();
        // coincident case
        let leg1 = (site(&mut rng), 0u8, rng.gen_range(0..2) as u8);
        let mut leg2 = (site(&mut rng), 1u8, rng.gen_range(0..2) as u8);
        if leg1 == leg2 {
            leg2.2 = 1 - leg2.2;
        }
        let closed = build_i2_coincident(&ctx, leg1, leg2, t).unwrap();
        let generic = i2_generic(&ctx, [leg1, leg2, leg1, leg2], t).unwrap();
        let diff = closed.sub(&generic);
        if !diff.is_empty() {
            let (compact, q, _) = diff.compacted();
            worst = worst.max(max_abs_dense(&compact, q).unwrap());
        }
        // all-distinct case
        let legs = [
            (site(&mut rng), 0u8, 0u8),
            (site(&mut rng), 1u8, 0u8),
            (site(&mut rng), 2u8, rng.gen_range(0..2) as u8),
            (site(&mut rng), 0u8, 1u8),
        ];
        let distinct_ok = (0..4).all(|x| (x + 1..4).all(|y| legs[x] != legs[y]));
        if distinct_ok {
            let closed = build_i2_distinct(&ctx, legs, t).unwrap();
            let generic = i2_generic(&ctx, legs, t).unwrap();
            let diff = closed.sub(&generic);
            if !diff.is_empty() {
                let (compact, q, _) = diff.compacted();
                worst = worst.max(max_abs_dense(&compact, q).unwrap());
            }
            count_i2 += 1;
        }
        count_i2 += 1;
    }

    let details = format!(
        "‖Δ‖_max = {worst:.2e} over {count_i1} I₁ ({nonzero_i1} nonzero) and {count_i2} I₂ instances (tolerance {tol:.0e})"
    );
    if worst <= tol && count_i1 >= 20 && count_i2 >= 20 && nonzero_i1 >= 10 {
        SuiteResult::pass(name, details)
    } else {
        SuiteResult::fail(name, details)
    }
}

/// Criterion 3: synthesized programs against dense exponentials on random
/// strings (weight ≤ 6, ≤ 10 data qubits), plus auxiliary restoration.
pub fn criterion_synthesis() -> SuiteResult {
    let name = "synthesis-correctness";
    let tol = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let mut worst: f64 = 0.0;
    let mut worst_aux: f64 = 0.0;
    for case in 0..50 {
        let data_qubits = rng.gen_range(2..=10usize);
        let weight = rng.gen_range(1..=6.min(data_qubits));
        let mut qubits: BTreeSet<u32> = BTreeSet::new();
        while qubits.len() < weight {
            qubits.insert(rng.gen_range(0..data_qubits) as u32);
        }
        let letters = qubits
            .into_iter()
            .map(|q| {
                let p = match rng.gen_range(0..3) {
                    0 => Pauli::X,
                    1 => Pauli::Y,
                    _ => Pauli::Z,
                };
                (q, p)
            })
            .collect();
        let pattern = PauliString { coeff: C::new(1.0, 0.0), letters };
        let theta: f64 = rng.gen_range(-1.0..1.0);
        let prog = synthesize_pauli_exponential(&pattern, theta, data_qubits).unwrap();

        // dense exponential on the data register
        let sum = PauliSum::from_strings(vec![pattern.clone()]);
        let h = to_dense_matrix(&sum, data_qubits).unwrap();
        let u = crate::simulator::expm_hermitian(&h, theta).unwrap();

        // three random data states, each extended with aux = |0⟩
        for _ in 0..3 {
            let dim = 1usize << data_qubits;
            let mut amps: Vec<C> = (0..dim)
                .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|a| *a /= C::new(norm, 0.0));
            let data = StateVector::from_amplitudes(amps.clone(), data_qubits).unwrap();
            let mut full_amps = vec![C::new(0.0, 0.0); dim << 1];
            full_amps[..dim].copy_from_slice(&amps);
            let mut state = StateVector::from_amplitudes(full_amps, data_qubits + 1).unwrap();
            run_program(&mut state, &prog).unwrap();
            let want = apply_dense(&data, &u).unwrap();
            let mut err: f64 = 0.0;
            let mut aux_leak: f64 = 0.0;
            for b in 0..dim {
                err = err.max((state.amplitudes()[b] - want.amplitudes()[b]).norm());
                aux_leak += state.amplitudes()[b + dim].norm_sqr();
            }
            worst = worst.max(err);
            worst_aux = worst_aux.max(aux_leak.sqrt());
        }
        let _ = case;
    }
    let details = format!(
        "max amplitude error {worst:.2e}, max auxiliary leakage {worst_aux:.2e} over 50 strings (tolerance {tol:.0e})"
    );
    if worst <= tol && worst_aux <= tol {
        SuiteResult::pass(name, details)
    } else {
        SuiteResult::fail(name, details)
    }
}

/// The quark-scattering desk system: SU(2), single site, μ = 1, one
/// adjoint color, timelike polarization — 6 active qubits.
fn trotter_system() -> (ModelParams, TermFilter) {
    let params = ModelParams {
        group_n: 2,
        coupling_g: 1.2,
        fermion_mass_m: 1.0,
        gluon_mass_regulator: 1.0,
        boson_cutoff: 1,
        polarization_count: 4,
        include_ghosts: false,
        dt: 0.1,
        steps_n: 1,
        t0: 0.0,
    };
    let filter = TermFilter {
        labels: [TermLabel::Fi].into(),
        fi_structures: Some([FiStructure::QuarkScattering].into()),
        adjoint_colors: Some([0].into()),
        polarizations: Some([3].into()),
    };
    (params, filter)
}

/// Trotter error ‖ψ_trotter(n) − ψ_exact(n)‖₂ over slice counts.
pub fn trotter_errors(total_time: f64, ns: &[u32]) -> Result<Vec<(u32, f64)>> {
    let (base_params, filter) = trotter_system();
    let lattice = build_lattice(1.0, 1)?;
    let mut out = Vec::new();
    for &n in ns {
        let mut params = base_params.clone();
        params.steps_n = n;
        params.dt = total_time / n as f64;
        let ordering = enumerate_modes(&lattice, &params)?;
        let layout = build_layout(&ordering, &params)?;
        let ctx = BuildContext::new(&params, &lattice, &ordering, &layout)?;
        // initial: one quark occupied so the hopping term acts
        let quark = ModeKey { species: Species::Quark { color: 0, spin: 0 }, site: [0; 3] };
        let mut cfg = OccupationConfig::vacuum(&layout);
        cfg.fermion_occ.insert(quark, 1);
        let initial = InitialState::Config(cfg);
        let traj = evolve(
            &ctx,
            &filter,
            &initial,
            &EvolveOptions { snapshot_stride: 0, ..Default::default() },
        )?;
        // exact slice product on the same register
        let active = &traj.active;
        let mut hams = Vec::with_capacity(n as usize);
        for k in 0..n {
            let t = params.t0 + k as f64 * params.dt;
            let terms = build_h_total(&ctx, t, &filter)?;
            let mut slice = PauliSum::zero();
            for term in &terms {
                slice = slice.add(&active.remap_sum(&term.pauli)?);
            }
            hams.push(slice);
        }
        let u = exact_evolution_oracle(&hams, active.len(), params.dt)?;
        // rebuild the initial state on the compact register
        let idx_full = crate::encoding::occ_to_basis_index(
            &{
                let quark = ModeKey { species: Species::Quark { color: 0, spin: 0 }, site: [0; 3] };
                let mut cfg = OccupationConfig::vacuum(&layout);
                cfg.fermion_occ.insert(quark, 1);
                cfg
            },
            &layout,
        )?;
        let mut amps = vec![C::new(0.0, 0.0); 1 << active.len()];
        amps[active.compact_index(idx_full)] = C::new(1.0, 0.0);
        let psi0 = StateVector::from_amplitudes(amps, active.len())?;
        let exact = apply_dense(&psi0, &u)?;
        out.push((n, traj.final_state.distance(&exact)));
    }
    Ok(out)
}

/// Least-squares slope of ln(err) against ln(1/n).
pub fn fit_error_slope(errors: &[(u32, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = errors
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|&(n, e)| (-(n as f64).ln(), e.ln()))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Criterion 4: first-order Trotter error scaling ∝ 1/n.
pub fn criterion_trotter_order() -> SuiteResult {
    let name = "trotter-order";
    let ns = [4u32, 8, 16, 32, 64];
    let errors = match trotter_errors(1.0, &ns) {
        Ok(e) => e,
        Err(e) => return SuiteResult::fail(name, e.to_string()),
    };
    let monotone = errors.windows(2).all(|w| w[1].1 < w[0].1);
    let slope = fit_error_slope(&errors);
    let details = format!(
        "errors {:?}, fitted slope {slope:.3} (want [0.8, 1.2], monotone decreasing)",
        errors.iter().map(|(n, e)| format!("n={n}: {e:.3e}")).collect::<Vec<_>>()
    );
    if monotone && (0.8..=1.2).contains(&slope) {
        SuiteResult::pass(name, details)
    } else {
        SuiteResult::fail(name, details)
    }
}

/// Gate counts per Pauli-sum without materializing programs:
/// 2·weight CNOTs, basis changes in and out, one RZ per string.
pub fn count_from_sum(sum: &PauliSum) -> (u64, u64) {
    let mut cnot = 0u64;
    let mut single = 0u64;
    for s in sum.terms() {
        let w = s.weight() as u64;
        if w == 0 {
            continue;
        }
        cnot += 2 * w;
        let xy = s
            .letters
            .values()
            .filter(|p| matches!(p, Pauli::X | Pauli::Y))
            .count() as u64;
        single += 2 * xy + 1;
    }
    (cnot, single)
}

/// Criterion 5: measured CNOT counts against the four quoted bounds for
/// (N, 𝒱, 𝒩) ∈ {(2,1,1), (2,1,2), (3,1,1)}.
pub fn criterion_gate_bounds() -> SuiteResult {
    let name = "gate-count-bounds";
    let mut details = String::new();
    let mut ok = true;
    for (n, extent, cutoff) in [(2u32, 1u32, 1u32), (2, 1, 2), (3, 1, 1)] {
        let params = ModelParams {
            group_n: n,
            coupling_g: 0.8,
            boson_cutoff: cutoff,
            gluon_mass_regulator: 1.0,
            polarization_count: 2,
            ..Default::default()
        };
        let lattice = build_lattice(1.0, extent).unwrap();
        let ordering = enumerate_modes(&lattice, &params).unwrap();
        let layout = build_layout(&ordering, &params).unwrap();
        let ctx = BuildContext::new(&params, &lattice, &ordering, &layout).unwrap();
        let v = lattice.volume() as u64;
        let filter = TermFilter::all();

        let h1 = crate::hamiltonian::build_h1(&ctx, 0.3, &filter).unwrap();
        let (c_i1, _) = count_from_sum(&h1.pauli);
        let b_i1 = bounds::i1(n as u64, v, cutoff as u64);

        let hfi = build_h_fi(&ctx, 0.3, &filter).unwrap();
        let (c_fi, _) = count_from_sum(&hfi.pauli);
        let b_fi = bounds::h_fi(n as u64, v, cutoff as u64);

        // one I₂ token: fixed color/site quadruple summed over polarizations
        let mut i2_sum = PauliSum::zero();
        for l1 in 0..2u8 {
            for l2 in 0..2u8 {
                for l3 in 0..2u8 {
                    for l4 in 0..2u8 {
                        let legs = [
                            ([0; 3], 0u8, l1),
                            ([0; 3], 1u8, l2),
                            ([0; 3], 0u8, l3),
                            ([0; 3], 1u8, l4),
                        ];
                        i2_sum = i2_sum.add(&i2_generic(&ctx, legs, 0.3).unwrap());
                    }
                }
            }
        }
        let (c_i2, _) = count_from_sum(&i2_sum);
        let b_i2 = bounds::i2(cutoff as u64);

        let g4 = build_h_g4i(&ctx, 0.3, &filter).unwrap();
        let (c_g4, _) = count_from_sum(&g4.pauli);
        let b_g4 = bounds::h_g4i(n as u64, v, cutoff as u64);

        let fi_ok = b_fi >= 0 && c_fi <= b_fi as u64;
        let this_ok = c_i1 <= b_i1 && fi_ok && c_i2 <= b_i2 && c_g4 <= b_g4;
        ok &= this_ok;
        details.push_str(&format!(
            "(N={n},V={v},cut={cutoff}): I1 {c_i1}≤{b_i1} FI {c_fi}≤{b_fi} I2 {c_i2}≤{b_i2} G4I {c_g4}≤{b_g4}; "
        ));
    }
    if ok {
        SuiteResult::pass(name, details)
    } else {
        SuiteResult::fail(name, details)
    }
}

/// Criterion 6: layout totals equal [2(N²−1)(𝒩+1) + 4N]𝒱 with ghosts off,
/// two polarizations.
pub fn criterion_qubit_count() -> SuiteResult {
    let name = "qubit-count-formula";
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ok = true;
    let mut details = String::new();
    for _ in 0..10 {
        let n = rng.gen_range(2..5u32);
        let cutoff = rng.gen_range(1..4u32);
        let extent = rng.gen_range(1..3u32);
        let params = ModelParams {
            group_n: n,
            boson_cutoff: cutoff,
            polarization_count: 2,
            include_ghosts: false,
            ..Default::default()
        };
        let lattice = build_lattice(1.0, extent).unwrap();
        let ordering = enumerate_modes(&lattice, &params).unwrap();
        let layout = build_layout(&ordering, &params).unwrap();
        let v = lattice.volume();
        let want = (2 * (n * n - 1) as usize * (cutoff as usize + 1) + 4 * n as usize) * v;
        if layout.total_qubits != want {
            ok = false;
            details.push_str(&format!("N={n} 𝒩={cutoff} 𝒱={v}: {} ≠ {want}; ", layout.total_qubits));
        }
    }
    if ok {
        SuiteResult::pass(name, "10 random (N, 𝒩, 𝒱) tuples match".into())
    } else {
        SuiteResult::fail(name, details)
    }
}

/// Criterion 7: 𝒯 unitarity, the singlet column, and singlet marginals.
pub fn criterion_t_matrix() -> SuiteResult {
    let name = "t-matrix-singlet";
    let tol = 1e-12;
    let t = build_t_matrix();
    let defect = t.unitarity_defect();
    let w = 1.0 / 3f64.sqrt();
    let mut col_err: f64 = 0.0;
    for (k, v) in t.column(0).iter().enumerate() {
        let want = if k == 0 || k == 4 || k == 8 { C::new(w, 0.0) } else { C::new(0.0, 0.0) };
        col_err = col_err.max((v - want).norm());
    }
    // SU(3) singlet marginals: P(quark color i occupied) = 1/3
    let params = ModelParams {
        group_n: 3,
        coupling_g: 0.0,
        gluon_mass_regulator: 1.0,
        steps_n: 1,
        ..Default::default()
    };
    let lattice = build_lattice(1.0, 1).unwrap();
    let ordering = enumerate_modes(&lattice, &params).unwrap();
    let layout = build_layout(&ordering, &params).unwrap();
    let ctx = BuildContext::new(&params, &lattice, &ordering, &layout).unwrap();
    let initial = prepare_singlet(&ctx, (0, 1), ([0; 3], [0; 3])).unwrap();
    let traj = evolve(
        &ctx,
        &TermFilter::only([TermLabel::Fi]),
        &initial,
        &EvolveOptions::default(),
    )
    .unwrap();
    let snap = &traj.snapshots[0];
    let mut marg_err: f64 = 0.0;
    let mut quark_modes = 0;
    for (mode, probs) in &snap.probs {
        if let Species::Quark { spin: 0, .. } = mode.species {
            marg_err = marg_err.max((probs[1] - 1.0 / 3.0).abs());
            quark_modes += 1;
        }
    }
    let details = format!(
        "unitarity defect {defect:.2e}, singlet column error {col_err:.2e}, marginal error {marg_err:.2e} over {quark_modes} quark modes"
    );
    if defect <= tol && col_err <= tol && marg_err <= tol && quark_modes == 3 {
        SuiteResult::pass(name, details)
    } else {
        SuiteResult::fail(name, details)
    }
}

/// Criterion 8: charge-conservation commutators empty at the Pauli level
/// and momentum-conservation provenance audit.
pub fn criterion_conservation() -> SuiteResult {
    let name = "conservation-laws";
    let params = ModelParams {
        group_n: 2,
        coupling_g: 0.7,
        gluon_mass_regulator: 1.0,
        polarization_count: 4,
        include_ghosts: true,
        ..Default::default()
    };
    let lattice = build_lattice(1.0, 1).unwrap();
    let ordering = enumerate_modes(&lattice, &params).unwrap();
    let layout = build_layout(&ordering, &params).unwrap();
    let ctx = BuildContext::new(&params, &lattice, &ordering, &layout).unwrap();
    let terms = build_h_total(&ctx, 0.4, &TermFilter::all()).unwrap();

    // Q_quark = Σ(n_q − n_q̄); Q_ghost = Σ(n_ghost − n_antighost)
    let charge = |select: &dyn Fn(&Species) -> Option<f64>| {
        let mut strings = Vec::new();
        for m in ordering.fermionic_modes() {
            if let Some(sign) = select(&m.species) {
                let q = ordering.kappa(m).unwrap() as u32;
                strings.push(PauliString::single(C::new(-0.5 * sign, 0.0), q, Pauli::Z));
            }
        }
        PauliSum::from_strings(strings)
    };
    let q_quark = charge(&|s| match s {
        Species::Quark { .. } => Some(1.0),
        Species::AntiQuark { .. } => Some(-1.0),
        _ => None,
    });
    let q_ghost = charge(&|s| match s {
        Species::Ghost { .. } => Some(1.0),
        Species::AntiGhost { .. } => Some(-1.0),
        _ => None,
    });

    let mut details = String::new();
    let mut ok = true;
    for term in &terms {
        if term.label == TermLabel::Fi {
            let comm = term.pauli.commutator(&q_quark);
            let residual = comm.max_coeff_norm();
            ok &= comm.is_empty();
            details.push_str(&format!("[H_FI, Q_quark] residual {residual:.2e}; "));
        }
        if term.label == TermLabel::Fpi {
            let comm = term.pauli.commutator(&q_ghost);
            let residual = comm.max_coeff_norm();
            ok &= comm.is_empty();
            details.push_str(&format!("[H_FPI, Q_ghost] residual {residual:.2e}; "));
        }
        for rec in &term.provenance {
            if rec.momentum_sum != [0, 0, 0] {
                ok = false;
                details.push_str(&format!("momentum audit fails in {}; ", rec.structure));
            }
        }
    }
    details.push_str("momentum provenance audit exact");
    if ok {
        SuiteResult::pass(name, details)
    } else {
        SuiteResult::fail(name, details)
    }
}

/// The canonical 20-qubit run of criterion 9.
pub fn determinism_run() -> Result<(RunReport, String)> {
    let config = RunConfig {
        model: ModelParams {
            group_n: 2,
            coupling_g: 0.9,
            fermion_mass_m: 1.0,
            gluon_mass_regulator: 1.0,
            boson_cutoff: 1,
            polarization_count: 2,
            include_ghosts: false,
            dt: 0.05,
            steps_n: 100,
            t0: 0.0,
        },
        term_filter: TermFilter::only([TermLabel::Fi]),
        snapshot_stride: 10,
        seed: 42,
        ..Default::default()
    };
    let lattice = build_lattice(config.lattice_spacing, config.lattice_extent)?;
    let ordering = enumerate_modes(&lattice, &config.model)?;
    let layout = build_layout(&ordering, &config.model)?;
    let ctx = BuildContext::new(&config.model, &lattice, &ordering, &layout)?;
    let traj = evolve(
        &ctx,
        &config.term_filter,
        &InitialState::Vacuum,
        &EvolveOptions {
            executor: config.executor,
            snapshot_stride: config.snapshot_stride,
            midpoint: config.midpoint,
            ..Default::default()
        },
    )?;
    let csv = crate::report::occupations_csv(&traj.snapshots, &ordering);
    let report = RunReport {
        config,
        layout: LayoutSummary {
            total_qubits: layout.total_qubits,
            active_qubits: traj.active.len(),
            fermionic_modes: ordering.fermionic_count(),
            boson_modes: ordering.boson_modes().len(),
        },
        gate_counts: None,
        norms: traj.norms,
        prep_ops: None,
        oracle_comparison: None,
        occupations_csv: None,
        wall_clock_ms: 0.0,
    };
    Ok((report, csv))
}

/// Criterion 9: 100 Trotter steps on the 20-qubit register — norm drift
/// ≤ 1e−9 and bitwise-identical canonical reports across reruns.
pub fn criterion_determinism() -> SuiteResult {
    let name = "determinism-stability";
    let (report_a, csv_a) = match determinism_run() {
        Ok(r) => r,
        Err(e) => return SuiteResult::fail(name, e.to_string()),
    };
    let (report_b, csv_b) = determinism_run().unwrap();
    let drift = report_a
        .norms
        .iter()
        .map(|n| (n - 1.0).abs())
        .fold(0.0, f64::max);
    let identical = report_a.canonical_json() == report_b.canonical_json() && csv_a == csv_b;
    let details = format!(
        "{} active qubits, {} steps, norm drift {drift:.2e}, reports {}",
        report_a.layout.active_qubits,
        report_a.norms.len(),
        if identical { "bitwise identical" } else { "DIFFER" }
    );
    if drift <= 1e-9 && identical && report_a.layout.active_qubits == 20 {
        SuiteResult::pass(name, details)
    } else {
        SuiteResult::fail(name, details)
    }
}

/// Run every acceptance criterion in order.
pub fn run_all() -> Vec<SuiteResult> {
    vec![
        criterion_operator_algebra(),
        criterion_cross_path(),
        criterion_synthesis(),
        criterion_trotter_order(),
        criterion_gate_bounds(),
        criterion_qubit_count(),
        criterion_t_matrix(),
        criterion_conservation(),
        criterion_determinism(),
    ]
}
