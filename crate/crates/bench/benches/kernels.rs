//! Hot-path benchmarks: statevector kernels, Pauli algebra, and the
//! fermion-gluon Hamiltonian build.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use ymsim_core::circuit::Gate;
use ymsim_core::encoding::build_layout;
use ymsim_core::hamiltonian::{build_h_fi, BuildContext, TermFilter};
use ymsim_core::lattice::{build_lattice, enumerate_modes};
use ymsim_core::pauli::{Pauli, PauliString, PauliSum};
use ymsim_core::simulator::{apply_gate, apply_string_exp, StateVector};
use ymsim_core::theory::ModelParams;

fn bench_statevector(c: &mut Criterion) {
    let qubits = 20;
    let mut state = StateVector::zero_state(qubits).unwrap();
    apply_gate(&mut state, &Gate::H(0)).unwrap();
    c.bench_function("hadamard_20q", |b| {
        b.iter(|| {
            apply_gate(black_box(&mut state), &Gate::H(7)).unwrap();
        })
    });
    // weight-6 string exponential, the evolution hot path
    let xy = 0b0000_0011_0110u64;
    let zy = 0b0001_0010_0100u64;
    c.bench_function("string_exp_w6_20q", |b| {
        b.iter(|| {
            apply_string_exp(black_box(&mut state), xy, zy, 2, 0.01);
        })
    });
}

fn bench_pauli_algebra(c: &mut Criterion) {
    let a = PauliSum::from_strings(vec![
        PauliString {
            coeff: Complex64::new(0.5, 0.0),
            letters: [(0, Pauli::X), (3, Pauli::Z), (7, Pauli::Y)].into(),
        },
        PauliString {
            coeff: Complex64::new(-0.25, 0.1),
            letters: [(1, Pauli::Y), (3, Pauli::X)].into(),
        },
    ]);
    let b2 = PauliSum::from_strings(vec![
        PauliString {
            coeff: Complex64::new(0.3, 0.0),
            letters: [(0, Pauli::Y), (5, Pauli::Z)].into(),
        },
        PauliString {
            coeff: Complex64::new(0.7, -0.2),
            letters: [(3, Pauli::Y), (7, Pauli::X)].into(),
        },
    ]);
    c.bench_function("pauli_sum_mul", |b| {
        b.iter(|| black_box(&a).mul(black_box(&b2)));
    });
}

fn bench_hamiltonian_build(c: &mut Criterion) {
    let params = ModelParams {
        coupling_g: 0.8,
        gluon_mass_regulator: 1.0,
        ..Default::default()
    };
    let lattice = build_lattice(1.0, 1).unwrap();
    let ordering = enumerate_modes(&lattice, &params).unwrap();
    let layout = build_layout(&ordering, &params).unwrap();
    let ctx = BuildContext::new(&params, &lattice, &ordering, &layout).unwrap();
    c.bench_function("build_h_fi_su2_single_site", |b| {
        b.iter(|| build_h_fi(black_box(&ctx), 0.3, &TermFilter::all()).unwrap())
    });
}

criterion_group!(benches, bench_statevector, bench_pauli_algebra, bench_hamiltonian_build);
criterion_main!(benches);
