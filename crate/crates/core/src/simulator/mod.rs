//! Dense statevector engine.
//!
//! Amplitudes are indexed with qubit 0 as the least significant bit. Gate
//! kernels update amplitude pairs in place; programs also carry the global
//! phase of identity-string exponentials so that a program's action equals
//! the exact operator product.

mod exec;
mod measure;
mod oracle;

pub use exec::{
    apply_string_exp, apply_term_strings, evolve, ActiveRegister, EvolveOptions, Executor,
    InitialState, Trajectory,
};
pub use measure::{measure_occupations, sample_occupations, OccupationDistribution};
pub use oracle::{apply_dense, exact_evolution_oracle, expm_hermitian};

use crate::circuit::{Gate, GateProgram};
use crate::error::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

type C = Complex64;

/// Hard cap on simulated registers (16 MiB of amplitudes per 26 qubits).
pub const SIMULATOR_QUBIT_LIMIT: usize = 26;

/// Parallelization threshold: below this many amplitudes the kernels run
/// sequentially.
pub(crate) const PAR_MIN: usize = 1 << 14;

#[derive(Debug, Clone)]
pub struct StateVector {
    amps: Vec<C>,
    qubits: usize,
}

impl StateVector {
    /// |0…0⟩ on `qubits` qubits.
    pub fn zero_state(qubits: usize) -> Result<Self> {
        if qubits > SIMULATOR_QUBIT_LIMIT {
            return Err(Error::Capacity(format!(
                "dense simulation capped at {SIMULATOR_QUBIT_LIMIT} qubits, requested {qubits}"
            )));
        }
        let mut amps = vec![C::new(0.0, 0.0); 1 << qubits];
        amps[0] = C::new(1.0, 0.0);
        Ok(StateVector { amps, qubits })
    }

    pub fn from_amplitudes(amps: Vec<C>, qubits: usize) -> Result<Self> {
        if amps.len() != 1 << qubits {
            return Err(Error::InvalidParameter(format!(
                "amplitude vector length {} does not match 2^{qubits}",
                amps.len()
            )));
        }
        Ok(StateVector { amps, qubits })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C] {
        &mut self.amps
    }

    /// ‖ψ‖₂ with a fixed chunked summation order (bitwise deterministic
    /// regardless of thread count).
    pub fn norm(&self) -> f64 {
        let partials: Vec<f64> = self
            .amps
            .par_chunks(1 << 12)
            .map(|chunk| chunk.iter().map(|a| a.norm_sqr()).sum::<f64>())
            .collect();
        partials.iter().sum::<f64>().sqrt()
    }

    pub fn scale(&mut self, c: C) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    /// ‖ψ − φ‖₂.
    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Apply one gate in place.
pub fn apply_gate(state: &mut StateVector, gate: &Gate) -> Result<()> {
    let q = state.qubits;
    let check = |t: usize| {
        if t >= q {
            Err(Error::InvalidParameter(format!("gate target {t} outside register of {q}")))
        } else {
            Ok(())
        }
    };
    match gate {
        Gate::H(t) => {
            check(*t)?;
            pairwise(state, *t, |a, b| {
                let na = (a + b) * C::new(FRAC_1_SQRT_2, 0.0);
                let nb = (a - b) * C::new(FRAC_1_SQRT_2, 0.0);
                (na, nb)
            });
        }
        Gate::R(t) => {
            check(*t)?;
            // (1/√2)[[1, −i],[−i, 1]]
            let mi = C::new(0.0, -FRAC_1_SQRT_2);
            let re = C::new(FRAC_1_SQRT_2, 0.0);
            pairwise(state, *t, move |a, b| (a * re + b * mi, a * mi + b * re));
        }
        Gate::Rdg(t) => {
            check(*t)?;
            let pi = C::new(0.0, FRAC_1_SQRT_2);
            let re = C::new(FRAC_1_SQRT_2, 0.0);
            pairwise(state, *t, move |a, b| (a * re + b * pi, a * pi + b * re));
        }
        Gate::X(t) => {
            check(*t)?;
            pairwise(state, *t, |a, b| (b, a));
        }
        Gate::Z(t) => {
            check(*t)?;
            pairwise(state, *t, |a, b| (a, -b));
        }
        Gate::Rz(t, theta) => {
            check(*t)?;
            let lo = C::new(0.0, -theta / 2.0).exp();
            let hi = C::new(0.0, theta / 2.0).exp();
            pairwise(state, *t, move |a, b| (a * lo, b * hi));
        }
        Gate::Cnot { control, target } => {
            check(*control)?;
            check(*target)?;
            if control == target {
                return Err(Error::InvalidParameter("CNOT control equals target".into()));
            }
            let (c_bit, t_bit) = (1usize << control, 1usize << target);
            let dim = state.amps.len();
            let body = |amps: &mut [C], base: usize| {
                for i in 0..amps.len() {
                    let b = base + i;
                    if b & c_bit != 0 && b & t_bit == 0 {
                        amps.swap(i, i ^ t_bit);
                    }
                }
            };
            if dim >= PAR_MIN {
                // chunks aligned to the larger of the two bits keep pairs together
                let chunk = 1usize << (control.max(target) + 1);
                state.amps.par_chunks_mut(chunk).enumerate().for_each(|(ci, amps)| {
                    body(amps, ci * chunk);
                });
            } else {
                body(&mut state.amps[..], 0);
            }
        }
    }
    Ok(())
}

/// In-place update over all (bit t = 0, bit t = 1) amplitude pairs.
fn pairwise<F>(state: &mut StateVector, t: usize, f: F)
where
    F: Fn(C, C) -> (C, C) + Sync + Send,
{
    let bit = 1usize << t;
    let chunk = bit << 1;
    let dim = state.amps.len();
    let body = |amps: &mut [C]| {
        let half = amps.len() / 2;
        for i in 0..half {
            let lo = (i & !(bit - 1)) << 1 | (i & (bit - 1));
            let hi = lo | bit;
            let (a, b) = (amps[lo], amps[hi]);
            let (na, nb) = f(a, b);
            amps[lo] = na;
            amps[hi] = nb;
        }
    };
    if dim >= PAR_MIN && chunk < dim {
        state.amps.par_chunks_mut(chunk).for_each(|amps| body(amps));
    } else {
        body(&mut state.amps[..]);
    }
}

/// Apply a gate program in order, including its global phase.
pub fn run_program(state: &mut StateVector, program: &GateProgram) -> Result<()> {
    if program.qubit_count != state.qubits {
        return Err(Error::Config(format!(
            "program register {} does not match state register {}",
            program.qubit_count, state.qubits
        )));
    }
    for g in &program.gates {
        apply_gate(state, g)?;
    }
    if program.global_phase != 0.0 {
        state.scale(C::new(0.0, -program.global_phase).exp());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::synthesize_pauli_exponential;
    use crate::pauli::{Pauli, PauliString};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::zero_state(1).unwrap();
        apply_gate(&mut s, &Gate::H(0)).unwrap();
        assert!((s.amps[0] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((s.amps[1] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        let mut s = StateVector::zero_state(2).unwrap();
        apply_gate(&mut s, &Gate::X(0)).unwrap(); // |01⟩ (qubit 0 set)
        apply_gate(&mut s, &Gate::Cnot { control: 0, target: 1 }).unwrap();
        assert!((s.amps[3] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rz_convention() {
        // RZ(θ) = diag(e^{−iθ/2}, e^{iθ/2})
        let mut s = StateVector::zero_state(1).unwrap();
        apply_gate(&mut s, &Gate::X(0)).unwrap();
        apply_gate(&mut s, &Gate::Rz(0, 0.8)).unwrap();
        assert!((s.amps[1] - c(0.0, 0.4).exp()).norm() < 1e-15);
    }

    #[test]
    fn r_conjugates_y_to_z() {
        // verify R σ_y R† = σ_z at the state level: R†ZR applied equals Y
        let mut s = StateVector::from_amplitudes(vec![c(0.6, 0.0), c(0.0, 0.8)], 1).unwrap();
        let mut via_r = s.clone();
        apply_gate(&mut via_r, &Gate::R(0)).unwrap();
        apply_gate(&mut via_r, &Gate::Z(0)).unwrap();
        apply_gate(&mut via_r, &Gate::Rdg(0)).unwrap();
        // σ_y directly
        let a = s.amps[0];
        let b = s.amps[1];
        s.amps[0] = c(0.0, -1.0) * b;
        s.amps[1] = c(0.0, 1.0) * a;
        assert!(via_r.distance(&s) < 1e-14);
    }

    #[test]
    fn program_then_reversed_adjoint_is_identity() {
        let pattern = PauliString {
            coeff: c(1.0, 0.0),
            letters: [(0, Pauli::X), (1, Pauli::Y), (2, Pauli::Z)].into(),
        };
        let prog = synthesize_pauli_exponential(&pattern, 0.41, 3).unwrap();
        let inverse = synthesize_pauli_exponential(&pattern, -0.41, 3).unwrap();
        let mut s = StateVector::zero_state(4).unwrap();
        // arbitrary product state
        apply_gate(&mut s, &Gate::H(0)).unwrap();
        apply_gate(&mut s, &Gate::R(1)).unwrap();
        apply_gate(&mut s, &Gate::H(2)).unwrap();
        let before = s.clone();
        run_program(&mut s, &prog).unwrap();
        run_program(&mut s, &inverse).unwrap();
        assert!(s.distance(&before) < 1e-12);
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn synthesized_z_rotation_on_plus_state() {
        // exp(−iθZ)|+⟩ = cosθ|+⟩ − i sinθ|−⟩
        let theta = 0.3;
        let pattern = PauliString::single(c(1.0, 0.0), 0, Pauli::Z);
        let prog = synthesize_pauli_exponential(&pattern, theta, 1).unwrap();
        let mut s = StateVector::zero_state(2).unwrap();
        apply_gate(&mut s, &Gate::H(0)).unwrap();
        run_program(&mut s, &prog).unwrap();
        let plus = [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)];
        let minus = [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)];
        for b in 0..2 {
            let want = plus[b] * c(theta.cos(), 0.0) + minus[b] * c(0.0, -theta.sin());
            assert!((s.amps[b] - want).norm() < 1e-14, "b={b}");
        }
        // auxiliary untouched
        assert!(s.amps[2].norm() < 1e-15 && s.amps[3].norm() < 1e-15);
    }

    #[test]
    fn empty_program_is_identity() {
        let prog = GateProgram { qubit_count: 2, ..Default::default() };
        let mut s = StateVector::zero_state(2).unwrap();
        apply_gate(&mut s, &Gate::H(0)).unwrap();
        let before = s.clone();
        run_program(&mut s, &prog).unwrap();
        assert!(s.distance(&before) == 0.0);
    }

    #[test]
    fn capacity_guard() {
        assert!(StateVector::zero_state(27).is_err());
    }
}
