//! Exact evolution by Hermitian eigendecomposition.

use super::StateVector;
use crate::error::{Error, Result};
use crate::pauli::{to_dense_matrix, PauliSum, ORACLE_QUBIT_LIMIT};
use nalgebra::DMatrix;
use num_complex::Complex64;

type C = Complex64;

/// exp(−i·H·t) for a Hermitian dense matrix via eigendecomposition.
pub fn expm_hermitian(h: &DMatrix<C>, t: f64) -> Result<DMatrix<C>> {
    if h.nrows() != h.ncols() {
        return Err(Error::InvalidParameter("matrix must be square".into()));
    }
    let eig = h.clone().symmetric_eigen();
    let dim = h.nrows();
    let mut diag = DMatrix::<C>::zeros(dim, dim);
    for k in 0..dim {
        diag[(k, k)] = C::new(0.0, -eig.eigenvalues[k] * t).exp();
    }
    Ok(&eig.eigenvectors * diag * eig.eigenvectors.adjoint())
}

/// Exact slice product Π_k exp(−iH(t_k)Δt), rightmost (k = 0) factor
/// acting first: U = exp(−iH_{n−1}Δt) ··· exp(−iH_0Δt).
pub fn exact_evolution_oracle(hams: &[PauliSum], qubits: usize, dt: f64) -> Result<DMatrix<C>> {
    if qubits > ORACLE_QUBIT_LIMIT {
        return Err(Error::Capacity(format!(
            "exact oracle limited to {ORACLE_QUBIT_LIMIT} qubits, requested {qubits}"
        )));
    }
    let dim = 1usize << qubits;
    let mut u = DMatrix::<C>::identity(dim, dim);
    for h in hams {
        let dense = to_dense_matrix(h, qubits)?;
        u = expm_hermitian(&dense, dt)? * u;
    }
    Ok(u)
}

/// Apply a dense unitary to a state (oracle-scale only).
pub fn apply_dense(state: &StateVector, u: &DMatrix<C>) -> Result<StateVector> {
    let dim = state.amplitudes().len();
    if u.nrows() != dim {
        return Err(Error::InvalidParameter("dimension mismatch".into()));
    }
    let mut out = vec![C::new(0.0, 0.0); dim];
    for col in 0..dim {
        let a = state.amplitudes()[col];
        if a.norm_sqr() == 0.0 {
            continue;
        }
        for row in 0..dim {
            out[row] += u[(row, col)] * a;
        }
    }
    StateVector::from_amplitudes(out, state.qubit_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{Pauli, PauliString};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn max_abs(m: &DMatrix<C>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn zero_hamiltonian_gives_identity() {
        let u = exact_evolution_oracle(&[PauliSum::zero()], 3, 0.4).unwrap();
        assert!(max_abs(&(&u - DMatrix::<C>::identity(8, 8))) < 1e-12);
    }

    #[test]
    fn matches_taylor_series_at_small_dt() {
        let h = PauliSum::from_strings(vec![
            PauliString { coeff: c(0.7, 0.0), letters: [(0, Pauli::X), (1, Pauli::Y)].into() },
            PauliString::single(c(-0.3, 0.0), 1, Pauli::Z),
        ]);
        let dt = 1e-3;
        let u = exact_evolution_oracle(&[h.clone()], 2, dt).unwrap();
        let hd = to_dense_matrix(&h, 2).unwrap();
        let id = DMatrix::<C>::identity(4, 4);
        let taylor = &id - &hd * c(0.0, dt) - &hd * &hd * c(dt * dt / 2.0, 0.0);
        assert!(max_abs(&(&u - taylor)) < 1e-8, "O(dt³) agreement");
        // unitarity
        assert!(max_abs(&(&u * u.adjoint() - id)) < 1e-12);
    }

    #[test]
    fn product_equals_single_exponential_for_constant_h() {
        let h = PauliSum::from_strings(vec![PauliString {
            coeff: c(0.45, 0.0),
            letters: [(0, Pauli::X), (1, Pauli::X)].into(),
        }]);
        let steps = vec![h.clone(); 4];
        let u4 = exact_evolution_oracle(&steps, 2, 0.1).unwrap();
        let u1 = exact_evolution_oracle(&[h], 2, 0.4).unwrap();
        assert!(max_abs(&(&u4 - &u1)) < 1e-10);
    }

    #[test]
    fn oracle_capacity_guard() {
        assert!(exact_evolution_oracle(&[PauliSum::zero()], 13, 0.1).is_err());
    }
}
