//! SU(N) generators (generalized Gell-Mann basis) and structure constants.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Generators t^a of su(N) with Tr(t^a t^b) = δ^{ab}/2, plus the totally
/// antisymmetric structure constants f^{abc} defined by [t^a, t^b] = i f^{abc} t^c.
#[derive(Debug, Clone)]
pub struct GroupData {
    pub n: usize,
    /// N²−1 Hermitian traceless N×N matrices.
    pub generators: Vec<DMatrix<Complex64>>,
    /// Flattened rank-3 array, index `(a*d + b)*d + c` with d = N²−1.
    pub structure_constants: Vec<f64>,
}

impl GroupData {
    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> f64 {
        let d = self.dim();
        self.structure_constants[(a * d + b) * d + c]
    }

    /// Adjoint-color pairs (a, b) with f^{eab} ≠ 0 for the given e.
    pub fn nonzero_f_pairs(&self, e: usize) -> Vec<(usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                if self.f(e, a, b) != 0.0 {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Build the generalized Gell-Mann basis for su(N).
///
/// Enumeration order reduces to the Pauli halves for N = 2 and the
/// Gell-Mann halves for N = 3: for k = 2..N emit the symmetric and
/// antisymmetric off-diagonal pair for each j < k followed by the diagonal
/// generator of rank k−1.
pub fn su_n_generators(n: usize) -> Result<GroupData> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("SU(N) needs N ≥ 2, got {n}")));
    }
    let mut gens: Vec<DMatrix<Complex64>> = Vec::with_capacity(n * n - 1);
    for k in 1..n {
        for j in 0..k {
            // symmetric: (t)_{jk} = (t)_{kj} = 1/2
            let mut s = DMatrix::<Complex64>::zeros(n, n);
            s[(j, k)] = Complex64::new(0.5, 0.0);
            s[(k, j)] = Complex64::new(0.5, 0.0);
            gens.push(s);
            // antisymmetric: (t)_{jk} = −i/2, (t)_{kj} = i/2
            let mut a = DMatrix::<Complex64>::zeros(n, n);
            a[(j, k)] = Complex64::new(0.0, -0.5);
            a[(k, j)] = Complex64::new(0.0, 0.5);
            gens.push(a);
        }
        // diagonal of rank k: diag(1,..,1,−k,0,..)/√(2k(k+1)) · ... normalized to Tr t² = 1/2
        let norm = 1.0 / (2.0 * k as f64 * (k as f64 + 1.0)).sqrt();
        let mut d = DMatrix::<Complex64>::zeros(n, n);
        for i in 0..k {
            d[(i, i)] = Complex64::new(norm, 0.0);
        }
        d[(k, k)] = Complex64::new(-(k as f64) * norm, 0.0);
        gens.push(d);
    }

    let dim = n * n - 1;
    let mut f = vec![0.0f64; dim * dim * dim];
    // f^{abc} = −2i Tr([t^a, t^b] t^c); real for this basis, imaginary part
    // only floating-point noise.
    for a in 0..dim {
        for b in 0..dim {
            let comm = &gens[a] * &gens[b] - &gens[b] * &gens[a];
            for c in 0..dim {
                let tr: Complex64 = (&comm * &gens[c]).trace();
                let val = 2.0 * tr.im;
                f[(a * dim + b) * dim + c] = if val.abs() < 1e-14 { 0.0 } else { val };
            }
        }
    }

    Ok(GroupData {
        n,
        generators: gens,
        structure_constants: f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn su2_is_pauli_halves() {
        let g = su_n_generators(2).unwrap();
        assert_eq!(g.generators.len(), 3);
        let sx = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0),
        ]);
        let sy = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.0, 0.0), Complex64::new(0.0, -0.5),
            Complex64::new(0.0, 0.5), Complex64::new(0.0, 0.0),
        ]);
        let sz = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0),
        ]);
        assert!(max_abs(&(&g.generators[0] - sx)) < 1e-15);
        assert!(max_abs(&(&g.generators[1] - sy)) < 1e-15);
        assert!(max_abs(&(&g.generators[2] - sz)) < 1e-15);
        // f^{abc} = ε^{abc}
        assert!((g.f(0, 1, 2) - 1.0).abs() < 1e-12);
        assert!((g.f(1, 0, 2) + 1.0).abs() < 1e-12);
        assert!((g.f(1, 2, 0) - 1.0).abs() < 1e-12);
        assert!(g.f(0, 0, 1).abs() < 1e-12);
    }

    #[test]
    fn su3_gell_mann_constants() {
        // Commutator brute force on the Gell-Mann halves fixes f^{123} = 1,
        // f^{147} = 1/2 in the standard ordering (indices here 0-based).
        let g = su_n_generators(3).unwrap();
        assert_eq!(g.generators.len(), 8);
        assert!((g.f(0, 1, 2) - 1.0).abs() < 1e-12);
        assert!((g.f(0, 3, 6) - 0.5).abs() < 1e-12);
        // f^{458} = √3/2
        assert!((g.f(3, 4, 7) - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn trace_orthonormality() {
        for n in 2..=4 {
            let g = su_n_generators(n).unwrap();
            for a in 0..g.dim() {
                for b in 0..g.dim() {
                    let tr: Complex64 = (&g.generators[a] * &g.generators[b]).trace();
                    let want = if a == b { 0.5 } else { 0.0 };
                    assert!(
                        (tr.re - want).abs() < 1e-12 && tr.im.abs() < 1e-12,
                        "Tr(t{a} t{b}) = {tr} for SU({n})"
                    );
                }
            }
        }
    }

    #[test]
    fn hermitian_traceless_and_algebra_closure() {
        for n in 2..=4 {
            let g = su_n_generators(n).unwrap();
            let dim = g.dim();
            for t in &g.generators {
                assert!(max_abs(&(t.adjoint() - t)) < 1e-12);
                assert!(t.trace().norm() < 1e-12);
            }
            // [t^a, t^b] = i f^{abc} t^c
            for a in 0..dim {
                for b in 0..dim {
                    let mut rhs = DMatrix::<Complex64>::zeros(n, n);
                    for c in 0..dim {
                        rhs += g.generators[c].map(|z| z * Complex64::new(0.0, g.f(a, b, c)));
                    }
                    let comm = &g.generators[a] * &g.generators[b]
                        - &g.generators[b] * &g.generators[a];
                    assert!(max_abs(&(comm - rhs)) < 1e-12, "closure fails at ({a},{b}), N={n}");
                }
            }
        }
    }

    #[test]
    fn f_totally_antisymmetric() {
        for n in 2..=4 {
            let g = su_n_generators(n).unwrap();
            let d = g.dim();
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        let v = g.f(a, b, c);
                        assert!((v + g.f(b, a, c)).abs() < 1e-12);
                        assert!((v - g.f(b, c, a)).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_n_below_2() {
        assert!(su_n_generators(1).is_err());
    }
}
