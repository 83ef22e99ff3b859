//! Dirac matrices (standard representation) and free-particle spinors.
//!
//! Conventions: metric η = diag(1,−1,−1,−1), γ⁰ = diag(I,−I),
//! γⁱ = [[0, σⁱ],[−σⁱ, 0]], spinor normalization u†u = v†v = 2ω matching
//! the 1/√(2ω) measure of the field expansions.

use crate::error::{Error, Result};
use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// The four gamma matrices and the metric signature.
#[derive(Debug, Clone)]
pub struct DiracData {
    pub gamma: [Matrix4<C>; 4],
    pub metric: [f64; 4],
}

impl DiracData {
    pub fn new() -> Self {
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let i = c(0.0, 1.0);
        let g0 = Matrix4::from_diagonal(&Vector4::new(one, one, -one, -one));
        // γⁱ assembled from Pauli blocks.
        let sx = Matrix2::new(z, one, one, z);
        let sy = Matrix2::new(z, -i, i, z);
        let sz = Matrix2::new(one, z, z, -one);
        let block = |s: Matrix2<C>| {
            let mut m = Matrix4::zeros();
            for r in 0..2 {
                for cc in 0..2 {
                    m[(r, cc + 2)] = s[(r, cc)];
                    m[(r + 2, cc)] = -s[(r, cc)];
                }
            }
            m
        };
        DiracData {
            gamma: [g0, block(sx), block(sy), block(sz)],
            metric: [1.0, -1.0, -1.0, -1.0],
        }
    }

    /// Slash contraction a_μ γ^μ for a contravariant 4-vector a^μ.
    pub fn slash(&self, a: &Vector4<C>) -> Matrix4<C> {
        let mut m = self.gamma[0] * (a[0] * c(self.metric[0], 0.0));
        for mu in 1..4 {
            m += self.gamma[mu] * (a[mu] * c(self.metric[mu], 0.0));
        }
        m
    }
}

impl Default for DiracData {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinorKind {
    /// Particle spinor u.
    Particle,
    /// Antiparticle spinor v.
    Antiparticle,
}

/// Free Dirac spinor with u†u = 2ω.
///
/// u^s(p) = √(ω+m) (ξ^s, (σ·p)/(ω+m) ξ^s)ᵀ and
/// v^s(p) = √(ω+m) ((σ·p)/(ω+m) η^s, η^s)ᵀ with ξ/η the standard basis
/// two-spinors, s ∈ {0, 1}.
pub fn dirac_spinor(p: [f64; 3], mass: f64, s: usize, kind: SpinorKind) -> Result<Vector4<C>> {
    if s > 1 {
        return Err(Error::InvalidParameter(format!("spin index must be 0 or 1, got {s}")));
    }
    let omega = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mass * mass).sqrt();
    if omega < 1e-12 {
        return Err(Error::DegenerateKinematics(
            "ω = 0 spinor (massless at zero momentum)".into(),
        ));
    }
    let wpm = omega + mass;
    let pref = wpm.sqrt();
    // σ·p acting on the basis two-spinor ξ^s.
    let xi = if s == 0 { [c(1.0, 0.0), c(0.0, 0.0)] } else { [c(0.0, 0.0), c(1.0, 0.0)] };
    let sp = [
        c(p[2], 0.0) * xi[0] + c(p[0], -p[1]) * xi[1],
        c(p[0], p[1]) * xi[0] - c(p[2], 0.0) * xi[1],
    ];
    let small = [sp[0] / c(wpm, 0.0), sp[1] / c(wpm, 0.0)];
    let v = match kind {
        SpinorKind::Particle => Vector4::new(xi[0], xi[1], small[0], small[1]),
        SpinorKind::Antiparticle => Vector4::new(small[0], small[1], xi[0], xi[1]),
    };
    Ok(v * c(pref, 0.0))
}
