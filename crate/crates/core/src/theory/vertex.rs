//! Interaction-vertex coefficients.
//!
//! Each Hamiltonian term carries a complex weight built from spinor and
//! polarization contractions times an e^{−iωt} phase; the real/imaginary
//! split of that weight is what multiplies the Pauli-string combinations.

use super::dirac::{dirac_spinor, DiracData, SpinorKind};
use super::group::GroupData;
use super::polarization::{minkowski_dot, polarization_vector};
use super::ModelParams;
use crate::error::Result;
use nalgebra::Vector4;
use num_complex::Complex64;

type C = Complex64;

/// Real/imaginary split of ū^r(p₂)(ε_l·γ)t^a_{ij}u^s(p₃)e^{−iω₁t}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WCoeffFermion {
    pub w1: f64,
    pub w2: f64,
}

impl WCoeffFermion {
    pub fn as_complex(&self) -> C {
        C::new(self.w1, self.w2)
    }
}

/// Real/imaginary split of ε_{μ,l₁}ε_{ν,l₂}ε^{μ*}_{l₃}ε^{ν*}_{l₄}e^{−iω₂t}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WCoeffGluon {
    pub w3: f64,
    pub w4: f64,
}

impl WCoeffGluon {
    pub fn as_complex(&self) -> C {
        C::new(self.w3, self.w4)
    }
}

/// Which spinor enters a fermion-gluon vertex leg.
///
/// The bar side of ψ̄Γψ uses ū for the negative-frequency component (b†)
/// and v̄ for the positive one (c); the ket side uses u for positive (b)
/// and v for negative (c†).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FermionLeg {
    U,
    V,
}

impl FermionLeg {
    fn kind(self) -> SpinorKind {
        match self {
            FermionLeg::U => SpinorKind::Particle,
            FermionLeg::V => SpinorKind::Antiparticle,
        }
    }
}

/// Generic fermion-gluon vertex contraction
/// bar(p₂) (ε·γ) t^a_{ij} ket(p₃) · e^{−i(s_g ω₁ + s_b ω₂ + s_k ω₃)t},
/// with ε conjugated when the gluon leg is negative frequency (s_g = −1).
///
/// ω₁ uses the regulated gauge dispersion, ω₂/ω₃ the fermion one. The sign
/// triple matches the frequency components of the expanded fields.
#[allow(clippy::too_many_arguments)]
pub fn fermion_vertex_w_general(
    params: &ModelParams,
    group: &GroupData,
    dirac: &DiracData,
    p1: [f64; 3],
    p2: [f64; 3],
    p3: [f64; 3],
    bar: FermionLeg,
    ket: FermionLeg,
    r: usize,
    s: usize,
    i: usize,
    j: usize,
    a: usize,
    l: usize,
    signs: [i32; 3],
    t: f64,
) -> Result<C> {
    let tij = group.generators[a][(i, j)];
    if tij.norm() == 0.0 {
        return Ok(C::new(0.0, 0.0));
    }
    let mut eps = polarization_vector(p1, l, params.polarization_count)?;
    if signs[0] < 0 {
        eps = eps.map(|z| z.conj());
    }
    let bar_sp = dirac_spinor(p2, params.fermion_mass_m, r, bar.kind())?;
    let ket_sp = dirac_spinor(p3, params.fermion_mass_m, s, ket.kind())?;
    let slashed: Vector4<C> = dirac.slash(&eps) * ket_sp;
    // ū = u†γ⁰; with γ⁰ = diag(1,1,−1,−1) this flips the lower components.
    let mut contraction = C::new(0.0, 0.0);
    for k in 0..4 {
        let sign = if k < 2 { 1.0 } else { -1.0 };
        contraction += bar_sp[k].conj() * slashed[k] * C::new(sign, 0.0);
    }
    let omega = signs[0] as f64 * params.gauge_omega(p1)
        + signs[1] as f64 * params.fermion_omega(p2)
        + signs[2] as f64 * params.fermion_omega(p3);
    let phase = C::new(0.0, -omega * t).exp();
    Ok(contraction * tij * phase)
}

/// W₁ + iW₂ for the quark-scattering structure ā b† b of the fermion-gluon
/// interaction: ū^r(p₂)(ε_l·γ)t^a_{ij}u^s(p₃)e^{−iω₁t} with
/// ω₁ = ω_{p₁} − ω_{p₂} + ω_{p₃} and p₁ = p₂ − p₃ fixed by the discrete
/// momentum delta.
#[allow(clippy::too_many_arguments)]
pub fn fermion_vertex_w(
    params: &ModelParams,
    group: &GroupData,
    dirac: &DiracData,
    p2: [f64; 3],
    p3: [f64; 3],
    r: usize,
    s: usize,
    i: usize,
    j: usize,
    a: usize,
    l: usize,
    t: f64,
) -> Result<WCoeffFermion> {
    let p1 = [p2[0] - p3[0], p2[1] - p3[1], p2[2] - p3[2]];
    let w = fermion_vertex_w_general(
        params,
        group,
        dirac,
        p1,
        p2,
        p3,
        FermionLeg::U,
        FermionLeg::U,
        r,
        s,
        i,
        j,
        a,
        l,
        [1, -1, 1],
        t,
    )?;
    Ok(WCoeffFermion { w1: w.re, w2: w.im })
}

/// W₃ + iW₄ for the four-gluon vertex:
/// ε_{μ,l₁}(p₁) ε_{ν,l₂}(p₂) ε^{μ*}_{l₃}(p₃) ε^{ν*}_{l₄}(p₄) e^{−iω₂t}
/// with ω₂ = ω₁ + ω₂ − ω₃ − ω₄ over the regulated gauge dispersion.
pub fn gluon_vertex_w(
    params: &ModelParams,
    ls: [usize; 4],
    ps: [[f64; 3]; 4],
    t: f64,
) -> Result<WCoeffGluon> {
    let e1 = polarization_vector(ps[0], ls[0], params.polarization_count)?;
    let e2 = polarization_vector(ps[1], ls[1], params.polarization_count)?;
    let e3 = polarization_vector(ps[2], ls[2], params.polarization_count)?.map(|z| z.conj());
    let e4 = polarization_vector(ps[3], ls[3], params.polarization_count)?.map(|z| z.conj());
    let omega = params.gauge_omega(ps[0]) + params.gauge_omega(ps[1])
        - params.gauge_omega(ps[2])
        - params.gauge_omega(ps[3]);
    let w = minkowski_dot(&e1, &e3) * minkowski_dot(&e2, &e4) * C::new(0.0, -omega * t).exp();
    Ok(WCoeffGluon { w3: w.re, w4: w.im })
}
