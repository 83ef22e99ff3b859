//! Polarization vectors of the gauge field.
//!
//! Axis convention (frozen; Jordan-Wigner phases depend on it):
//! for p̂ not parallel to ẑ, e₁ = (ẑ × p̂)/|ẑ × p̂| and e₂ = p̂ × e₁;
//! for p̂ ∥ ±ẑ or p = 0, e₁ = x̂ and e₂ = p̂ × e₁ (ŷ for +ẑ and p = 0).
//! Indices: l = 0, 1 transverse (ε = (0, e₁), (0, e₂)); with
//! `count = 4` additionally l = 2 longitudinal (0, p̂) and l = 3 timelike
//! (1, 0, 0, 0). Metric orthonormality ε^{l*}·ε^{l′} = ±δ^{ll′}.

use crate::error::{Error, Result};
use nalgebra::Vector4;
use num_complex::Complex64;

type C = Complex64;

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Transverse frame (e₁, e₂, p̂) for a momentum; p = 0 falls back to the ẑ axis.
fn frame(p: [f64; 3]) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let n = norm3(p);
    let phat = if n < 1e-12 { [0.0, 0.0, 1.0] } else { [p[0] / n, p[1] / n, p[2] / n] };
    let zxp = cross([0.0, 0.0, 1.0], phat);
    let zn = norm3(zxp);
    let e1 = if zn < 1e-9 {
        [1.0, 0.0, 0.0]
    } else {
        [zxp[0] / zn, zxp[1] / zn, zxp[2] / zn]
    };
    let e2 = cross(phat, e1);
    (e1, e2, phat)
}

/// Contravariant polarization vector ε^μ for polarization index `l`.
pub fn polarization_vector(p: [f64; 3], l: usize, count: u32) -> Result<Vector4<C>> {
    if count != 2 && count != 4 {
        return Err(Error::InvalidParameter(format!("polarization count must be 2 or 4, got {count}")));
    }
    if l >= count as usize {
        return Err(Error::InvalidParameter(format!(
            "polarization index {l} out of range for count {count}"
        )));
    }
    let (e1, e2, phat) = frame(p);
    let spatial = |e: [f64; 3]| {
        Vector4::new(C::new(0.0, 0.0), C::new(e[0], 0.0), C::new(e[1], 0.0), C::new(e[2], 0.0))
    };
    Ok(match l {
        0 => spatial(e1),
        1 => spatial(e2),
        2 => spatial(phat),
        _ => Vector4::new(C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)),
    })
}

/// Minkowski contraction a_μ b^μ = a⁰b⁰ − a⃗·b⃗ (no conjugation).
pub fn minkowski_dot(a: &Vector4<C>, b: &Vector4<C>) -> C {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_axis_first_transverse_is_x() {
        let e = polarization_vector([0.0, 0.0, 2.5], 0, 2).unwrap();
        let want = Vector4::new(C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0));
        assert!((e - want).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-14);
    }

    #[test]
    fn zero_momentum_uses_fixed_axis() {
        let e0 = polarization_vector([0.0; 3], 0, 2).unwrap();
        let e1 = polarization_vector([0.0; 3], 1, 2).unwrap();
        // orthogonal to ẑ
        assert!(e0[3].norm() < 1e-14 && e1[3].norm() < 1e-14);
        let dot: C = (0..4).map(|k| e0[k].conj() * e1[k]).sum();
        assert!(dot.norm() < 1e-14);
    }

    #[test]
    fn transversality_and_orthonormality() {
        let ps = [
            [0.3, -1.2, 0.7],
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0],
            [0.0, -2.0, 0.0],
            [0.5, 0.5, -0.5],
        ];
        for p in ps {
            for l in 0..2 {
                let e = polarization_vector(p, l, 2).unwrap();
                // spatial transversality p⃗·ε⃗ = 0
                let dote: C = (0..3).map(|k| e[k + 1] * C::new(p[k], 0.0)).sum();
                assert!(dote.norm() < 1e-12);
            }
            for l in 0..4 {
                for lp in 0..4 {
                    let a = polarization_vector(p, l, 4).unwrap();
                    let b = polarization_vector(p, lp, 4).unwrap();
                    let dot = minkowski_dot(&a.map(|z| z.conj()), &b);
                    let want = match (l == lp, l) {
                        (true, 3) => 1.0,
                        (true, _) => -1.0,
                        _ => 0.0,
                    };
                    assert!(
                        (dot.re - want).abs() < 1e-12 && dot.im.abs() < 1e-12,
                        "ε{l}*·ε{lp} = {dot} for p = {p:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn invalid_index_rejected() {
        assert!(polarization_vector([0.0; 3], 2, 2).is_err());
        assert!(polarization_vector([0.0; 3], 4, 4).is_err());
    }
}
