//! The discrete measure convention, fixed in one place.
//!
//! Every momentum sum carries a³/(2π)³, the spatial integral of the plane
//! waves gives (2π)³ times a Kronecker delta over lattice momenta, and
//! every field brings a 1/√(2ω). For k legs that is
//! a^{3k}/(2π)^{3(k−1)} · Π_i 1/√(2ω_i); for three legs this is the
//! a⁹/((2π)⁶ √(8ω₁ω₂ω₃)) prefactor of the cubic vertices and for four legs
//! a¹²/((2π)⁹ · 4√(ω₁ω₂ω₃ω₄)).

use crate::error::{Error, Result};
use std::f64::consts::PI;

pub fn measure_factor(spacing: f64, omegas: &[f64]) -> Result<f64> {
    let cell = spacing.powi(3) / (2.0 * PI).powi(3);
    let mut m = cell.powi(omegas.len() as i32) * (2.0 * PI).powi(3);
    for &w in omegas {
        if w < 1e-9 {
            return Err(Error::DegenerateKinematics(format!(
                "measure factor with ω = {w:.3e} < 1e-9"
            )));
        }
        m /= (2.0 * w).sqrt();
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn three_leg_form() {
        let m = measure_factor(0.7, &[1.0, 2.0, 3.0]).unwrap();
        let want = 0.7f64.powi(9) / (2.0 * PI).powi(6) / (8.0 * 6.0f64).sqrt();
        assert!((m - want).abs() < 1e-15 * want.abs());
    }

    #[test]
    fn four_leg_form() {
        let m = measure_factor(1.0, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let want = 1.0 / (2.0 * PI).powi(9) / 4.0;
        assert!((m - want).abs() < 1e-15 * want.abs());
    }

    #[test]
    fn degenerate_energy_rejected() {
        assert!(measure_factor(1.0, &[1.0, 0.0, 1.0]).is_err());
    }
}
