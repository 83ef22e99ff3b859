//! Color-singlet state preparation and the meson-formation demo.
//!
//! The 9×9 unitary 𝒯 rotates the two-quark color basis
//! |1⟩ = |q₁q̄₁⟩ … |9⟩ = |q₃q̄₃⟩ so that 𝒯|1⟩ = (|1⟩+|5⟩+|9⟩)/√3, the
//! equal-amplitude color singlet. On the register the singlet is prepared
//! by direct amplitude injection (exact, O(1) in lattice size and boson
//! cutoff); the demo then evolves it under a filtered interaction and
//! records occupation probabilities.

use crate::encoding::OccupationConfig;
use crate::error::{Error, Result};
use crate::hamiltonian::{BuildContext, TermFilter};
use crate::lattice::{ModeKey, Species};
use crate::simulator::{evolve, EvolveOptions, InitialState, Trajectory};
use nalgebra::DMatrix;
use num_complex::Complex64;

type C = Complex64;

/// The explicit 9×9 color-rotation matrix, scaled by 1/√3.
#[derive(Debug, Clone)]
pub struct TMatrix(pub DMatrix<C>);

/// Basis label ↔ (quark color, antiquark color), both 0-based:
/// index k = 3·i + j for |q_{i+1} q̄_{j+1}⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorBasisLabel {
    pub quark_color: u8,
    pub antiquark_color: u8,
}

impl ColorBasisLabel {
    pub fn from_index(k: usize) -> Result<Self> {
        if k >= 9 {
            return Err(Error::InvalidParameter(format!("color basis index {k} out of 0..9")));
        }
        Ok(ColorBasisLabel { quark_color: (k / 3) as u8, antiquark_color: (k % 3) as u8 })
    }

    pub fn index(&self) -> usize {
        self.quark_color as usize * 3 + self.antiquark_color as usize
    }
}

/// Build 𝒯 with the printed entries.
pub fn build_t_matrix() -> TMatrix {
    let s3 = 3f64.sqrt();
    let z = C::new(0.0, 0.0);
    let mut m = DMatrix::<C>::zeros(9, 9);
    // row 0: 1, 0,0,0, (−1+i√3)/2, 0,0,0, (−i+√3)/2
    m[(0, 0)] = C::new(1.0, 0.0);
    m[(0, 4)] = C::new(-0.5, s3 / 2.0);
    m[(0, 8)] = C::new(s3 / 2.0, -0.5);
    // diagonal √3 rows
    for k in [1, 2, 3, 5, 6, 7] {
        m[(k, k)] = C::new(s3, 0.0);
    }
    // row 4: 1, …, −(1+i√3)/2, …, −(i+√3)/2
    m[(4, 0)] = C::new(1.0, 0.0);
    m[(4, 4)] = C::new(-0.5, -s3 / 2.0);
    m[(4, 8)] = C::new(-s3 / 2.0, -0.5);
    // row 8: 1, …, 1, …, i
    m[(8, 0)] = C::new(1.0, 0.0);
    m[(8, 4)] = C::new(1.0, 0.0);
    m[(8, 8)] = C::new(0.0, 1.0);
    let _ = z;
    TMatrix(m.map(|v| v / C::new(s3, 0.0)))
}

impl TMatrix {
    /// Column `k`: the image of basis state |k+1⟩.
    pub fn column(&self, k: usize) -> Vec<C> {
        (0..9).map(|r| self.0[(r, k)]).collect()
    }

    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.0.adjoint() * &self.0;
        let id = DMatrix::<C>::identity(9, 9);
        (prod - id).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// The color-singlet pair (1/√N)Σ_i |q^{s₁}_{p₁,i} q̄^{s₂}_{p₂,i}⟩ as an
/// amplitude-injected initial state. N = 3 is the physical singlet; N = 2
/// is the desk-scale analog.
pub fn prepare_singlet(
    ctx: &BuildContext,
    spins: (u8, u8),
    sites: ([i32; 3], [i32; 3]),
) -> Result<InitialState> {
    let n = ctx.params.group_n;
    if n != 2 && n != 3 {
        return Err(Error::Config(format!(
            "singlet preparation supports N = 3 (or the N = 2 analog), got N = {n}"
        )));
    }
    let amp = C::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut components = Vec::new();
    for color in 0..n as u8 {
        let quark = ModeKey { species: Species::Quark { color, spin: spins.0 }, site: sites.0 };
        let antiquark =
            ModeKey { species: Species::AntiQuark { color, spin: spins.1 }, site: sites.1 };
        if ctx.ordering.kappa(&quark).is_none() || ctx.ordering.kappa(&antiquark).is_none() {
            return Err(Error::Config("singlet modes not present in the encoding".into()));
        }
        let mut cfg = OccupationConfig::vacuum(ctx.layout);
        cfg.fermion_occ.insert(quark, 1);
        cfg.fermion_occ.insert(antiquark, 1);
        components.push((cfg, amp));
    }
    Ok(InitialState::Superposition(components))
}

/// Number of state-preparation operations (amplitude injections); constant
/// in lattice volume and boson cutoff.
pub fn singlet_prep_op_count(params: &crate::theory::ModelParams) -> usize {
    params.group_n as usize
}

/// Evolve the singlet under the filtered interaction and return the
/// instrumented trajectory.
pub fn meson_demo(
    ctx: &BuildContext,
    filter: &TermFilter,
    spins: (u8, u8),
    sites: ([i32; 3], [i32; 3]),
    opts: &EvolveOptions,
) -> Result<Trajectory> {
    let initial = prepare_singlet(ctx, spins, sites)?;
    evolve(ctx, filter, &initial, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::test_support::Fixture;
    use crate::hamiltonian::TermLabel;
    use crate::theory::ModelParams;

    #[test]
    fn t_matrix_unitary_and_columns() {
        let t = build_t_matrix();
        assert!(t.unitarity_defect() < 1e-12);
        // 𝒯|1⟩ = (|1⟩ + |5⟩ + |9⟩)/√3
        let col = t.column(0);
        let w = 1.0 / 3f64.sqrt();
        for (k, v) in col.iter().enumerate() {
            let want = if k == 0 || k == 4 || k == 8 { C::new(w, 0.0) } else { C::new(0.0, 0.0) };
            assert!((v - want).norm() < 1e-14, "column 0 entry {k}");
        }
        // 𝒯|2⟩ = |2⟩
        let col2 = t.column(1);
        for (k, v) in col2.iter().enumerate() {
            let want = if k == 1 { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
            assert!((v - want).norm() < 1e-14);
        }
    }

    #[test]
    fn color_basis_label_roundtrip() {
        for k in 0..9 {
            let label = ColorBasisLabel::from_index(k).unwrap();
            assert_eq!(label.index(), k);
        }
        // |1⟩ = |q₁q̄₁⟩, |5⟩ = |q₂q̄₂⟩, |9⟩ = |q₃q̄₃⟩ (printed labeling)
        let l5 = ColorBasisLabel::from_index(4).unwrap();
        assert_eq!((l5.quark_color, l5.antiquark_color), (1, 1));
        assert!(ColorBasisLabel::from_index(9).is_err());
    }

    #[test]
    fn singlet_overlap_matches_t_column() {
        // amplitude of |q₁q̄₁⟩ in the injected singlet = ⟨1|𝒯|1⟩ = 1/√3
        let t = build_t_matrix();
        let overlap = t.0[(0, 0)];
        assert!((overlap - C::new(1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-14);
        // and the singlet column has unit norm
        let n: f64 = t.column(0).iter().map(|v| v.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-14);
    }

    fn su2_params(g: f64) -> ModelParams {
        ModelParams {
            coupling_g: g,
            gluon_mass_regulator: 1.0,
            steps_n: 6,
            dt: 0.05,
            ..Default::default()
        }
    }

    #[test]
    fn su2_analog_singlet_marginals() {
        let fx = Fixture::new(su2_params(0.0), 1);
        let ctx = fx.ctx();
        let traj = meson_demo(
            &ctx,
            &TermFilter::only([TermLabel::Fi]),
            (0, 0),
            ([0; 3], [0; 3]),
            &EvolveOptions::default(),
        )
        .unwrap();
        let first = &traj.snapshots[0];
        let mut quark_half = 0;
        for (mode, probs) in &first.probs {
            if let Species::Quark { spin: 0, .. } = mode.species {
                assert!((probs[1] - 0.5).abs() < 1e-12, "P(occupied) = {}", probs[1]);
                quark_half += 1;
            }
        }
        assert_eq!(quark_half, 2);
    }

    #[test]
    fn stationary_singlet_at_zero_coupling() {
        let fx = Fixture::new(su2_params(0.0), 1);
        let ctx = fx.ctx();
        let traj = meson_demo(
            &ctx,
            &TermFilter::only([TermLabel::Fi]),
            (0, 1),
            ([0; 3], [0; 3]),
            &EvolveOptions::default(),
        )
        .unwrap();
        let first = &traj.snapshots[0];
        let last = traj.snapshots.last().unwrap();
        for (mode, probs) in &first.probs {
            for (a, b) in probs.iter().zip(&last.probs[mode]) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singlet_invariant_under_cyclic_color_relabeling() {
        // permuting quark and antiquark colors simultaneously maps the
        // injected component set onto itself with equal amplitudes
        let fx = Fixture::new(su2_params(0.3), 1);
        let ctx = fx.ctx();
        let InitialState::Superposition(components) =
            prepare_singlet(&ctx, (0, 0), ([0; 3], [0; 3])).unwrap()
        else {
            panic!("expected superposition");
        };
        let n = ctx.params.group_n as u8;
        for (cfg, amp) in &components {
            // build the cyclically relabeled configuration
            let mut permuted = OccupationConfig::vacuum(ctx.layout);
            for (mode, &occ) in &cfg.fermion_occ {
                let new_mode = match mode.species {
                    Species::Quark { color, spin } => ModeKey {
                        species: Species::Quark { color: (color + 1) % n, spin },
                        site: mode.site,
                    },
                    Species::AntiQuark { color, spin } => ModeKey {
                        species: Species::AntiQuark { color: (color + 1) % n, spin },
                        site: mode.site,
                    },
                    _ => *mode,
                };
                permuted.fermion_occ.insert(new_mode, occ);
            }
            let found = components
                .iter()
                .find(|(other, _)| {
                    other.fermion_occ.iter().all(|(m, o)| permuted.fermion_occ.get(m) == Some(o))
                })
                .expect("permuted component missing");
            assert!((found.1 - amp).norm() < 1e-15);
        }
    }
}
