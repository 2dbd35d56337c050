//! Single vacuum-fluctuation event: the angle-parameterized transformation of
//! both atoms and the resulting energy-conserving joint state.
//!
//! A fluctuation rotates atom A's superposition to `(sin φ, cos φ)` on
//! (ground, excited) and atom B's to `(cos φ, sin φ)`, keeping the summed
//! single-atom energies at `E0 + E1` for every angle. Projecting the product
//! of the two kicked atoms back onto the one-excitation subspace gives the
//! joint state `sin θ·|1,0⟩ + cos θ·|0,1⟩` with `θ = arctan cot²φ`; phases
//! are omitted throughout.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground-state energy of the working hydrogen pair (hartree).
pub const HYDROGEN_GROUND_ENERGY: f64 = -0.5;
/// Excited-state (2p) energy of the working hydrogen pair (hartree).
pub const HYDROGEN_EXCITED_ENERGY: f64 = -0.125;

/// Normalization tolerance for joint states.
const NORM_TOL: f64 = 1e-12;

/// Fluctuation angle, restricted to the open interval `(0, π/2)` so
/// `cot²φ` stays finite and nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickAngle(f64);

impl KickAngle {
    pub fn new(phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi < std::f64::consts::FRAC_PI_2) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                range: "(0, π/2)",
            });
        }
        Ok(Self(phi))
    }

    pub fn phi(self) -> f64 {
        self.0
    }
}

/// Real (ground, excited) amplitude pair of one atom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomAmplitudes {
    pub ground: f64,
    pub excited: f64,
}

impl AtomAmplitudes {
    /// Expected single-atom energy.
    pub fn energy(&self, e0: f64, e1: f64) -> f64 {
        self.ground * self.ground * e0 + self.excited * self.excited * e1
    }
}

/// Joint state `amp_10·|1⟩_A|0⟩_B + amp_01·|0⟩_A|1⟩_B` with the single-atom
/// energies it conserves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoAtomJointState {
    pub amp_10: Complex64,
    pub amp_01: Complex64,
    pub e0: f64,
    pub e1: f64,
}

impl TwoAtomJointState {
    pub fn new(amp_10: Complex64, amp_01: Complex64, e0: f64, e1: f64) -> Result<Self> {
        let norm = amp_10.norm_sqr() + amp_01.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(Self {
            amp_10,
            amp_01,
            e0,
            e1,
        })
    }

    /// `|amp_10|²`, the diffusion coordinate of the joint state.
    pub fn excited_a_weight(&self) -> f64 {
        self.amp_10.norm_sqr()
    }
}

/// Per-atom superpositions after one kick: atom A at `(sin φ, cos φ)`,
/// atom B at the complementary `(cos φ, sin φ)`.
pub fn kick_atom_states(phi: KickAngle) -> (AtomAmplitudes, AtomAmplitudes) {
    let (sin, cos) = phi.phi().sin_cos();
    (
        AtomAmplitudes {
            ground: sin,
            excited: cos,
        },
        AtomAmplitudes {
            ground: cos,
            excited: sin,
        },
    )
}

/// Kick angle mapped to the joint-state angle `θ = arctan cot²φ`.
pub fn kick_to_joint_angle(phi: KickAngle) -> f64 {
    let cot = 1.0 / phi.phi().tan();
    (cot * cot).atan()
}

/// Energy-conserving joint state after a kick: `(sin θ, cos θ)` on
/// `(|1,0⟩, |0,1⟩)` with `θ = arctan cot²φ`.
pub fn joint_state_after_kick(phi: KickAngle, e0: f64, e1: f64) -> TwoAtomJointState {
    let theta = kick_to_joint_angle(phi);
    let (sin, cos) = theta.sin_cos();
    TwoAtomJointState {
        amp_10: Complex64::new(sin, 0.0),
        amp_01: Complex64::new(cos, 0.0),
        e0,
        e1,
    }
}

/// Verification oracle connecting the per-atom kicks to the joint state:
/// forms the product of the two kicked atoms, projects it onto
/// `span{|1,0⟩, |0,1⟩}`, renormalizes, and returns the norm of the
/// difference from [`joint_state_after_kick`].
pub fn projection_consistency(phi: KickAngle) -> f64 {
    let (atom_a, atom_b) = kick_atom_states(phi);
    // Product-state coefficients on |1,0⟩ and |0,1⟩.
    let c10 = atom_a.excited * atom_b.ground; // cos²φ
    let c01 = atom_a.ground * atom_b.excited; // sin²φ
    let norm = (c10 * c10 + c01 * c01).sqrt();
    let joint = joint_state_after_kick(phi, 0.0, 0.0);
    let d10 = c10 / norm - joint.amp_10.re;
    let d01 = c01 / norm - joint.amp_01.re;
    (d10 * d10 + d01 * d01).sqrt()
}

/// Total energy `|amp_10|²(E1 + E0) + |amp_01|²(E0 + E1)`, identically
/// `E0 + E1` on normalized states.
pub fn total_energy(state: &TwoAtomJointState) -> f64 {
    state.amp_10.norm_sqr() * (state.e1 + state.e0)
        + state.amp_01.norm_sqr() * (state.e0 + state.e1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    const E0: f64 = HYDROGEN_GROUND_ENERGY;
    const E1: f64 = HYDROGEN_EXCITED_ENERGY;

    #[test]
    fn angle_domain_is_open() {
        assert!(KickAngle::new(0.0).is_err());
        assert!(KickAngle::new(std::f64::consts::FRAC_PI_2).is_err());
        assert!(KickAngle::new(1e-9).is_ok());
    }

    #[test]
    fn symmetric_point_leaves_both_atoms_equal() {
        let (a, b) = kick_atom_states(KickAngle::new(FRAC_PI_4).unwrap());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(a.ground, s, epsilon = 1e-15);
        assert_abs_diff_eq!(a.excited, s, epsilon = 1e-15);
        assert_abs_diff_eq!(b.ground, s, epsilon = 1e-15);
        assert_abs_diff_eq!(b.excited, s, epsilon = 1e-15);
    }

    #[test]
    fn small_angle_limit_excites_atom_a() {
        let (a, b) = kick_atom_states(KickAngle::new(1e-8).unwrap());
        assert!(a.excited > 1.0 - 1e-15 && a.ground < 1e-7);
        assert!(b.ground > 1.0 - 1e-15 && b.excited < 1e-7);
        let joint = joint_state_after_kick(KickAngle::new(1e-8).unwrap(), E0, E1);
        assert!(joint.amp_10.re > 1.0 - 1e-15);
    }

    #[test]
    fn kick_conserves_summed_atom_energy() {
        for k in 1..200 {
            let phi = KickAngle::new(k as f64 * std::f64::consts::FRAC_PI_2 / 200.0).unwrap();
            let (a, b) = kick_atom_states(phi);
            assert_abs_diff_eq!(a.energy(E0, E1) + b.energy(E0, E1), E0 + E1, epsilon = 1e-12);
        }
    }

    #[test]
    fn symmetric_kick_reproduces_stuck_state() {
        let joint = joint_state_after_kick(KickAngle::new(FRAC_PI_4).unwrap(), E0, E1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(joint.amp_10.re, s, epsilon = 1e-15);
        assert_abs_diff_eq!(joint.amp_01.re, s, epsilon = 1e-15);
    }

    #[test]
    fn pi_third_kick_matches_normalized_projection() {
        // cot²(π/3) = 1/3, so (sin θ, cos θ) = (1/√10, 3/√10).
        let joint = joint_state_after_kick(KickAngle::new(FRAC_PI_3).unwrap(), E0, E1);
        assert_abs_diff_eq!(joint.amp_10.re, 1.0 / 10f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(joint.amp_01.re, 3.0 / 10f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn projection_residuals_vanish() {
        for phi in [FRAC_PI_4, FRAC_PI_3, 0.1] {
            let residual = projection_consistency(KickAngle::new(phi).unwrap());
            assert!(residual < 1e-12, "phi = {phi}: residual {residual}");
        }
    }

    #[test]
    fn total_energy_is_invariant() {
        let equal = TwoAtomJointState::new(
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            E0,
            E1,
        )
        .unwrap();
        assert_abs_diff_eq!(total_energy(&equal), -0.625, epsilon = 1e-15);
        let lopsided =
            TwoAtomJointState::new(Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0), E0, E1)
                .unwrap();
        assert_abs_diff_eq!(total_energy(&lopsided), -0.625, epsilon = 1e-15);
    }

    #[test]
    fn joint_state_requires_normalization() {
        assert!(TwoAtomJointState::new(
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            E0,
            E1
        )
        .is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        /// Energy conservation and the angle identity over random kicks.
        /// The angle range keeps tan(arctan·) well conditioned.
        #[test]
        fn kick_identities(phi in 0.02f64..(std::f64::consts::FRAC_PI_2 - 0.02)) {
            let angle = KickAngle::new(phi).unwrap();
            let joint = joint_state_after_kick(angle, E0, E1);
            prop_assert!((total_energy(&joint) - (E0 + E1)).abs() < 1e-12);

            let theta = kick_to_joint_angle(angle);
            let product = theta.tan() * phi.tan() * phi.tan();
            prop_assert!((product - 1.0).abs() < 1e-12, "tanθ·tan²φ = {product}");

            prop_assert!(projection_consistency(angle) < 1e-12);
        }
    }
}
