//! Hydrogen 1s/2p₊₁ superposition wave function and its rotating density.
//!
//! Everything is in atomic units (Bohr radius 1, energies in hartree,
//! `ħ = 1`), so level `n` has energy `−1/(2n²)`. Only the two states the
//! superposition needs are implemented:
//!
//! * `(1,0,0)`: `R₁₀(r) = 2 e^{−r}`, `Y₀₀ = 1/√(4π)`
//! * `(2,1,1)`: `R₂₁(r) = r e^{−r/2} / (2√6)`, `Y₁₁ = √(3/(8π)) sinθ e^{iφ}`
//!
//! The spherical harmonic carries no Condon–Shortley sign, so the equal-weight
//! density decomposes as `f₁(r,θ) + f₂(r,θ)·cos(φ − ωt)` with `f₂ ≥ 0` and the
//! first-harmonic phase equal to `ωt` exactly; the density rigidly rotates
//! toward increasing `φ` at `ω = E₂₁₁ − E₁₀₀ = 3/8`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_on;

/// Energy of the 1s state (hartree).
pub const E_GROUND: f64 = -0.5;
/// Energy of the 2p state (hartree).
pub const E_EXCITED: f64 = -0.125;

/// Angular frequency of the rotating superposition density,
/// `ω = E₂₁₁ − E₁₀₀` in atomic units.
pub fn transition_frequency() -> f64 {
    E_EXCITED - E_GROUND
}

/// One of the two supported hydrogen eigenstates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HydrogenEigenstate {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl HydrogenEigenstate {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        match (n, l, m) {
            (1, 0, 0) | (2, 1, 1) => Ok(Self { n, l, m }),
            _ => Err(Error::UnsupportedEigenstate { n, l, m }),
        }
    }

    pub fn ground() -> Self {
        Self { n: 1, l: 0, m: 0 }
    }

    pub fn excited() -> Self {
        Self { n: 2, l: 1, m: 1 }
    }

    /// Bohr energy `−1/(2n²)` in hartree.
    pub fn energy(&self) -> f64 {
        -0.5 / f64::from(self.n * self.n)
    }

    /// Radial factor `R_{nl}(r)`.
    pub fn radial(&self, r: f64) -> f64 {
        match (self.n, self.l) {
            (1, 0) => 2.0 * (-r).exp(),
            (2, 1) => r * (-0.5 * r).exp() / (2.0 * 6.0f64.sqrt()),
            _ => unreachable!("constructor restricts the states"),
        }
    }

    /// Angular factor `Y_{lm}(θ, φ)`.
    pub fn spherical_harmonic(&self, theta: f64, phi: f64) -> Complex64 {
        match (self.l, self.m) {
            (0, 0) => Complex64::new(1.0 / (4.0 * PI).sqrt(), 0.0),
            (1, 1) => {
                let magnitude = (3.0 / (8.0 * PI)).sqrt() * theta.sin();
                Complex64::from_polar(magnitude, phi)
            }
            _ => unreachable!("constructor restricts the states"),
        }
    }
}

/// Full amplitude `R_{nl}(r)·Y_{lm}(θ,φ)·e^{−i E_n t}`.
pub fn eigenstate_amplitude(
    state: &HydrogenEigenstate,
    r: f64,
    theta: f64,
    phi: f64,
    t: f64,
) -> Result<Complex64> {
    if r < 0.0 {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            range: "[0, ∞)",
        });
    }
    let spatial = state.radial(r) * state.spherical_harmonic(theta, phi);
    Ok(spatial * Complex64::from_polar(1.0, -state.energy() * t))
}

/// Normalized mixture `a0·Ψ₁₀₀ + a1·Ψ₂₁₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionState {
    pub a0: Complex64,
    pub a1: Complex64,
    /// Density rotation frequency, fixed at `E₂₁₁ − E₁₀₀ = 3/8`.
    pub omega: f64,
}

impl SuperpositionState {
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm = a0.norm_sqr() + a1.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { norm, tol: 1e-12 });
        }
        Ok(Self {
            a0,
            a1,
            omega: transition_frequency(),
        })
    }

    /// The paper's working state: equal real weights `1/√2`.
    pub fn equal_weight() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(Complex64::new(s, 0.0), Complex64::new(s, 0.0)).expect("normalized")
    }
}

/// Probability density `|a0·Ψ₁₀₀ + a1·Ψ₂₁₁|²` at a spacetime point.
pub fn superposition_density(
    sp: &SuperpositionState,
    r: f64,
    theta: f64,
    phi: f64,
    t: f64,
) -> Result<f64> {
    let ground = eigenstate_amplitude(&HydrogenEigenstate::ground(), r, theta, phi, t)?;
    let excited = eigenstate_amplitude(&HydrogenEigenstate::excited(), r, theta, phi, t)?;
    Ok((sp.a0 * ground + sp.a1 * excited).norm_sqr())
}

/// Azimuthal harmonic content of the density at fixed `(r, θ, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiHarmonics {
    /// Mean over φ (the DC term `f₁`).
    pub f1: f64,
    /// First-harmonic amplitude `f₂`.
    pub f2: f64,
    /// First-harmonic phase in `[0, 2π)`; `None` where `f₂` vanishes
    /// (e.g. on the polar axis where `Y₁₁ = 0`).
    pub phase: Option<f64>,
    /// Largest amplitude among harmonics of order ≥ 2.
    pub max_higher_harmonic: f64,
}

/// Discrete Fourier analysis of the density over `n_phi_samples` uniform
/// azimuthal samples: `f₁` is the mean, `f₂` and `phase` describe the first
/// harmonic, and every higher harmonic is reported through its maximum.
pub fn extract_f1_f2(
    sp: &SuperpositionState,
    r: f64,
    theta: f64,
    t: f64,
    n_phi_samples: usize,
) -> Result<PhiHarmonics> {
    if n_phi_samples < 8 {
        return Err(Error::OutOfRange {
            name: "n_phi_samples",
            value: n_phi_samples as f64,
            range: "[8, ∞)",
        });
    }
    let n = n_phi_samples;
    let samples: Vec<f64> = (0..n)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / n as f64;
            superposition_density(sp, r, theta, phi, t)
        })
        .collect::<Result<_>>()?;
    let f1 = samples.iter().sum::<f64>() / n as f64;
    let coefficient = |k: usize| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &rho) in samples.iter().enumerate() {
            let angle = -2.0 * PI * (k * j) as f64 / n as f64;
            acc += rho * Complex64::from_polar(1.0, angle);
        }
        acc * 2.0 / n as f64
    };
    let c1 = coefficient(1);
    let f2 = c1.norm();
    let max_higher_harmonic = (2..=n / 2)
        .map(|k| coefficient(k).norm())
        .fold(0.0, f64::max);
    let phase = (f2 > f1.abs() * 1e-12).then(|| (-c1.arg()).rem_euclid(2.0 * PI));
    Ok(PhiHarmonics {
        f1,
        f2,
        phase,
        max_higher_harmonic,
    })
}

/// Quadrature grid for the spatial inner products.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Radial cutoff; the 2p density at r = 50 is below 1e-38.
    pub r_max: f64,
    pub radial_nodes: usize,
    pub polar_nodes: usize,
    pub azimuthal_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            r_max: 50.0,
            radial_nodes: 2000,
            polar_nodes: 200,
            azimuthal_nodes: 16,
        }
    }
}

/// Numerical `⟨Ψ_a|Ψ_b⟩ = ∫ Ψ_a* Ψ_b r² sinθ dr dθ dφ` at `t = 0`:
/// Gauss–Legendre in `r` and `θ`, trapezoid in the periodic `φ`.
pub fn inner_product(
    a: &HydrogenEigenstate,
    b: &HydrogenEigenstate,
    quad: &QuadratureSpec,
) -> Complex64 {
    let (r_nodes, r_weights) = gauss_legendre_on(quad.radial_nodes, 0.0, quad.r_max);
    let (th_nodes, th_weights) = gauss_legendre_on(quad.polar_nodes, 0.0, PI);
    let n_phi = quad.azimuthal_nodes;
    let phi_weight = 2.0 * PI / n_phi as f64;

    // The radial and angular factors separate; evaluate them once each.
    let radial: f64 = r_nodes
        .iter()
        .zip(&r_weights)
        .map(|(&r, &w)| w * a.radial(r) * b.radial(r) * r * r)
        .sum();
    let mut angular = Complex64::new(0.0, 0.0);
    for (&theta, &w_th) in th_nodes.iter().zip(&th_weights) {
        for j in 0..n_phi {
            let phi = phi_weight * j as f64;
            let ya = a.spherical_harmonic(theta, phi);
            let yb = b.spherical_harmonic(theta, phi);
            angular += ya.conj() * yb * (w_th * phi_weight * theta.sin());
        }
    }
    radial * angular
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const OMEGA: f64 = 0.375;

    #[test]
    fn only_the_two_states_exist() {
        assert!(HydrogenEigenstate::new(1, 0, 0).is_ok());
        assert!(HydrogenEigenstate::new(2, 1, 1).is_ok());
        assert!(matches!(
            HydrogenEigenstate::new(2, 1, -1),
            Err(Error::UnsupportedEigenstate { .. })
        ));
        assert!(HydrogenEigenstate::new(3, 0, 0).is_err());
    }

    #[test]
    fn energies_follow_bohr_formula() {
        assert_eq!(HydrogenEigenstate::ground().energy(), -0.5);
        assert_eq!(HydrogenEigenstate::excited().energy(), -0.125);
        assert_eq!(transition_frequency(), 0.375);
    }

    #[test]
    fn ground_amplitude_at_origin() {
        // R₁₀(0)·Y₀₀ = 2/√(4π)
        let amp =
            eigenstate_amplitude(&HydrogenEigenstate::ground(), 0.0, 0.3, 1.2, 0.0).unwrap();
        assert_abs_diff_eq!(amp.re, 0.5641895835477563, epsilon = 1e-15);
        assert_abs_diff_eq!(amp.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn excited_state_vanishes_on_polar_axis() {
        for r in [0.5, 2.0, 10.0] {
            for t in [0.0, 3.7] {
                let amp =
                    eigenstate_amplitude(&HydrogenEigenstate::excited(), r, 0.0, 0.9, t).unwrap();
                assert_abs_diff_eq!(amp.norm(), 0.0, epsilon = 1e-16);
            }
        }
    }

    #[test]
    fn stationary_state_modulus_is_time_independent() {
        let state = HydrogenEigenstate::ground();
        let reference = eigenstate_amplitude(&state, 1.3, 0.7, 2.1, 0.0)
            .unwrap()
            .norm();
        for t in [0.5, 10.0, 123.0] {
            let norm = eigenstate_amplitude(&state, 1.3, 0.7, 2.1, t).unwrap().norm();
            assert_abs_diff_eq!(norm, reference, epsilon = 1e-14);
        }
        assert!(eigenstate_amplitude(&state, -1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn pure_state_density_is_static() {
        let sp = SuperpositionState::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            .unwrap();
        let reference = superposition_density(&sp, 1.5, 0.8, 0.0, 0.0).unwrap();
        for (phi, t) in [(1.0, 0.0), (3.0, 5.0), (6.0, 50.0)] {
            let rho = superposition_density(&sp, 1.5, 0.8, phi, t).unwrap();
            assert_abs_diff_eq!(rho, reference, epsilon = 1e-15);
        }
    }

    #[test]
    fn equal_weight_density_is_dc_plus_first_harmonic() {
        let sp = SuperpositionState::equal_weight();
        let h = extract_f1_f2(&sp, 2.0, 1.1, 0.7, 64).unwrap();
        assert!(h.f2 > 0.0);
        assert!(
            h.max_higher_harmonic < 1e-10 * h.f1,
            "higher harmonic {} vs f1 {}",
            h.max_higher_harmonic,
            h.f1
        );
    }

    #[test]
    fn phase_tracks_omega_t() {
        let sp = SuperpositionState::equal_weight();
        let at_zero = extract_f1_f2(&sp, 2.0, 1.3, 0.0, 64).unwrap();
        assert_abs_diff_eq!(at_zero.phase.unwrap(), 0.0, epsilon = 1e-10);
        for t in [0.5, 2.0, 11.0] {
            let h = extract_f1_f2(&sp, 2.0, 1.3, t, 64).unwrap();
            let expected = (OMEGA * t).rem_euclid(2.0 * PI);
            assert_abs_diff_eq!(h.phase.unwrap(), expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn polar_axis_has_no_first_harmonic() {
        let sp = SuperpositionState::equal_weight();
        let h = extract_f1_f2(&sp, 2.0, 0.0, 0.0, 64).unwrap();
        assert!(h.f2 < 1e-15);
        assert!(h.phase.is_none());
        assert!(extract_f1_f2(&sp, 2.0, 1.0, 0.0, 4).is_err());
    }

    #[test]
    fn cross_term_matches_fourier_extraction() {
        // Two independent routes to f₂ at (r = 2, θ = π/2, t = 0): the direct
        // interference term against the Fourier coefficient.
        let sp = SuperpositionState::equal_weight();
        let r = 2.0;
        let theta = PI / 2.0;
        let ground = HydrogenEigenstate::ground();
        let excited = HydrogenEigenstate::excited();
        let direct = ground.radial(r)
            * excited.radial(r)
            * (1.0 / (4.0 * PI).sqrt())
            * ((3.0 / (8.0 * PI)).sqrt() * theta.sin());
        let fourier = extract_f1_f2(&sp, r, theta, 0.0, 128).unwrap();
        assert_abs_diff_eq!(fourier.f2, direct, epsilon = 1e-10);
    }

    #[test]
    fn density_rotates_rigidly() {
        let sp = SuperpositionState::equal_weight();
        for dt in [0.1, 1.0, 10.0] {
            for &(r, theta, phi, t) in &[
                (0.5, 0.4, 0.0, 0.0),
                (2.0, 1.2, 2.5, 1.0),
                (5.0, 2.8, 5.5, 7.0),
            ] {
                let before = superposition_density(&sp, r, theta, phi, t).unwrap();
                let after =
                    superposition_density(&sp, r, theta, phi + OMEGA * dt, t + dt).unwrap();
                assert!(
                    (before - after).abs() < 1e-10,
                    "rotation broken at dt={dt}: {before} vs {after}"
                );
            }
        }
    }

    #[test]
    fn rotation_moves_toward_increasing_phi() {
        // The crest sits at φ = ωt; a later time puts it at a larger angle.
        let sp = SuperpositionState::equal_weight();
        let crest = |t: f64| extract_f1_f2(&sp, 2.0, 1.3, t, 64).unwrap().phase.unwrap();
        let early = crest(0.5);
        let later = crest(1.5);
        assert_abs_diff_eq!(later - early, OMEGA, epsilon = 1e-9);
    }

    #[test]
    fn numerical_normalization_and_orthogonality() {
        let quad = QuadratureSpec::default();
        let ground = HydrogenEigenstate::ground();
        let excited = HydrogenEigenstate::excited();
        let n1 = inner_product(&ground, &ground, &quad);
        let n2 = inner_product(&excited, &excited, &quad);
        assert_abs_diff_eq!(n1.re, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(n1.im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(n2.re, 1.0, epsilon = 1e-6);
        let overlap = inner_product(&ground, &excited, &quad);
        assert!(overlap.norm() < 1e-8, "overlap {overlap}");
    }

    #[test]
    fn intermediate_product_decomposition_recovers_stuck_state() {
        // √2·(|0⟩+|1⟩)/√2 ⊗ (|0⟩+|1⟩)/√2 − (1/√2)|00⟩ − (1/√2)|11⟩ on the
        // ordered basis (|00⟩, |01⟩, |10⟩, |11⟩) equals the symmetric
        // one-excitation state.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let single = [s, s];
        let mut product = [0.0f64; 4];
        for (i, a) in single.iter().enumerate() {
            for (j, b) in single.iter().enumerate() {
                product[2 * i + j] = a * b;
            }
        }
        let mut coefficients = [0.0f64; 4];
        for (c, p) in coefficients.iter_mut().zip(product) {
            *c = 2.0f64.sqrt() * p;
        }
        coefficients[0] -= s; // |00⟩
        coefficients[3] -= s; // |11⟩
        let expected = [0.0, s, s, 0.0];
        for (c, e) in coefficients.iter().zip(expected) {
            assert_abs_diff_eq!(c, &e, epsilon = 1e-15);
        }
    }
}
