//! Material and particle response functions on the real and imaginary
//! frequency axes.
//!
//! Wall permittivities ε and particle polarizabilities α are causal response
//! functions: on the real axis they obey crossing symmetry
//! f(-ω) = conj f(ω) and passivity ω·Im f(ω) ≥ 0, and on the positive
//! imaginary axis f(iζ) is real and non-increasing. All evaluators are pure;
//! models are plain immutable values safe to share across threads.

use num_complex::Complex64;
use thiserror::Error;

use crate::tensor::{Tensor3C, X, Y, Z};

#[derive(Debug, Error, PartialEq)]
pub enum ResponseError {
    #[error("imaginary-axis frequency must be positive (got {0})")]
    NonPositiveImagFrequency(f64),
    #[error("response model has a pole at frequency {0}")]
    Pole(f64),
    #[error("distribution factor coth(omega/2T) diverges at zero frequency")]
    ZeroFrequency,
    #[error("temperature must be positive (got {0})")]
    NonPositiveTemperature(f64),
    #[error("invalid model parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
}

/// Dielectric response of the wall material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PermittivityModel {
    Vacuum,
    /// Frequency-independent ε ≥ 1.
    Constant { eps: f64 },
    /// Free-carrier metal: ε(iζ) = 1 + ω_p² / (ζ (ζ + γ)).
    Drude { plasma_frequency: f64, damping: f64 },
    /// Bound-charge dielectric:
    /// ε(iζ) = ε_∞ + f ω_0² / (ω_0² + ζ² + γζ).
    LorentzOscillator { eps_inf: f64, strength: f64, resonance: f64, damping: f64 },
}

/// Static (ζ → 0⁺) limit of ε(iζ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticEps {
    Finite(f64),
    Divergent,
}

impl PermittivityModel {
    pub fn validate(&self) -> Result<(), ResponseError> {
        let bad = |name, value| Err(ResponseError::InvalidParameter { name, value });
        match *self {
            PermittivityModel::Vacuum => Ok(()),
            PermittivityModel::Constant { eps } => {
                if eps >= 1.0 { Ok(()) } else { bad("eps", eps) }
            }
            PermittivityModel::Drude { plasma_frequency, damping } => {
                if !(plasma_frequency > 0.0) {
                    bad("plasma_frequency", plasma_frequency)
                } else if !(damping > 0.0) {
                    bad("damping", damping)
                } else {
                    Ok(())
                }
            }
            PermittivityModel::LorentzOscillator { eps_inf, strength, resonance, damping } => {
                if eps_inf < 1.0 {
                    bad("eps_inf", eps_inf)
                } else if strength < 0.0 {
                    bad("strength", strength)
                } else if !(resonance > 0.0) {
                    bad("resonance", resonance)
                } else if !(damping > 0.0) {
                    bad("damping", damping)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// ε(iζ) for ζ > 0; real, ≥ 1 and non-increasing for every shipped
    /// variant. ζ = 0 is the caller's business (the zero-frequency term of a
    /// Matsubara sum has its own prescription).
    pub fn eps_imag_axis(&self, zeta: f64) -> Result<f64, ResponseError> {
        if !(zeta > 0.0) {
            return Err(ResponseError::NonPositiveImagFrequency(zeta));
        }
        Ok(match *self {
            PermittivityModel::Vacuum => 1.0,
            PermittivityModel::Constant { eps } => eps,
            PermittivityModel::Drude { plasma_frequency, damping } => {
                1.0 + plasma_frequency * plasma_frequency / (zeta * (zeta + damping))
            }
            PermittivityModel::LorentzOscillator { eps_inf, strength, resonance, damping } => {
                eps_inf
                    + strength * resonance * resonance
                        / (resonance * resonance + zeta * zeta + damping * zeta)
            }
        })
    }

    /// ε(ω) on the real axis; satisfies ε(-ω) = conj ε(ω) and ω·Im ε ≥ 0.
    pub fn eps_real_axis(&self, omega: f64) -> Result<Complex64, ResponseError> {
        Ok(match *self {
            PermittivityModel::Vacuum => Complex64::new(1.0, 0.0),
            PermittivityModel::Constant { eps } => Complex64::new(eps, 0.0),
            PermittivityModel::Drude { plasma_frequency, damping } => {
                if omega == 0.0 {
                    return Err(ResponseError::Pole(0.0));
                }
                let denom = Complex64::new(omega * omega, damping * omega);
                Complex64::new(1.0, 0.0) - plasma_frequency * plasma_frequency / denom
            }
            PermittivityModel::LorentzOscillator { eps_inf, strength, resonance, damping } => {
                let denom =
                    Complex64::new(resonance * resonance - omega * omega, -damping * omega);
                if denom.norm() == 0.0 {
                    return Err(ResponseError::Pole(omega));
                }
                Complex64::new(eps_inf, 0.0) + strength * resonance * resonance / denom
            }
        })
    }

    pub fn static_limit(&self) -> StaticEps {
        match *self {
            PermittivityModel::Vacuum => StaticEps::Finite(1.0),
            PermittivityModel::Constant { eps } => StaticEps::Finite(eps),
            PermittivityModel::Drude { .. } => StaticEps::Divergent,
            PermittivityModel::LorentzOscillator { eps_inf, strength, .. } => {
                StaticEps::Finite(eps_inf + strength)
            }
        }
    }
}

/// One entry of the polarizability tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillator {
    Zero,
    /// Frequency-independent response α_0 (rigid-dipole limit; no
    /// dissipation on the real axis).
    Static { alpha0: f64 },
    /// α(ω) = α_0 ω_0² / (ω_0² - ω² - iγω).
    Lorentz { alpha0: f64, resonance: f64, damping: f64 },
}

impl Oscillator {
    pub fn validate(&self) -> Result<(), ResponseError> {
        let bad = |name, value| Err(ResponseError::InvalidParameter { name, value });
        match *self {
            Oscillator::Zero => Ok(()),
            Oscillator::Static { alpha0 } => {
                if alpha0.is_finite() { Ok(()) } else { bad("alpha0", alpha0) }
            }
            Oscillator::Lorentz { alpha0, resonance, damping } => {
                if !alpha0.is_finite() {
                    bad("alpha0", alpha0)
                } else if !(resonance > 0.0) {
                    bad("resonance", resonance)
                } else if damping < 0.0 {
                    bad("damping", damping)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Entry value on the imaginary axis; real for ζ ≥ 0.
    pub fn imag_axis(&self, zeta: f64) -> f64 {
        debug_assert!(zeta >= 0.0, "imaginary-axis frequency must be non-negative");
        match *self {
            Oscillator::Zero => 0.0,
            Oscillator::Static { alpha0 } => alpha0,
            Oscillator::Lorentz { alpha0, resonance, damping } => {
                alpha0 * resonance * resonance
                    / (resonance * resonance + zeta * zeta + damping * zeta)
            }
        }
    }

    pub fn real_axis(&self, omega: f64) -> Result<Complex64, ResponseError> {
        match *self {
            Oscillator::Zero => Ok(Complex64::new(0.0, 0.0)),
            Oscillator::Static { alpha0 } => Ok(Complex64::new(alpha0, 0.0)),
            Oscillator::Lorentz { alpha0, resonance, damping } => {
                let denom =
                    Complex64::new(resonance * resonance - omega * omega, -damping * omega);
                if denom.norm() == 0.0 {
                    return Err(ResponseError::Pole(omega));
                }
                Ok(alpha0 * resonance * resonance / denom)
            }
        }
    }

    pub fn static_value(&self) -> f64 {
        self.imag_axis(0.0)
    }

    /// True when the entry dissipates on the real axis (finite-width line).
    pub fn is_dissipative(&self) -> bool {
        matches!(self, Oscillator::Lorentz { damping, .. } if *damping > 0.0)
    }
}

/// Symmetric 3x3 array of oscillator entries making up the particle
/// polarizability tensor.
///
/// Off-diagonal entries are allowed (they feed the transverse force
/// components of the friction formula); no positivity constraint is imposed
/// on them beyond symmetry. Physically meaningful models must keep the
/// imaginary part of the tensor positive semidefinite, which is checked only
/// in the validation suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizabilityModel {
    entries: [[Oscillator; 3]; 3],
}

impl PolarizabilityModel {
    pub fn zero() -> Self {
        Self { entries: [[Oscillator::Zero; 3]; 3] }
    }

    /// α_ij = δ_ij · Lorentz(α_0, ω_0, γ).
    pub fn isotropic(alpha0: f64, resonance: f64, damping: f64) -> Self {
        Self::diagonal([Oscillator::Lorentz { alpha0, resonance, damping }; 3])
    }

    /// α_ij = δ_ij · α_0, frequency independent.
    pub fn isotropic_static(alpha0: f64) -> Self {
        Self::diagonal([Oscillator::Static { alpha0 }; 3])
    }

    pub fn diagonal(oscillators: [Oscillator; 3]) -> Self {
        let mut model = Self::zero();
        for (i, osc) in oscillators.into_iter().enumerate() {
            model.entries[i][i] = osc;
        }
        model
    }

    /// Returns a copy with the (i, j) and (j, i) entries replaced.
    pub fn with_entry(mut self, i: usize, j: usize, osc: Oscillator) -> Self {
        self.entries[i][j] = osc;
        self.entries[j][i] = osc;
        self
    }

    pub fn entry(&self, i: usize, j: usize) -> Oscillator {
        self.entries[i][j]
    }

    pub fn validate(&self) -> Result<(), ResponseError> {
        for row in &self.entries {
            for osc in row {
                osc.validate()?;
            }
        }
        for i in 0..3 {
            if let Oscillator::Lorentz { alpha0, .. } | Oscillator::Static { alpha0 } =
                self.entries[i][i]
            {
                if alpha0 < 0.0 {
                    return Err(ResponseError::InvalidParameter { name: "alpha0", value: alpha0 });
                }
            }
        }
        Ok(())
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..3 {
            for j in 0..3 {
                if i != j && self.entries[i][j] != Oscillator::Zero {
                    return false;
                }
            }
        }
        true
    }

    /// The common diagonal entry if the tensor is δ_ij-proportional.
    pub fn as_isotropic(&self) -> Option<Oscillator> {
        if !self.is_diagonal() {
            return None;
        }
        let first = self.entries[0][0];
        if self.entries[1][1] == first && self.entries[2][2] == first {
            Some(first)
        } else {
            None
        }
    }

    /// Distinct (ω_0, γ) pairs of the Lorentz entries, for quadrature hints.
    pub fn resonances(&self) -> Vec<(f64, f64)> {
        let mut found: Vec<(f64, f64)> = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                if let Oscillator::Lorentz { resonance, damping, .. } = self.entries[i][j] {
                    if !found
                        .iter()
                        .any(|&(r, g)| (r - resonance).abs() < 1e-12 && (g - damping).abs() < 1e-12)
                    {
                        found.push((resonance, damping));
                    }
                }
            }
        }
        found
    }

    /// α(iζ) as a real symmetric tensor, ζ ≥ 0.
    pub fn alpha_imag_axis(&self, zeta: f64) -> Tensor3C {
        let mut t = Tensor3C::zero();
        for i in 0..3 {
            for j in i..3 {
                t.set_symmetric(i, j, Complex64::new(self.entries[i][j].imag_axis(zeta), 0.0));
            }
        }
        t
    }

    /// Diagonal of α(iζ), the part consumed by the wall-force formula.
    pub fn diagonal_imag_axis(&self, zeta: f64) -> [f64; 3] {
        [
            self.entries[X][X].imag_axis(zeta),
            self.entries[Y][Y].imag_axis(zeta),
            self.entries[Z][Z].imag_axis(zeta),
        ]
    }

    /// Retarded tensor α(ω) on the real axis.
    pub fn alpha_real_axis(&self, omega: f64) -> Result<Tensor3C, ResponseError> {
        let mut t = Tensor3C::zero();
        for i in 0..3 {
            for j in i..3 {
                t.set_symmetric(i, j, self.entries[i][j].real_axis(omega)?);
            }
        }
        Ok(t)
    }

    /// Keldysh tensor of a particle in local equilibrium:
    /// α^K(ω) = 2i coth(ω/2T) Im α(ω), purely imaginary.
    pub fn alpha_keldysh(&self, omega: f64, temperature: f64) -> Result<Tensor3C, ResponseError> {
        if !(temperature > 0.0) {
            return Err(ResponseError::NonPositiveTemperature(temperature));
        }
        if omega == 0.0 {
            return Err(ResponseError::ZeroFrequency);
        }
        let retarded = self.alpha_real_axis(omega)?;
        let coth = 1.0 / (omega / (2.0 * temperature)).tanh();
        Ok(retarded.im() * Complex64::new(0.0, 2.0 * coth))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_semi_infinite_with_breakpoints, NumericsPolicy};
    use proptest::prelude::*;

    #[test]
    fn eps_imag_axis_examples() {
        assert_eq!(PermittivityModel::Vacuum.eps_imag_axis(1.0).unwrap(), 1.0);
        assert_eq!(PermittivityModel::Constant { eps: 3.0 }.eps_imag_axis(7.0).unwrap(), 3.0);
        let drude = PermittivityModel::Drude { plasma_frequency: 1.0, damping: 1.0 };
        // 1 + 1/(1·(1+1))
        assert!((drude.eps_imag_axis(1.0).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn eps_imag_axis_rejects_nonpositive() {
        let drude = PermittivityModel::Drude { plasma_frequency: 1.0, damping: 1.0 };
        assert!(matches!(
            drude.eps_imag_axis(0.0),
            Err(ResponseError::NonPositiveImagFrequency(_))
        ));
        assert!(drude.eps_imag_axis(-1.0).is_err());
    }

    #[test]
    fn eps_real_axis_examples() {
        let vacuum = PermittivityModel::Vacuum.eps_real_axis(2.0).unwrap();
        assert_eq!(vacuum, Complex64::new(1.0, 0.0));
        let drude = PermittivityModel::Drude { plasma_frequency: 1.0, damping: 1.0 };
        // 1 - 1/(1 + i) = 0.5 + 0.5i
        let v = drude.eps_real_axis(1.0).unwrap();
        assert!((v - Complex64::new(0.5, 0.5)).norm() < 1e-15);
        assert!(matches!(drude.eps_real_axis(0.0), Err(ResponseError::Pole(_))));
        let constant = PermittivityModel::Constant { eps: 3.0 };
        assert_eq!(constant.eps_real_axis(-5.0).unwrap(), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn alpha_imag_axis_examples() {
        let model = PolarizabilityModel::isotropic(1.0, 1.0, 0.1);
        let at_zero = model.alpha_imag_axis(0.0);
        for i in 0..3 {
            assert!((at_zero.entry(i, i).re - 1.0).abs() < 1e-15);
        }
        // High-frequency transparency.
        let far = model.alpha_imag_axis(1e6);
        assert!(far.max_abs() < 1e-10);
        // Lorentz arithmetic: 2·1/(1+1) = 1.
        let m2 = PolarizabilityModel::isotropic(2.0, 1.0, 0.0);
        assert!((m2.alpha_imag_axis(1.0).entry(2, 2).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_real_axis_examples() {
        let model = PolarizabilityModel::isotropic(1.0, 2.0, 1.0);
        let at_zero = model.alpha_real_axis(0.0).unwrap();
        assert_eq!(at_zero.im().max_abs(), 0.0);
        // Resonance: 4/(-2i) = 2i.
        let at_res = model.alpha_real_axis(2.0).unwrap();
        assert!((at_res.entry(0, 0) - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        // Undamped pole.
        let undamped = PolarizabilityModel::isotropic(1.0, 2.0, 0.0);
        assert!(matches!(undamped.alpha_real_axis(2.0), Err(ResponseError::Pole(_))));
    }

    #[test]
    fn alpha_keldysh_examples() {
        // No dissipation below an undamped resonance -> zero tensor.
        let undamped = PolarizabilityModel::isotropic(1.0, 2.0, 0.0);
        let k = undamped.alpha_keldysh(1.0, 1.0).unwrap();
        assert_eq!(k.max_abs(), 0.0);

        // omega >> T: coth -> 1, so K -> 2i Im R.
        let model = PolarizabilityModel::isotropic(1.0, 2.0, 1.0);
        let k = model.alpha_keldysh(100.0, 1.0).unwrap();
        let r = model.alpha_real_axis(100.0).unwrap();
        let expected = r.im() * Complex64::new(0.0, 2.0);
        assert!((k - expected).max_abs() < 1e-10 * expected.max_abs());

        // Worked value: Im R = 2 at resonance, coth(1).
        let k = model.alpha_keldysh(2.0, 1.0).unwrap();
        let coth1 = 1.0 / 1.0_f64.tanh();
        let want = 2.0 * coth1 * 2.0;
        assert!((k.entry(2, 2) - Complex64::new(0.0, want)).norm() < 1e-12);

        assert!(matches!(
            model.alpha_keldysh(0.0, 1.0),
            Err(ResponseError::ZeroFrequency)
        ));
    }

    #[test]
    fn static_limits() {
        assert_eq!(
            PermittivityModel::Drude { plasma_frequency: 2.0, damping: 0.5 }.static_limit(),
            StaticEps::Divergent
        );
        assert_eq!(
            PermittivityModel::LorentzOscillator {
                eps_inf: 2.0,
                strength: 3.0,
                resonance: 1.0,
                damping: 0.5
            }
            .static_limit(),
            StaticEps::Finite(5.0)
        );
    }

    #[test]
    fn kramers_kronig_spot_check() {
        // For a damped Lorentz entry, α(iζ) from the closed form must equal
        // (2/π) ∫_0^∞ ω' Im α(ω') / (ω'^2 + ζ^2) dω'.
        let osc = Oscillator::Lorentz { alpha0: 1.3, resonance: 0.9, damping: 0.4 };
        let policy = NumericsPolicy::default();
        for zeta in [0.1, 0.7, 2.5] {
            let direct = osc.imag_axis(zeta);
            let integral = integrate_semi_infinite_with_breakpoints(
                |w| w * osc.real_axis(w).unwrap().im / (w * w + zeta * zeta),
                0.0,
                2.0,
                &[0.5, 0.9, 1.3],
                &policy,
            );
            assert!(integral.converged);
            let reconstructed = 2.0 / std::f64::consts::PI * integral.value;
            assert!(
                (reconstructed - direct).abs() < 1e-6 * direct.abs(),
                "zeta {zeta}: {reconstructed} vs {direct}"
            );
        }
    }

    #[test]
    fn off_diagonal_entries_are_symmetric() {
        let model = PolarizabilityModel::isotropic(1.0, 1.0, 0.1).with_entry(
            X,
            Z,
            Oscillator::Lorentz { alpha0: 0.2, resonance: 1.5, damping: 0.3 },
        );
        let t = model.alpha_real_axis(0.7).unwrap();
        assert!(t.is_symmetric(0.0));
        assert_eq!(model.entry(Z, X), model.entry(X, Z));
    }

    proptest! {
        #[test]
        fn crossing_symmetry_and_passivity(
            alpha0 in 0.05f64..5.0,
            resonance in 0.1f64..5.0,
            damping in 1e-3f64..2.0,
            omega in 1e-3f64..50.0,
        ) {
            let model = PolarizabilityModel::isotropic(alpha0, resonance, damping);
            let plus = model.alpha_real_axis(omega).unwrap();
            let minus = model.alpha_real_axis(-omega).unwrap();
            prop_assert!((minus - plus.conj()).max_abs() <= 1e-14 * plus.max_abs());
            for i in 0..3 {
                prop_assert!(omega * plus.entry(i, i).im >= 0.0);
            }

            let eps = PermittivityModel::Drude { plasma_frequency: resonance, damping };
            let e_plus = eps.eps_real_axis(omega).unwrap();
            let e_minus = eps.eps_real_axis(-omega).unwrap();
            prop_assert!((e_minus - e_plus.conj()).norm() <= 1e-14 * e_plus.norm());
            prop_assert!(omega * e_plus.im >= 0.0);
        }

        #[test]
        fn imag_axis_real_and_non_increasing(
            alpha0 in 0.05f64..5.0,
            resonance in 0.1f64..5.0,
            damping in 0.0f64..2.0,
        ) {
            let model = PolarizabilityModel::isotropic(alpha0, resonance, damping);
            let mut previous = f64::INFINITY;
            for k in 0..40 {
                let zeta = 1e-3 * 10f64.powf(k as f64 * 0.2);
                let t = model.alpha_imag_axis(zeta);
                let v = t.entry(0, 0);
                prop_assert_eq!(v.im, 0.0);
                prop_assert!(v.re <= previous * (1.0 + 1e-14));
                previous = v.re;
            }
        }
    }
}
