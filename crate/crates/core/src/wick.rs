//! Numerical check of the real-axis ↔ imaginary-axis equivalence for
//! rational response functions.
//!
//! For a function f analytic in the upper half plane with Schwarz symmetry
//! and sufficient decay, closing the thermal contour over the poles of
//! coth(ω/2T) turns the real-frequency integral into a Matsubara sum:
//!
//! (1/π) ∫_0^∞ coth(ω/2T) Im f(ω) dω = T Σ_{s≥0} (2 - δ_{s0}) f(iζ_s).
//!
//! The left side is the folded form of the full-line thermal integral: for
//! odd Im f, folding the weight 1/(e^{-ω/T} - 1) over ω → -ω produces
//! -coth(ω/2T) via the bridging identity coth(ω/2T) = 1 + 2/(e^{ω/T} - 1).
//! This module asserts the coth-form identity; the overall sign bookkeeping
//! of the unfolded weight is left to the tests that document the fold. The
//! half weight at s = 0 is the principal-value crossing of the coth pole at
//! the origin.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{
    integrate_semi_infinite_with_breakpoints, matsubara_sum, IntegralResult, MatsubaraGrid,
    NumericsPolicy,
};

#[derive(Debug, Error, PartialEq)]
pub enum WickError {
    #[error("invalid Lorentz term parameter {name} = {value}")]
    InvalidTerm { name: &'static str, value: f64 },
    #[error("temperature must be positive (got {0})")]
    NonPositiveTemperature(f64),
}

/// One Lorentz term c ω_0² / (ω_0² - ω² - iγω).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTerm {
    pub weight: f64,
    pub resonance: f64,
    pub damping: f64,
}

/// A finite sum of Lorentz terms. With every damping positive the function
/// is analytic in the upper half plane, satisfies f(-ω) = conj f(ω), is real
/// on the positive imaginary axis, and decays like 1/ω² or faster.
///
/// Terms with negative damping are accepted (they provide the broken test
/// functions for negative controls) as long as the pole pair stays off the
/// positive imaginary axis, which requires γ > -2ω_0.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalResponse {
    terms: Vec<LorentzTerm>,
}

impl RationalResponse {
    pub fn new(terms: Vec<LorentzTerm>) -> Result<Self, WickError> {
        for term in &terms {
            if !(term.resonance > 0.0) {
                return Err(WickError::InvalidTerm { name: "resonance", value: term.resonance });
            }
            if term.damping == 0.0 || term.damping <= -2.0 * term.resonance {
                return Err(WickError::InvalidTerm { name: "damping", value: term.damping });
            }
            if !term.weight.is_finite() {
                return Err(WickError::InvalidTerm { name: "weight", value: term.weight });
            }
        }
        Ok(Self { terms })
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[LorentzTerm] {
        &self.terms
    }

    /// All poles strictly in the lower half plane.
    pub fn is_causal(&self) -> bool {
        self.terms.iter().all(|t| t.damping > 0.0)
    }

    pub fn concat(&self, other: &RationalResponse) -> RationalResponse {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        RationalResponse { terms }
    }

    pub fn eval_real(&self, omega: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let w0_sq = t.resonance * t.resonance;
            acc += t.weight * w0_sq / Complex64::new(w0_sq - omega * omega, -t.damping * omega);
        }
        acc
    }

    pub fn imag_part(&self, omega: f64) -> f64 {
        self.eval_real(omega).im
    }

    /// d(Im f)/dω at the origin, Σ c γ / ω_0².
    pub fn imag_slope_origin(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * t.damping / (t.resonance * t.resonance))
            .sum()
    }

    /// f(iζ), real for ζ ≥ 0.
    pub fn eval_imag_axis(&self, zeta: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let w0_sq = t.resonance * t.resonance;
                t.weight * w0_sq / (w0_sq + zeta * zeta + t.damping * zeta)
            })
            .sum()
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut points = Vec::new();
        for t in &self.terms {
            let width = t.damping.abs().max(1e-3 * t.resonance);
            points.push((t.resonance - 4.0 * width).max(0.0));
            points.push(t.resonance);
            points.push(t.resonance + 4.0 * width);
        }
        points
    }

    fn frequency_scale(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.resonance + t.damping.abs())
            .fold(1.0_f64, f64::max)
    }
}

/// (1/π) ∫_0^∞ coth(ω/2T) Im f(ω) dω. The coth singularity at the origin is
/// integrable because Im f vanishes linearly there; the product is evaluated
/// through its small-ω expansion near zero.
pub fn real_axis_side(
    f: &RationalResponse,
    temperature: f64,
    policy: &NumericsPolicy,
) -> Result<IntegralResult, WickError> {
    if !(temperature > 0.0) {
        return Err(WickError::NonPositiveTemperature(temperature));
    }
    let scale = f.frequency_scale().max(temperature);
    let slope = f.imag_slope_origin();
    let cut = 1e-10 * scale;
    let integrand = move |omega: f64| {
        if omega < cut {
            // coth(ω/2T) Im f -> 2T (d Im f / dω)(0)
            return 2.0 * temperature * slope;
        }
        f.imag_part(omega) / (omega / (2.0 * temperature)).tanh()
    };
    let mut result =
        integrate_semi_infinite_with_breakpoints(integrand, 0.0, scale, &f.breakpoints(), policy);
    result.value /= std::f64::consts::PI;
    result.error_estimate /= std::f64::consts::PI;
    Ok(result)
}

/// T Σ_{s≥0} (2 - δ_{s0}) f(iζ_s).
pub fn matsubara_side(
    f: &RationalResponse,
    temperature: f64,
    policy: &NumericsPolicy,
) -> Result<IntegralResult, WickError> {
    let grid =
        MatsubaraGrid::new(temperature).map_err(|_| WickError::NonPositiveTemperature(temperature))?;
    Ok(matsubara_sum(|zeta| f.eval_imag_axis(zeta), &grid, policy))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WickVerdict {
    Pass,
    Fail,
    /// At least one side did not converge; no statement about the identity.
    Indeterminate,
}

#[derive(Debug, Clone)]
pub struct WickReport {
    pub real_axis: IntegralResult,
    pub matsubara: IntegralResult,
    pub rel_diff: f64,
    pub verdict: WickVerdict,
}

/// Compares the two sides of the identity at relative tolerance `tol`.
pub fn verify_wick(
    f: &RationalResponse,
    temperature: f64,
    tol: f64,
    policy: &NumericsPolicy,
) -> Result<WickReport, WickError> {
    let lhs = real_axis_side(f, temperature, policy)?;
    let rhs = matsubara_side(f, temperature, policy)?;
    let denom = lhs.value.abs().max(rhs.value.abs());
    let rel_diff = if denom == 0.0 { 0.0 } else { (lhs.value - rhs.value).abs() / denom };
    let verdict = if !(lhs.converged && rhs.converged) {
        WickVerdict::Indeterminate
    } else if rel_diff <= tol {
        WickVerdict::Pass
    } else {
        WickVerdict::Fail
    };
    Ok(WickReport { real_axis: lhs, matsubara: rhs, rel_diff, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate_semi_infinite;

    fn policy() -> NumericsPolicy {
        NumericsPolicy::default()
    }

    fn single(weight: f64, resonance: f64, damping: f64) -> RationalResponse {
        RationalResponse::new(vec![LorentzTerm { weight, resonance, damping }]).unwrap()
    }

    #[test]
    fn zero_response_passes_trivially() {
        let report = verify_wick(&RationalResponse::zero(), 0.5, 1e-6, &policy()).unwrap();
        assert_eq!(report.verdict, WickVerdict::Pass);
        assert_eq!(report.rel_diff, 0.0);
    }

    #[test]
    fn single_lorentz_sides_agree() {
        let f = single(1.0, 1.0, 0.5);
        let report = verify_wick(&f, 0.3, 1e-6, &policy()).unwrap();
        assert_eq!(report.verdict, WickVerdict::Pass, "rel diff {}", report.rel_diff);
    }

    #[test]
    fn high_temperature_limit() {
        // T >> ω_0: the zero-frequency term dominates and the value tends to
        // T f(0) = T Σ c.
        let f = single(1.0, 1.0, 0.5);
        let temperature = 100.0;
        let lhs = real_axis_side(&f, temperature, &policy()).unwrap();
        assert!(lhs.converged);
        let expected = temperature * f.eval_imag_axis(0.0);
        assert!((lhs.value - expected).abs() < 0.01 * expected);
    }

    #[test]
    fn low_temperature_continuum_limit() {
        // T -> 0: the sum tends to (1/π) ∫_0^∞ f(iζ) dζ. The 1/ζ² tail
        // needs a longer term budget at this temperature.
        let f = single(1.0, 1.0, 0.5);
        let temperature = 1e-3;
        let long_policy =
            NumericsPolicy { matsubara_max_terms: 300_000, ..NumericsPolicy::default() };
        let rhs = matsubara_side(&f, temperature, &long_policy).unwrap();
        assert!(rhs.converged);
        let continuum = integrate_semi_infinite(|z| f.eval_imag_axis(z), 0.0, 1.0, &policy());
        let expected = continuum.value / std::f64::consts::PI;
        assert!(
            (rhs.value - expected).abs() < 1e-3 * expected.abs(),
            "sum {} continuum {}",
            rhs.value,
            expected
        );
    }

    #[test]
    fn additivity_in_the_term_list() {
        let f1 = single(0.7, 0.9, 0.3);
        let f2 = single(-0.4, 2.1, 0.8);
        let joined = f1.concat(&f2);
        let t = 0.45;
        for side in [real_axis_side, matsubara_side] {
            let a = side(&f1, t, &policy()).unwrap().value;
            let b = side(&f2, t, &policy()).unwrap().value;
            let ab = side(&joined, t, &policy()).unwrap().value;
            assert!((ab - (a + b)).abs() <= 1e-10 * ab.abs().max(a.abs() + b.abs()));
        }
    }

    #[test]
    fn folded_weight_matches_full_line() {
        // Full-line integral with weight 1/(e^{-ω/T} - 1) equals minus the
        // folded coth form for odd Im f; this pins the fold including its
        // sign without interpreting the unfolded convention.
        let f = single(1.0, 1.0, 0.5);
        let temperature = 0.7;
        let folded = real_axis_side(&f, temperature, &policy()).unwrap().value;

        let weight = |omega: f64| 1.0 / ((-omega / temperature).exp() - 1.0);
        let positive = integrate_semi_infinite_with_breakpoints(
            |w| f.imag_part(w) * weight(w),
            1e-9,
            1.0,
            &[1.0],
            &policy(),
        );
        let negative = integrate_semi_infinite_with_breakpoints(
            |w| f.imag_part(-w) * weight(-w),
            1e-9,
            1.0,
            &[1.0],
            &policy(),
        );
        let full_line = (positive.value + negative.value) / std::f64::consts::PI;
        assert!(
            (full_line + folded).abs() < 1e-6 * folded.abs(),
            "full line {} folded {}",
            full_line,
            folded
        );
    }

    #[test]
    fn broken_response_fails() {
        // A pole in the upper half plane breaks the contour argument.
        let broken = single(1.0, 1.0, -0.5);
        assert!(!broken.is_causal());
        let report = verify_wick(&broken, 0.3, 1e-6, &policy()).unwrap();
        assert_eq!(report.verdict, WickVerdict::Fail);
    }

    #[test]
    fn rejects_pole_on_summation_axis() {
        let err = RationalResponse::new(vec![LorentzTerm {
            weight: 1.0,
            resonance: 1.0,
            damping: -2.0,
        }]);
        assert!(err.is_err());
        assert!(RationalResponse::new(vec![LorentzTerm {
            weight: 1.0,
            resonance: 1.0,
            damping: 0.0,
        }])
        .is_err());
    }
}
