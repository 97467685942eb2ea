//! Two-branch contour algebra and the free-photon on-shell structure.
//!
//! Correlation functions on the closed time contour carry two branch
//! indices. The component on branches (λ, σ) relates to the
//! (retarded, advanced, Keldysh) triple by
//!
//! G^{λσ} = ½ [G^K + (-1)^{λ+1} G^A + (-1)^{σ+1} G^R],
//!
//! which is inverted by R = G^{11} - G^{12}, A = G^{11} - G^{21},
//! K = G^{12} + G^{21}, subject to the linear constraint
//! G^{11} + G^{22} = G^{12} + G^{21}.
//!
//! For free photons the imaginary part of the retarded function is
//! concentrated on the shell ω = ±c|k| with the transverse weight of
//! [`transverse_projector`]; no broadened delta functions are ever
//! represented numerically. Consumers integrate over the shell analytically
//! and quadrature only what remains.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

use crate::tensor::Tensor3C;

#[derive(Debug, Error, PartialEq)]
pub enum KeldyshError {
    #[error("contour components are inconsistent: residual {residual} exceeds {allowed}")]
    InconsistentComponents { residual: f64, allowed: f64 },
    #[error("distribution function has a pole at omega = k.v (omega {omega}, k.v {doppler})")]
    DistributionPole { omega: f64, doppler: f64 },
    #[error("temperature must be positive (got {0})")]
    NonPositiveTemperature(f64),
    #[error("wave vector must be non-zero")]
    ZeroWaveVector,
    #[error("speed {speed} must be below the speed of light {light}")]
    SpeedNotBelowLight { speed: f64, light: f64 },
}

/// Branch of the two-sided time contour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourIndex {
    /// Forward branch (index 1).
    Forward,
    /// Backward branch (index 2).
    Backward,
}

impl ContourIndex {
    /// The sign (-1)^{index+1}: +1 on the forward branch, -1 on the backward.
    pub fn sign(self) -> f64 {
        match self {
            ContourIndex::Forward => 1.0,
            ContourIndex::Backward => -1.0,
        }
    }
}

/// Values a Keldysh triple can hold: complex scalars or complex tensors.
pub trait ContourValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn max_abs(&self) -> f64;
}

impl ContourValue for Complex64 {
    fn max_abs(&self) -> f64 {
        self.norm()
    }
}

impl ContourValue for Tensor3C {
    fn max_abs(&self) -> f64 {
        Tensor3C::max_abs(self)
    }
}

/// A (retarded, advanced, Keldysh) value triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeldyshTriple<V> {
    pub retarded: V,
    pub advanced: V,
    pub keldysh: V,
}

/// Component of the triple on the (first, second) contour branches.
pub fn contour_component<V: ContourValue>(
    triple: &KeldyshTriple<V>,
    first: ContourIndex,
    second: ContourIndex,
) -> V {
    (triple.keldysh + triple.advanced * first.sign() + triple.retarded * second.sign()) * 0.5
}

/// Rebuilds the triple from the four contour components. The components of
/// any genuine triple satisfy g11 + g22 = g12 + g21; a residual above
/// `tol` times the largest component magnitude is rejected.
pub fn triple_from_components<V: ContourValue>(
    g11: V,
    g12: V,
    g21: V,
    g22: V,
    tol: f64,
) -> Result<KeldyshTriple<V>, KeldyshError> {
    let residual = ((g11 + g22) - (g12 + g21)).max_abs();
    let scale = g11
        .max_abs()
        .max(g12.max_abs())
        .max(g21.max_abs())
        .max(g22.max_abs());
    let allowed = tol * scale;
    if residual > allowed {
        return Err(KeldyshError::InconsistentComponents { residual, allowed });
    }
    Ok(KeldyshTriple {
        retarded: g11 - g12,
        advanced: g11 - g21,
        keldysh: g12 + g21,
    })
}

/// Photon distribution in the frame of a particle drifting with velocity v:
/// h(ω, k·v) = coth((ω - k·v) / 2T). Odd under (ω, k·v) → (-ω, -k·v) and
/// equal to coth(ω/2T) at k·v = 0. The pole at ω = k·v is a hard error;
/// integrands crossing it must be reformulated by the caller.
pub fn drift_distribution(omega: f64, k_dot_v: f64, temperature: f64) -> Result<f64, KeldyshError> {
    if !(temperature > 0.0) {
        return Err(KeldyshError::NonPositiveTemperature(temperature));
    }
    let shifted = omega - k_dot_v;
    if shifted == 0.0 {
        return Err(KeldyshError::DistributionPole { omega, doppler: k_dot_v });
    }
    Ok(1.0 / (shifted / (2.0 * temperature)).tanh())
}

/// Equilibrium coth(ω/2T).
pub fn equilibrium_coth(omega: f64, temperature: f64) -> Result<f64, KeldyshError> {
    drift_distribution(omega, 0.0, temperature)
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Transverse photon weight (2πc²/k)(δ_ij - k_i k_j / k²): symmetric,
/// annihilates k̂, trace 2·(2πc²/k).
pub fn transverse_projector(k: [f64; 3], light_speed: f64) -> Result<Tensor3C, KeldyshError> {
    let k_norm = norm3(k);
    if k_norm == 0.0 {
        return Err(KeldyshError::ZeroWaveVector);
    }
    let prefactor = 2.0 * std::f64::consts::PI * light_speed * light_speed / k_norm;
    let mut t = Tensor3C::zero();
    for i in 0..3 {
        for j in i..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            let value = prefactor * (delta - k[i] * k[j] / (k_norm * k_norm));
            t.set_symmetric(i, j, Complex64::new(value, 0.0));
        }
    }
    Ok(t)
}

/// On-shell weights of a photon spectral function: `weight` multiplies
/// δ(ω - ck), `weight_neg` multiplies δ(ω + ck). Both are transverse to k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnShellTensor {
    pub weight: Tensor3C,
    pub weight_neg: Tensor3C,
}

impl OnShellTensor {
    pub fn is_transverse(&self, k: [f64; 3], tol: f64) -> bool {
        let k_norm = norm3(k);
        if k_norm == 0.0 {
            return false;
        }
        let unit = [k[0] / k_norm, k[1] / k_norm, k[2] / k_norm];
        let scale = self.weight.max_abs().max(self.weight_neg.max_abs());
        for t in [&self.weight, &self.weight_neg] {
            for component in t.mul_vec(unit) {
                if component.norm() > tol * scale {
                    return false;
                }
            }
        }
        true
    }
}

/// Free-photon Keldysh structure for a drifting observer: the on-shell
/// weights of D^K / (2i h), i.e. weight = -T̂(k) on δ(ω - ck) and
/// weight_neg = +T̂(k) on δ(ω + ck), together with the scalar
/// h(ω, k·v, T). Callers assemble the distributional product and perform
/// the shell integral analytically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreePhotonKeldysh {
    pub shell: OnShellTensor,
    pub distribution: f64,
}

pub fn photon_keldysh_free(
    omega: f64,
    k: [f64; 3],
    velocity: [f64; 3],
    temperature: f64,
    light_speed: f64,
) -> Result<FreePhotonKeldysh, KeldyshError> {
    let speed = norm3(velocity);
    if speed >= light_speed {
        return Err(KeldyshError::SpeedNotBelowLight { speed, light: light_speed });
    }
    let projector = transverse_projector(k, light_speed)?;
    let distribution = drift_distribution(omega, dot3(k, velocity), temperature)?;
    Ok(FreePhotonKeldysh {
        shell: OnShellTensor { weight: -projector, weight_neg: projector },
        distribution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::PolarizabilityModel;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn contour_component_examples() {
        let zero = KeldyshTriple { retarded: c(0.0, 0.0), advanced: c(0.0, 0.0), keldysh: c(0.0, 0.0) };
        for first in [ContourIndex::Forward, ContourIndex::Backward] {
            for second in [ContourIndex::Forward, ContourIndex::Backward] {
                assert_eq!(contour_component(&zero, first, second), c(0.0, 0.0));
            }
        }
        let t = KeldyshTriple { retarded: c(1.0, 0.0), advanced: c(2.0, 0.0), keldysh: c(3.0, 0.0) };
        assert_eq!(
            contour_component(&t, ContourIndex::Forward, ContourIndex::Forward),
            c(3.0, 0.0)
        );
        assert_eq!(
            contour_component(&t, ContourIndex::Backward, ContourIndex::Forward),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn triple_from_components_examples() {
        let zero = c(0.0, 0.0);
        let t = triple_from_components(zero, zero, zero, zero, 1e-12).unwrap();
        assert_eq!(t.retarded, zero);

        let t =
            triple_from_components(c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), 1e-12)
                .unwrap();
        assert_eq!(t.retarded, c(1.0, 0.0));
        assert_eq!(t.advanced, c(2.0, 0.0));
        assert_eq!(t.keldysh, c(3.0, 0.0));

        let err = triple_from_components(c(1.0, 0.0), zero, zero, zero, 1e-12);
        assert!(matches!(err, Err(KeldyshError::InconsistentComponents { .. })));
    }

    #[test]
    fn round_trip_is_exact_on_dyadic_draws() {
        // Dyadic values keep every branch combination exactly representable,
        // so the round trip and the linear identity hold bitwise.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut dyadic = |rng: &mut ChaCha8Rng| {
            let n: i32 = rng.gen_range(-(1 << 20)..(1 << 20));
            n as f64 / (1 << 20) as f64
        };
        for _ in 0..1000 {
            let triple = KeldyshTriple {
                retarded: c(dyadic(&mut rng), dyadic(&mut rng)),
                advanced: c(dyadic(&mut rng), dyadic(&mut rng)),
                keldysh: c(dyadic(&mut rng), dyadic(&mut rng)),
            };
            let g11 = contour_component(&triple, ContourIndex::Forward, ContourIndex::Forward);
            let g12 = contour_component(&triple, ContourIndex::Forward, ContourIndex::Backward);
            let g21 = contour_component(&triple, ContourIndex::Backward, ContourIndex::Forward);
            let g22 = contour_component(&triple, ContourIndex::Backward, ContourIndex::Backward);
            assert_eq!(g11 + g22, g12 + g21);
            let back = triple_from_components(g11, g12, g21, g22, 0.0).unwrap();
            assert_eq!(back.retarded, triple.retarded);
            assert_eq!(back.advanced, triple.advanced);
            assert_eq!(back.keldysh, triple.keldysh);
        }
    }

    #[test]
    fn drift_distribution_examples() {
        let coth1 = 1.0 / 1.0f64.tanh();
        assert!((drift_distribution(2.0, 0.0, 1.0).unwrap() - coth1).abs() < 1e-15);
        // Classical limit far from the pole.
        let far = drift_distribution(50.0, 0.0, 1.0).unwrap();
        assert!((far - 1.0).abs() < 1e-10);
        assert!(matches!(
            drift_distribution(1.0, 1.0, 1.0),
            Err(KeldyshError::DistributionPole { .. })
        ));
        assert!(drift_distribution(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn transverse_projector_example() {
        let two_pi = 2.0 * std::f64::consts::PI;
        let t = transverse_projector([0.0, 0.0, two_pi], 1.0).unwrap();
        assert!((t.entry(0, 0).re - 1.0).abs() < 1e-15);
        assert!((t.entry(1, 1).re - 1.0).abs() < 1e-15);
        assert!(t.entry(2, 2).norm() < 1e-15);
        assert!(transverse_projector([0.0; 3], 1.0).is_err());
    }

    #[test]
    fn photon_keldysh_free_example() {
        // k = (0,0,1), c = 1, omega = 1, v = 0, T = 0.5.
        let pk = photon_keldysh_free(1.0, [0.0, 0.0, 1.0], [0.0; 3], 0.5, 1.0).unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((pk.shell.weight.entry(0, 0).re + two_pi).abs() < 1e-12);
        assert!((pk.shell.weight.entry(1, 1).re + two_pi).abs() < 1e-12);
        assert!(pk.shell.weight.entry(2, 2).norm() < 1e-12);
        let coth1 = 1.0 / 1.0f64.tanh();
        assert!((pk.distribution - coth1).abs() < 1e-15);
        assert!(pk.shell.is_transverse([0.0, 0.0, 1.0], 1e-14));
    }

    #[test]
    fn equilibrium_fdt_matches_response_models() {
        // K built from the response layer must equal 2i coth(omega/2T) Im R.
        let model = PolarizabilityModel::isotropic(1.2, 0.8, 0.35);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let omega: f64 = rng.gen_range(0.05..5.0);
            let temperature: f64 = rng.gen_range(0.05..5.0);
            let r = model.alpha_real_axis(omega).unwrap();
            let k = model.alpha_keldysh(omega, temperature).unwrap();
            let coth = equilibrium_coth(omega, temperature).unwrap();
            let expected = r.im() * Complex64::new(0.0, 2.0 * coth);
            assert!((k - expected).max_abs() <= 1e-15 * expected.max_abs().max(1.0));
        }
    }

    proptest! {
        #[test]
        fn round_trip_close_for_continuous_draws(
            rr in -1.0f64..1.0, ri in -1.0f64..1.0,
            ar in -1.0f64..1.0, ai in -1.0f64..1.0,
            kr in -1.0f64..1.0, ki in -1.0f64..1.0,
        ) {
            let triple = KeldyshTriple { retarded: c(rr, ri), advanced: c(ar, ai), keldysh: c(kr, ki) };
            let g11 = contour_component(&triple, ContourIndex::Forward, ContourIndex::Forward);
            let g12 = contour_component(&triple, ContourIndex::Forward, ContourIndex::Backward);
            let g21 = contour_component(&triple, ContourIndex::Backward, ContourIndex::Forward);
            let g22 = contour_component(&triple, ContourIndex::Backward, ContourIndex::Backward);
            let back = triple_from_components(g11, g12, g21, g22, 1e-14).unwrap();
            prop_assert!((back.retarded - triple.retarded).norm() <= 4.0 * f64::EPSILON);
            prop_assert!((back.advanced - triple.advanced).norm() <= 4.0 * f64::EPSILON);
            prop_assert!((back.keldysh - triple.keldysh).norm() <= 4.0 * f64::EPSILON);
        }

        #[test]
        fn drift_distribution_is_odd(
            omega in 0.01f64..20.0,
            kv in -5.0f64..5.0,
            temperature in 0.05f64..5.0,
        ) {
            prop_assume!(omega != kv);
            let plus = drift_distribution(omega, kv, temperature).unwrap();
            let minus = drift_distribution(-omega, -kv, temperature).unwrap();
            prop_assert!((plus + minus).abs() <= 1e-12 * plus.abs().max(1.0));
        }

        #[test]
        fn projector_annihilates_k_and_has_rank_two(
            kx in -3.0f64..3.0, ky in -3.0f64..3.0, kz in 0.1f64..3.0,
        ) {
            let k = [kx, ky, kz];
            let t = transverse_projector(k, 1.0).unwrap();
            let k_norm = (kx*kx + ky*ky + kz*kz).sqrt();
            let unit = [kx/k_norm, ky/k_norm, kz/k_norm];
            for component in t.mul_vec(unit) {
                prop_assert!(component.norm() <= 1e-12 * t.max_abs());
            }
            let prefactor = 2.0 * std::f64::consts::PI / k_norm;
            prop_assert!((t.trace().re / prefactor - 2.0).abs() <= 1e-12);
        }
    }
}
