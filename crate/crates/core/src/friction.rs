//! Drag on a particle moving uniformly through blackbody radiation, to
//! first order in the velocity.
//!
//! With the velocity along +z the force components are
//!
//! F_i = v / (2π c⁵ T) ∫_0^∞ ω⁵ / sinh²(ω/2T) f_i(ω) dω,
//!
//! f_x = -(2/15) Im α_xz,  f_y = -(2/15) Im α_yz,
//! f_z = (2/15) Im {2 Tr α - α_zz},
//!
//! which reduces to f_z = (2/3) Im α for isotropic particles. The formula
//! is evaluated verbatim: positive F_z points along the velocity, and no
//! drag sign is inserted. Output tables carry the convention note.
//!
//! [`friction_oracle`] recomputes the same force without this closed form:
//! it assembles the force kernel from the free-photon on-shell weights and
//! the drifting distribution in momentum space, collapses the frequency
//! integral on the photon shell ω = ±c|k| analytically, antisymmetrizes in
//! ±v pointwise, and quadratures the remaining (|k|, cos θ) integral with a
//! trapezoid in azimuth. It shares no algebra with `f_vector`. The momentum
//! measure is d³k/(8π²c), the normalization under which the on-shell weight
//! of [`crate::keldysh::transverse_projector`] reproduces the closed-form
//! kernel above.

use num_complex::Complex64;
use rayon::prelude::*;
use std::cell::Cell;
use thiserror::Error;

use crate::keldysh::{photon_keldysh_free, KeldyshError};
use crate::numerics::{
    integrate_finite, integrate_semi_infinite_with_breakpoints, NumericsPolicy,
};
use crate::response::{Oscillator, PolarizabilityModel, ResponseError};
use crate::tensor::{Tensor3C, X, Y, Z};

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Error, PartialEq)]
pub enum FrictionError {
    #[error("scene parameter {name} is out of range (got {value})")]
    InvalidScene { name: &'static str, value: f64 },
    #[error("resonance at {resonance} has zero width; a finite damping is required")]
    UndampedResonance { resonance: f64 },
    #[error("oracle is restricted to the linear regime v/c <= {limit} (got v/c = {ratio})")]
    OracleSpeedTooLarge { ratio: f64, limit: f64 },
    #[error("sweep grid entry {0} is out of range")]
    InvalidGrid(f64),
    #[error(transparent)]
    Response(#[from] ResponseError),
    #[error(transparent)]
    Keldysh(#[from] KeldyshError),
}

/// Particle drifting with speed v along +z through radiation at temperature
/// T. Other velocity directions are handled by rotating the polarizability
/// into this frame and rotating the force back.
#[derive(Debug, Clone, Copy)]
pub struct FrictionScene {
    pub speed: f64,
    pub temperature: f64,
    pub particle: PolarizabilityModel,
    pub light_speed: f64,
}

impl FrictionScene {
    pub fn new(
        speed: f64,
        temperature: f64,
        particle: PolarizabilityModel,
    ) -> Result<Self, FrictionError> {
        let scene = Self { speed, temperature, particle, light_speed: 1.0 };
        scene.validate()?;
        Ok(scene)
    }

    pub fn with_light_speed(mut self, light_speed: f64) -> Result<Self, FrictionError> {
        self.light_speed = light_speed;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), FrictionError> {
        if !(self.light_speed > 0.0) {
            return Err(FrictionError::InvalidScene {
                name: "light_speed",
                value: self.light_speed,
            });
        }
        if !(self.speed >= 0.0 && self.speed < self.light_speed) {
            return Err(FrictionError::InvalidScene { name: "speed", value: self.speed });
        }
        if !(self.temperature > 0.0) {
            return Err(FrictionError::InvalidScene {
                name: "temperature",
                value: self.temperature,
            });
        }
        self.particle.validate()?;
        Ok(())
    }
}

/// Angular weight vector of the force integrand.
pub fn f_vector(alpha: &Tensor3C) -> [f64; 3] {
    let trace_im = alpha.trace().im;
    [
        -2.0 * alpha.entry(X, Z).im / 15.0,
        -2.0 * alpha.entry(Y, Z).im / 15.0,
        2.0 * (2.0 * trace_im - alpha.entry(Z, Z).im) / 15.0,
    ]
}

#[derive(Debug, Clone)]
pub struct FrictionResult {
    pub force: [f64; 3],
    /// |F| / v; reported as 0 at v = 0.
    pub drag: f64,
    /// Optional (ω, integrand) samples of the F_z integrand.
    pub spectral_table: Option<Vec<(f64, f64)>>,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

fn ensure_damped(particle: &PolarizabilityModel) -> Result<(), FrictionError> {
    for i in 0..3 {
        for j in i..3 {
            if let Oscillator::Lorentz { resonance, damping, .. } = particle.entry(i, j) {
                if damping == 0.0 {
                    return Err(FrictionError::UndampedResonance { resonance });
                }
            }
        }
    }
    Ok(())
}

fn component_active(particle: &PolarizabilityModel, component: usize) -> bool {
    match component {
        X => particle.entry(X, Z).is_dissipative(),
        Y => particle.entry(Y, Z).is_dissipative(),
        _ => (0..3).any(|i| particle.entry(i, i).is_dissipative()),
    }
}

/// Decay scale and breakpoints of the spectral integrand, in ω.
fn spectral_hints(particle: &PolarizabilityModel, temperature: f64) -> (f64, Vec<f64>) {
    let mut scale = 5.0 * temperature;
    let mut breaks = Vec::new();
    for (resonance, damping) in particle.resonances() {
        scale = scale.max(resonance + 10.0 * damping);
        breaks.push((resonance - 8.0 * damping).max(0.0));
        breaks.push(resonance);
        breaks.push(resonance + 8.0 * damping);
    }
    (scale, breaks)
}

fn thermal_kernel(omega: f64, temperature: f64) -> f64 {
    let x = omega / (2.0 * temperature);
    if x > 350.0 {
        return 0.0;
    }
    let s = x.sinh();
    omega.powi(5) / (s * s)
}

pub fn friction_force(
    scene: &FrictionScene,
    policy: &NumericsPolicy,
) -> Result<FrictionResult, FrictionError> {
    friction_force_impl(scene, policy, None)
}

/// As [`friction_force`], additionally sampling the F_z integrand on a
/// log-spaced grid of `samples` frequencies.
pub fn friction_force_with_spectrum(
    scene: &FrictionScene,
    policy: &NumericsPolicy,
    samples: usize,
) -> Result<FrictionResult, FrictionError> {
    friction_force_impl(scene, policy, Some(samples))
}

fn friction_force_impl(
    scene: &FrictionScene,
    policy: &NumericsPolicy,
    spectrum: Option<usize>,
) -> Result<FrictionResult, FrictionError> {
    ensure_damped(&scene.particle)?;
    let temperature = scene.temperature;
    let c = scene.light_speed;
    let (scale, breaks) = spectral_hints(&scene.particle, temperature);
    let prefactor = scene.speed / (2.0 * PI * c.powi(5) * temperature);

    let poisoned = Cell::new(false);
    let spectral_weight = |omega: f64, component: usize| -> f64 {
        let kernel = thermal_kernel(omega, temperature);
        if kernel == 0.0 {
            return 0.0;
        }
        match scene.particle.alpha_real_axis(omega) {
            Ok(alpha) => kernel * f_vector(&alpha)[component],
            Err(_) => {
                poisoned.set(true);
                f64::NAN
            }
        }
    };

    let mut force = [0.0; 3];
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut converged = true;
    for component in 0..3 {
        if !component_active(&scene.particle, component) {
            continue;
        }
        let result = integrate_semi_infinite_with_breakpoints(
            |omega| spectral_weight(omega, component),
            0.0,
            scale,
            &breaks,
            policy,
        );
        force[component] = prefactor * result.value;
        error += prefactor.abs() * result.error_estimate;
        evaluations += result.evaluations;
        converged &= result.converged;
    }
    converged &= !poisoned.get();

    let drag = if scene.speed > 0.0 {
        (force[0] * force[0] + force[1] * force[1] + force[2] * force[2]).sqrt() / scene.speed
    } else {
        0.0
    };

    let spectral_table = spectrum.map(|n| {
        let lo = scale * 1e-3;
        let hi = scale * 30.0;
        (0..n)
            .map(|i| {
                let fraction = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
                let omega = lo * (hi / lo).powf(fraction);
                (omega, prefactor * spectral_weight(omega, Z))
            })
            .collect()
    });

    Ok(FrictionResult {
        force,
        drag,
        spectral_table,
        error_estimate: error,
        evaluations,
        converged,
    })
}

/// Maximum v/c accepted by the momentum-space oracle.
pub const ORACLE_SPEED_LIMIT: f64 = 1e-3;

#[derive(Debug, Clone, Copy)]
pub struct OracleForce {
    pub force: [f64; 3],
    pub evaluations: usize,
    pub converged: bool,
}

/// Brute-force momentum-space evaluation of the drag, independent of the
/// closed-form angular weights. Restricted to v/c ≤ [`ORACLE_SPEED_LIMIT`]
/// where the extracted ±v slope is linear to better than the comparison
/// tolerance.
pub fn friction_oracle(
    scene: &FrictionScene,
    policy: &NumericsPolicy,
) -> Result<OracleForce, FrictionError> {
    ensure_damped(&scene.particle)?;
    let c = scene.light_speed;
    let v = scene.speed;
    if v == 0.0 {
        return Ok(OracleForce { force: [0.0; 3], evaluations: 0, converged: true });
    }
    let ratio = v / c;
    if ratio > ORACLE_SPEED_LIMIT {
        return Err(FrictionError::OracleSpeedTooLarge { ratio, limit: ORACLE_SPEED_LIMIT });
    }

    let temperature = scene.temperature;
    let particle = scene.particle;
    let vel_plus = [0.0, 0.0, v];
    let vel_minus = [0.0, 0.0, -v];
    let (omega_scale, omega_breaks) = spectral_hints(&particle, temperature);
    let k_scale = omega_scale / c;
    let k_breaks: Vec<f64> = omega_breaks.iter().map(|w| w / c).collect();

    let inner_policy = NumericsPolicy {
        rel_tol: (policy.rel_tol * 0.1).max(1e-13),
        max_subdivisions: 60,
        ..policy.clone()
    };

    let poisoned = Cell::new(false);
    let inner_evals = Cell::new(0usize);
    let inner_converged = Cell::new(true);

    const PHI_NODES: usize = 16;
    let mut force = [0.0; 3];
    let mut evaluations = 0;
    let mut converged = true;

    for component in 0..3 {
        if !component_active(&particle, component) {
            continue;
        }
        let outer = integrate_semi_infinite_with_breakpoints(
            |k| {
                let omega = c * k;
                let (alpha_adv_pos, alpha_adv_neg) = match (
                    particle.alpha_real_axis(omega),
                    particle.alpha_real_axis(-omega),
                ) {
                    (Ok(p), Ok(m)) => (p.conj(), m.conj()),
                    _ => {
                        poisoned.set(true);
                        return f64::NAN;
                    }
                };
                let mu_integral = integrate_finite(
                    |mu: f64| {
                        let sin_theta = (1.0 - mu * mu).max(0.0).sqrt();
                        let mut phi_acc = 0.0;
                        for j in 0..PHI_NODES {
                            let phi = 2.0 * PI * j as f64 / PHI_NODES as f64;
                            let k_vec =
                                [k * sin_theta * phi.cos(), k * sin_theta * phi.sin(), k * mu];
                            let node = |vel: [f64; 3]| -> f64 {
                                let on_plus =
                                    photon_keldysh_free(omega, k_vec, vel, temperature, c);
                                let on_minus =
                                    photon_keldysh_free(-omega, k_vec, vel, temperature, c);
                                let (pk_pos, pk_neg) = match (on_plus, on_minus) {
                                    (Ok(p), Ok(m)) => (p, m),
                                    _ => {
                                        poisoned.set(true);
                                        return f64::NAN;
                                    }
                                };
                                let bracket = alpha_adv_pos.trace_product(&pk_pos.shell.weight)
                                    * pk_pos.distribution
                                    + alpha_adv_neg.trace_product(&pk_neg.shell.weight_neg)
                                        * pk_neg.distribution;
                                let prefactor = Complex64::new(0.0, -1.0)
                                    * (k_vec[component] * k * k / (2.0 * PI));
                                (prefactor * bracket).re
                            };
                            phi_acc += 0.5 * (node(vel_plus) - node(vel_minus));
                        }
                        phi_acc * 2.0 * PI / PHI_NODES as f64
                    },
                    -1.0,
                    1.0,
                    &[],
                    &inner_policy,
                );
                inner_evals.set(inner_evals.get() + mu_integral.evaluations);
                inner_converged.set(inner_converged.get() && mu_integral.converged);
                k * k * mu_integral.value
            },
            0.0,
            k_scale,
            &k_breaks,
            policy,
        );
        force[component] = outer.value / (8.0 * PI * PI * c);
        evaluations += outer.evaluations + inner_evals.get();
        inner_evals.set(0);
        converged &= outer.converged;
    }

    converged &= inner_converged.get() && !poisoned.get();
    Ok(OracleForce { force, evaluations, converged })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrictionSweepAxis {
    Speed,
    Temperature,
}

#[derive(Debug, Clone, Copy)]
pub struct FrictionSweepRow {
    pub value: f64,
    pub force: [f64; 3],
    pub drag: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

/// Force along a grid of speeds or temperatures; rows equal individual
/// [`friction_force`] calls.
pub fn friction_sweep(
    scene: &FrictionScene,
    axis: FrictionSweepAxis,
    grid: &[f64],
    policy: &NumericsPolicy,
) -> Result<Vec<FrictionSweepRow>, FrictionError> {
    ensure_damped(&scene.particle)?;
    for &value in grid {
        let valid = match axis {
            FrictionSweepAxis::Speed => value >= 0.0 && value < scene.light_speed,
            FrictionSweepAxis::Temperature => value > 0.0,
        };
        if !valid {
            return Err(FrictionError::InvalidGrid(value));
        }
    }
    Ok(grid
        .par_iter()
        .map(|&value| {
            let row_scene = match axis {
                FrictionSweepAxis::Speed => FrictionScene { speed: value, ..*scene },
                FrictionSweepAxis::Temperature => FrictionScene { temperature: value, ..*scene },
            };
            let result = friction_force(&row_scene, policy)
                .expect("per-row scenes are valid by construction");
            FrictionSweepRow {
                value,
                force: result.force,
                drag: result.drag,
                error_estimate: result.error_estimate,
                converged: result.converged,
            }
        })
        .collect())
}
