//! Equilibrium force between a polarizable particle and a dielectric half
//! space, as a Matsubara sum over a transverse-momentum integral.
//!
//! The wall fills z < 0 and the particle sits at height z_A above it. In
//! natural units (c = 1) the normal force component is
//!
//! F_z = (T/π) Σ_{s≥0} (1 - ½ δ_{s0}) ∫ d²k⊥ [R - R̄] e^{-2 w_0 z_A},
//!
//! with the s- and p-polarized reflection weights
//!
//! R  = r_s k_s² [n_y² α_xx + n_x² α_yy],
//! R̄  = r_p { k⊥² α_zz + W² [n_x² α_xx + n_y² α_yy] },
//!
//! r_s = (w_0 - w)/(w_0 + w), r_p = (w_0 ε - w)/(w_0 ε + w),
//! w_0 = √(k_s² + k⊥²), w = √(ε k_s² + k⊥²), all responses taken at iζ_s.
//!
//! The in-plane TM weight W² is selectable ([`TmWeight`]): only W² = w_0²
//! reproduces the standard isotropic single-integral form (over p = w_0/k_s
//! from 1, with the (1 - 2p²) coefficient), which this module also
//! implements as an independent representation for cross-validation. The
//! plane measure is ∫₀^∞ k⊥ dk⊥ ∫₀^{2π} dφ; the φ integral is analytic for
//! diagonal polarizabilities and an 8-point trapezoid (exact for these
//! second-harmonic integrands) otherwise.

use rayon::prelude::*;
use thiserror::Error;

use crate::numerics::{
    integrate_semi_infinite, matsubara_sum_detailed, MatsubaraGrid, MatsubaraTail, NumericsPolicy,
};
use crate::response::{PermittivityModel, PolarizabilityModel, ResponseError, StaticEps};

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Error, PartialEq)]
pub enum CpError {
    #[error("scene parameter {name} must be positive (got {value})")]
    InvalidScene { name: &'static str, value: f64 },
    #[error("operation requires an isotropic particle")]
    NotIsotropic,
    #[error("sweep grid must be strictly increasing and positive")]
    InvalidGrid,
    #[error(transparent)]
    Response(#[from] ResponseError),
}

/// Particle at height z_A > 0 above a half-space wall, all in equilibrium at
/// temperature T.
#[derive(Debug, Clone, Copy)]
pub struct HalfSpaceScene {
    pub z_a: f64,
    pub temperature: f64,
    pub wall: PermittivityModel,
    pub particle: PolarizabilityModel,
}

impl HalfSpaceScene {
    pub fn new(
        z_a: f64,
        temperature: f64,
        wall: PermittivityModel,
        particle: PolarizabilityModel,
    ) -> Result<Self, CpError> {
        if !(z_a > 0.0) {
            return Err(CpError::InvalidScene { name: "z_a", value: z_a });
        }
        if !(temperature > 0.0) {
            return Err(CpError::InvalidScene { name: "temperature", value: temperature });
        }
        wall.validate()?;
        particle.validate()?;
        Ok(Self { z_a, temperature, wall, particle })
    }
}

/// Which squared wavenumber multiplies the in-plane block of the TM weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TmWeight {
    /// W² = w_0² (vacuum-side). Consistent with the isotropic p-integral
    /// representation; the default.
    #[default]
    W0Squared,
    /// W² = w² (medium-side). Kept selectable so the discrepancy against the
    /// isotropic representation can be demonstrated numerically.
    WSquared,
}

/// Handling of the s = 0 term, where ε k_s² needs a prescription.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum S0Rule {
    /// ε k_s² → lim_{ζ→0⁺} ε(iζ) ζ² with the damping regularized away
    /// first: ω_p² for a free-carrier wall, zero otherwise. The default.
    #[default]
    Limit,
    /// Pure electrostatics: ε k_s² → 0; the wall enters only through its
    /// static reflection (ε₀ - 1)/(ε₀ + 1), which is 1 for conductors.
    Quasistatic,
}

/// w_0 = √(k_s² + k⊥²). Evaluated with the same floating expression as
/// [`wavenumber_medium`] so that ε = 1 cancels exactly.
pub fn wavenumber_vacuum(k_s: f64, k_perp: f64) -> f64 {
    (k_s * k_s + k_perp * k_perp).sqrt()
}

/// w = √(ε k_s² + k⊥²).
pub fn wavenumber_medium(k_s: f64, k_perp: f64, eps: f64) -> f64 {
    (eps * k_s * k_s + k_perp * k_perp).sqrt()
}

/// TE reflection (w_0 - w)/(w_0 + w): zero in vacuum, ≤ 0 for ε ≥ 1.
pub fn reflection_s(k_s: f64, k_perp: f64, eps: f64) -> f64 {
    let w0 = wavenumber_vacuum(k_s, k_perp);
    let w = wavenumber_medium(k_s, k_perp, eps);
    (w0 - w) / (w0 + w)
}

/// TM reflection (w_0 ε - w)/(w_0 ε + w): zero in vacuum, ≥ 0 for ε ≥ 1.
pub fn reflection_p(k_s: f64, k_perp: f64, eps: f64) -> f64 {
    let w0 = wavenumber_vacuum(k_s, k_perp);
    let w = wavenumber_medium(k_s, k_perp, eps);
    (w0 * eps - w) / (w0 * eps + w)
}

fn tm_in_plane_sq(k_s: f64, k_perp: f64, eps: f64, weight: TmWeight) -> f64 {
    match weight {
        TmWeight::W0Squared => k_s * k_s + k_perp * k_perp,
        TmWeight::WSquared => eps * k_s * k_s + k_perp * k_perp,
    }
}

/// ∫₀^{2π} dφ [R - R̄] for a diagonal polarizability, in closed form:
/// π r_s k_s² (α_xx + α_yy) - r_p (2π k⊥² α_zz + π W² (α_xx + α_yy)).
pub fn phi_averaged_integrand(
    k_s: f64,
    k_perp: f64,
    eps: f64,
    alpha_diag: [f64; 3],
    weight: TmWeight,
) -> f64 {
    let r_s = reflection_s(k_s, k_perp, eps);
    let r_p = reflection_p(k_s, k_perp, eps);
    let w_sq = tm_in_plane_sq(k_s, k_perp, eps, weight);
    let in_plane = alpha_diag[0] + alpha_diag[1];
    PI * r_s * k_s * k_s * in_plane
        - r_p * (2.0 * PI * k_perp * k_perp * alpha_diag[2] + PI * w_sq * in_plane)
}

/// Same angular integral by an 8-point trapezoid in φ; exact for the
/// second-harmonic n_x², n_y² structure of the integrand. Used for general
/// symmetric tensors (whose off-diagonal entries average out).
fn phi_trapezoid_integrand(
    k_s: f64,
    k_perp: f64,
    eps: f64,
    alpha_diag: [f64; 3],
    weight: TmWeight,
) -> f64 {
    const NODES: usize = 8;
    let r_s = reflection_s(k_s, k_perp, eps);
    let r_p = reflection_p(k_s, k_perp, eps);
    let w_sq = tm_in_plane_sq(k_s, k_perp, eps, weight);
    let mut acc = 0.0;
    for j in 0..NODES {
        let phi = 2.0 * PI * j as f64 / NODES as f64;
        let (n_y, n_x) = phi.sin_cos();
        let reflected_s =
            r_s * k_s * k_s * (n_y * n_y * alpha_diag[0] + n_x * n_x * alpha_diag[1]);
        let reflected_p = r_p
            * (k_perp * k_perp * alpha_diag[2]
                + w_sq * (n_x * n_x * alpha_diag[0] + n_y * n_y * alpha_diag[1]));
        acc += reflected_s - reflected_p;
    }
    acc * 2.0 * PI / NODES as f64
}

/// Result of a force evaluation with its Matsubara decomposition.
#[derive(Debug, Clone)]
pub struct CpForceResult {
    /// Normal force; negative values pull the particle toward the wall.
    pub force_z: f64,
    /// (s, contribution) pairs; their sum is exactly `force_z`.
    pub per_term: Vec<(usize, f64)>,
    pub terms_used: usize,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct InnerDiagnostics {
    error: f64,
    evaluations: usize,
    converged: bool,
}

fn s0_te_limit(wall: &PermittivityModel, rule: S0Rule) -> f64 {
    match (rule, wall) {
        (S0Rule::Limit, PermittivityModel::Drude { plasma_frequency, .. }) => {
            plasma_frequency * plasma_frequency
        }
        _ => 0.0,
    }
}

fn s0_reflection_p(wall: &PermittivityModel) -> f64 {
    match wall.static_limit() {
        StaticEps::Divergent => 1.0,
        StaticEps::Finite(eps) => (eps - 1.0) / (eps + 1.0),
    }
}

/// Transverse-momentum integral of the s = 0 term. The TE part carries an
/// explicit k_s² factor and drops; the TM part survives with the static
/// reflection and, for `TmWeight::WSquared`, the ε k_s² limit inside W².
fn s0_inner(
    scene: &HalfSpaceScene,
    weight: TmWeight,
    rule: S0Rule,
    policy: &NumericsPolicy,
    diag: &mut InnerDiagnostics,
) -> f64 {
    let alpha = scene.particle.diagonal_imag_axis(0.0);
    let te_limit = s0_te_limit(&scene.wall, rule);
    let r_p = s0_reflection_p(&scene.wall);
    let z = scene.z_a;
    let result = integrate_semi_infinite(
        |k| {
            let w_sq = match weight {
                TmWeight::W0Squared => k * k,
                TmWeight::WSquared => te_limit + k * k,
            };
            let phi = -r_p * (2.0 * PI * k * k * alpha[2] + PI * w_sq * (alpha[0] + alpha[1]));
            phi * (-2.0 * k * z).exp() * k
        },
        0.0,
        0.5 / z,
        policy,
    );
    diag.error += result.error_estimate;
    diag.evaluations += result.evaluations;
    diag.converged &= result.converged;
    result.value
}

fn finite_inner(
    scene: &HalfSpaceScene,
    zeta: f64,
    weight: TmWeight,
    analytic_phi: bool,
    policy: &NumericsPolicy,
    diag: &mut InnerDiagnostics,
) -> f64 {
    let k_s = zeta; // c = 1
    let eps = match scene.wall.eps_imag_axis(zeta) {
        Ok(eps) => eps,
        Err(_) => {
            diag.converged = false;
            return f64::NAN;
        }
    };
    let alpha = scene.particle.diagonal_imag_axis(zeta);
    let z = scene.z_a;
    let result = integrate_semi_infinite(
        |k_perp| {
            let phi = if analytic_phi {
                phi_averaged_integrand(k_s, k_perp, eps, alpha, weight)
            } else {
                phi_trapezoid_integrand(k_s, k_perp, eps, alpha, weight)
            };
            let w0 = wavenumber_vacuum(k_s, k_perp);
            phi * (-2.0 * w0 * z).exp() * k_perp
        },
        0.0,
        0.5 / z,
        policy,
    );
    diag.error += result.error_estimate;
    diag.evaluations += result.evaluations;
    diag.converged &= result.converged;
    result.value
}

/// Normal force on the particle with the default s = 0 prescription.
pub fn cp_force(scene: &HalfSpaceScene, weight: TmWeight, policy: &NumericsPolicy) -> CpForceResult {
    cp_force_with(scene, weight, S0Rule::default(), policy)
}

pub fn cp_force_with(
    scene: &HalfSpaceScene,
    weight: TmWeight,
    rule: S0Rule,
    policy: &NumericsPolicy,
) -> CpForceResult {
    let grid = MatsubaraGrid::new(scene.temperature).expect("scene temperature is positive");
    let analytic_phi = scene.particle.is_diagonal();
    let mut diag = InnerDiagnostics { error: 0.0, evaluations: 0, converged: true };
    let mut s_index = 0usize;
    let sum = matsubara_sum_detailed(
        |zeta| {
            // The engine calls ascending s only (truncate-only tail), so the
            // running index tracks the grid position.
            let weight_factor =
                if s_index == 0 { scene.temperature } else { 2.0 * scene.temperature };
            let mut local = InnerDiagnostics { error: 0.0, evaluations: 0, converged: true };
            let inner = if zeta == 0.0 {
                s0_inner(scene, weight, rule, policy, &mut local)
            } else {
                finite_inner(scene, zeta, weight, analytic_phi, policy, &mut local)
            };
            diag.error += weight_factor * local.error / (2.0 * PI);
            diag.evaluations += local.evaluations;
            diag.converged &= local.converged;
            s_index += 1;
            inner / (2.0 * PI)
        },
        &grid,
        policy,
        MatsubaraTail::TruncateOnly,
    );

    CpForceResult {
        force_z: sum.total,
        per_term: sum.per_term.iter().copied().enumerate().collect(),
        terms_used: sum.per_term.len(),
        error_estimate: sum.error_estimate + diag.error,
        evaluations: diag.evaluations,
        converged: sum.converged && diag.converged,
    }
}

/// Independent representation for isotropic particles:
///
/// F_z = T Σ_{s≥0} (2 - δ_{s0}) k_s⁴ α(iζ_s) ∫_1^∞ p dp e^{-2 k_s p z_A}
///       [r + (1 - 2p²) r̄],
///
/// r = (p - q)/(p + q), r̄ = (εp - q)/(εp + q), q = √(ε - 1 + p²). The
/// lower limit is p = 1 (p = w_0/k_s with k⊥² = k_s²(p² - 1) ≥ 0). The
/// s = 0 term is degenerate in this representation and is evaluated through
/// the transverse-momentum form.
pub fn cp_force_isotropic(
    scene: &HalfSpaceScene,
    policy: &NumericsPolicy,
) -> Result<CpForceResult, CpError> {
    cp_force_isotropic_with(scene, S0Rule::default(), policy)
}

pub fn cp_force_isotropic_with(
    scene: &HalfSpaceScene,
    rule: S0Rule,
    policy: &NumericsPolicy,
) -> Result<CpForceResult, CpError> {
    let oscillator = scene.particle.as_isotropic().ok_or(CpError::NotIsotropic)?;
    let grid = MatsubaraGrid::new(scene.temperature).expect("scene temperature is positive");
    let z = scene.z_a;
    let mut diag = InnerDiagnostics { error: 0.0, evaluations: 0, converged: true };
    let mut s_index = 0usize;
    let sum = matsubara_sum_detailed(
        |zeta| {
            let weight_factor =
                if s_index == 0 { scene.temperature } else { 2.0 * scene.temperature };
            let mut local = InnerDiagnostics { error: 0.0, evaluations: 0, converged: true };
            let value = if zeta == 0.0 {
                s0_inner(scene, TmWeight::W0Squared, rule, policy, &mut local) / (2.0 * PI)
            } else {
                let k_s = zeta;
                let alpha = oscillator.imag_axis(zeta);
                let eps = match scene.wall.eps_imag_axis(zeta) {
                    Ok(eps) => eps,
                    Err(_) => {
                        local.converged = false;
                        f64::NAN
                    }
                };
                let integral = integrate_semi_infinite(
                    |p| {
                        let q = (eps - 1.0 + p * p).sqrt();
                        let r = (p - q) / (p + q);
                        let r_bar = (eps * p - q) / (eps * p + q);
                        p * (-2.0 * k_s * p * z).exp() * (r + (1.0 - 2.0 * p * p) * r_bar)
                    },
                    1.0,
                    0.5 / (k_s * z),
                    policy,
                );
                local.error += k_s.powi(4) * alpha.abs() * integral.error_estimate;
                local.evaluations += integral.evaluations;
                local.converged &= integral.converged;
                k_s.powi(4) * alpha * integral.value
            };
            diag.error += weight_factor * local.error;
            diag.evaluations += local.evaluations;
            diag.converged &= local.converged;
            s_index += 1;
            value
        },
        &grid,
        policy,
        MatsubaraTail::TruncateOnly,
    );

    Ok(CpForceResult {
        force_z: sum.total,
        per_term: sum.per_term.iter().copied().enumerate().collect(),
        terms_used: sum.per_term.len(),
        error_estimate: sum.error_estimate + diag.error,
        evaluations: diag.evaluations,
        converged: sum.converged && diag.converged,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct CpSweepRow {
    pub z_a: f64,
    pub force_z: f64,
    pub error_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
}

/// Force on a grid of heights. Rows are computed independently (possibly in
/// parallel) and are identical to individual [`cp_force_with`] calls.
pub fn cp_sweep(
    scene: &HalfSpaceScene,
    z_grid: &[f64],
    weight: TmWeight,
    rule: S0Rule,
    policy: &NumericsPolicy,
) -> Result<Vec<CpSweepRow>, CpError> {
    if z_grid.iter().any(|z| !(*z > 0.0)) || z_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CpError::InvalidGrid);
    }
    Ok(z_grid
        .par_iter()
        .map(|&z_a| {
            let row_scene = HalfSpaceScene { z_a, ..*scene };
            let result = cp_force_with(&row_scene, weight, rule, policy);
            CpSweepRow {
                z_a,
                force_z: result.force_z,
                error_estimate: result.error_estimate,
                terms_used: result.terms_used,
                converged: result.converged,
            }
        })
        .collect())
}
