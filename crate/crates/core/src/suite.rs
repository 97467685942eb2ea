//! Release acceptance checks, shared by the `acceptance` test target and
//! the CLI `validate` command.
//!
//! Every check pins its tolerance in code and reports one machine-readable
//! line: `PASS <id> <detail>` or `FAIL <id> <detail>`. Randomized checks use
//! fixed seeds so the suite is deterministic.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;

use crate::casimir_polder::{
    cp_force, cp_force_isotropic, cp_sweep, HalfSpaceScene, S0Rule, TmWeight,
};
use crate::friction::{friction_force, friction_oracle, f_vector, FrictionScene};
use crate::keldysh::{contour_component, triple_from_components, ContourIndex, KeldyshTriple};
use crate::numerics::{
    integrate_semi_infinite, integrate_semi_infinite_with_breakpoints, matsubara_sum,
    MatsubaraGrid, NumericsPolicy,
};
use crate::response::PolarizabilityModel;
use crate::tensor::{Tensor3C, X, Z};
use crate::wick::{matsubara_side, real_axis_side, verify_wick, LorentzTerm, RationalResponse, WickVerdict};
use crate::PermittivityModel;

const PI: f64 = std::f64::consts::PI;

/// Outcome of one acceptance check.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "{} {} {} | {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Wick,
    Cp,
    Friction,
    Keldysh,
    Numerics,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "wick" => Ok(Suite::Wick),
            "cp" => Ok(Suite::Cp),
            "friction" => Ok(Suite::Friction),
            "keldysh" => Ok(Suite::Keldysh),
            "numerics" => Ok(Suite::Numerics),
            other => Err(format!(
                "unknown suite '{other}' (expected all|wick|cp|friction|keldysh|numerics)"
            )),
        }
    }
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::All => vec![
            representation_equivalence(),
            s0_analytic_oracle(),
            vacuum_null(),
            zero_velocity_null(),
            variant_discrimination(),
            friction_isotropic_coefficient(),
            friction_momentum_oracle(),
            narrow_line_asymptotic(),
            wick_identity(),
            keldysh_algebra(),
            numerics_self_consistency(),
            attraction_sign(),
            drag_positivity(),
        ],
        Suite::Cp => vec![
            representation_equivalence(),
            s0_analytic_oracle(),
            vacuum_null(),
            variant_discrimination(),
            attraction_sign(),
        ],
        Suite::Friction => vec![
            zero_velocity_null(),
            friction_isotropic_coefficient(),
            friction_momentum_oracle(),
            narrow_line_asymptotic(),
            drag_positivity(),
        ],
        Suite::Wick => vec![wick_identity()],
        Suite::Keldysh => vec![keldysh_algebra()],
        Suite::Numerics => vec![numerics_self_consistency()],
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let denom = a.abs().max(b.abs());
    if denom == 0.0 {
        0.0
    } else {
        (a - b).abs() / denom
    }
}

fn log_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            let fraction = if points > 1 { i as f64 / (points - 1) as f64 } else { 0.0 };
            min * (max / min).powf(fraction)
        })
        .collect()
}

fn criterion_walls() -> [PermittivityModel; 2] {
    [
        PermittivityModel::Constant { eps: 3.0 },
        PermittivityModel::Drude { plasma_frequency: 5.0, damping: 0.1 },
    ]
}

fn criterion_particles() -> [PolarizabilityModel; 2] {
    [
        PolarizabilityModel::isotropic_static(1.0),
        PolarizabilityModel::isotropic(1.0, 1.0, 0.1),
    ]
}

/// Criterion 1: the transverse-momentum and radial representations of the
/// equilibrium force agree to 1e-6 for isotropic particles.
pub fn representation_equivalence() -> Check {
    let policy = NumericsPolicy::default();
    let tol = 1e-6;
    let grid = log_grid(0.1, 10.0, 10);
    let mut max_rel: f64 = 0.0;
    let mut all_converged = true;
    for wall in criterion_walls() {
        for particle in criterion_particles() {
            for &z_a in &grid {
                let scene = HalfSpaceScene::new(z_a, 1.0, wall, particle).unwrap();
                let plane = cp_force(&scene, TmWeight::W0Squared, &policy);
                let radial = cp_force_isotropic(&scene, &policy).unwrap();
                all_converged &= plane.converged && radial.converged;
                max_rel = max_rel.max(rel_diff(plane.force_z, radial.force_z));
            }
        }
    }
    Check {
        id: "c01",
        name: "representation_equivalence",
        passed: all_converged && max_rel <= tol,
        detail: format!("max_rel={max_rel:.3e} tol={tol:.0e} converged={all_converged}"),
    }
}

/// Criterion 2: the s = 0 term for a constant wall and static particle
/// matches -(3 T α0 / 4 z^4)(ε-1)/(ε+1) to 1e-8, and dominates the full
/// force within 1% once 2πTz ≥ 10.
pub fn s0_analytic_oracle() -> Check {
    let policy = NumericsPolicy::default();
    let (eps, alpha0, temperature) = (3.0, 1.0, 1.0);
    let wall = PermittivityModel::Constant { eps };
    let particle = PolarizabilityModel::isotropic_static(alpha0);
    let mut worst_term_rel: f64 = 0.0;
    let mut worst_dominance: f64 = 0.0;
    let mut ok = true;
    for factor in [10.0, 25.0, 62.832] {
        let z_a = factor / (2.0 * PI * temperature);
        let scene = HalfSpaceScene::new(z_a, temperature, wall, particle).unwrap();
        let result = cp_force(&scene, TmWeight::W0Squared, &policy);
        ok &= result.converged;
        let closed =
            -(3.0 * temperature * alpha0 / (4.0 * z_a.powi(4))) * (eps - 1.0) / (eps + 1.0);
        worst_term_rel = worst_term_rel.max(rel_diff(result.per_term[0].1, closed));
        worst_dominance = worst_dominance.max(rel_diff(result.force_z, closed));
    }
    ok &= worst_term_rel <= 1e-8 && worst_dominance <= 0.01;
    Check {
        id: "c02",
        name: "s0_analytic_oracle",
        passed: ok,
        detail: format!(
            "s0_rel={worst_term_rel:.3e} tol=1e-08 dominance_rel={worst_dominance:.3e} tol=1e-02"
        ),
    }
}

/// Criterion 3 (wall part): a vacuum wall gives exactly zero force.
pub fn vacuum_null() -> Check {
    let policy = NumericsPolicy::default();
    let scene = HalfSpaceScene::new(
        0.5,
        1.0,
        PermittivityModel::Vacuum,
        PolarizabilityModel::isotropic(1.0, 1.0, 0.1),
    )
    .unwrap();
    let result = cp_force(&scene, TmWeight::W0Squared, &policy);
    let passed = result.force_z == 0.0 && result.converged;
    Check {
        id: "c03a",
        name: "vacuum_null",
        passed,
        detail: format!("force_z={:?} (must be exactly 0)", result.force_z),
    }
}

/// Criterion 3 (velocity part): v = 0 gives exactly zero force.
pub fn zero_velocity_null() -> Check {
    let policy = NumericsPolicy::default();
    let scene =
        FrictionScene::new(0.0, 1.0, PolarizabilityModel::isotropic(1.0, 1.0, 0.1)).unwrap();
    let result = friction_force(&scene, &policy).unwrap();
    let passed = result.force == [0.0; 3] && result.drag == 0.0 && result.converged;
    Check {
        id: "c03b",
        name: "zero_velocity_null",
        passed,
        detail: format!("force={:?} (must be exactly 0)", result.force),
    }
}

/// Criterion 4: the W² = w² weighting visibly disagrees with the radial
/// representation, by more than 10x the numerics tolerance somewhere on the
/// criterion-1 grid.
pub fn variant_discrimination() -> Check {
    let policy = NumericsPolicy::default();
    let threshold = 10.0 * policy.rel_tol;
    let grid = log_grid(0.1, 10.0, 10);
    let wall = PermittivityModel::Constant { eps: 3.0 };
    let particle = PolarizabilityModel::isotropic(1.0, 1.0, 0.1);
    let mut max_rel: f64 = 0.0;
    for &z_a in &grid {
        let scene = HalfSpaceScene::new(z_a, 1.0, wall, particle).unwrap();
        let printed = cp_force(&scene, TmWeight::WSquared, &policy);
        let radial = cp_force_isotropic(&scene, &policy).unwrap();
        max_rel = max_rel.max(rel_diff(printed.force_z, radial.force_z));
    }
    Check {
        id: "c04",
        name: "variant_discrimination",
        passed: max_rel > threshold,
        detail: format!("max_rel={max_rel:.3e} must exceed {threshold:.0e}"),
    }
}

/// Criterion 5: the isotropic angular coefficient is exactly 2/3, and the
/// component formula agrees with the single-quadrature isotropic display to
/// 1e-12.
pub fn friction_isotropic_coefficient() -> Check {
    let policy = NumericsPolicy::default();
    let unit_im = Tensor3C::identity() * Complex64::new(0.0, 1.0);
    let f = f_vector(&unit_im);
    let exact = f[0] == 0.0 && f[1] == 0.0 && f[2] == 2.0 / 3.0;

    let particle = PolarizabilityModel::isotropic(1.2, 0.9, 0.2);
    let scene = FrictionScene::new(1e-3, 0.7, particle).unwrap();
    let result = friction_force(&scene, &policy).unwrap();
    let display = integrate_semi_infinite_with_breakpoints(
        |omega| {
            let x = omega / (2.0 * scene.temperature);
            if x > 350.0 {
                return 0.0;
            }
            let s = x.sinh();
            let alpha = particle.alpha_real_axis(omega).unwrap();
            omega.powi(5) / (s * s) * alpha.entry(0, 0).im
        },
        0.0,
        3.5,
        &[0.9, 2.5],
        &policy,
    );
    let expected = scene.speed / (3.0 * PI * scene.temperature) * display.value;
    let rel = rel_diff(result.force[2], expected);
    let passed = exact && result.converged && rel <= 1e-12;
    Check {
        id: "c05",
        name: "friction_isotropic_coefficient",
        passed,
        detail: format!("f=(0,0,2/3) exact={exact} display_rel={rel:.3e} tol=1e-12"),
    }
}

fn oracle_particles() -> Vec<PolarizabilityModel> {
    use crate::response::Oscillator;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0f0e);
    let lorentz = |rng: &mut ChaCha8Rng| Oscillator::Lorentz {
        alpha0: rng.gen_range(0.5..2.0),
        resonance: rng.gen_range(0.5..2.0),
        damping: rng.gen_range(0.1..0.5),
    };
    let mut particles = Vec::new();
    for _ in 0..2 {
        let osc = lorentz(&mut rng);
        particles.push(PolarizabilityModel::diagonal([osc; 3]));
    }
    for _ in 0..2 {
        particles.push(PolarizabilityModel::diagonal([
            lorentz(&mut rng),
            lorentz(&mut rng),
            lorentz(&mut rng),
        ]));
    }
    // One particle with a transverse xz entry to exercise the off-diagonal
    // coefficient.
    let skewed = PolarizabilityModel::diagonal([lorentz(&mut rng); 3]).with_entry(
        X,
        Z,
        Oscillator::Lorentz { alpha0: 0.4, resonance: 1.3, damping: 0.25 },
    );
    particles.push(skewed);
    particles
}

/// Criterion 6: the momentum-space oracle matches the closed-form force
/// componentwise to 1e-6 on the randomized particle suite.
pub fn friction_momentum_oracle() -> Check {
    let policy = NumericsPolicy::default();
    let tol = 1e-6;
    let mut max_rel: f64 = 0.0;
    let mut all_converged = true;
    let speed = 1e-4;
    for particle in oracle_particles() {
        for temperature in [0.4, 1.0, 2.5] {
            let scene = FrictionScene::new(speed, temperature, particle).unwrap();
            let closed = friction_force(&scene, &policy).unwrap();
            let oracle = friction_oracle(&scene, &policy).unwrap();
            all_converged &= closed.converged && oracle.converged;
            for i in 0..3 {
                let scale = closed.force[i].abs().max(oracle.force[i].abs());
                if scale == 0.0 {
                    continue;
                }
                max_rel = max_rel.max((closed.force[i] - oracle.force[i]).abs() / scale);
            }
        }
    }
    Check {
        id: "c06",
        name: "friction_momentum_oracle",
        passed: all_converged && max_rel <= tol,
        detail: format!("max_rel={max_rel:.3e} tol={tol:.0e} converged={all_converged}"),
    }
}

/// Criterion 7: a narrow line (γ = 1e-3 ω0) reproduces the sharp-resonance
/// closed form within 2%.
pub fn narrow_line_asymptotic() -> Check {
    let policy = NumericsPolicy::default();
    let (alpha0, omega0, gamma) = (1.0, 1.0, 1e-3);
    let (temperature, speed) = (0.5, 1e-3);
    let scene =
        FrictionScene::new(speed, temperature, PolarizabilityModel::isotropic(alpha0, omega0, gamma))
            .unwrap();
    let result = friction_force(&scene, &policy).unwrap();
    let s = (omega0 / (2.0 * temperature)).sinh();
    let expected = speed * alpha0 * omega0.powi(6) / (6.0 * temperature * s * s);
    let rel = rel_diff(result.force[2], expected);
    Check {
        id: "c07",
        name: "narrow_line_asymptotic",
        passed: result.converged && rel <= 0.02,
        detail: format!("rel={rel:.3e} tol=2e-02"),
    }
}

/// Criterion 8: real-axis and Matsubara sides agree to 1e-6 on the random
/// response suite, and the acausal negative control fails.
pub fn wick_identity() -> Check {
    let policy = NumericsPolicy::default();
    let tol = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(0x71c4);
    let mut max_rel: f64 = 0.0;
    let mut all_pass = true;
    for _ in 0..20 {
        let terms: Vec<LorentzTerm> = (0..3)
            .map(|_| {
                let resonance = 0.3 * 10f64.powf(rng.gen_range(0.0..1.0));
                LorentzTerm {
                    weight: rng.gen_range(0.2..2.0),
                    resonance,
                    damping: resonance * rng.gen_range(0.05..1.0),
                }
            })
            .collect();
        let response = RationalResponse::new(terms).unwrap();
        let temperature = 0.01 * 10f64.powf(rng.gen_range(0.0..3.0));
        let report = verify_wick(&response, temperature, tol, &policy).unwrap();
        all_pass &= report.verdict == WickVerdict::Pass;
        max_rel = max_rel.max(report.rel_diff);
    }

    // Negative control: an upper-half-plane pole; confirm the gap with a
    // direct term-by-term sum of the Matsubara side.
    let broken = RationalResponse::new(vec![LorentzTerm {
        weight: 1.0,
        resonance: 1.0,
        damping: -0.5,
    }])
    .unwrap();
    let report = verify_wick(&broken, 0.3, tol, &policy).unwrap();
    let grid = MatsubaraGrid::new(0.3).unwrap();
    let mut direct = 0.0;
    for s in 0..200_000usize {
        let weight = if s == 0 { 0.3 } else { 0.6 };
        direct += weight * broken.eval_imag_axis(grid.zeta(s));
    }
    let control_gap = rel_diff(report.real_axis.value, direct);
    let control_failed = report.verdict == WickVerdict::Fail && control_gap > 1e-3;

    Check {
        id: "c08",
        name: "wick_identity",
        passed: all_pass && max_rel <= tol && control_failed,
        detail: format!(
            "max_rel={max_rel:.3e} tol={tol:.0e} negative_control_gap={control_gap:.3e}"
        ),
    }
}

/// Criterion 9: contour algebra round trip and linear identity are exact on
/// dyadic draws, and the equilibrium Keldysh tensor obeys the
/// fluctuation-dissipation relation at machine precision.
pub fn keldysh_algebra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa19e_b7a);
    let dyadic = |rng: &mut ChaCha8Rng| {
        let n: i32 = rng.gen_range(-(1 << 20)..(1 << 20));
        n as f64 / (1 << 20) as f64
    };
    let mut round_trip_exact = true;
    let mut identity_exact = true;
    for _ in 0..1000 {
        let triple = KeldyshTriple {
            retarded: Complex64::new(dyadic(&mut rng), dyadic(&mut rng)),
            advanced: Complex64::new(dyadic(&mut rng), dyadic(&mut rng)),
            keldysh: Complex64::new(dyadic(&mut rng), dyadic(&mut rng)),
        };
        let g11 = contour_component(&triple, ContourIndex::Forward, ContourIndex::Forward);
        let g12 = contour_component(&triple, ContourIndex::Forward, ContourIndex::Backward);
        let g21 = contour_component(&triple, ContourIndex::Backward, ContourIndex::Forward);
        let g22 = contour_component(&triple, ContourIndex::Backward, ContourIndex::Backward);
        identity_exact &= g11 + g22 == g12 + g21;
        match triple_from_components(g11, g12, g21, g22, 0.0) {
            Ok(back) => {
                round_trip_exact &= back.retarded == triple.retarded
                    && back.advanced == triple.advanced
                    && back.keldysh == triple.keldysh;
            }
            Err(_) => round_trip_exact = false,
        }
    }

    let model = PolarizabilityModel::isotropic(1.1, 0.8, 0.3);
    let mut fdt_max: f64 = 0.0;
    for _ in 0..200 {
        let omega: f64 = rng.gen_range(0.05..5.0);
        let temperature: f64 = rng.gen_range(0.05..5.0);
        let retarded = model.alpha_real_axis(omega).unwrap();
        let keldysh = model.alpha_keldysh(omega, temperature).unwrap();
        let coth = 1.0 / (omega / (2.0 * temperature)).tanh();
        let expected = retarded.im() * Complex64::new(0.0, 2.0 * coth);
        let scale = expected.max_abs().max(1.0);
        fdt_max = fdt_max.max((keldysh - expected).max_abs() / scale);
    }
    let fdt_ok = fdt_max <= 4.0 * f64::EPSILON;

    Check {
        id: "c09",
        name: "keldysh_algebra",
        passed: round_trip_exact && identity_exact && fdt_ok,
        detail: format!(
            "round_trip_exact={round_trip_exact} identity_exact={identity_exact} fdt_max={fdt_max:.3e}"
        ),
    }
}

/// Criterion 10: halving the relative tolerance moves every probed value by
/// less than its reported error estimate, and results are bit-identical
/// across reruns and thread counts.
pub fn numerics_self_consistency() -> Check {
    let policy = NumericsPolicy::default();
    let tight = policy.clone().with_rel_tol(policy.rel_tol / 2.0);
    let mut details = Vec::new();
    let mut ok = true;

    let mut probe = |name: &str, base: (f64, f64, bool), refined: (f64, f64, bool)| {
        let (value, error, converged) = base;
        let (refined_value, _, refined_converged) = refined;
        let delta = (value - refined_value).abs();
        let within = if error == 0.0 { delta == 0.0 } else { delta <= error };
        ok &= converged && refined_converged && within;
        if !within {
            details.push(format!("{name}: delta={delta:.3e} err={error:.3e}"));
        }
    };

    let wall = PermittivityModel::Constant { eps: 3.0 };
    let particle = PolarizabilityModel::isotropic(1.0, 1.0, 0.1);
    let scene = HalfSpaceScene::new(1.0, 1.0, wall, particle).unwrap();
    let base = cp_force(&scene, TmWeight::W0Squared, &policy);
    let refined = cp_force(&scene, TmWeight::W0Squared, &tight);
    probe(
        "cp_force",
        (base.force_z, base.error_estimate, base.converged),
        (refined.force_z, refined.error_estimate, refined.converged),
    );

    let base_iso = cp_force_isotropic(&scene, &policy).unwrap();
    let refined_iso = cp_force_isotropic(&scene, &tight).unwrap();
    probe(
        "cp_force_isotropic",
        (base_iso.force_z, base_iso.error_estimate, base_iso.converged),
        (refined_iso.force_z, refined_iso.error_estimate, refined_iso.converged),
    );

    let friction_scene = FrictionScene::new(1e-3, 0.7, particle).unwrap();
    let base_friction = friction_force(&friction_scene, &policy).unwrap();
    let refined_friction = friction_force(&friction_scene, &tight).unwrap();
    probe(
        "friction_force",
        (base_friction.force[2], base_friction.error_estimate, base_friction.converged),
        (refined_friction.force[2], refined_friction.error_estimate, refined_friction.converged),
    );

    let response = RationalResponse::new(vec![LorentzTerm {
        weight: 1.0,
        resonance: 1.0,
        damping: 0.5,
    }])
    .unwrap();
    for (name, side) in [("wick_real_axis", real_axis_side as fn(_, _, _) -> _), ("wick_matsubara", matsubara_side)] {
        let base = side(&response, 0.3, &policy).unwrap();
        let refined = side(&response, 0.3, &tight).unwrap();
        probe(
            name,
            (base.value, base.error_estimate, base.converged),
            (refined.value, refined.error_estimate, refined.converged),
        );
    }

    let grid = MatsubaraGrid::new(0.05).unwrap();
    let base_sum = matsubara_sum(|z| 1.0 / (1.0 + z * z), &grid, &policy);
    let refined_sum = matsubara_sum(|z| 1.0 / (1.0 + z * z), &grid, &tight);
    probe(
        "matsubara_lorentzian",
        (base_sum.value, base_sum.error_estimate, base_sum.converged),
        (refined_sum.value, refined_sum.error_estimate, refined_sum.converged),
    );

    let base_int = integrate_semi_infinite(
        |x| {
            let s = (0.5 * x).sinh();
            x.powi(5) / (s * s)
        },
        0.0,
        4.0,
        &policy,
    );
    let refined_int = integrate_semi_infinite(
        |x| {
            let s = (0.5 * x).sinh();
            x.powi(5) / (s * s)
        },
        0.0,
        4.0,
        &tight,
    );
    probe(
        "thermal_quadrature",
        (base_int.value, base_int.error_estimate, base_int.converged),
        (refined_int.value, refined_int.error_estimate, refined_int.converged),
    );

    // Bit-identical rerun.
    let again = cp_force(&scene, TmWeight::W0Squared, &policy);
    let rerun_identical = again.force_z.to_bits() == base.force_z.to_bits();
    ok &= rerun_identical;

    // Thread-count independence of sweeps.
    let z_grid = [0.3, 0.7, 1.5, 3.0];
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| cp_sweep(&scene, &z_grid, TmWeight::W0Squared, S0Rule::Limit, &policy).unwrap());
    let multi = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| cp_sweep(&scene, &z_grid, TmWeight::W0Squared, S0Rule::Limit, &policy).unwrap());
    let threads_identical = single
        .iter()
        .zip(&multi)
        .all(|(a, b)| a.force_z.to_bits() == b.force_z.to_bits());
    ok &= threads_identical;

    Check {
        id: "c10",
        name: "numerics_self_consistency",
        passed: ok,
        detail: if details.is_empty() {
            format!("rerun_identical={rerun_identical} threads_identical={threads_identical}")
        } else {
            details.join("; ")
        },
    }
}

/// Criterion 11 (wall part): attraction for every ε > 1 scene on the
/// criterion-1 grid, with |F_z| strictly decreasing in distance.
pub fn attraction_sign() -> Check {
    let policy = NumericsPolicy::default();
    let grid = log_grid(0.1, 10.0, 10);
    let mut attraction = true;
    let mut monotone = true;
    for wall in criterion_walls() {
        for particle in criterion_particles() {
            let mut previous = f64::INFINITY;
            for &z_a in &grid {
                let scene = HalfSpaceScene::new(z_a, 1.0, wall, particle).unwrap();
                let result = cp_force(&scene, TmWeight::W0Squared, &policy);
                attraction &= result.force_z < 0.0;
                monotone &= result.force_z.abs() < previous;
                previous = result.force_z.abs();
            }
        }
    }
    Check {
        id: "c11a",
        name: "attraction_sign",
        passed: attraction && monotone,
        detail: format!("attraction={attraction} monotone_decay={monotone}"),
    }
}

/// Criterion 11 (drag part): non-negative drag for every passive particle of
/// the criterion-6 suite.
pub fn drag_positivity() -> Check {
    let policy = NumericsPolicy::default();
    let mut ok = true;
    let mut min_fz = f64::INFINITY;
    for particle in oracle_particles() {
        for temperature in [0.4, 1.0, 2.5] {
            let scene = FrictionScene::new(1e-4, temperature, particle).unwrap();
            let result = friction_force(&scene, &policy).unwrap();
            ok &= result.drag >= 0.0 && result.force[2] >= 0.0 && result.converged;
            min_fz = min_fz.min(result.force[2]);
        }
    }
    Check {
        id: "c11b",
        name: "drag_positivity",
        passed: ok,
        detail: format!("min_force_along_v={min_fz:.3e} (must be >= 0)"),
    }
}
