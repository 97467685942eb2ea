//! Deterministic adaptive quadrature and Matsubara summation.
//!
//! Semi-infinite integrals are mapped onto the unit interval by the rational
//! substitution x = a + L u / (1 - u), where L is the integrand's decay
//! scale supplied by the caller, and then refined by adaptive bisection with
//! a 21-point Gauss-Kronrod pair. The node sequence is a pure function of
//! the inputs, so reruns are bit-identical.
//!
//! Matsubara sums T Σ_{s≥0} (2 - δ_{s0}) g(ζ_s) over ζ_s = 2πTs ascend in s
//! and stop once the weighted term stays below the tolerance for
//! `tail_consecutive` successive terms. For slowly decaying terms the
//! remainder beyond the stop index is estimated by an Euler-Maclaurin
//! integral correction, (1/π) ∫_{ζ_N}^∞ g dζ - T g(ζ_N).

use std::collections::BinaryHeap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("temperature must be positive (got {0})")]
    NonPositiveTemperature(f64),
    #[error("invalid numerics policy: {0}")]
    InvalidPolicy(&'static str),
}

/// Tolerances and truncation limits shared by every integral and sum.
#[derive(Debug, Clone)]
pub struct NumericsPolicy {
    /// Relative tolerance on converged results.
    pub rel_tol: f64,
    /// Absolute floor below which values count as converged.
    pub abs_tol: f64,
    /// Maximum number of interval bisections per integral.
    pub max_subdivisions: usize,
    /// Maximum number of Matsubara terms before flagging non-convergence.
    pub matsubara_max_terms: usize,
    /// Number of successive small terms required to stop a Matsubara sum.
    pub tail_consecutive: usize,
}

impl Default for NumericsPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-30,
            max_subdivisions: 200,
            matsubara_max_terms: 100_000,
            tail_consecutive: 3,
        }
    }
}

impl NumericsPolicy {
    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(NumericsError::InvalidPolicy("rel_tol must lie in (0, 1)"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(NumericsError::InvalidPolicy("abs_tol must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(NumericsError::InvalidPolicy("max_subdivisions must be positive"));
        }
        if self.matsubara_max_terms == 0 {
            return Err(NumericsError::InvalidPolicy("matsubara_max_terms must be positive"));
        }
        if self.tail_consecutive == 0 {
            return Err(NumericsError::InvalidPolicy("tail_consecutive must be positive"));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Convergence threshold for a result of the given magnitude.
    pub fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value of an integral or sum together with its convergence diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// The imaginary-frequency grid ζ_s = 2πTs, s = 0, 1, 2, ...
#[derive(Debug, Clone, Copy)]
pub struct MatsubaraGrid {
    temperature: f64,
}

impl MatsubaraGrid {
    pub fn new(temperature: f64) -> Result<Self, NumericsError> {
        if !(temperature > 0.0) {
            return Err(NumericsError::NonPositiveTemperature(temperature));
        }
        Ok(Self { temperature })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Grid spacing 2πT.
    pub fn spacing(&self) -> f64 {
        2.0 * PI * self.temperature
    }

    pub fn zeta(&self, s: usize) -> f64 {
        self.spacing() * s as f64
    }
}

// 21-point Kronrod nodes with the embedded 10-point Gauss rule.
const XGK21: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG21: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK21: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

struct RuleOutcome {
    value: f64,
    error: f64,
}

fn qk21(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> RuleOutcome {
    let n = XGK21.len();
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let f_center = f(center);
    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK21[n - 1];
    let mut res_abs = res_kronrod.abs();

    let mut fv1 = [0.0_f64; 10];
    let mut fv2 = [0.0_f64; 10];

    for (j, wg) in WG21.iter().enumerate() {
        let jtw = 2 * j + 1;
        let abscissa = half * XGK21[jtw];
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_gauss += wg * (f1 + f2);
        res_kronrod += WGK21[jtw] * (f1 + f2);
        res_abs += WGK21[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..(n / 2) {
        let jtwm1 = 2 * j;
        let abscissa = half * XGK21[jtwm1];
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_kronrod += WGK21[jtwm1] * (f1 + f2);
        res_abs += WGK21[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK21[n - 1] * (f_center - mean).abs();
    for j in 0..(n - 1) {
        res_asc += WGK21[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half;
    RuleOutcome {
        value: res_kronrod * half,
        error: rescale_error(err, res_abs * abs_half, res_asc * abs_half),
    }
}

#[derive(Debug)]
struct Segment {
    error: f64,
    value: f64,
    lo: f64,
    hi: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Max-heap on error with a total tie-break so refinement order is
        // reproducible.
        self.error
            .total_cmp(&other.error)
            .then(other.lo.total_cmp(&self.lo))
            .then(other.hi.total_cmp(&self.hi))
    }
}

fn adaptive_core(
    f: &mut impl FnMut(f64) -> f64,
    bounds: &[f64],
    policy: &NumericsPolicy,
) -> IntegralResult {
    let mut heap = BinaryHeap::new();
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut total_value = 0.0;
    let mut total_error = 0.0;
    let mut evaluations = 0;

    for pair in bounds.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi <= lo {
            continue;
        }
        let out = qk21(f, lo, hi);
        evaluations += 21;
        total_value += out.value;
        total_error += out.error;
        heap.push(Segment { error: out.error, value: out.value, lo, hi });
    }

    let mut converged = total_error <= policy.tolerance(total_value);
    let mut splits = 0;
    while !converged {
        if !total_value.is_finite() || !total_error.is_finite() {
            converged = false;
            break;
        }
        if splits >= policy.max_subdivisions {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Interval is at floating-point resolution; keep its estimate.
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        total_value -= worst.value;
        total_error -= worst.error;
        let left = qk21(f, worst.lo, mid);
        let right = qk21(f, mid, worst.hi);
        evaluations += 42;
        total_value += left.value + right.value;
        total_error += left.error + right.error;
        heap.push(Segment { error: left.error, value: left.value, lo: worst.lo, hi: mid });
        heap.push(Segment { error: right.error, value: right.value, lo: mid, hi: worst.hi });
        splits += 1;
        converged = total_error <= policy.tolerance(total_value);
    }

    let value = total_value + frozen_value;
    let error_estimate = total_error + frozen_error;
    IntegralResult {
        value,
        error_estimate,
        evaluations,
        converged: converged
            && value.is_finite()
            && error_estimate <= policy.tolerance(value),
    }
}

fn partition(lo: f64, hi: f64, interior: &[f64]) -> Vec<f64> {
    let mut cuts = vec![lo];
    let mut sorted: Vec<f64> = interior
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > lo && *x < hi)
        .collect();
    sorted.sort_by(f64::total_cmp);
    for x in sorted {
        if x - cuts[cuts.len() - 1] > 1e-14 * (hi - lo).abs() {
            cuts.push(x);
        }
    }
    cuts.push(hi);
    cuts
}

/// Integrates `f` over a finite interval, optionally seeded with interior
/// breakpoints (resonances, kinks) so the first refinement pass brackets
/// them.
pub fn integrate_finite(
    mut f: impl FnMut(f64) -> f64,
    lower: f64,
    upper: f64,
    interior: &[f64],
    policy: &NumericsPolicy,
) -> IntegralResult {
    let cuts = partition(lower, upper, interior);
    adaptive_core(&mut f, &cuts, policy)
}

/// Integrates `f` over (lower, ∞). `scale` is the integrand's characteristic
/// decay length; it fixes the rational change of variables and only affects
/// efficiency, not correctness.
pub fn integrate_semi_infinite(
    f: impl FnMut(f64) -> f64,
    lower: f64,
    scale: f64,
    policy: &NumericsPolicy,
) -> IntegralResult {
    integrate_semi_infinite_with_breakpoints(f, lower, scale, &[], policy)
}

/// Like [`integrate_semi_infinite`], with interior breakpoints given on the
/// original axis. Needed for integrands with features much narrower than
/// `scale` (sharp resonance lines).
pub fn integrate_semi_infinite_with_breakpoints(
    mut f: impl FnMut(f64) -> f64,
    lower: f64,
    scale: f64,
    interior: &[f64],
    policy: &NumericsPolicy,
) -> IntegralResult {
    assert!(scale > 0.0 && scale.is_finite(), "decay scale must be positive");
    let mut g = |u: f64| {
        let one_minus = 1.0 - u;
        let x = lower + scale * u / one_minus;
        if !x.is_finite() {
            return 0.0;
        }
        let fx = f(x);
        if fx == 0.0 {
            // Avoid 0 * inf at the compactified end.
            return 0.0;
        }
        fx * scale / (one_minus * one_minus)
    };
    let mapped: Vec<f64> = interior
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > lower)
        .map(|x| (x - lower) / ((x - lower) + scale))
        .collect();
    let cuts = partition(0.0, 1.0, &mapped);
    adaptive_core(&mut g, &cuts, policy)
}

/// How a Matsubara sum treats the terms beyond the stop index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatsubaraTail {
    /// Keep only the summed terms. The reported total is exactly the sum of
    /// the per-term contributions; appropriate for exponentially decaying
    /// terms.
    TruncateOnly,
    /// Add the Euler-Maclaurin remainder estimate. Requires the term
    /// function to be evaluable at arbitrary ζ ≥ ζ_N, not just on the grid.
    IntegralCorrection,
}

/// Full diagnostics of a Matsubara summation.
#[derive(Debug, Clone)]
pub struct MatsubaraSummation {
    /// T Σ (2 - δ_{s0}) g(ζ_s), including the tail correction if requested.
    pub total: f64,
    /// Weighted contribution of each summed term; index is s.
    pub per_term: Vec<f64>,
    /// Remainder added beyond the summed terms (zero for `TruncateOnly`).
    pub tail_correction: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

pub fn matsubara_sum_detailed(
    mut term: impl FnMut(f64) -> f64,
    grid: &MatsubaraGrid,
    policy: &NumericsPolicy,
    tail: MatsubaraTail,
) -> MatsubaraSummation {
    let temperature = grid.temperature();
    let mut per_term = Vec::new();
    let mut total = 0.0;
    let mut abs_sum = 0.0;
    let mut evaluations = 0;
    let mut streak = 0;
    let mut stopped = false;
    let mut g_last = 0.0;
    let mut g_prev = 0.0;

    for s in 0..policy.matsubara_max_terms {
        let zeta = grid.zeta(s);
        let g = term(zeta);
        evaluations += 1;
        let weight = if s == 0 { temperature } else { 2.0 * temperature };
        let contribution = weight * g;
        per_term.push(contribution);
        total += contribution;
        abs_sum += contribution.abs();
        g_prev = g_last;
        g_last = g;
        if s >= 1 {
            if contribution.abs() <= policy.tolerance(total) {
                streak += 1;
                if streak >= policy.tail_consecutive {
                    stopped = true;
                    break;
                }
            } else {
                streak = 0;
            }
        }
    }

    let rounding = f64::EPSILON * abs_sum;
    let mut tail_correction = 0.0;
    let error_estimate;
    let mut converged = stopped && total.is_finite();

    match tail {
        MatsubaraTail::TruncateOnly => {
            // Geometric extrapolation of the remainder from the last ratio.
            let t_last = per_term.last().copied().unwrap_or(0.0).abs();
            let t_prev = per_term
                .len()
                .checked_sub(2)
                .map(|i| per_term[i].abs())
                .unwrap_or(0.0);
            let ratio = if t_prev > 0.0 { (t_last / t_prev).min(0.9) } else { 0.0 };
            error_estimate = t_last * ratio / (1.0 - ratio) + rounding;
        }
        MatsubaraTail::IntegralCorrection => {
            let n_last = per_term.len().saturating_sub(1);
            let zeta_n = grid.zeta(n_last);
            if zeta_n > 0.0 {
                let tail_int = integrate_semi_infinite(
                    &mut term,
                    zeta_n,
                    zeta_n.max(grid.spacing()),
                    policy,
                );
                evaluations += tail_int.evaluations;
                tail_correction = tail_int.value / PI - temperature * g_last;
                total += tail_correction;
                let em_residual = grid.spacing() / (12.0 * PI) * (g_last - g_prev).abs();
                error_estimate = tail_int.error_estimate / PI + em_residual + rounding;
                converged = converged && tail_int.converged;
            } else {
                error_estimate = rounding;
            }
        }
    }

    converged = converged && error_estimate <= policy.tolerance(total);
    MatsubaraSummation {
        total,
        per_term,
        tail_correction,
        error_estimate,
        evaluations,
        converged,
    }
}

/// T Σ_{s≥0} (2 - δ_{s0}) g(ζ_s) with the Euler-Maclaurin remainder.
pub fn matsubara_sum(
    term: impl FnMut(f64) -> f64,
    grid: &MatsubaraGrid,
    policy: &NumericsPolicy,
) -> IntegralResult {
    let sum = matsubara_sum_detailed(term, grid, policy, MatsubaraTail::IntegralCorrection);
    IntegralResult {
        value: sum.total,
        error_estimate: sum.error_estimate,
        evaluations: sum.evaluations,
        converged: sum.converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_policy() -> NumericsPolicy {
        NumericsPolicy::default()
    }

    #[test]
    fn exponential_integral() {
        let res = integrate_semi_infinite(|x| (-x).exp(), 0.0, 1.0, &default_policy());
        assert!(res.converged);
        assert!((res.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cubic_exponential_integral() {
        // ∫_0^∞ x^3 e^{-2x} dx = 3! / 2^4
        let res = integrate_semi_infinite(|x| x.powi(3) * (-2.0 * x).exp(), 0.0, 0.5, &default_policy());
        assert!(res.converged);
        assert!((res.value - 0.375).abs() < 1e-12);
    }

    #[test]
    fn thermal_kernel_integral_matches_series_oracle() {
        // ∫_0^∞ x^5 / sinh^2(x/2) dx. Oracle: 1/sinh^2(x/2) = 4 Σ_m m e^{-mx},
        // so the integral is 4 Σ_m 120 / m^5.
        let mut oracle = 0.0;
        for m in 1..=4000u32 {
            oracle += 480.0 / (m as f64).powi(5);
        }
        let res = integrate_semi_infinite(
            |x| {
                let s = (0.5 * x).sinh();
                x.powi(5) / (s * s)
            },
            0.0,
            4.0,
            &default_policy(),
        );
        assert!(res.converged);
        assert!((res.value - oracle).abs() < 1e-8 * oracle, "got {} want {}", res.value, oracle);
    }

    #[test]
    fn quadrature_exact_on_design_degree_polynomials() {
        // The 21-point Kronrod rule integrates polynomials up to degree 31
        // exactly; spot check a truncated interval without any subdivision.
        for k in [0u32, 3, 7, 12, 20, 31] {
            let exact = 5.0_f64.powi(k as i32 + 1) / (k as f64 + 1.0);
            let res = integrate_finite(|x| x.powi(k as i32), 0.0, 5.0, &[], &default_policy());
            assert!(
                (res.value - exact).abs() <= 1e-14 * exact,
                "degree {k}: got {} want {exact}",
                res.value
            );
        }
    }

    #[test]
    fn breakpoints_resolve_narrow_spike() {
        // Narrow Lorentzian on a broad background; without the hint the
        // global rule can miss it at coarse levels.
        let gamma = 1e-5;
        let spike = move |x: f64| gamma / ((x - 1.0) * (x - 1.0) + gamma * gamma);
        let res = integrate_semi_infinite_with_breakpoints(
            spike,
            0.0,
            1.0,
            &[1.0 - 10.0 * gamma, 1.0, 1.0 + 10.0 * gamma],
            &default_policy(),
        );
        // ∫ spike = atan((x-1)/γ)/1 evaluated over (0, ∞) -> π/2 + atan(1/γ)
        let exact = std::f64::consts::FRAC_PI_2 + (1.0 / gamma).atan();
        assert!(res.converged);
        assert!((res.value - exact).abs() < 1e-8 * exact);
    }

    #[test]
    fn non_convergence_is_flagged() {
        let policy = NumericsPolicy { max_subdivisions: 2, ..Default::default() };
        // Integrable endpoint singularity; two splits cannot reach 1e-8.
        let res = integrate_semi_infinite(|x| x.sqrt().recip() * (-x).exp(), 0.0, 1.0, &policy);
        assert!(!res.converged);
        assert!(res.error_estimate > 0.0);
    }

    #[test]
    fn matsubara_zero_terms() {
        let grid = MatsubaraGrid::new(1.0).unwrap();
        let res = matsubara_sum(|_| 0.0, &grid, &default_policy());
        assert!(res.converged);
        assert_eq!(res.value, 0.0);
    }

    #[test]
    fn matsubara_geometric_series() {
        // T = 1, g = e^{-ζ}: T [1 + 2 Σ_{s>=1} e^{-2πs}] = 1 + 2 q / (1 - q).
        let grid = MatsubaraGrid::new(1.0).unwrap();
        let q = (-2.0 * PI).exp();
        let exact = 1.0 + 2.0 * q / (1.0 - q);
        let res = matsubara_sum(|z| (-z).exp(), &grid, &default_policy());
        assert!(res.converged);
        assert!((res.value - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn matsubara_lorentzian_matches_brute_force() {
        // g = 1/(1+ζ²) at T = 0.05. Oracle: 10^7 summed terms plus the
        // analytic remainder ∫_{ζ_N}^∞ dζ/(1+ζ²) folded in with the same
        // Euler-Maclaurin weights; closed form is coth(1/(2T))/2.
        let t = 0.05;
        let grid = MatsubaraGrid::new(t).unwrap();
        let h = grid.spacing();
        let g = |z: f64| 1.0 / (1.0 + z * z);

        let n = 10_000_000u64;
        let mut brute = t * g(0.0);
        for s in 1..=n {
            brute += 2.0 * t * g(h * s as f64);
        }
        let zeta_n = h * n as f64;
        brute += (std::f64::consts::FRAC_PI_2 - zeta_n.atan()) / PI - t * g(zeta_n);

        let closed = 0.5 / (0.5 / t).tanh();
        assert!((brute - closed).abs() < 1e-10 * closed);

        let res = matsubara_sum(g, &grid, &default_policy());
        assert!(res.converged);
        assert!(
            (res.value - brute).abs() < 1e-8 * brute.abs(),
            "engine {} brute {}",
            res.value,
            brute
        );
    }

    #[test]
    fn matsubara_max_terms_exceeded_flags() {
        let policy = NumericsPolicy { matsubara_max_terms: 5, ..Default::default() };
        let grid = MatsubaraGrid::new(0.05).unwrap();
        let res = matsubara_sum(|z| 1.0 / (1.0 + z * z), &grid, &policy);
        assert!(!res.converged);
    }

    #[test]
    fn grid_spacing_is_uniform() {
        let grid = MatsubaraGrid::new(0.7).unwrap();
        assert_eq!(grid.zeta(0), 0.0);
        for s in 1..50 {
            assert!(grid.zeta(s) > grid.zeta(s - 1));
            let diff = grid.zeta(s) - grid.zeta(s - 1);
            assert!((diff - grid.spacing()).abs() < 1e-12 * grid.spacing());
        }
    }

    #[test]
    fn halving_tolerance_stays_within_error_estimate() {
        let policy = default_policy();
        let f = |x: f64| (1.0 + x).recip().powi(3);
        let base = integrate_semi_infinite(f, 0.0, 1.0, &policy);
        let tight = integrate_semi_infinite(f, 0.0, 1.0, &policy.clone().with_rel_tol(0.5e-8));
        assert!(base.converged && tight.converged);
        assert!((base.value - tight.value).abs() <= base.error_estimate);
    }

    #[test]
    fn reruns_are_bit_identical() {
        let f = |x: f64| (x * 1.7).cos() * (-x).exp();
        let a = integrate_semi_infinite(f, 0.0, 1.0, &default_policy());
        let b = integrate_semi_infinite(f, 0.0, 1.0, &default_policy());
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }
}
