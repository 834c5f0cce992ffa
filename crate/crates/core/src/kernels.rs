//! Quadrature engine for the continuum-limit decoherence functionals.
//!
//! The damping exponent and the two phase functionals of one register
//! element are frequency integrals over the bath spectral density,
//!
//! ```text
//! Γ(τ) = ∫ dx I_d(x) c(x,τ) coth(x/2θ) [ Σ_m (i_m−j_m)²
//!        + 2 Σ_{m<n} (i_m−j_m)(i_n−j_n) cos(x·τ_s^{mn}) ]
//! Θ(τ) = ∫ dx I_d(x) s(x,τ) · 2 Σ_{m<n} (i_m i_n − j_m j_n) cos(x·τ_s^{mn})
//! Λ(τ) = ∫ dx I_d(x) c(x,τ) · 2 Σ_{m<n} (i_m j_n − i_n j_m) sin(x·τ_s^{mn})
//! ```
//!
//! with the kernels s(x,τ) = (xτ − sin xτ)/x² and c(x,τ) = (1 − cos xτ)/x².
//! The Λ sum runs over oriented pairs m < n with Δφ_mn = +x·τ_s^{mn}; the
//! antisymmetric weight is what the ordered double sum of the exact
//! discrete-mode expression produces, and it is the reading under which the
//! element with swapped indices is the complex conjugate (Hermiticity).
//!
//! Collective coupling drops the transit times: Γ_d(τ) = ∫ I_d c coth and
//! Θ_d(τ) = ∫ I_d s, with label-dependent prefactors applied by the caller.
//!
//! Integration strategy: panels no wider than half an oscillation period of
//! the fastest trigonometric factor, a Gauss–Kronrod 10–21 rule per panel
//! with recursive bisection, a geometric ramp of panels across the thermal
//! boundary layer x ~ θ, and truncation once an analytic envelope bound on
//! the remaining tail drops below the absolute tolerance.

use crate::bath::{occupation_unchecked, thermal_weight_unchecked, BathSpec};
use crate::register::{CoherenceLabel, RegisterGeometry};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("quadrature did not converge: error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    NotConverged { estimate: f64, tolerance: f64 },
    #[error("oscillation too fast: integration would need more than {limit} panels")]
    PanelBudgetExceeded { limit: u64 },
    #[error("damping exponent {0} is negative beyond numerical tolerance")]
    NegativeDamping(f64),
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(&'static str),
}

/// Tolerances and limits for the adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth per panel.
    pub max_subdivisions: u32,
    /// Upper integration limit X = cutoff_multiplier · max(1, θ); the
    /// exponential envelope usually truncates the sweep much earlier.
    pub cutoff_multiplier: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 48,
            cutoff_multiplier: 60.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validated(self) -> Result<Self, QuadratureError> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(QuadratureError::InvalidConfig("tolerances must be positive"));
        }
        if !(self.cutoff_multiplier > 0.0) {
            return Err(QuadratureError::InvalidConfig(
                "cutoff multiplier must be positive",
            ));
        }
        Ok(self)
    }
}

/// The functional triple (Γ, Θ, Λ) of one element at one time point,
/// together with ℵ = Θ − Λ (the net phase).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceFunctions {
    pub gamma: f64,
    pub theta_phase: f64,
    pub lambda_phase: f64,
    pub aleph: f64,
}

impl DecoherenceFunctions {
    pub fn new(gamma: f64, theta_phase: f64, lambda_phase: f64) -> Self {
        Self {
            gamma,
            theta_phase,
            lambda_phase,
            aleph: theta_phase - lambda_phase,
        }
    }
}

/// Which part of the thermal weight coth(x/2θ) = 1 + 2⟨N⟩ enters Γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThermalPart {
    /// coth(x/2θ): the full damping exponent.
    Full,
    /// 1: quantum vacuum fluctuations only.
    Vacuum,
    /// 2⟨N⟩: thermal fluctuations only (Γ_full = Γ_vac + Γ_thermal).
    Thermal,
}

/// Kernel s(x, τ) = (xτ − sin xτ)/x², series-guarded near xτ = 0.
pub fn kernel_s(x: f64, tau: f64) -> f64 {
    let y = x * tau;
    if y.abs() < 0.5 {
        let y2 = y * y;
        // y³/6 − y⁵/120 + y⁷/5040 − y⁹/362880 + y¹¹/39916800
        let series = y * y2 / 6.0
            * (1.0 - y2 / 20.0 * (1.0 - y2 / 42.0 * (1.0 - y2 / 72.0 * (1.0 - y2 / 110.0))));
        series / (x * x)
    } else {
        (y - y.sin()) / (x * x)
    }
}

/// Kernel c(x, τ) = (1 − cos xτ)/x² = 2 sin²(xτ/2)/x² (cancellation-free).
pub fn kernel_c(x: f64, tau: f64) -> f64 {
    let s = (0.5 * x * tau).sin();
    2.0 * s * s / (x * x)
}

// ---------------------------------------------------------------------------
// Label/geometry pair coefficients
// ---------------------------------------------------------------------------

struct PairTerm {
    tau_s: f64,
    /// 2(i_m−j_m)(i_n−j_n) — multiplies cos in the damping bracket.
    damp: f64,
    /// 2(i_m i_n − j_m j_n) — multiplies cos in the Θ bracket.
    theta: f64,
    /// 2(i_m j_n − i_n j_m) — multiplies sin in the Λ bracket.
    lambda: f64,
}

struct LabelCoeffs {
    /// Σ_m (i_m − j_m)².
    diag: f64,
    pairs: Vec<PairTerm>,
    max_transit: f64,
}

impl LabelCoeffs {
    fn build(label: &CoherenceLabel, geometry: &RegisterGeometry) -> Self {
        let l = label.len();
        let mut diag = 0.0;
        let mut pairs = Vec::with_capacity(l * (l - 1) / 2);
        let mut max_transit: f64 = 0.0;
        for m in 0..l {
            let (im, jm) = label.pair(m);
            diag += (im - jm) * (im - jm);
            for n in (m + 1)..l {
                let (inn, jn) = label.pair(n);
                let tau_s = geometry.transit(m, n);
                max_transit = max_transit.max(tau_s);
                pairs.push(PairTerm {
                    tau_s,
                    damp: 2.0 * (im - jm) * (inn - jn),
                    theta: 2.0 * (im * inn - jm * jn),
                    lambda: 2.0 * (im * jn - inn * jm),
                });
            }
        }
        Self {
            diag,
            pairs,
            max_transit,
        }
    }

    fn damp_bracket(&self, x: f64) -> f64 {
        let mut b = self.diag;
        for p in &self.pairs {
            if p.damp != 0.0 {
                b += p.damp * (x * p.tau_s).cos();
            }
        }
        b
    }

    fn theta_bracket(&self, x: f64) -> f64 {
        let mut b = 0.0;
        for p in &self.pairs {
            if p.theta != 0.0 {
                b += p.theta * (x * p.tau_s).cos();
            }
        }
        b
    }

    fn lambda_bracket(&self, x: f64) -> f64 {
        let mut b = 0.0;
        for p in &self.pairs {
            if p.lambda != 0.0 {
                b += p.lambda * (x * p.tau_s).sin();
            }
        }
        b
    }

    fn damp_bound(&self) -> f64 {
        self.diag + self.pairs.iter().map(|p| p.damp.abs()).sum::<f64>()
    }

    fn theta_bound(&self) -> f64 {
        self.pairs.iter().map(|p| p.theta.abs()).sum::<f64>()
    }

    fn lambda_bound(&self) -> f64 {
        self.pairs.iter().map(|p| p.lambda.abs()).sum::<f64>()
    }

    /// True when the bracket is identically zero for every frequency.
    fn damp_identically_zero(&self) -> bool {
        (self.diag == 0.0 && self.pairs.iter().all(|p| p.damp == 0.0))
            || (self.max_transit == 0.0 && self.damp_bracket(1.0) == 0.0)
    }

    fn theta_identically_zero(&self) -> bool {
        (self.max_transit == 0.0 && self.theta_bracket(1.0) == 0.0) || self.theta_bound() == 0.0
    }

    fn lambda_identically_zero(&self) -> bool {
        self.max_transit == 0.0 || self.lambda_bound() == 0.0
    }
}

// ---------------------------------------------------------------------------
// Gauss–Kronrod 10–21 panel rule
// ---------------------------------------------------------------------------

#[allow(clippy::excessive_precision)]
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

#[allow(clippy::excessive_precision)]
const WG10: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
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

/// One Gauss–Kronrod 10–21 evaluation on [a, b]; returns (value, |K − G|).
fn qk21(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let mut res_g = 0.0;
    let mut res_k = 0.0;
    for (j, wg) in WG10.iter().enumerate() {
        let idx = 2 * j + 1;
        let dx = half * XGK21[idx];
        let fsum = f(center - dx) + f(center + dx);
        res_g += wg * fsum;
        res_k += WGK21[idx] * fsum;
    }
    for j in 0..5 {
        let idx = 2 * j;
        let dx = half * XGK21[idx];
        res_k += WGK21[idx] * (f(center - dx) + f(center + dx));
    }
    res_k += WGK21[10] * f(center);
    ((res_k * half), ((res_k - res_g) * half).abs())
}

fn adaptive_panel(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth_left: u32,
) -> (f64, f64) {
    let (v, e) = qk21(f, a, b);
    if e <= tol.max(1e-16 * v.abs()) || depth_left == 0 || (b - a) < 1e-15 * b.abs().max(1.0) {
        return (v, e);
    }
    let mid = 0.5 * (a + b);
    let (v1, e1) = adaptive_panel(f, a, mid, 0.5 * tol, depth_left - 1);
    let (v2, e2) = adaptive_panel(f, mid, b, 0.5 * tol, depth_left - 1);
    (v1 + v2, e1 + e2)
}

const MAX_PANELS: u64 = 6_000_000;

/// Integrates `f` on [0, x_max] with oscillation-aware panels, stopping once
/// `tail_bound(x)` certifies the remainder is below the absolute tolerance.
fn integrate_decaying(
    f: &dyn Fn(f64) -> f64,
    osc_freq: f64,
    theta: f64,
    x_max: f64,
    tail_bound: &dyn Fn(f64) -> f64,
    tail_check_from: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    let h = (std::f64::consts::PI / osc_freq.max(1e-300)).min(0.5);
    let nominal_span = x_max.min(140.0);
    if nominal_span / h > MAX_PANELS as f64 {
        return Err(QuadratureError::PanelBudgetExceeded { limit: MAX_PANELS });
    }
    let panel_tol = cfg.abs_tol * h / nominal_span;

    let mut total = 0.0;
    let mut err = 0.0;
    let mut x0 = 0.0;
    let mut panels: u64 = 0;

    // Geometric ramp across the thermal boundary layer x ~ θ.
    if theta > 0.0 && theta < h {
        let mut a = (0.25 * theta).max(1e-14);
        while a < h.min(x_max) {
            let (v, e) = adaptive_panel(f, x0, a, panel_tol, cfg.max_subdivisions);
            total += v;
            err += e;
            x0 = a;
            a *= 2.0;
            panels += 1;
        }
    }

    while x0 < x_max {
        if panels > MAX_PANELS {
            return Err(QuadratureError::PanelBudgetExceeded { limit: MAX_PANELS });
        }
        let x1 = (x0 + h).min(x_max);
        let (v, e) = adaptive_panel(f, x0, x1, panel_tol, cfg.max_subdivisions);
        total += v;
        err += e;
        x0 = x1;
        panels += 1;
        if x0 >= tail_check_from && tail_bound(x0) < 0.5 * cfg.abs_tol {
            break;
        }
    }

    let tolerance = cfg.abs_tol.max(cfg.rel_tol * total.abs());
    if err > tolerance {
        return Err(QuadratureError::NotConverged {
            estimate: err,
            tolerance,
        });
    }
    Ok(total)
}

/// Upper bound on ∫_{x0}^∞ x^d e^{−x} dx, valid for x0 ≥ max(1, d).
fn incomplete_gamma_bound(d: u32, x0: f64) -> f64 {
    (d as f64 + 1.0) * x0.powi(d as i32) * (-x0).exp()
}

fn weight_bound(part: ThermalPart, theta: f64, x0: f64) -> f64 {
    match part {
        ThermalPart::Full => 1.0 + 2.0 * theta / x0,
        ThermalPart::Vacuum => 1.0,
        ThermalPart::Thermal => 2.0 * theta / x0,
    }
}

fn weight_value(part: ThermalPart, theta: f64, x: f64) -> f64 {
    match part {
        ThermalPart::Full => thermal_weight_unchecked(theta, x),
        ThermalPart::Vacuum => 1.0,
        ThermalPart::Thermal => 2.0 * occupation_unchecked(theta, x),
    }
}

// ---------------------------------------------------------------------------
// Public functionals
// ---------------------------------------------------------------------------

/// Damping exponent Γ of one element under independent coupling.
pub fn gamma_independent(
    bath: &BathSpec,
    geometry: &RegisterGeometry,
    label: &CoherenceLabel,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    gamma_independent_part(bath, geometry, label, tau, ThermalPart::Full, cfg)
}

/// Γ restricted to one part of the coth split (vacuum or thermal).
pub fn gamma_independent_part(
    bath: &BathSpec,
    geometry: &RegisterGeometry,
    label: &CoherenceLabel,
    tau: f64,
    part: ThermalPart,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    let coeffs = LabelCoeffs::build(label, geometry);
    if tau == 0.0 || coeffs.damp_identically_zero() {
        return Ok(0.0);
    }
    if part == ThermalPart::Thermal && bath.is_vacuum() {
        return Ok(0.0);
    }
    let theta = bath.theta();
    let d = bath.dimension();
    let c = bath.coupling();
    let x_max = cfg.cutoff_multiplier * theta.max(1.0);
    let bound = coeffs.damp_bound();

    let f = |x: f64| {
        bath.spectral_density_unchecked(x)
            * kernel_c(x, tau)
            * weight_value(part, theta, x)
            * coeffs.damp_bracket(x)
    };
    let tail = |x0: f64| {
        c * bound
            * weight_bound(part, theta, x0)
            * (0.5 * tau * tau).min(2.0 / (x0 * x0))
            * incomplete_gamma_bound(d, x0)
    };
    let gamma = integrate_decaying(
        &f,
        tau + coeffs.max_transit,
        theta,
        x_max,
        &tail,
        (d as f64).max(1.0) + 1.0,
        cfg,
    )?;
    clamp_damping(gamma)
}

/// Phase functional Θ of one element under independent coupling.
pub fn theta_independent(
    bath: &BathSpec,
    geometry: &RegisterGeometry,
    label: &CoherenceLabel,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    let coeffs = LabelCoeffs::build(label, geometry);
    if tau == 0.0 || coeffs.theta_identically_zero() {
        return Ok(0.0);
    }
    let d = bath.dimension();
    let c = bath.coupling();
    let x_max = cfg.cutoff_multiplier * bath.theta().max(1.0);
    let bound = coeffs.theta_bound();

    let f = |x: f64| bath.spectral_density_unchecked(x) * kernel_s(x, tau) * coeffs.theta_bracket(x);
    let tail = |x0: f64| {
        c * bound * (tau / x0 + 1.0 / (x0 * x0)) * incomplete_gamma_bound(d, x0)
    };
    integrate_decaying(
        &f,
        tau + coeffs.max_transit,
        0.0,
        x_max,
        &tail,
        (d as f64).max(1.0) + 1.0,
        cfg,
    )
}

/// Phase functional Λ of one element under independent coupling (oriented
/// pairs m < n, antisymmetric weight; see the module docs).
pub fn lambda_independent(
    bath: &BathSpec,
    geometry: &RegisterGeometry,
    label: &CoherenceLabel,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    let coeffs = LabelCoeffs::build(label, geometry);
    if tau == 0.0 || coeffs.lambda_identically_zero() {
        return Ok(0.0);
    }
    let d = bath.dimension();
    let c = bath.coupling();
    let x_max = cfg.cutoff_multiplier * bath.theta().max(1.0);
    let bound = coeffs.lambda_bound();

    let f = |x: f64| bath.spectral_density_unchecked(x) * kernel_c(x, tau) * coeffs.lambda_bracket(x);
    let tail = |x0: f64| {
        c * bound * (0.5 * tau * tau).min(2.0 / (x0 * x0)) * incomplete_gamma_bound(d, x0)
    };
    integrate_decaying(
        &f,
        tau + coeffs.max_transit,
        0.0,
        x_max,
        &tail,
        (d as f64).max(1.0) + 1.0,
        cfg,
    )
}

/// All three functionals plus ℵ = Θ − Λ.
pub fn decoherence_functions(
    bath: &BathSpec,
    geometry: &RegisterGeometry,
    label: &CoherenceLabel,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<DecoherenceFunctions, QuadratureError> {
    let gamma = gamma_independent(bath, geometry, label, tau, cfg)?;
    let theta = theta_independent(bath, geometry, label, tau, cfg)?;
    let lambda = lambda_independent(bath, geometry, label, tau, cfg)?;
    Ok(DecoherenceFunctions::new(gamma, theta, lambda))
}

/// Register-independent collective damping functional Γ_d(τ; θ).
pub fn gamma_collective(
    bath: &BathSpec,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    gamma_collective_part(bath, tau, ThermalPart::Full, cfg)
}

/// Collective Γ_d restricted to one part of the coth split.
pub fn gamma_collective_part(
    bath: &BathSpec,
    tau: f64,
    part: ThermalPart,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    if tau == 0.0 || (part == ThermalPart::Thermal && bath.is_vacuum()) {
        return Ok(0.0);
    }
    let theta = bath.theta();
    let d = bath.dimension();
    let c = bath.coupling();
    let x_max = cfg.cutoff_multiplier * theta.max(1.0);

    let f = |x: f64| {
        bath.spectral_density_unchecked(x) * kernel_c(x, tau) * weight_value(part, theta, x)
    };
    let tail = |x0: f64| {
        c * weight_bound(part, theta, x0)
            * (0.5 * tau * tau).min(2.0 / (x0 * x0))
            * incomplete_gamma_bound(d, x0)
    };
    let gamma = integrate_decaying(&f, tau, theta, x_max, &tail, (d as f64).max(1.0) + 1.0, cfg)?;
    clamp_damping(gamma)
}

/// Register-independent collective phase functional Θ_d(τ).
pub fn theta_collective(
    bath: &BathSpec,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    if tau == 0.0 {
        return Ok(0.0);
    }
    let d = bath.dimension();
    let c = bath.coupling();
    let x_max = cfg.cutoff_multiplier * bath.theta().max(1.0);

    let f = |x: f64| bath.spectral_density_unchecked(x) * kernel_s(x, tau);
    let tail =
        |x0: f64| c * (tau / x0 + 1.0 / (x0 * x0)) * incomplete_gamma_bound(d, x0);
    integrate_decaying(&f, tau, 0.0, x_max, &tail, (d as f64).max(1.0) + 1.0, cfg)
}

/// Single-qubit damping exponent: the L = 1 specialization, identical to the
/// collective functional by construction.
pub fn gamma_single(
    bath: &BathSpec,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, QuadratureError> {
    gamma_collective(bath, tau, cfg)
}

fn clamp_damping(gamma: f64) -> Result<f64, QuadratureError> {
    if gamma < -1e-12 {
        return Err(QuadratureError::NegativeDamping(gamma));
    }
    Ok(gamma.max(0.0))
}
