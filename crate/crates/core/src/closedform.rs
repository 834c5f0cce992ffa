//! Analytic decoherence functions for single qubits and qubit pairs.
//!
//! Ohmic bath (d = 1), low-temperature regime θ ≪ 1:
//!
//! ```text
//! Γ₁(τ) = c₁ [ 2θτ·arctan(2θτ) + ½ ln( (1+τ²)/(1+4θ²τ²) ) ]
//! ```
//!
//! Super-Ohmic bath (d = 3), exact at any temperature via the Hurwitz zeta
//! function at complex argument:
//!
//! ```text
//! Γ₃(τ) = c₃ { θ² [ ζ(2,θ) + ζ(2,1+θ) − ζ(2,θ+iθτ) − ζ(2,θ−iθτ) ]
//!              + (1−τ²)/(1+τ²)² },    normalized so Γ₃(0) = 0.
//! ```
//!
//! For two qubits with transit time τ_s the damping exponents of the
//! elements with both indices differing are Γ_d^± = 2Γ_d(τ) ± 2c_d·X_d,
//! where the cross term collapses to shifted single-qubit exponents,
//! X_d = ½Γ̂_d(τ_s+τ) + ½Γ̂_d(τ_s−τ) − Γ̂_d(τ_s) with Γ̂_d ≡ Γ_d/c_d.
//! Elements with one index pair differing keep the single-qubit magnitude
//! and acquire a temperature-independent phase.
//!
//! Γ₁ is evaluated as written for every θ, including θ ≥ 1 where it is only
//! the low-temperature approximation of the true integral: the reference
//! decoherence-time tables are generated from exactly these expressions.

use crate::special::{hurwitz_zeta2, SpecialError};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("no closed form for bath dimensionality d = {0}; use the quadrature path")]
    UnsupportedDimension(u32),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Which two-qubit branch an element belongs to: `Plus` for the equal-sign
/// labels (10,10)/(01,01) and the phase of (00,01)/(11,10); `Minus` for the
/// opposite-sign labels (10,01)/(01,10) and the phase of (00,10)/(11,01).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairBranch {
    Plus,
    Minus,
}

impl PairBranch {
    fn sign(self) -> f64 {
        match self {
            PairBranch::Plus => 1.0,
            PairBranch::Minus => -1.0,
        }
    }
}

/// Which index pairs of the two-qubit element differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCase {
    /// i_a = j_a, i_b ≠ j_b: single-qubit magnitude plus a phase.
    OneDiffers,
    /// i_a ≠ j_a, i_b ≠ j_b: pure damping, branch-split exponent.
    BothDiffer,
}

/// Time regimes of the Ohmic single-qubit decay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// τ < 1: Γ₁ ≈ c₁τ²/2.
    Quiet,
    /// 1 < τ < 1/θ: Γ₁ ≈ c₁ ln τ.
    Quantum,
    /// τ ≫ 1/θ: Γ₁ ≈ 2c₁θτ.
    Thermal,
}

/// Magnitude and phase of one reduced-density-matrix element relative to its
/// initial value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceValue {
    pub magnitude: f64,
    pub phase: f64,
}

impl CoherenceValue {
    pub fn new(magnitude: f64, phase: f64) -> Self {
        Self { magnitude, phase }
    }

    /// Builds the value from a damping exponent Γ ≥ 0 and a phase.
    pub fn from_exponents(gamma: f64, phase: f64) -> Self {
        debug_assert!(gamma >= -1e-9, "negative damping exponent {gamma}");
        Self {
            magnitude: (-gamma.max(0.0)).exp(),
            phase,
        }
    }

    /// The Hermitian partner: same magnitude, opposite phase.
    pub fn conjugate(self) -> Self {
        Self {
            magnitude: self.magnitude,
            phase: -self.phase,
        }
    }
}

// ---------------------------------------------------------------------------
// Single-qubit exponents
// ---------------------------------------------------------------------------

/// Normalized Ohmic exponent Γ₁/c₁ (even in τ).
fn gamma1_norm(theta: f64, tau: f64) -> f64 {
    let y = 2.0 * theta * tau;
    y * y.atan() + 0.5 * ((1.0 + tau * tau) / (1.0 + y * y)).ln()
}

/// Ohmic single-qubit damping exponent Γ₁(τ), low-temperature closed form.
pub fn gamma1_low_temp(c1: f64, theta: f64, tau: f64) -> f64 {
    c1 * gamma1_norm(theta, tau)
}

/// Normalized super-Ohmic exponent Γ₃/c₃ (even in τ, zero at τ = 0).
fn gamma3_norm(theta: f64, tau: f64) -> Result<f64, SpecialError> {
    let t2 = tau * tau;
    let one_t2 = 1.0 + t2;
    let vac = 1.0 - (1.0 - t2) / (one_t2 * one_t2);
    if theta == 0.0 {
        return Ok(vac);
    }
    let zt = hurwitz_zeta2(Complex64::new(theta, 0.0))?.re;
    let zc = hurwitz_zeta2(Complex64::new(theta, theta * tau))?.re;
    // θ²[ζ(2,θ)+ζ(2,1+θ) − 2Re ζ(2,θ+iθτ)] + (1−τ²)/(1+τ²)², minus its τ = 0
    // value; the recurrence ζ(2,θ) − ζ(2,1+θ) = θ^{−2} collapses the
    // difference to the form below, which is exactly zero at τ = 0.
    Ok(2.0 * theta * theta * (zt - zc) - vac)
}

/// Exact super-Ohmic single-qubit damping exponent Γ₃(τ; θ), any temperature.
pub fn gamma3_exact(c3: f64, theta: f64, tau: f64) -> Result<f64, ClosedFormError> {
    Ok(c3 * gamma3_norm(theta, tau)?)
}

/// Normalized τ → ∞ limit of Γ₃/c₃: θ²[ζ(2,θ) + ζ(2,1+θ)], or 1 at θ = 0.
fn gamma3_limit_norm(theta: f64) -> Result<f64, SpecialError> {
    if theta == 0.0 {
        return Ok(1.0);
    }
    let zt = hurwitz_zeta2(Complex64::new(theta, 0.0))?.re;
    Ok(2.0 * theta * theta * zt - 1.0)
}

/// τ → ∞ limit of the super-Ohmic exponent (the saturation exponent).
pub fn gamma3_limit(c3: f64, theta: f64) -> Result<f64, ClosedFormError> {
    Ok(c3 * gamma3_limit_norm(theta)?)
}

// ---------------------------------------------------------------------------
// Two-qubit independent coupling
// ---------------------------------------------------------------------------

/// Cross term of the both-differ exponent as shifted single-qubit exponents.
fn cross_term_d1(theta: f64, tau: f64, tau_s: f64) -> f64 {
    0.5 * gamma1_norm(theta, tau_s + tau) + 0.5 * gamma1_norm(theta, tau_s - tau)
        - gamma1_norm(theta, tau_s)
}

fn cross_term_d3(theta: f64, tau: f64, tau_s: f64) -> Result<f64, SpecialError> {
    Ok(0.5 * gamma3_norm(theta, tau_s + tau)? + 0.5 * gamma3_norm(theta, tau_s - tau)?
        - gamma3_norm(theta, tau_s)?)
}

/// Temperature-independent phase of the one-differs elements, Ohmic bath
/// (the Plus branch sign; c₁ = 1).
fn one_differs_phase_d1(tau: f64, tau_s: f64) -> f64 {
    let tp = tau_s + tau;
    let tm = tau_s - tau;
    0.5 * tm.atan() - 0.5 * tp.atan() + tau / (1.0 + tau_s * tau_s)
}

/// Same for the super-Ohmic bath (c₃ = 1).
fn one_differs_phase_d3(tau: f64, tau_s: f64) -> f64 {
    let tp = tau_s + tau;
    let tm = tau_s - tau;
    (2.0 * tm.atan()).sin() / (2.0 * (1.0 + tm * tm))
        - (2.0 * tp.atan()).sin() / (2.0 * (1.0 + tp * tp))
        + 2.0 * tau * (3.0 * tau_s.atan()).cos() / (1.0 + tau_s * tau_s).powf(1.5)
}

/// Two-qubit coherence under independent coupling, Ohmic bath.
pub fn pair_independent_d1(
    c1: f64,
    theta: f64,
    tau: f64,
    tau_s: f64,
    case: PairCase,
    branch: PairBranch,
) -> CoherenceValue {
    match case {
        PairCase::OneDiffers => {
            let gamma = c1 * gamma1_norm(theta, tau);
            let phase = branch.sign() * c1 * one_differs_phase_d1(tau, tau_s);
            CoherenceValue::from_exponents(gamma, phase)
        }
        PairCase::BothDiffer => {
            let gamma = 2.0 * c1 * gamma1_norm(theta, tau)
                + branch.sign() * 2.0 * c1 * cross_term_d1(theta, tau, tau_s);
            CoherenceValue::from_exponents(gamma, 0.0)
        }
    }
}

/// Two-qubit coherence under independent coupling, super-Ohmic bath (exact).
pub fn pair_independent_d3(
    c3: f64,
    theta: f64,
    tau: f64,
    tau_s: f64,
    case: PairCase,
    branch: PairBranch,
) -> Result<CoherenceValue, ClosedFormError> {
    Ok(match case {
        PairCase::OneDiffers => {
            let gamma = c3 * gamma3_norm(theta, tau)?;
            let phase = branch.sign() * c3 * one_differs_phase_d3(tau, tau_s);
            CoherenceValue::from_exponents(gamma, phase)
        }
        PairCase::BothDiffer => {
            let gamma = 2.0 * c3 * gamma3_norm(theta, tau)?
                + branch.sign() * 2.0 * c3 * cross_term_d3(theta, tau, tau_s)?;
            CoherenceValue::from_exponents(gamma, 0.0)
        }
    })
}

/// Limiting damping exponent of the two-qubit independent element as
/// τ → ∞; `None` when the exponent grows without bound (the coherence
/// vanishes).
pub fn pair_independent_limit(
    d: u32,
    c: f64,
    theta: f64,
    tau_s: f64,
    case: PairCase,
    branch: PairBranch,
) -> Result<Option<f64>, ClosedFormError> {
    match d {
        1 => Ok(match (case, branch) {
            // the Ohmic single-qubit exponent grows without bound
            (PairCase::OneDiffers, _) | (PairCase::BothDiffer, PairBranch::Plus) => None,
            // the shifted cross terms cancel the growth exactly
            (PairCase::BothDiffer, PairBranch::Minus) => {
                Some(2.0 * c * gamma1_norm(theta, tau_s))
            }
        }),
        3 => {
            let g_inf = gamma3_limit_norm(theta)?;
            Ok(match (case, branch) {
                (PairCase::OneDiffers, _) => Some(c * g_inf),
                (PairCase::BothDiffer, PairBranch::Plus) => {
                    Some(2.0 * c * (2.0 * g_inf - gamma3_norm(theta, tau_s)?))
                }
                (PairCase::BothDiffer, PairBranch::Minus) => {
                    Some(2.0 * c * gamma3_norm(theta, tau_s)?)
                }
            })
        }
        other => Err(ClosedFormError::UnsupportedDimension(other)),
    }
}

// ---------------------------------------------------------------------------
// Two-qubit collective coupling
// ---------------------------------------------------------------------------

/// Two-qubit coherence under collective coupling (transit times play no
/// role). The both-differ Minus element is exactly preserved; the Plus
/// element superdecoheres with exponent 4Γ_d.
pub fn pair_collective(
    d: u32,
    c: f64,
    theta: f64,
    tau: f64,
    case: PairCase,
    branch: PairBranch,
) -> Result<CoherenceValue, ClosedFormError> {
    if case == PairCase::BothDiffer && branch == PairBranch::Minus {
        return Ok(CoherenceValue::new(1.0, 0.0));
    }
    let gamma_norm = match d {
        1 => gamma1_norm(theta, tau),
        3 => gamma3_norm(theta, tau)?,
        other => return Err(ClosedFormError::UnsupportedDimension(other)),
    };
    Ok(match case {
        PairCase::OneDiffers => {
            let phase_norm = match d {
                1 => tau + tau.atan(),
                _ => 2.0 * tau - (2.0 * tau.atan()).sin() / (1.0 + tau * tau),
            };
            CoherenceValue::from_exponents(c * gamma_norm, branch.sign() * c * phase_norm)
        }
        PairCase::BothDiffer => CoherenceValue::from_exponents(4.0 * c * gamma_norm, 0.0),
    })
}

/// Limiting damping exponent of the collective two-qubit element (see
/// [`pair_independent_limit`]).
pub fn pair_collective_limit(
    d: u32,
    c: f64,
    theta: f64,
    case: PairCase,
    branch: PairBranch,
) -> Result<Option<f64>, ClosedFormError> {
    if case == PairCase::BothDiffer && branch == PairBranch::Minus {
        return Ok(Some(0.0));
    }
    match d {
        1 => Ok(None),
        3 => {
            let g_inf = gamma3_limit_norm(theta)?;
            Ok(match case {
                PairCase::OneDiffers => Some(c * g_inf),
                PairCase::BothDiffer => Some(4.0 * c * g_inf),
            })
        }
        other => Err(ClosedFormError::UnsupportedDimension(other)),
    }
}

/// Exact collective phase functional Θ_d(τ) = ∫ I_d(x) s(x,τ) dx in closed
/// form: c₁(τ − arctan τ) for the Ohmic bath, c₃(2τ − 2τ/(1+τ²)²) for the
/// super-Ohmic one. Note the printed d = 1 one-differs phase of
/// [`pair_collective`] carries +arctan τ instead; the quadrature and the
/// discrete oracle agree with this functional.
pub fn theta_functional_closed(d: u32, c: f64, tau: f64) -> Result<f64, ClosedFormError> {
    match d {
        1 => Ok(c * (tau - tau.atan())),
        3 => {
            let one_t2 = 1.0 + tau * tau;
            Ok(c * (2.0 * tau - 2.0 * tau / (one_t2 * one_t2)))
        }
        other => Err(ClosedFormError::UnsupportedDimension(other)),
    }
}

/// Single-qubit closed-form exponent for d ∈ {1, 3}.
pub fn gamma_single_closed(d: u32, c: f64, theta: f64, tau: f64) -> Result<f64, ClosedFormError> {
    match d {
        1 => Ok(gamma1_low_temp(c, theta, tau)),
        3 => gamma3_exact(c, theta, tau),
        other => Err(ClosedFormError::UnsupportedDimension(other)),
    }
}

/// τ → ∞ limit of the single-qubit exponent; `None` when unbounded.
pub fn gamma_single_closed_limit(d: u32, c: f64, theta: f64) -> Result<Option<f64>, ClosedFormError> {
    match d {
        1 => Ok(None),
        3 => Ok(Some(gamma3_limit(c, theta)?)),
        other => Err(ClosedFormError::UnsupportedDimension(other)),
    }
}

// ---------------------------------------------------------------------------
// Regime asymptotics
// ---------------------------------------------------------------------------

/// Asymptotic Ohmic exponent in the quiet (τ < 1), quantum (1 < τ < 1/θ)
/// and thermal (τ ≫ 1/θ) regimes: c₁τ²/2, c₁ ln τ, 2c₁θτ.
///
/// Validity windows are documented, not enforced. In the thermal regime the
/// closed form itself approaches slope πc₁θ (a factor π/2 above the quoted
/// 2c₁θ); both are asymptotics of the same decay, at the order-of-magnitude
/// level.
pub fn regime_asymptote(c1: f64, theta: f64, tau: f64, regime: Regime) -> f64 {
    match regime {
        Regime::Quiet => c1 * tau * tau / 2.0,
        Regime::Quantum => c1 * tau.ln(),
        Regime::Thermal => 2.0 * c1 * theta * tau,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2};

    const LN98: f64 = 0.020202707317301522; // −ln 0.98

    #[test]
    fn gamma1_reference_crossings() {
        assert_eq!(gamma1_low_temp(0.25, 1e-5, 0.0), 0.0);
        let g = gamma1_low_temp(0.25, 1e-5, 0.418831);
        assert!((g - LN98).abs() < 1e-6, "{g}");
        let g = gamma1_low_temp(0.25, 1.0, 0.181611);
        assert!((g - LN98).abs() < 1e-6, "{g}");
    }

    #[test]
    fn gamma3_zero_time_and_recurrence_identity() {
        for theta in [1e-5, 1e-3, 1.0, 100.0] {
            assert_eq!(gamma3_exact(0.25, theta, 0.0).unwrap(), 0.0, "θ={theta}");
            // θ²(ζ(2,θ) − ζ(2,1+θ)) = 1
            let zt = hurwitz_zeta2(Complex64::new(theta, 0.0)).unwrap().re;
            let zt1 = hurwitz_zeta2(Complex64::new(1.0 + theta, 0.0)).unwrap().re;
            assert!(
                (theta * theta * (zt - zt1) - 1.0).abs() < 1e-12,
                "θ={theta}"
            );
        }
    }

    #[test]
    fn gamma3_saturation_values() {
        // c₃ = 0.25, θ = 1: Γ₃(∞) = 0.25[ζ(2,1)+ζ(2,2)] ≈ 0.572467
        let lim = gamma3_limit(0.25, 1.0).unwrap();
        assert!((lim - 0.572467).abs() < 1e-6, "{lim}");
        assert!(((-lim).exp() - 0.564132).abs() < 1e-6);
        // c₃ = 0.1, θ = 1e−5: residual e^{−Γ(∞)} ≈ 0.904837
        let lim = gamma3_limit(0.1, 1e-5).unwrap();
        assert!(((-lim).exp() - 0.904837).abs() < 1e-6);
        // large τ approaches the limit
        let g = gamma3_exact(0.25, 1.0, 1e6).unwrap();
        assert!((g - gamma3_limit(0.25, 1.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn gamma3_vacuum_reduction() {
        for tau in [0.3f64, 1.0, 5.0] {
            let t2 = tau * tau;
            let vac = 0.25 * (1.0 - (1.0 - t2) / ((1.0 + t2) * (1.0 + t2)));
            let g = gamma3_exact(0.25, 0.0, tau).unwrap();
            assert!((g - vac).abs() < 1e-15, "τ={tau}: {g} vs {vac}");
            // tiny θ matches the vacuum limit
            let g_small = gamma3_exact(0.25, 1e-8, tau).unwrap();
            assert!((g_small - vac).abs() < 1e-9);
        }
    }

    #[test]
    fn pair_d1_table_crossings() {
        // c₁ = 0.25, θ = 1e−3, τ_s = 0.5: Plus crosses 0.98 at 0.235446,
        // Minus at 0.436919.
        let v = pair_independent_d1(0.25, 1e-3, 0.235446, 0.5, PairCase::BothDiffer, PairBranch::Plus);
        assert!((v.magnitude - 0.98).abs() < 3e-6, "{}", v.magnitude);
        let v = pair_independent_d1(0.25, 1e-3, 0.436919, 0.5, PairCase::BothDiffer, PairBranch::Minus);
        assert!((v.magnitude - 0.98).abs() < 3e-6, "{}", v.magnitude);
        // large τ_s: both branches coincide, 0.98 crossing at 0.127778 (θ = 1)
        for branch in [PairBranch::Plus, PairBranch::Minus] {
            let v = pair_independent_d1(0.25, 1.0, 0.127778, 1e4, PairCase::BothDiffer, branch);
            assert!((v.magnitude - 0.98).abs() < 3e-6);
        }
        // τ = 0 is the identity
        let v = pair_independent_d1(0.25, 1.0, 0.0, 0.5, PairCase::BothDiffer, PairBranch::Plus);
        assert_eq!((v.magnitude, v.phase), (1.0, 0.0));
        let v = pair_independent_d1(0.25, 1.0, 0.0, 0.5, PairCase::OneDiffers, PairBranch::Plus);
        assert_eq!(v.magnitude, 1.0);
        assert!(v.phase.abs() < 1e-15);
    }

    #[test]
    fn pair_d3_table_crossings_and_residuals() {
        // c₃ = 0.25, θ = 1e−3, τ_s = 0.5
        let v = pair_independent_d3(0.25, 1e-3, 0.1292, 0.5, PairCase::BothDiffer, PairBranch::Plus)
            .unwrap();
        assert!((v.magnitude - 0.98).abs() < 5e-5, "{}", v.magnitude);
        let v = pair_independent_d3(0.25, 1e-3, 0.10818, 0.5, PairCase::BothDiffer, PairBranch::Minus)
            .unwrap();
        assert!((v.magnitude - 0.98).abs() < 5e-5, "{}", v.magnitude);
        let lim = pair_independent_limit(3, 0.25, 1e-3, 0.5, PairCase::BothDiffer, PairBranch::Plus)
            .unwrap()
            .unwrap();
        assert!(((-lim).exp() - 0.477).abs() < 5e-4, "{}", (-lim).exp());
        let lim = pair_independent_limit(3, 0.25, 1e-3, 0.5, PairCase::BothDiffer, PairBranch::Minus)
            .unwrap()
            .unwrap();
        assert!(((-lim).exp() - 0.771).abs() < 5e-4, "{}", (-lim).exp());
        // weak coupling, large transit time: crossing at 9.7767 on the
        // recovery side, residual 0.9802
        let lim = pair_independent_limit(3, 0.01, 1e-3, 100.0, PairCase::BothDiffer, PairBranch::Plus)
            .unwrap()
            .unwrap();
        assert!(((-lim).exp() - 0.9802).abs() < 5e-5, "{}", (-lim).exp());
    }

    #[test]
    fn pair_collective_cases() {
        // both-differ Minus: exactly preserved for any τ, θ, d
        for d in [1u32, 3] {
            for tau in [0.0, 1.0, 1e4] {
                let v = pair_collective(d, 0.25, 0.7, tau, PairCase::BothDiffer, PairBranch::Minus)
                    .unwrap();
                assert_eq!((v.magnitude, v.phase), (1.0, 0.0));
            }
        }
        // both-differ Plus, d = 3, θ → 0: magnitude → e^{−4c₃} = e^{−1}
        let v = pair_collective(3, 0.25, 1e-5, 1e5, PairCase::BothDiffer, PairBranch::Plus).unwrap();
        assert!((v.magnitude - (-1.0f64).exp()).abs() < 1e-4, "{}", v.magnitude);
        // τ = 0 identity
        let v = pair_collective(3, 0.25, 1.0, 0.0, PairCase::OneDiffers, PairBranch::Plus).unwrap();
        assert_eq!((v.magnitude, v.phase), (1.0, 0.0));
        // unsupported dimensionality
        assert!(matches!(
            pair_collective(2, 0.25, 1.0, 1.0, PairCase::OneDiffers, PairBranch::Plus),
            Err(ClosedFormError::UnsupportedDimension(2))
        ));
    }

    #[test]
    fn collective_limit_of_independent_pair() {
        // τ_s = 0: Minus → constant 1, Plus → e^{−4Γ_d}.
        for tau in [0.3, 1.0, 5.0] {
            let v = pair_independent_d1(0.25, 1e-3, tau, 0.0, PairCase::BothDiffer, PairBranch::Minus);
            assert!((v.magnitude - 1.0).abs() < 1e-12, "τ={tau}");
            let v = pair_independent_d1(0.25, 1e-3, tau, 0.0, PairCase::BothDiffer, PairBranch::Plus);
            let c = pair_collective(1, 0.25, 1e-3, tau, PairCase::BothDiffer, PairBranch::Plus).unwrap();
            assert!((v.magnitude - c.magnitude).abs() < 1e-12, "τ={tau}");

            let v = pair_independent_d3(0.25, 1.0, tau, 0.0, PairCase::BothDiffer, PairBranch::Minus)
                .unwrap();
            assert!((v.magnitude - 1.0).abs() < 1e-12, "τ={tau}");
            let v = pair_independent_d3(0.25, 1.0, tau, 0.0, PairCase::BothDiffer, PairBranch::Plus)
                .unwrap();
            let c = pair_collective(3, 0.25, 1.0, tau, PairCase::BothDiffer, PairBranch::Plus).unwrap();
            assert!((v.magnitude - c.magnitude).abs() < 1e-12, "τ={tau}");
        }
    }

    #[test]
    fn large_transit_time_factorization() {
        // τ_s → ∞: both branches approach e^{−2Γ_d}.
        let tau = 1.5;
        let tau_s = 1e6;
        let single = gamma1_low_temp(0.25, 1e-3, tau);
        for branch in [PairBranch::Plus, PairBranch::Minus] {
            let v = pair_independent_d1(0.25, 1e-3, tau, tau_s, PairCase::BothDiffer, branch);
            assert!(
                (v.magnitude - (-2.0 * single).exp()).abs() < 1e-9,
                "{branch:?}"
            );
        }
        let single = gamma3_exact(0.25, 1.0, tau).unwrap();
        for branch in [PairBranch::Plus, PairBranch::Minus] {
            let v = pair_independent_d3(0.25, 1.0, tau, tau_s, PairCase::BothDiffer, branch).unwrap();
            assert!(
                (v.magnitude - (-2.0 * single).exp()).abs() < 1e-9,
                "{branch:?}"
            );
        }
    }

    #[test]
    fn phase_sign_flips_with_branch() {
        for (d, res) in [
            (1, pair_independent_d1(0.25, 1e-3, 1.0, 0.5, PairCase::OneDiffers, PairBranch::Plus)),
            (
                3,
                pair_independent_d3(0.25, 1e-3, 1.0, 0.5, PairCase::OneDiffers, PairBranch::Plus)
                    .unwrap(),
            ),
        ] {
            let minus = match d {
                1 => pair_independent_d1(0.25, 1e-3, 1.0, 0.5, PairCase::OneDiffers, PairBranch::Minus),
                _ => pair_independent_d3(0.25, 1e-3, 1.0, 0.5, PairCase::OneDiffers, PairBranch::Minus)
                    .unwrap(),
            };
            assert_eq!(minus.magnitude, res.magnitude);
            assert_eq!(minus.phase, -res.phase);
            assert!(res.phase != 0.0);
            assert_eq!(res.conjugate().phase, -res.phase);
        }
    }

    #[test]
    fn regime_asymptote_values() {
        assert!((regime_asymptote(0.25, 0.0, 0.01, Regime::Quiet) - 1.25e-5).abs() < 1e-18);
        assert!((regime_asymptote(0.25, 0.0, E, Regime::Quantum) - 0.25).abs() < 1e-15);
        assert_eq!(regime_asymptote(0.25, 0.5, 4.0, Regime::Thermal), 1.0);
        // thermal-regime slope of the closed form lands within a factor π/2
        let theta = 0.01;
        let tau = 5e4; // 2θτ = 10³
        let ratio = gamma1_low_temp(0.25, theta, tau)
            / regime_asymptote(0.25, theta, tau, Regime::Thermal);
        assert!((ratio - FRAC_PI_2).abs() < 0.02, "{ratio}");
    }
}
