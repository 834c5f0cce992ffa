//! Dimensionless bosonic-bath model.
//!
//! The bath is a continuum of harmonic modes with spectral density
//!
//! ```text
//! I_d(x) = c_d · x^d · e^{−x},      x = ω/ω_c ≥ 0
//! ```
//!
//! where `d` is the dimensionality of the field (d = 1 "Ohmic",
//! d = 3 "super-Ohmic") and `c_d` > 0 the dimensionless coupling strength.
//! Thermal effects enter through the weight coth(x/2θ) = 1 + 2⟨N⟩ with
//! ⟨N⟩ the Bose-Einstein mean occupation number and θ = ω_T/ω_c the
//! temperature parameter (θ = 0 is the pure vacuum).

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BathError {
    #[error("bath dimensionality must be an integer ≥ 1, got {0}")]
    InvalidDimension(u32),
    #[error("coupling strength must be positive and finite, got {0}")]
    InvalidCoupling(f64),
    #[error("temperature parameter must be nonnegative and finite, got {0}")]
    InvalidTemperature(f64),
    #[error("frequency argument out of domain: {0}")]
    FrequencyDomain(f64),
}

/// Bath description: spectral exponent `d`, coupling `c`, temperature `θ`.
///
/// Closed-form decoherence functions exist for d ∈ {1, 3}; the quadrature
/// path accepts any d ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    d: u32,
    c: f64,
    theta: f64,
}

impl BathSpec {
    pub fn new(d: u32, c: f64, theta: f64) -> Result<Self, BathError> {
        if d < 1 {
            return Err(BathError::InvalidDimension(d));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(BathError::InvalidCoupling(c));
        }
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(BathError::InvalidTemperature(theta));
        }
        Ok(Self { d, c, theta })
    }

    /// Ohmic bath (d = 1).
    pub fn ohmic(c: f64, theta: f64) -> Result<Self, BathError> {
        Self::new(1, c, theta)
    }

    /// Super-Ohmic bath (d = 3).
    pub fn super_ohmic(c: f64, theta: f64) -> Result<Self, BathError> {
        Self::new(3, c, theta)
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    pub fn coupling(&self) -> f64 {
        self.c
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn is_vacuum(&self) -> bool {
        self.theta == 0.0
    }

    /// Whether the analytic decoherence functions cover this dimensionality.
    pub fn has_closed_form(&self) -> bool {
        matches!(self.d, 1 | 3)
    }

    /// Spectral density I_d(x) = c · x^d · e^{−x} at dimensionless frequency x.
    pub fn spectral_density(&self, x: f64) -> Result<f64, BathError> {
        if !(x >= 0.0) {
            return Err(BathError::FrequencyDomain(x));
        }
        Ok(self.spectral_density_unchecked(x))
    }

    #[inline]
    pub(crate) fn spectral_density_unchecked(&self, x: f64) -> f64 {
        self.c * x.powi(self.d as i32) * (-x).exp()
    }

    /// Thermal weight coth(x/2θ) of this bath at frequency x > 0.
    pub fn thermal_weight(&self, x: f64) -> Result<f64, BathError> {
        thermal_weight(self.theta, x)
    }
}

/// Bose-Einstein mean occupation number ⟨N⟩ = 1/(e^{x/θ} − 1).
///
/// Returns 0 for θ = 0 (vacuum). The small-argument regime x/θ → 0 is
/// series-guarded so the quadrature integrands stay smooth down to the
/// ω → 0 endpoint.
pub fn occupation(theta: f64, x: f64) -> Result<f64, BathError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(BathError::FrequencyDomain(x));
    }
    if !(theta >= 0.0) {
        return Err(BathError::InvalidTemperature(theta));
    }
    Ok(occupation_unchecked(theta, x))
}

#[inline]
pub(crate) fn occupation_unchecked(theta: f64, x: f64) -> f64 {
    if theta == 0.0 {
        return 0.0;
    }
    let r = x / theta;
    if r < 1e-4 {
        // 1/(e^r − 1) = 1/r − 1/2 + r/12 − O(r³)
        1.0 / r - 0.5 + r / 12.0
    } else {
        1.0 / r.exp_m1()
    }
}

/// Thermal weight coth(x/2θ) = 1 + 2⟨N⟩, exactly 1 for θ = 0.
///
/// Strictly decreasing in x for fixed θ > 0 and increasing in θ for fixed x.
pub fn thermal_weight(theta: f64, x: f64) -> Result<f64, BathError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(BathError::FrequencyDomain(x));
    }
    if !(theta >= 0.0) {
        return Err(BathError::InvalidTemperature(theta));
    }
    Ok(thermal_weight_unchecked(theta, x))
}

#[inline]
pub(crate) fn thermal_weight_unchecked(theta: f64, x: f64) -> f64 {
    1.0 + 2.0 * occupation_unchecked(theta, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_density_examples() {
        let b = BathSpec::new(1, 0.25, 0.0).unwrap();
        assert_eq!(b.spectral_density(0.0).unwrap(), 0.0);

        let b = BathSpec::new(1, 1.0, 0.0).unwrap();
        assert!((b.spectral_density(1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);

        let b = BathSpec::new(3, 0.25, 0.0).unwrap();
        let expect = 0.25 * 8.0 * (-2.0f64).exp();
        assert!((b.spectral_density(2.0).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 0.270671).abs() < 1e-6);
    }

    #[test]
    fn spectral_density_rejects_negative_frequency() {
        let b = BathSpec::new(1, 1.0, 0.0).unwrap();
        assert!(matches!(
            b.spectral_density(-0.5),
            Err(BathError::FrequencyDomain(_))
        ));
    }

    #[test]
    fn spectral_density_decays() {
        for d in [1u32, 2, 3, 5] {
            let b = BathSpec::new(d, 1.0, 0.0).unwrap();
            let far = b.spectral_density(200.0).unwrap();
            assert!((0.0..1e-60).contains(&far), "d={d}: {far}");
        }
    }

    #[test]
    fn thermal_weight_examples() {
        // vacuum limit
        assert_eq!(thermal_weight(0.0, 5.0).unwrap(), 1.0);
        // coth(1) at θ = 1, x = 2
        let w = thermal_weight(1.0, 2.0).unwrap();
        assert!((w - 1.0 / 1.0f64.tanh()).abs() < 1e-14);
        assert!((w - 1.313035).abs() < 1e-6);
        // high-temperature expansion ~ 2θ/x
        let w = thermal_weight(1e6, 2.0).unwrap();
        assert!((w - 2.0 * 1e6 / 2.0).abs() / w < 1e-6);
    }

    #[test]
    fn thermal_weight_domain_errors() {
        assert!(thermal_weight(1.0, 0.0).is_err());
        assert!(thermal_weight(1.0, -1.0).is_err());
        assert!(occupation(1.0, 0.0).is_err());
    }

    #[test]
    fn occupation_examples() {
        assert_eq!(occupation(0.0, 1.0).unwrap(), 0.0);
        let n = occupation(1.0, 1.0).unwrap();
        assert!((n - 1.0 / (1.0f64.exp() - 1.0)).abs() < 1e-14);
        assert!((n - 0.581977).abs() < 1e-6);
        // x/θ = ln 2 gives ⟨N⟩ = 1
        let n = occupation(1.0, 2.0f64.ln()).unwrap();
        assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coth_identity_holds_everywhere() {
        for &theta in &[1e-6, 1e-3, 0.5, 1.0, 37.0, 1e4] {
            for &x in &[1e-8, 1e-4, 0.1, 1.0, 10.0, 300.0] {
                let lhs = thermal_weight(theta, x).unwrap();
                let rhs = 1.0 + 2.0 * occupation(theta, x).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-14 * lhs.abs().max(1.0),
                    "θ={theta} x={x}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn thermal_weight_monotonicity() {
        // grid chosen so the thermal correction stays representable in f64
        let thetas = [0.05, 0.2, 1.0, 5.0, 50.0];
        let xs = [0.05, 0.2, 1.0, 5.0];
        for w in thetas.windows(2) {
            for &x in &xs {
                assert!(
                    thermal_weight(w[0], x).unwrap() < thermal_weight(w[1], x).unwrap(),
                    "not increasing in θ at x={x}"
                );
            }
        }
        for &theta in &thetas {
            for w in xs.windows(2) {
                assert!(
                    thermal_weight(theta, w[0]).unwrap() > thermal_weight(theta, w[1]).unwrap(),
                    "not decreasing in x at θ={theta}"
                );
            }
        }
    }

    #[test]
    fn constructor_validation() {
        assert!(BathSpec::new(0, 1.0, 0.0).is_err());
        assert!(BathSpec::new(1, 0.0, 0.0).is_err());
        assert!(BathSpec::new(1, -1.0, 0.0).is_err());
        assert!(BathSpec::new(1, 1.0, -0.1).is_err());
        assert!(BathSpec::new(1, 1.0, f64::NAN).is_err());
        let b = BathSpec::new(2, 1.0, 0.0).unwrap();
        assert!(!b.has_closed_form());
        assert!(BathSpec::ohmic(1.0, 0.0).unwrap().has_closed_form());
        assert!(BathSpec::super_ohmic(1.0, 2.0).unwrap().has_closed_form());
    }
}
