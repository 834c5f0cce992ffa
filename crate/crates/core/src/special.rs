//! Hurwitz (generalized Riemann) zeta function ζ(2, q) for complex q.
//!
//! ```text
//! ζ(2, q) = ∑_{n=0}^∞ (n + q)^{−2},      Re(q) > 0
//! ```
//!
//! The exact super-Ohmic decoherence function needs ζ(2, q) at
//! q = θ ± i ω_T t, so the argument can carry a very large imaginary part
//! (ω_T t up to ~10⁶ when scanning long-time tails) next to a small real
//! part. Direct summation of the first N terms plus an Euler–Maclaurin
//! tail handles the whole domain: N is chosen so |q + N| is large enough
//! for the tail expansion to converge to machine precision.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialError {
    #[error("ζ(2, q) requires finite q with Re(q) > 0, got q = {0}")]
    ArgumentDomain(Complex64),
}

/// Radius at which the Euler–Maclaurin tail reaches f64 accuracy with the
/// Bernoulli terms kept below.
const TAIL_RADIUS: f64 = 24.0;

/// Bernoulli numbers B₂, B₄, …, B₁₂ for the tail expansion
/// tail(z) = 1/z + 1/(2z²) + Σ_k B_{2k} z^{−(2k+1)}.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

/// Hurwitz zeta ζ(2, q) = Σ_{n≥0} (n + q)^{−2} for Re(q) > 0.
///
/// Relative accuracy is ~1e−14 over the tested domain; the recurrence
/// ζ(2, q) = ζ(2, q + 1) + q^{−2} and conjugate symmetry hold to the same
/// tolerance. Values whose magnitude underflows below 1e−300 (|q| ≳ 1e300)
/// are returned as exact zero.
pub fn hurwitz_zeta2(q: Complex64) -> Result<Complex64, SpecialError> {
    if !(q.re > 0.0) || !q.re.is_finite() || !q.im.is_finite() {
        return Err(SpecialError::ArgumentDomain(q));
    }
    // ζ(2, q) ~ 1/q for huge |q|; avoid overflow in norm_sqr and underflow
    // in the result.
    if q.re.abs() > 1e300 || q.im.abs() > 1e300 {
        return Ok(Complex64::new(0.0, 0.0));
    }

    let shift = if q.norm_sqr() >= TAIL_RADIUS * TAIL_RADIUS {
        0
    } else {
        TAIL_RADIUS as usize
    };

    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..shift {
        let z = q + n as f64;
        sum += z.powi(-2);
    }

    let z = q + shift as f64;
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    // Euler–Maclaurin tail: ∫ + ½f(0) + Bernoulli corrections.
    let mut tail = zinv + 0.5 * zinv2;
    let mut p = zinv2 * zinv;
    for b in BERNOULLI {
        tail += b * p;
        p *= zinv2;
    }

    Ok(sum + tail)
}
