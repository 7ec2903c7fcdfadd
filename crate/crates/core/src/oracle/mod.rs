//! Reference values for the continuous operators.
//!
//! Closed forms for monomials, singularity-free quadrature for general
//! functions, and the leading constants of the L1 remainders.

pub mod quadrature;
pub mod special;

pub use quadrature::{integrate, integrate_endpoint_power, QuadValue, QuadratureSpec};
pub use special::{dirichlet_eta, gamma_fn, zeta_fn, zeta_reflect, zeta_series};

use crate::error::{Error, Result};
use crate::weights::FracOrder;

/// `I^α t^p = Γ(p+1)/Γ(p+1+α) · t^{p+α}`.
pub fn exact_frac_integral_monomial(p: f64, order: FracOrder, t: f64) -> Result<f64> {
    if !(p >= 0.0) || !(t >= 0.0) {
        return Err(Error::domain(format!(
            "monomial integral needs p >= 0 and t >= 0, got p={p}, t={t}"
        )));
    }
    let a = order.alpha();
    Ok(gamma_fn(p + 1.0)? / gamma_fn(p + 1.0 + a)? * t.powf(p + a))
}

/// `D^α t^p = Γ(p+1)/Γ(p+1−α) · t^{p−α}` for `p ≥ 1`; zero for `p = 0`.
pub fn exact_caputo_monomial(p: f64, order: FracOrder, t: f64) -> Result<f64> {
    if !(t >= 0.0) || !(p == 0.0 || p >= 1.0) {
        return Err(Error::domain(format!(
            "monomial Caputo derivative needs p = 0 or p >= 1 and t >= 0, got p={p}, t={t}"
        )));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let a = order.alpha();
    Ok(gamma_fn(p + 1.0)? / gamma_fn(p + 1.0 - a)? * t.powf(p - a))
}

/// `I^α y(t)` by adaptive quadrature.
///
/// With `s = t(1 − v^{1/α})` the weakly singular kernel becomes constant:
/// `I^α y(t) = t^α/Γ(1+α) · ∫_0^1 y(t(1 − v^{1/α})) dv`. The tolerances in
/// `spec` apply to the returned value. `t = 0` gives 0.
pub fn frac_integral_quadrature<F>(y: F, order: FracOrder, t: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("quadrature time must be finite and >= 0, got {t}")));
    }
    spec.validate()?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let a = order.alpha();
    let scale = t.powf(a) / gamma_fn(1.0 + a)?;
    let inv_alpha = 1.0 / a;
    let inner = integrate(
        |v: f64| y(t * -(inv_alpha * v.ln()).exp_m1()),
        0.0,
        1.0,
        &spec.scale_abs(1.0 / scale),
    )?;
    Ok(scale * inner.value)
}

/// `D^α y(t) = I^{1−α} y′(t)`, given the derivative `y′`.
pub fn caputo_quadrature<F>(y_prime: F, order: FracOrder, t: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    frac_integral_quadrature(y_prime, order.complement(), t, spec)
}

/// `−ζ(α−1)/Γ(2−α)`: the limit of `(δ^α y − D^α y)/h^{2−α}` when `y″ ≡ 1`.
pub fn remainder_constant_r(order: FracOrder) -> f64 {
    let a = order.alpha();
    // α−1 ∈ (−1, 0) and 2−α ∈ (1, 2): neither is a pole
    -zeta_fn(a - 1.0).unwrap() / gamma_fn(2.0 - a).unwrap()
}

/// Asymptotic expansion of the integral remainder `Q_n = I^α y − J^α y`
/// at `t = nh` when `y′ ≡ 1`:
///
/// `Q_n ≈ −h/Γ(1+α) · (½ + ζ(−α)/n^α + α/(12n)) · t^α`.
pub fn remainder_q_expansion(order: FracOrder, t: f64, n: usize) -> Result<f64> {
    if n == 0 || !(t > 0.0) {
        return Err(Error::domain("expansion needs n >= 1 and t > 0"));
    }
    let a = order.alpha();
    let nf = n as f64;
    let h = t / nf;
    let bracket = 0.5 + zeta_fn(-a)? / nf.powf(a) + a / (12.0 * nf);
    Ok(-h / gamma_fn(1.0 + a)? * bracket * t.powf(a))
}
