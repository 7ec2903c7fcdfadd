//! Euler–Maclaurin decomposition of the composition kernel.
//!
//! With `f(x) = ((1−x/m+1/m)^α − (1−x/m)^α)((x/m)^{1−α} − (x/m−1/m)^{1−α})`
//! the kernel is `S_m = m Σ_{k=1}^m f(k)`, and the first-order Euler–Maclaurin
//! formula splits it as
//!
//! ```text
//! S_m = m∫_1^m f  +  (m/2)(f(1) + f(m))  +  m∫_1^m f′(x) P₁(x) dx
//! ```
//!
//! with the sawtooth `P₁(x) = x − ⌊x⌋ − ½`. Each term is computed here
//! independently so the identity can be checked numerically, and the first
//! term's approach to `Γ(1+α)Γ(2−α)` can be measured.
//!
//! Internally `f` is written in terms of the distances `d₀ = x − 1` and
//! `d₁ = m − x` to the two endpoints:
//! `f = w_α(d₁) · w_{1−α}(d₀) / m` with `w_β(d) = (1+d)^β − d^β`.

use crate::error::{Error, Result};
use crate::oracle::quadrature::{integrate_endpoint_power, QuadratureSpec};
use crate::weights::{pow_increment, FracOrder};

/// `d/dd [(1+d)^β − d^β] = β((1+d)^{β−1} − d^{β−1})`.
#[inline]
fn pow_increment_derivative(beta: f64, d: f64) -> f64 {
    if d < 1.0 {
        beta * ((1.0 + d).powf(beta - 1.0) - d.powf(beta - 1.0))
    } else {
        beta * d.powf(beta - 1.0) * ((beta - 1.0) * (1.0 / d).ln_1p()).exp_m1()
    }
}

#[inline]
fn f_dist(d0: f64, d1: f64, m: f64, order: FracOrder) -> f64 {
    pow_increment(order.alpha(), d1) * pow_increment(order.one_minus_alpha(), d0) / m
}

#[inline]
fn fprime_dist(d0: f64, d1: f64, m: f64, order: FracOrder) -> f64 {
    let (a, c) = (order.alpha(), order.one_minus_alpha());
    (pow_increment(a, d1) * pow_increment_derivative(c, d0)
        - pow_increment_derivative(a, d1) * pow_increment(c, d0))
        / m
}

fn check_m(m: usize, min: usize) -> Result<f64> {
    if m < min {
        return Err(Error::domain(format!("m must be at least {min}, got {m}")));
    }
    Ok(m as f64)
}

/// The Euler–Maclaurin integrand `f(x)` on `[1, m]`.
pub fn em_integrand_f(x: f64, m: usize, order: FracOrder) -> Result<f64> {
    let mf = check_m(m, 1)?;
    if !(x >= 1.0 && x <= mf) {
        return Err(Error::domain(format!("x={x} outside [1, {m}]")));
    }
    Ok(f_dist(x - 1.0, mf - x, mf, order))
}

/// Analytic derivative `f′(x)` on the open interval `(1, m)`.
pub fn em_integrand_fprime(x: f64, m: usize, order: FracOrder) -> Result<f64> {
    let mf = check_m(m, 2)?;
    if !(x > 1.0 && x < mf) {
        return Err(Error::domain(format!("x={x} outside (1, {m})")));
    }
    Ok(fprime_dist(x - 1.0, mf - x, mf, order))
}

/// `m∫_1^m f(x) dx`, split at `x = m/2`.
///
/// Each half is integrated in the distance to its outer endpoint, where `f`
/// has a boundary layer of unit width. Tolerances in `spec` apply to the
/// returned (scaled) value.
pub fn em_integral(m: usize, order: FracOrder, spec: &QuadratureSpec) -> Result<f64> {
    let mf = check_m(m, 2)?;
    let half_spec = spec.scale_abs(0.5 / mf);
    let split = 0.5 * mf;
    // x ∈ [1, m/2], d₀ = x − 1
    let left = integrate_endpoint_power(
        |d0| f_dist(d0, (mf - 1.0) - d0, mf, order),
        split - 1.0,
        0.0,
        &half_spec,
    )?;
    // x ∈ [m/2, m], d₁ = m − x
    let right = integrate_endpoint_power(
        |d1| f_dist((mf - 1.0) - d1, d1, mf, order),
        split,
        0.0,
        &half_spec,
    )?;
    Ok(mf * (left.value + right.value))
}

/// `(m/2)(f(1) + f(m)) = (b_m(α) + b_m(1−α))/2`.
pub fn em_endpoint_term(m: usize, order: FracOrder) -> Result<f64> {
    let mf = check_m(m, 1)?;
    let d = mf - 1.0;
    Ok(0.5 * mf * (f_dist(0.0, d, mf, order) + f_dist(d, 0.0, mf, order)))
}

/// `m∫_1^m f′(x) P₁(x) dx` as a sum over unit intervals `(k, k+1)`.
///
/// Each unit interval is halved and integrated from its outer end so that
/// the integrable singularities of `f′` at `x = 1` (`~(x−1)^{−α}`) and at
/// `x = m` (`~(m−x)^{α−1}`) sit at the origin of a substitution.
pub fn em_remainder_integral(m: usize, order: FracOrder, spec: &QuadratureSpec) -> Result<f64> {
    let mf = check_m(m, 2)?;
    let pieces = 2 * (m - 1);
    let piece_spec = spec.scale_abs(1.0 / (mf * pieces as f64));
    let a = order.alpha();
    let mut total = 0.0;
    for k in 1..m {
        let kf = k as f64;
        // x = k + u, u ∈ [0, ½], P₁ = u − ½
        let left_exp = if k == 1 { -a } else { 0.0 };
        let left = integrate_endpoint_power(
            |u| fprime_dist((kf - 1.0) + u, (mf - kf) - u, mf, order) * (u - 0.5),
            0.5,
            left_exp,
            &piece_spec,
        )?;
        // x = k + 1 − u, u ∈ [0, ½], P₁ = ½ − u
        let right_exp = if k + 1 == m { a - 1.0 } else { 0.0 };
        let right = integrate_endpoint_power(
            |u| fprime_dist(kf - u, (mf - kf - 1.0) + u, mf, order) * (0.5 - u),
            0.5,
            right_exp,
            &piece_spec,
        )?;
        total += left.value + right.value;
    }
    Ok(mf * total)
}

/// `|m∫_1^m f − Γ(1+α)Γ(2−α)|`.
pub fn em_error(m: usize, order: FracOrder, spec: &QuadratureSpec) -> Result<f64> {
    Ok((em_integral(m, order, spec)? - order.kernel_limit()).abs())
}

/// The three Euler–Maclaurin terms of `S_m` next to `S_m` itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EMDecomposition {
    pub m: usize,
    pub alpha: f64,
    pub integral_term: f64,
    pub endpoint_term: f64,
    pub remainder_term: f64,
    pub sum_value: f64,
}

impl EMDecomposition {
    pub fn compute(m: usize, order: FracOrder, spec: &QuadratureSpec) -> Result<Self> {
        Ok(EMDecomposition {
            m,
            alpha: order.alpha(),
            integral_term: em_integral(m, order, spec)?,
            endpoint_term: em_endpoint_term(m, order)?,
            remainder_term: em_remainder_integral(m, order, spec)?,
            sum_value: crate::weights::kernel_s(m, order)?,
        })
    }

    /// `S_m − (integral + endpoint + remainder)`.
    pub fn closure_defect(&self) -> f64 {
        self.sum_value - (self.integral_term + self.endpoint_term + self.remainder_term)
    }
}

/// Least-squares line through `(ln x, ln v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Fits `ln v = slope · ln x + intercept` by ordinary least squares.
pub fn rate_fit(abscissae: &[f64], values: &[f64]) -> Result<RateFit> {
    if abscissae.len() != values.len() {
        return Err(Error::DegenerateFit(format!(
            "{} abscissae but {} values",
            abscissae.len(),
            values.len()
        )));
    }
    if abscissae.len() < 2 {
        return Err(Error::DegenerateFit("need at least two points".into()));
    }
    if abscissae.iter().chain(values).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::DegenerateFit("all entries must be positive and finite".into()));
    }
    let xs: Vec<f64> = abscissae.iter().map(|x| x.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all abscissae are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(RateFit {
        slope,
        intercept: my - slope * mx,
    })
}
