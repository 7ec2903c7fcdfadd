//! Gamma and Riemann zeta on the real line.
//!
//! `zeta_fn` evaluates the Dirichlet eta series with Borwein's acceleration
//! for `s ≥ 1/2`, and the functional equation for `s < 1/2`. `zeta_series`
//! pushes the accelerated eta sum past `s = 1/2` into the negative axis,
//! giving a second, independent route there.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

/// Terms in Borwein's eta sum. Error is about `(3+√8)^-N`, times `N^|s|`
/// for negative `s`.
const BORWEIN_TERMS: usize = 40;

/// `Γ(x)` for real `x`; poles at `0, −1, −2, …` are errors.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("gamma of NaN"));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole {
            function: "gamma",
            at: x,
        });
    }
    Ok(libm::tgamma(x))
}

/// Borwein coefficients `d_0..d_n` (algorithm 2), normalized by `d_n`.
fn borwein_coefficients() -> [f64; BORWEIN_TERMS + 1] {
    let n = BORWEIN_TERMS;
    let nf = n as f64;
    let mut d = [0.0; BORWEIN_TERMS + 1];
    // term_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), term_0 = 1
    let mut term = 1.0;
    let mut acc = 1.0;
    d[0] = acc;
    for i in 1..=n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d[i] = acc;
    }
    let dn = d[n];
    for v in d.iter_mut() {
        *v /= dn;
    }
    d
}

/// Dirichlet eta `η(s) = Σ (−1)^{k−1} k^{−s}`, Borwein-accelerated.
pub fn dirichlet_eta(s: f64) -> f64 {
    let d = borwein_coefficients();
    let mut sum = 0.0;
    for k in 0..BORWEIN_TERMS {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - 1.0) * ((k + 1) as f64).powf(-s);
    }
    -sum
}

/// `1 − 2^{1−s}`, accurate near `s = 1`.
#[inline]
fn eta_to_zeta_factor(s: f64) -> f64 {
    -((1.0 - s) * LN_2).exp_m1()
}

/// `ζ(s) = η(s)/(1 − 2^{1−s})` straight from the accelerated eta sum.
pub fn zeta_series(s: f64) -> Result<f64> {
    check_zeta_arg(s)?;
    Ok(dirichlet_eta(s) / eta_to_zeta_factor(s))
}

fn check_zeta_arg(s: f64) -> Result<()> {
    if s.is_nan() {
        return Err(Error::domain("zeta of NaN"));
    }
    if s == 1.0 {
        return Err(Error::Pole {
            function: "zeta",
            at: 1.0,
        });
    }
    Ok(())
}

/// `ζ(1−s)` from `ζ(s)`: `ζ(1−s) = 2(2π)^{−s} cos(πs/2) Γ(s) ζ(s)`, `s > 0`.
pub fn zeta_reflect(s: f64, zeta_s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain(format!("reflection needs s > 0, got {s}")));
    }
    Ok(2.0 * (2.0 * PI).powf(-s) * (PI * s / 2.0).cos() * gamma_fn(s)? * zeta_s)
}

/// Riemann zeta for real `s ≠ 1`.
pub fn zeta_fn(s: f64) -> Result<f64> {
    check_zeta_arg(s)?;
    if s >= 0.5 {
        return zeta_series(s);
    }
    // u = 1 − s > 1/2. Write cos(πu/2)ζ(u) = η(u)·sin(πw/2)/expm1(−w ln 2)
    // with w = u − 1 = −s; the ratio is smooth through w = 0 (s = 0).
    let u = 1.0 - s;
    let w = -s;
    let ratio = if w == 0.0 {
        -PI / (2.0 * LN_2)
    } else {
        (PI * w / 2.0).sin() / (-w * LN_2).exp_m1()
    };
    Ok(2.0 * (2.0 * PI).powf(-u) * gamma_fn(u)? * dirichlet_eta(u) * ratio)
}
