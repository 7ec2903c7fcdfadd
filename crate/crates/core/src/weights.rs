//! L1 weights `b_j(β) = j^β − (j−1)^β` and the composition kernel `S_m`.
//!
//! The weights of the discrete fractional integral (order `α`) and of the L1
//! Caputo derivative (order `1−α`) convolve into the kernel
//!
//! ```text
//! S_m = Σ_{k=1}^{m} b_{m−k+1}(α) · b_k(1−α)
//! ```
//!
//! which is what the composed operator applies to the increments of `y`.
//! `S_m` tends to `Γ(1+α)Γ(2−α)` as `m → ∞`.

use crate::error::{Error, Result};
use crate::oracle::special::gamma_fn;
use crate::sum::{neumaier, Neumaier};

/// Fractional order `α ∈ (0, 1)` together with `β = min(α, 1−α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
    // stored so that `complement` is an exact involution
    one_minus_alpha: f64,
    beta: f64,
}

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::domain(format!(
                "fractional order must lie in (0, 1), got {alpha}"
            )));
        }
        let one_minus_alpha = 1.0 - alpha;
        Ok(FracOrder {
            alpha,
            one_minus_alpha,
            beta: alpha.min(one_minus_alpha),
        })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn one_minus_alpha(&self) -> f64 {
        self.one_minus_alpha
    }

    /// `min(α, 1−α)`: the order of the composition remainder.
    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The order `1−α`.
    pub fn complement(&self) -> FracOrder {
        FracOrder {
            alpha: self.one_minus_alpha,
            one_minus_alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// `Γ(1+α)Γ(2−α)`, the limit of the composition kernel.
    pub fn kernel_limit(&self) -> f64 {
        // Γ(1+α) and Γ(2−α) have arguments in (1, 2): never a pole.
        gamma_fn(1.0 + self.alpha).unwrap() * gamma_fn(1.0 + self.one_minus_alpha).unwrap()
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("weight order must lie in (0, 1], got {beta}")))
    }
}

/// `(1+d)^β − d^β` for real `d ≥ 0`, free of cancellation for large `d`.
///
/// Integer `d = j−1` gives the weight `b_j(β)`.
#[inline]
pub(crate) fn pow_increment(beta: f64, d: f64) -> f64 {
    if d == 0.0 {
        1.0
    } else if d < 1.0 {
        (1.0 + d).powf(beta) - d.powf(beta)
    } else {
        d.powf(beta) * (beta * (1.0 / d).ln_1p()).exp_m1()
    }
}

/// The L1 weight `b_j(β) = j^β − (j−1)^β`.
///
/// Evaluated as `j^β·(−expm1(β·log1p(−1/j)))`, which keeps full relative
/// accuracy where the naive difference cancels.
pub fn weight(j: u64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if j == 0 {
        return Err(Error::domain("weight index must be at least 1"));
    }
    Ok(weight_unchecked(j, beta))
}

#[inline]
fn weight_unchecked(j: u64, beta: f64) -> f64 {
    if j == 1 || beta == 1.0 {
        return 1.0;
    }
    let jf = j as f64;
    jf.powf(beta) * -(beta * (-1.0 / jf).ln_1p()).exp_m1()
}

/// The weights `b_1(β), …, b_n(β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSeq {
    beta: f64,
    values: Vec<f64>,
}

impl WeightSeq {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `values()[j-1] == b_j`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `b_j` for 1-based `j`.
    pub fn get(&self, j: usize) -> Option<f64> {
        j.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// Compensated sum `Σ b_j`; telescopes to `n^β`.
    pub fn sum(&self) -> f64 {
        neumaier(self.values.iter().copied())
    }
}

pub fn weight_sequence(n: usize, beta: f64) -> Result<WeightSeq> {
    check_beta(beta)?;
    if n == 0 {
        return Err(Error::domain("weight sequence length must be at least 1"));
    }
    let values = (1..=n as u64).map(|j| weight_unchecked(j, beta)).collect();
    Ok(WeightSeq { beta, values })
}

/// `S_m` from precomputed weight slices (`a[j-1] = b_j(α)`, `c[j-1] = b_j(1−α)`).
///
/// Products are summed in mirrored pairs `(k, m−k+1)`. Swapping the two
/// slices permutes the products within each pair only, so the result is
/// bit-identical under `α ↔ 1−α`.
fn kernel_from_slices(m: usize, a: &[f64], c: &[f64]) -> f64 {
    debug_assert!(m >= 1 && a.len() >= m && c.len() >= m);
    let product = |k: usize| a[m - k] * c[k - 1];
    let mut acc = Neumaier::default();
    for k in 1..=m / 2 {
        acc.add(product(k) + product(m - k + 1));
    }
    if m % 2 == 1 {
        acc.add(product(m / 2 + 1));
    }
    acc.value()
}

/// The composition kernel `S_m = Σ_{k=1}^m b_{m−k+1}(α) b_k(1−α)`.
pub fn kernel_s(m: usize, order: FracOrder) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("kernel index must be at least 1"));
    }
    let a = weight_sequence(m, order.alpha())?;
    let c = weight_sequence(m, order.one_minus_alpha())?;
    Ok(kernel_from_slices(m, &a.values, &c.values))
}

/// `S_1, …, S_n` together with their limit `Γ(1+α)Γ(2−α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelS {
    alpha: f64,
    values: Vec<f64>,
    limit: f64,
}

impl KernelS {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `values()[m-1] == S_m`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn limit(&self) -> f64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `S_m` for 1-based `m`.
    pub fn get(&self, m: usize) -> Option<f64> {
        m.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

/// Tabulates `S_1..S_n` by direct summation, `O(n²)` overall.
pub fn kernel_table(n: usize, order: FracOrder) -> Result<KernelS> {
    if n == 0 {
        return Err(Error::domain("kernel table length must be at least 1"));
    }
    let a = weight_sequence(n, order.alpha())?;
    let c = weight_sequence(n, order.one_minus_alpha())?;
    let values = (1..=n)
        .map(|m| kernel_from_slices(m, &a.values, &c.values))
        .collect();
    Ok(KernelS {
        alpha: order.alpha(),
        values,
        limit: order.kernel_limit(),
    })
}
