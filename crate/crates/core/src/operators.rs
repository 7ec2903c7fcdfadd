//! The L1 discretizations on a uniform mesh `t_k = k·h`:
//!
//! ```text
//! J^α y_n = h^α/Γ(1+α) · Σ_{i=0}^{n−1} b_{n−i}(α) y_{i+1}
//! δ^α y_n = h^{−α}/Γ(2−α) · Σ_{i=0}^{n−1} b_{n−i}(1−α) (y_{i+1} − y_i)
//! ```
//!
//! and their composition `J^α δ^α y_n = y_n − y_0 + r_n`, evaluated either
//! literally or through the kernel `S_m`:
//!
//! ```text
//! J^α δ^α y_n = 1/(Γ(1+α)Γ(2−α)) · Σ_{j=0}^{n−1} S_{n−j} (y_{j+1} − y_j)
//! ```
//!
//! Index 0 of every discrete result is 0 (empty sum).

use crate::error::{Error, Result};
use crate::oracle::special::gamma_fn;
use crate::sum::Neumaier;
use crate::weights::{kernel_table, weight_sequence, FracOrder, KernelS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformMesh {
    h: f64,
    n_steps: usize,
}

impl UniformMesh {
    pub fn new(h: f64, n_steps: usize) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::domain(format!("time step must be positive, got {h}")));
        }
        if n_steps == 0 {
            return Err(Error::domain("mesh needs at least one step"));
        }
        Ok(UniformMesh { h, n_steps })
    }

    /// Mesh of `n_steps` steps ending at `final_time` (`h = final_time/n_steps`).
    pub fn with_final_time(final_time: f64, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::domain("mesh needs at least one step"));
        }
        Self::new(final_time / n_steps as f64, n_steps)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn final_time(&self) -> f64 {
        self.n_steps as f64 * self.h
    }

    /// `t_k = k·h`.
    #[inline]
    pub fn t(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n_steps).map(|k| self.t(k))
    }
}

/// Samples `y_0, …, y_N` on a mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    mesh: UniformMesh,
    samples: Vec<f64>,
}

impl GridFunction {
    pub fn new(mesh: UniformMesh, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != mesh.n_steps + 1 {
            return Err(Error::domain(format!(
                "expected {} samples, got {}",
                mesh.n_steps + 1,
                samples.len()
            )));
        }
        if let Some(k) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("sample {k} is not finite")));
        }
        Ok(GridFunction { mesh, samples })
    }

    /// `y_k = f(t_k)`.
    pub fn sample<F: Fn(f64) -> f64>(mesh: UniformMesh, f: F) -> Result<Self> {
        Self::new(mesh, mesh.times().map(f).collect())
    }

    pub fn mesh(&self) -> &UniformMesh {
        &self.mesh
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    fn with_samples(&self, samples: Vec<f64>) -> GridFunction {
        GridFunction {
            mesh: self.mesh,
            samples,
        }
    }

    fn increments(&self) -> Vec<f64> {
        self.samples.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// `out_n = scale · Σ_{i=0}^{n−1} w[n−i−1] · v[i]` for `n = 1..=v.len()`, `out_0 = 0`.
fn causal_convolution(weights: &[f64], values: &[f64], scale: f64) -> Vec<f64> {
    let n_steps = values.len();
    let mut out = vec![0.0; n_steps + 1];
    for n in 1..=n_steps {
        let mut acc = Neumaier::default();
        for (i, v) in values[..n].iter().enumerate() {
            acc.add(weights[n - i - 1] * v);
        }
        out[n] = scale * acc.value();
    }
    out
}

/// Discrete fractional integral `J^α y`.
pub fn frac_integral_l1(y: &GridFunction, order: FracOrder) -> Result<GridFunction> {
    let a = order.alpha();
    let n = y.mesh.n_steps;
    let b = weight_sequence(n, a)?;
    let scale = y.mesh.h.powf(a) / gamma_fn(1.0 + a)?;
    Ok(y.with_samples(causal_convolution(b.values(), &y.samples[1..], scale)))
}

/// L1 Caputo derivative `δ^α y`.
pub fn caputo_l1(y: &GridFunction, order: FracOrder) -> Result<GridFunction> {
    let a = order.alpha();
    let n = y.mesh.n_steps;
    let b = weight_sequence(n, order.one_minus_alpha())?;
    let scale = y.mesh.h.powf(-a) / gamma_fn(2.0 - a)?;
    Ok(y.with_samples(causal_convolution(b.values(), &y.increments(), scale)))
}

fn check_index(y: &GridFunction, n: usize) -> Result<()> {
    if n == 0 || n > y.mesh.n_steps {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: y.mesh.n_steps,
        });
    }
    Ok(())
}

/// `(J^α y)_n` alone, `O(n)`.
pub fn frac_integral_l1_at(y: &GridFunction, order: FracOrder, n: usize) -> Result<f64> {
    check_index(y, n)?;
    let a = order.alpha();
    let b = weight_sequence(n, a)?;
    let mut acc = Neumaier::default();
    for i in 0..n {
        acc.add(b.values()[n - i - 1] * y.samples[i + 1]);
    }
    Ok(y.mesh.h.powf(a) / gamma_fn(1.0 + a)? * acc.value())
}

/// `(δ^α y)_n` alone, `O(n)`.
pub fn caputo_l1_at(y: &GridFunction, order: FracOrder, n: usize) -> Result<f64> {
    check_index(y, n)?;
    let a = order.alpha();
    let b = weight_sequence(n, order.one_minus_alpha())?;
    let mut acc = Neumaier::default();
    for i in 0..n {
        acc.add(b.values()[n - i - 1] * (y.samples[i + 1] - y.samples[i]));
    }
    Ok(y.mesh.h.powf(-a) / gamma_fn(2.0 - a)? * acc.value())
}

/// `J^α(δ^α y)` evaluated literally, `h^{±α}` factors included.
pub fn compose_direct(y: &GridFunction, order: FracOrder) -> Result<GridFunction> {
    frac_integral_l1(&caputo_l1(y, order)?, order)
}

fn check_kernel(kernel: &KernelS, order: FracOrder, n: usize) -> Result<()> {
    if kernel.alpha() != order.alpha() {
        return Err(Error::domain(format!(
            "kernel built for alpha={} used with alpha={}",
            kernel.alpha(),
            order.alpha()
        )));
    }
    if kernel.len() < n {
        return Err(Error::domain(format!(
            "kernel table has {} entries, need {n}",
            kernel.len()
        )));
    }
    Ok(())
}

/// `J^α δ^α y` through the kernel `S_m`.
pub fn compose_kernel(y: &GridFunction, order: FracOrder) -> Result<GridFunction> {
    let kernel = kernel_table(y.mesh.n_steps, order)?;
    compose_kernel_with(y, order, &kernel)
}

/// As [`compose_kernel`] with a precomputed (possibly shared) kernel table.
pub fn compose_kernel_with(y: &GridFunction, order: FracOrder, kernel: &KernelS) -> Result<GridFunction> {
    check_kernel(kernel, order, y.mesh.n_steps)?;
    let scale = 1.0 / kernel.limit();
    Ok(y.with_samples(causal_convolution(kernel.values(), &y.increments(), scale)))
}

/// `J^α δ^α y_n` at one index via the kernel, `O(n)` given the table.
pub fn compose_kernel_at(y: &GridFunction, order: FracOrder, kernel: &KernelS, n: usize) -> Result<f64> {
    check_index(y, n)?;
    check_kernel(kernel, order, n)?;
    let s = kernel.values();
    let mut acc = Neumaier::default();
    for j in 0..n {
        acc.add(s[n - j - 1] * (y.samples[j + 1] - y.samples[j]));
    }
    Ok(1.0 / kernel.limit() * acc.value())
}

/// The residue `ρ = |J^α δ^α y_n − y_n + y_0|`.
pub fn residue(y: &GridFunction, order: FracOrder, n: usize) -> Result<f64> {
    check_index(y, n)?;
    let kernel = kernel_table(n, order)?;
    residue_with(y, order, &kernel, n)
}

pub fn residue_with(y: &GridFunction, order: FracOrder, kernel: &KernelS, n: usize) -> Result<f64> {
    let composed = compose_kernel_at(y, order, kernel, n)?;
    Ok((composed - y.samples[n] + y.samples[0]).abs())
}
