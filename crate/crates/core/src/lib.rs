//! L1 discretizations of the Riemann–Liouville integral and the Caputo
//! derivative on uniform meshes, their composition, and the tools used to
//! study how far the composition is from the identity.
//!
//! ```
//! use l1frac::{compose_kernel, FracOrder, GridFunction, UniformMesh};
//!
//! let order = FracOrder::new(0.5)?;
//! let mesh = UniformMesh::with_final_time(1.0, 64)?;
//! let y = GridFunction::sample(mesh, |t| t * t * t)?;
//! let composed = compose_kernel(&y, order)?;
//! let residue = (composed.samples()[64] - (y.samples()[64] - y.samples()[0])).abs();
//! assert!(residue < (1.0f64 / 64.0).sqrt());
//! # Ok::<(), l1frac::Error>(())
//! ```

// NaN must fail the domain checks, hence `!(x >= 0.0)`
#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::excessive_precision,
    clippy::needless_range_loop
)]

pub mod asymptotics;
pub mod error;
pub mod experiments;
pub mod operators;
pub mod oracle;
mod sum;
pub mod weights;

pub use asymptotics::{em_error, rate_fit, EMDecomposition, RateFit};
pub use error::{Error, Result};
pub use experiments::{ConvergenceReport, TestFunction, Which};
pub use operators::{
    caputo_l1, compose_direct, compose_kernel, frac_integral_l1, residue, GridFunction, UniformMesh,
};
pub use oracle::{gamma_fn, zeta_fn, QuadratureSpec};
pub use weights::{kernel_s, kernel_table, weight, weight_sequence, FracOrder, KernelS, WeightSeq};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/composition.md")]
    mod composition {}
    #[doc = include_str!("../../../book/src/euler-maclaurin.md")]
    mod euler_maclaurin {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
