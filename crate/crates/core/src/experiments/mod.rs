//! Convergence sweeps behind the residue, Euler–Maclaurin and operator-rate
//! experiments, and their CSV output.

mod csv;
mod functions;

pub use csv::{emit_csv, emit_table, parse_csv, write_csv_file, ParsedCsv};
pub use functions::{ExactFn, RealFn, TestFunction};

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::{em_error, rate_fit, RateFit};
use crate::error::{Error, Result};
use crate::operators::{caputo_l1_at, frac_integral_l1_at, residue_with, GridFunction, UniformMesh};
use crate::oracle::QuadratureSpec;
use crate::weights::{kernel_table, FracOrder};

/// Errors at or below this level are treated as exact (no slope is fitted).
pub const DEGENERATE_FLOOR: f64 = 1e-13;

/// Powers of two `8, 16, …, 8192`.
pub fn default_n_list() -> Vec<usize> {
    (3..=13).map(|k| 1usize << k).collect()
}

/// `10, 100, …, 10^i_max` (steps `h = 10^{−i}` at `t = 1`).
pub fn decade_n_list(i_max: u32) -> Vec<usize> {
    (1..=i_max).map(|i| 10usize.pow(i)).collect()
}

/// What a report measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Residue,
    EmIntegral,
    IntegralRate,
    DerivativeRate,
}

impl SweepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKind::Residue => "residue",
            SweepKind::EmIntegral => "em",
            SweepKind::IntegralRate => "rates-integral",
            SweepKind::DerivativeRate => "rates-derivative",
        }
    }
}

/// Which discrete operator a rate sweep measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Integral,
    Derivative,
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integral" => Ok(Which::Integral),
            "derivative" => Ok(Which::Derivative),
            _ => Err(Error::domain(format!("expected integral or derivative, got `{s}`"))),
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Integral => "integral",
            Which::Derivative => "derivative",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportConfig {
    pub kind: SweepKind,
    pub alpha: f64,
    pub t: Option<f64>,
    pub function: Option<String>,
}

/// Abscissae (`h` or `m`), errors, and the fitted log–log line.
///
/// `fit` is `None` for degenerate data: every error below
/// [`DEGENERATE_FLOOR`], some error exactly zero, or no spread in the abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub abscissae: Vec<f64>,
    pub errors: Vec<f64>,
    pub fit: Option<RateFit>,
    pub config: ReportConfig,
}

impl ConvergenceReport {
    pub fn from_points(abscissae: Vec<f64>, errors: Vec<f64>, config: ReportConfig) -> Result<Self> {
        if abscissae.len() != errors.len() {
            return Err(Error::domain("abscissae and errors differ in length"));
        }
        if errors.iter().any(|e| !(*e >= 0.0)) {
            return Err(Error::domain("errors must be nonnegative"));
        }
        let degenerate = errors.len() < 2
            || errors.iter().all(|&e| e <= DEGENERATE_FLOOR)
            || errors.contains(&0.0);
        let fit = if degenerate {
            None
        } else {
            match rate_fit(&abscissae, &errors) {
                Ok(fit) => Some(fit),
                Err(Error::DegenerateFit(_)) => None,
                Err(e) => return Err(e),
            }
        };
        Ok(ConvergenceReport {
            abscissae,
            errors,
            fit,
            config,
        })
    }

    pub fn is_degenerate(&self) -> bool {
        self.fit.is_none()
    }

    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }

    pub fn len(&self) -> usize {
        self.errors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }
}

fn check_increasing(list: &[usize], min: usize, what: &str) -> Result<()> {
    if list.is_empty() {
        return Err(Error::domain(format!("{what} must not be empty")));
    }
    if list.iter().any(|&n| n < min) {
        return Err(Error::domain(format!("every entry of {what} must be at least {min}")));
    }
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!("{what} must be strictly increasing")));
    }
    Ok(())
}

fn check_final_time(t_final: f64) -> Result<()> {
    if t_final > 0.0 && t_final.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("final time must be positive, got {t_final}")))
    }
}

/// Residue `|J^α δ^α y_n − y_n + y_0|` at `t_final` for each `n`, against `h = t_final/n`.
pub fn residue_sweep(
    func: &TestFunction,
    order: FracOrder,
    t_final: f64,
    n_list: &[usize],
) -> Result<ConvergenceReport> {
    check_increasing(n_list, 1, "n list")?;
    check_final_time(t_final)?;
    // S_m does not depend on h: one table serves every mesh
    let kernel = kernel_table(*n_list.last().unwrap(), order)?;
    let mut hs = Vec::with_capacity(n_list.len());
    let mut errors = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mesh = UniformMesh::with_final_time(t_final, n)?;
        let y = GridFunction::sample(mesh, |t| func.eval(t))?;
        errors.push(residue_with(&y, order, &kernel, n)?);
        hs.push(mesh.h());
    }
    ConvergenceReport::from_points(
        hs,
        errors,
        ReportConfig {
            kind: SweepKind::Residue,
            alpha: order.alpha(),
            t: Some(t_final),
            function: Some(func.name().to_string()),
        },
    )
}

/// `|m∫_1^m f − Γ(1+α)Γ(2−α)|` against `m`.
pub fn em_sweep(order: FracOrder, m_list: &[usize], spec: &QuadratureSpec) -> Result<ConvergenceReport> {
    check_increasing(m_list, 2, "m list")?;
    let errors = m_list
        .iter()
        .map(|&m| em_error(m, order, spec))
        .collect::<Result<Vec<_>>>()?;
    ConvergenceReport::from_points(
        m_list.iter().map(|&m| m as f64).collect(),
        errors,
        ReportConfig {
            kind: SweepKind::EmIntegral,
            alpha: order.alpha(),
            t: None,
            function: None,
        },
    )
}

/// `|discrete(t_final) − exact(t_final)|` for `J^α` or `δ^α`, against `h`.
pub fn operator_rate_sweep(
    func: &TestFunction,
    order: FracOrder,
    t_final: f64,
    n_list: &[usize],
    which: Which,
    spec: &QuadratureSpec,
) -> Result<ConvergenceReport> {
    check_increasing(n_list, 1, "n list")?;
    check_final_time(t_final)?;
    let exact = match which {
        Which::Integral => func.reference_integral(order, t_final, spec)?,
        Which::Derivative => func.reference_caputo(order, t_final, spec)?,
    };
    let mut hs = Vec::with_capacity(n_list.len());
    let mut errors = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mesh = UniformMesh::with_final_time(t_final, n)?;
        let y = GridFunction::sample(mesh, |t| func.eval(t))?;
        let discrete = match which {
            Which::Integral => frac_integral_l1_at(&y, order, n)?,
            Which::Derivative => caputo_l1_at(&y, order, n)?,
        };
        errors.push((discrete - exact).abs());
        hs.push(mesh.h());
    }
    ConvergenceReport::from_points(
        hs,
        errors,
        ReportConfig {
            kind: match which {
                Which::Integral => SweepKind::IntegralRate,
                Which::Derivative => SweepKind::DerivativeRate,
            },
            alpha: order.alpha(),
            t: Some(t_final),
            function: Some(func.name().to_string()),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::remainder_constant_r;

    fn order(a: f64) -> FracOrder {
        FracOrder::new(a).unwrap()
    }

    #[test]
    fn grids() {
        let d = default_n_list();
        assert_eq!(d.first(), Some(&8));
        assert_eq!(d.last(), Some(&8192));
        assert_eq!(d.len(), 11);
        assert_eq!(decade_n_list(3), vec![10, 100, 1000]);
    }

    #[test]
    fn list_validation() {
        let f = TestFunction::cubic();
        assert!(residue_sweep(&f, order(0.5), 1.0, &[]).is_err());
        assert!(residue_sweep(&f, order(0.5), 1.0, &[16, 8]).is_err());
        assert!(residue_sweep(&f, order(0.5), 1.0, &[0, 8]).is_err());
        assert!(residue_sweep(&f, order(0.5), 0.0, &[8]).is_err());
        assert!(em_sweep(order(0.5), &[1, 10], &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn constant_function_is_degenerate() {
        let r = residue_sweep(&TestFunction::constant(1.0), order(0.5), 1.0, &default_n_list()).unwrap();
        assert!(r.errors.iter().all(|&e| e <= 1e-13));
        assert!(r.is_degenerate());
        assert_eq!(r.len(), 11);
    }

    #[test]
    fn residue_sweep_uses_mesh_steps() {
        let r = residue_sweep(&TestFunction::sine(), order(0.5), 2.0, &[4, 8]).unwrap();
        assert_eq!(r.abscissae, vec![0.5, 0.25]);
        assert_eq!(r.config.function.as_deref(), Some("sine"));
        assert_eq!(r.config.t, Some(2.0));
    }

    #[test]
    fn kink_residues_decay() {
        let r = residue_sweep(&TestFunction::kink(), order(0.5), 1.0, &default_n_list()).unwrap();
        assert!(r.errors.last().unwrap() < &(r.errors[0] / 10.0));
        assert!(r.slope().unwrap() > 0.0);
    }

    #[test]
    fn em_sweep_symmetric_in_order() {
        let spec = QuadratureSpec::default();
        let lo = em_sweep(order(0.25), &[100, 1000], &spec).unwrap();
        let hi = em_sweep(order(0.75), &[100, 1000], &spec).unwrap();
        for (a, b) in lo.errors.iter().zip(&hi.errors) {
            assert!((a - b).abs() <= 2.0 * spec.abs_tol);
        }
    }

    #[test]
    fn em_sweep_at_half() {
        let r = em_sweep(order(0.5), &[100, 1000, 10_000, 100_000], &QuadratureSpec::default()).unwrap();
        assert!((r.slope().unwrap() + 0.5).abs() <= 0.1, "{:?}", r.slope());
    }

    #[test]
    fn derivative_rate_of_half_square() {
        let f = TestFunction::scaled_monomial("half-square", 2.0, 0.5).unwrap();
        let ns: Vec<usize> = (6..=12).map(|k| 1 << k).collect();
        let spec = QuadratureSpec::default();
        let r = operator_rate_sweep(&f, order(0.5), 1.0, &ns, Which::Derivative, &spec).unwrap();
        assert!((r.slope().unwrap() - 1.5).abs() <= 0.1);
        let h = *r.abscissae.last().unwrap();
        let scaled = r.errors.last().unwrap() / h.powf(1.5);
        let c = remainder_constant_r(order(0.5));
        assert!((scaled - c).abs() <= 0.1 * c, "{scaled} vs {c}");
    }

    #[test]
    fn integral_rate_of_linear() {
        let f = TestFunction::monomial(1.0).unwrap();
        let ns: Vec<usize> = (6..=12).map(|k| 1 << k).collect();
        let r = operator_rate_sweep(&f, order(0.5), 1.0, &ns, Which::Integral, &QuadratureSpec::default()).unwrap();
        assert!((r.slope().unwrap() - 1.0).abs() <= 0.1);
    }

    #[test]
    fn derivative_of_linear_is_exact() {
        let f = TestFunction::monomial(1.0).unwrap();
        let r = operator_rate_sweep(&f, order(0.3), 1.0, &[8, 64, 512], Which::Derivative, &QuadratureSpec::default())
            .unwrap();
        assert!(r.errors.iter().all(|&e| e <= 1e-13), "{:?}", r.errors);
        assert!(r.is_degenerate());
    }

    #[test]
    fn sine_rates_use_quadrature_references() {
        let spec = QuadratureSpec::default();
        let ns: Vec<usize> = (5..=10).map(|k| 1 << k).collect();
        let d = operator_rate_sweep(&TestFunction::sine(), order(0.4), 1.0, &ns, Which::Derivative, &spec).unwrap();
        assert!((d.slope().unwrap() - 1.6).abs() <= 0.15, "{:?}", d.slope());
        let i = operator_rate_sweep(&TestFunction::sine(), order(0.4), 1.0, &ns, Which::Integral, &spec).unwrap();
        assert!((i.slope().unwrap() - 1.0).abs() <= 0.1, "{:?}", i.slope());
    }

    #[test]
    fn unsupported_reference_surfaces() {
        let f = TestFunction::new("opaque", f64::exp);
        let err = operator_rate_sweep(&f, order(0.5), 1.0, &[8], Which::Derivative, &QuadratureSpec::default());
        assert!(matches!(err, Err(Error::UnsupportedFunction { .. })));
    }

    #[test]
    fn which_parses() {
        assert_eq!("integral".parse::<Which>().unwrap(), Which::Integral);
        assert_eq!("derivative".parse::<Which>().unwrap(), Which::Derivative);
        assert!("both".parse::<Which>().is_err());
    }
}
