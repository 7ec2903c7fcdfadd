//! Test-function registry for the sweeps.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::{
    caputo_quadrature, exact_caputo_monomial, exact_frac_integral_monomial, frac_integral_quadrature,
    gamma_fn, QuadratureSpec,
};
use crate::weights::FracOrder;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Exact value of an operator applied to the function, as a function of `(order, t)`.
pub type ExactFn = Arc<dyn Fn(FracOrder, f64) -> Result<f64> + Send + Sync>;

/// A named function with whatever references are known for it.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    evaluator: RealFn,
    derivative: Option<RealFn>,
    exact_integral: Option<ExactFn>,
    exact_caputo: Option<ExactFn>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("derivative", &self.derivative.is_some())
            .field("exact_integral", &self.exact_integral.is_some())
            .field("exact_caputo", &self.exact_caputo.is_some())
            .finish()
    }
}

impl TestFunction {
    /// A function with no closed-form references.
    pub fn new(name: impl Into<String>, evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        TestFunction {
            name: name.into(),
            evaluator: Arc::new(evaluator),
            derivative: None,
            exact_integral: None,
            exact_caputo: None,
        }
    }

    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn with_exact_integral(
        mut self,
        e: impl Fn(FracOrder, f64) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        self.exact_integral = Some(Arc::new(e));
        self
    }

    pub fn with_exact_caputo(
        mut self,
        e: impl Fn(FracOrder, f64) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        self.exact_caputo = Some(Arc::new(e));
        self
    }

    /// `c·t^p`, with closed-form references (`p = 0` or `p ≥ 1` for the derivative).
    pub fn scaled_monomial(name: impl Into<String>, p: f64, c: f64) -> Result<Self> {
        if !(p >= 0.0) {
            return Err(Error::domain(format!("monomial power must be >= 0, got {p}")));
        }
        let mut f = TestFunction::new(name, move |t: f64| c * t.powf(p))
            .with_exact_integral(move |o, t| Ok(c * exact_frac_integral_monomial(p, o, t)?));
        if p == 0.0 || p >= 1.0 {
            f = f
                .with_derivative(move |t: f64| if p == 0.0 { 0.0 } else { c * p * t.powf(p - 1.0) })
                .with_exact_caputo(move |o, t| Ok(c * exact_caputo_monomial(p, o, t)?));
        }
        Ok(f)
    }

    /// `t^p`.
    pub fn monomial(p: f64) -> Result<Self> {
        Self::scaled_monomial(format!("monomial:{p}"), p, 1.0)
    }

    pub fn constant(c: f64) -> Self {
        // p = 0 never fails
        Self::scaled_monomial("constant", 0.0, c).unwrap()
    }

    /// `t³`.
    pub fn cubic() -> Self {
        Self::scaled_monomial("cubic", 3.0, 1.0).unwrap()
    }

    /// `sin t`; references come from quadrature.
    pub fn sine() -> Self {
        TestFunction::new("sine", f64::sin).with_derivative(f64::cos)
    }

    /// `|t − ½|`, continuous with a kink at `t = ½`.
    pub fn kink() -> Self {
        TestFunction::new("kink", |t: f64| (t - 0.5).abs())
            .with_exact_integral(|o, t| {
                // |t−½| = (½ − t) + 2(t − ½)₊
                let a = o.alpha();
                let g1 = gamma_fn(1.0 + a)?;
                let g2 = gamma_fn(2.0 + a)?;
                let ramp = if t > 0.5 { 2.0 * (t - 0.5).powf(1.0 + a) / g2 } else { 0.0 };
                Ok(0.5 * t.powf(a) / g1 - t.powf(1.0 + a) / g2 + ramp)
            })
            .with_exact_caputo(|o, t| {
                let g = gamma_fn(2.0 - o.alpha())?;
                let c = o.one_minus_alpha();
                let ramp = if t > 0.5 { 2.0 * (t - 0.5).powf(c) / g } else { 0.0 };
                Ok(-t.powf(c) / g + ramp)
            })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.evaluator)(t)
    }

    pub fn evaluator(&self) -> &RealFn {
        &self.evaluator
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// `I^α y(t)`: closed form if known, quadrature otherwise.
    pub fn reference_integral(&self, order: FracOrder, t: f64, spec: &QuadratureSpec) -> Result<f64> {
        match &self.exact_integral {
            Some(e) => e(order, t),
            None => frac_integral_quadrature(|s| self.eval(s), order, t, spec),
        }
    }

    /// `D^α y(t)`: closed form if known, quadrature of `y′` otherwise.
    pub fn reference_caputo(&self, order: FracOrder, t: f64, spec: &QuadratureSpec) -> Result<f64> {
        match (&self.exact_caputo, &self.derivative) {
            (Some(e), _) => e(order, t),
            (None, Some(d)) => caputo_quadrature(|s| d(s), order, t, spec),
            (None, None) => Err(Error::UnsupportedFunction {
                name: self.name.clone(),
                what: "Caputo derivative",
            }),
        }
    }
}

/// Parses `cubic`, `sine`, `kink`, `constant` or `monomial:P`.
impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cubic" => Ok(Self::cubic()),
            "sine" => Ok(Self::sine()),
            "kink" => Ok(Self::kink()),
            "constant" => Ok(Self::constant(1.0)),
            _ => {
                let p = s
                    .strip_prefix("monomial:")
                    .and_then(|p| p.parse::<f64>().ok())
                    .ok_or_else(|| {
                        Error::domain(format!(
                            "unknown function `{s}` (expected cubic, sine, kink, constant or monomial:P)"
                        ))
                    })?;
                Self::monomial(p)
            }
        }
    }
}
