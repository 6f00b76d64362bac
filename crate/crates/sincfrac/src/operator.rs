//! The sinc-kernel fractional derivative, its integer-order extension, and
//! the closed form for the identity map.

use std::fmt;
use std::sync::Arc;

use crate::error::{ensure_finite, Error, Result};
use crate::kernel::FracOrder;
use crate::quad::{compensated_sum, integrate_panels, PanelStrategy, QuadratureConfig};
use crate::special::sine_integral;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar function with an optional analytic first derivative and a
/// fallback central-difference step.
#[derive(Clone)]
pub struct FunctionSpec {
    f: ScalarFn,
    d1: Option<ScalarFn>,
    fd_step: f64,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt.debug_struct("FunctionSpec")
            .field("analytic_derivative", &self.d1.is_some())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

/// Probe points for the analytic-derivative consistency self-check.
const DERIVATIVE_PROBES: [f64; 3] = [-0.5, 0.25, 1.0];

impl FunctionSpec {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(f),
            d1: None,
            fd_step: 1e-5,
        }
    }

    /// Attach an analytic first derivative. It is checked against an O(h^2)
    /// central difference (h = 1e-4, tolerance 1e-4) at three probe points.
    pub fn with_derivative(
        mut self,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let d1: ScalarFn = Arc::new(d1);
        let h = 1e-4;
        for x in DERIVATIVE_PROBES {
            let fd = ((self.f)(x + h) - (self.f)(x - h)) / (2.0 * h);
            let gap = (d1(x) - fd).abs();
            if !gap.is_finite() || gap > 1e-4 {
                return Err(Error::Config(format!(
                    "analytic derivative disagrees with central difference at x = {x}: \
                     gap {gap:.3e} exceeds 1e-4"
                )));
            }
        }
        self.d1 = Some(d1);
        Ok(self)
    }

    /// Override the central-difference step (must lie in (0, 0.1]).
    pub fn with_fd_step(mut self, h: f64) -> Result<Self> {
        if !h.is_finite() || h <= 0.0 || h > 1e-1 {
            return Err(Error::Config(format!(
                "fd_step must lie in (0, 0.1], got {h}"
            )));
        }
        self.fd_step = h;
        Ok(self)
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// First derivative: analytic when supplied, otherwise the O(h^2)
    /// central difference with the configured step.
    pub fn derivative(&self, x: f64) -> f64 {
        match &self.d1 {
            Some(d1) => d1(x),
            None => {
                ((self.f)(x + self.fd_step) - (self.f)(x - self.fd_step)) / (2.0 * self.fd_step)
            }
        }
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.d1.is_some()
    }
}

/// The fractional derivative of order varpi of `f` at `mu` with base point
/// `a`:
///
/// (varpi p / (1 - varpi)) * int_a^mu nsinc(-varpi (mu - x)/(1 - varpi)) f'(x) dx
///
/// The integral is split at the kernel zeros x = mu - k/c (c the kernel
/// rate) and each panel refined adaptively; fewer than four interior zeros
/// triggers the uniform-panel fallback.
pub fn frac_derivative(
    f: &FunctionSpec,
    a: f64,
    mu: f64,
    ord: &FracOrder,
    q: &QuadratureConfig,
) -> Result<f64> {
    ensure_finite("integration base a", a)?;
    ensure_finite("evaluation point mu", mu)?;
    q.validate()?;
    if a > mu {
        return Err(Error::Domain(format!(
            "base point a = {a} must not exceed mu = {mu}"
        )));
    }
    if a == mu {
        return Ok(0.0);
    }
    let c = ord.rate();
    let breaks = panel_breaks(a, mu, c, q.panel_strategy);
    let q_res = integrate_panels(
        |x| kernel_at(c * (mu - x)) * f.derivative(x),
        &breaks,
        q.rel_tol,
        q.abs_tol,
        q.max_panels,
    )?;
    Ok(ord.amplitude() * q_res.value)
}

fn panel_breaks(a: f64, mu: f64, c: f64, strategy: PanelStrategy) -> Vec<f64> {
    const UNIFORM_PANELS: usize = 8;
    let zero_count = ((mu - a) * c).floor() as usize;
    let use_zeros = matches!(strategy, PanelStrategy::KernelZeros) && zero_count >= 4;
    if use_zeros {
        let mut breaks = Vec::with_capacity(zero_count + 2);
        breaks.push(a);
        for k in (1..=zero_count).rev() {
            let x = mu - k as f64 / c;
            if x > a && x < mu {
                breaks.push(x);
            }
        }
        breaks.push(mu);
        breaks
    } else {
        let h = (mu - a) / UNIFORM_PANELS as f64;
        let mut breaks: Vec<f64> = (0..UNIFORM_PANELS).map(|i| a + i as f64 * h).collect();
        breaks.push(mu);
        breaks
    }
}

// Kernel with the sign spelled as in the operator definition; nsinc is even
// so the value equals nsinc(c (mu - x)).
fn kernel_at(arg: f64) -> f64 {
    crate::kernel::nsinc_unchecked(-arg)
}

/// Fractional derivative of order n + varpi: the n-th integer derivative
/// (with respect to mu) of the fractional derivative, by O(h^2) central
/// differences of the full inner quadrature.
pub fn frac_derivative_higher(
    f: &FunctionSpec,
    a: f64,
    mu: f64,
    n: u32,
    ord: &FracOrder,
    q: &QuadratureConfig,
) -> Result<f64> {
    if n == 0 {
        return frac_derivative(f, a, mu, ord, q);
    }
    // Step balancing the O(h^2) truncation against quadrature noise of
    // magnitude ~abs_tol amplified by h^{-n}.
    let h = q.abs_tol.max(1e-14).powf(1.0 / (n as f64 + 2.0));
    let mut terms = Vec::with_capacity(n as usize + 1);
    let mut binom = 1.0f64;
    for k in 0..=n {
        let offset = (n as f64 - 2.0 * k as f64) * h;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let value = frac_derivative(f, a, mu + offset, ord, q)?;
        terms.push(sign * binom * value);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    Ok(compensated_sum(terms) / (2.0 * h).powi(n as i32))
}

/// Closed form of the fractional derivative of the identity map on [0, mu]:
/// p * Si(pi varpi mu / (1 - varpi)) / pi.
pub fn linear_case_closed_form(mu: f64, ord: &FracOrder) -> Result<f64> {
    ensure_finite("mu", mu)?;
    if mu < 0.0 {
        return Err(Error::Domain(format!("mu must be non-negative, got {mu}")));
    }
    let si = sine_integral(std::f64::consts::PI * ord.rate() * mu)?;
    Ok(ord.norm() * si / std::f64::consts::PI)
}

/// One row of a [`limit_probe`] table.
#[derive(Debug, Clone, Copy)]
pub struct LimitProbeRow {
    pub varpi: f64,
    pub value: f64,
}

/// Diagnostic tabulation of the fractional derivative across a sequence of
/// orders, together with the two candidate endpoint limits. No assertion is
/// made about which (if either) limit the operator attains.
#[derive(Debug, Clone)]
pub struct LimitProbe {
    pub rows: Vec<LimitProbeRow>,
    /// f'(mu), the candidate varpi -> 0 reference.
    pub derivative_reference: f64,
    /// f(mu) - f(a), the candidate varpi -> 1 reference.
    pub increment_reference: f64,
}

pub fn limit_probe(
    f: &FunctionSpec,
    a: f64,
    mu: f64,
    orders: &[f64],
    q: &QuadratureConfig,
) -> Result<LimitProbe> {
    let mut rows = Vec::with_capacity(orders.len());
    for &varpi in orders {
        let ord = FracOrder::new(varpi)?;
        let value = frac_derivative(f, a, mu, &ord, q)?;
        rows.push(LimitProbeRow { varpi, value });
    }
    Ok(LimitProbe {
        rows,
        derivative_reference: f.derivative(mu),
        increment_reference: f.value(mu) - f.value(a),
    })
}
