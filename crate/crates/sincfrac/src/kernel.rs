//! Normalized sinc, the scaled operator kernel, and the delta-mollifier
//! construction.

use crate::error::{ensure_finite, Error, Result};
use crate::operator::FunctionSpec;
use crate::quad::integrate_panels;

/// Fractional order varpi in the open interval (0, 1) together with the
/// normalization constant evaluated at that order.
///
/// The normalization defaults to 1 for every order, consistent with the
/// endpoint values 1 at varpi = 0 and varpi = 1; a caller-supplied
/// normalization function can override it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    varpi: f64,
    norm: f64,
}

impl FracOrder {
    /// Order with the default normalization of 1.
    pub fn new(varpi: f64) -> Result<Self> {
        Self::with_norm(varpi, 1.0)
    }

    /// Order with an explicit normalization value.
    pub fn with_norm(varpi: f64, norm: f64) -> Result<Self> {
        if !varpi.is_finite() || varpi <= 0.0 || varpi >= 1.0 {
            return Err(Error::Config(format!(
                "varpi must lie in open interval (0,1), got {varpi}"
            )));
        }
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::Config(format!(
                "normalization must be positive and finite, got {norm}"
            )));
        }
        Ok(Self { varpi, norm })
    }

    /// Order with the normalization evaluated from a caller-supplied function.
    pub fn with_norm_fn(varpi: f64, norm_fn: impl Fn(f64) -> f64) -> Result<Self> {
        Self::with_norm(varpi, norm_fn(varpi))
    }

    pub fn varpi(&self) -> f64 {
        self.varpi
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// The kernel rate c = varpi / (1 - varpi).
    pub fn rate(&self) -> f64 {
        self.varpi / (1.0 - self.varpi)
    }

    /// The kernel prefactor varpi * norm / (1 - varpi).
    pub fn amplitude(&self) -> f64 {
        self.rate() * self.norm
    }
}

/// Normalized sinc: sin(pi x) / (pi x), with value 1 at x = 0.
///
/// Near the removable singularity (|pi x| < 1e-4) a four-term Taylor series
/// avoids cancellation.
pub fn nsinc(x: f64) -> Result<f64> {
    ensure_finite("nsinc argument", x)?;
    Ok(nsinc_unchecked(x))
}

/// The operator kernel (varpi p / (1 - varpi)) * nsinc(-varpi u / (1 - varpi)).
pub fn scaled_kernel(ord: &FracOrder, u: f64) -> Result<f64> {
    ensure_finite("scaled_kernel argument", u)?;
    Ok(ord.amplitude() * nsinc(-ord.rate() * u)?)
}

/// (1/varpi) * integral of phi(x) * nsinc(x / varpi) over [-window, window],
/// the mollifier approximation to phi(0).
///
/// The kernel-zero panel split keeps each sub-integral a smooth single arch;
/// the window is an explicit truncation parameter, so the returned value
/// carries the truncated-tail error of phi in addition to the mollifier's
/// own spectral error.
pub fn mollifier_integral(phi: &FunctionSpec, varpi: f64, window: f64) -> Result<f64> {
    if !varpi.is_finite() || varpi <= 0.0 {
        return Err(Error::Config(format!(
            "mollifier scale must be positive, got {varpi}"
        )));
    }
    if !window.is_finite() || window <= 0.0 {
        return Err(Error::Config(format!(
            "mollifier window must be positive, got {window}"
        )));
    }
    // Panels at the kernel zeros x = k * varpi, mirrored about the origin.
    let mut breaks = Vec::new();
    let mut k = (window / varpi).floor() as i64;
    if (k as f64) * varpi >= window {
        k -= 1;
    }
    for i in (1..=k).rev() {
        breaks.push(-(i as f64) * varpi);
    }
    breaks.push(0.0);
    for i in 1..=k {
        breaks.push(i as f64 * varpi);
    }
    let mut all = Vec::with_capacity(breaks.len() + 2);
    all.push(-window);
    all.extend(breaks);
    all.push(window);

    let q = integrate_panels(
        |x| phi.value(x) * nsinc_unchecked(x / varpi) / varpi,
        &all,
        5e-13,
        1e-13,
        200_000,
    )?;
    Ok(q.value)
}

// nsinc over pre-validated finite input, for quadrature hot loops.
pub(crate) fn nsinc_unchecked(x: f64) -> f64 {
    let y = std::f64::consts::PI * x;
    if y.abs() < 1e-4 {
        let y2 = y * y;
        1.0 - y2 / 6.0 + y2 * y2 / 120.0 - y2 * y2 * y2 / 5040.0
    } else {
        y.sin() / y
    }
}
