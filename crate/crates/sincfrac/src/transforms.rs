//! Closed-form Fourier, Laplace, and Sumudu images of the kernel and the
//! operator, plus numerical forward transforms used as independent oracles.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::kernel::FracOrder;
use crate::quad::{adaptive_integrate, QuadratureConfig};

/// Heaviside-argument convention for the kernel's Fourier image.
///
/// `AsPaper` keeps the literal sign (argument c pi + |xi|, strictly positive,
/// so the image is constant in xi); `BandLimited` flips it to c pi - |xi|,
/// the rectangular image of the sinc under the unitary transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FourierMode {
    #[default]
    AsPaper,
    BandLimited,
}

fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x == 0.0 {
        0.5
    } else {
        0.0
    }
}

#[allow(clippy::excessive_precision)]
const INV_SQRT_2PI: f64 = 0.3989422804014326779; // sqrt(1 / 2 pi)

/// Fourier image of nsinc(-varpi x / (1 - varpi)) under the unitary
/// e^{-i xi x}/sqrt(2 pi) convention.
pub fn fourier_image_kernel(ord: &FracOrder, xi: f64, mode: FourierMode) -> Result<f64> {
    ensure_finite("xi", xi)?;
    let c = ord.rate();
    let cutoff = c * std::f64::consts::PI;
    let arg = match mode {
        FourierMode::AsPaper => cutoff + xi.abs(),
        FourierMode::BandLimited => cutoff - xi.abs(),
    };
    Ok(INV_SQRT_2PI / c * heaviside(arg))
}

/// Fourier image of the operator applied to a function with image `pi_hat`:
/// i xi sqrt(1/2pi) p H(.) pi_hat(xi).
pub fn fourier_image_operator(
    pi_hat: &FourierImage,
    xi: f64,
    ord: &FracOrder,
    mode: FourierMode,
) -> Result<Complex64> {
    ensure_finite("xi", xi)?;
    let c = ord.rate();
    let cutoff = c * std::f64::consts::PI;
    let arg = match mode {
        FourierMode::AsPaper => cutoff + xi.abs(),
        FourierMode::BandLimited => cutoff - xi.abs(),
    };
    let factor = Complex64::new(0.0, xi) * INV_SQRT_2PI * ord.norm() * heaviside(arg);
    Ok(factor * pi_hat.eval(xi)?)
}

/// Laplace image of the unscaled kernel: (1/(pi c)) arctan(pi c / s).
pub fn laplace_image_kernel(ord: &FracOrder, s: f64) -> Result<f64> {
    require_positive_real_part(s)?;
    let c = ord.rate();
    let pc = std::f64::consts::PI * c;
    Ok((pc / s).atan() / pc)
}

/// Complex-s variant on the principal arctan branch (needed by the Talbot
/// contour).
pub fn laplace_image_kernel_complex(ord: &FracOrder, s: Complex64) -> Result<Complex64> {
    require_positive_complex(s)?;
    let c = ord.rate();
    let pc = std::f64::consts::PI * c;
    Ok((pc / s).atan() / pc)
}

/// Laplace image of the operator: (p/pi) arctan(pi c / s) (s Pi(s) - Pi(0)).
pub fn laplace_image_operator(pi_s: f64, pi_0: f64, s: f64, ord: &FracOrder) -> Result<f64> {
    require_positive_real_part(s)?;
    let c = ord.rate();
    let atan = (std::f64::consts::PI * c / s).atan();
    Ok(ord.norm() / std::f64::consts::PI * atan * (s * pi_s - pi_0))
}

pub fn laplace_image_operator_complex(
    pi_s: Complex64,
    pi_0: f64,
    s: Complex64,
    ord: &FracOrder,
) -> Result<Complex64> {
    require_positive_complex(s)?;
    let c = ord.rate();
    let atan = (std::f64::consts::PI * c / s).atan();
    Ok(atan * ord.norm() / std::f64::consts::PI * (s * pi_s - pi_0))
}

/// Sumudu image of the unscaled kernel: arctan(pi c zeta) / (pi c zeta).
pub fn sumudu_image_kernel(ord: &FracOrder, zeta: f64) -> Result<f64> {
    require_positive_zeta(zeta)?;
    let y = std::f64::consts::PI * ord.rate() * zeta;
    Ok(y.atan() / y)
}

/// Sumudu image of the operator: (p/(pi zeta)) arctan(pi c zeta)
/// (Pi(zeta) - Pi(0)).
///
/// This is the form dual to the Laplace image under G(zeta) = F(1/zeta)/zeta,
/// which the duality checks pin down.
pub fn sumudu_image_operator(pi_zeta: f64, pi_0: f64, zeta: f64, ord: &FracOrder) -> Result<f64> {
    require_positive_zeta(zeta)?;
    let atan = (std::f64::consts::PI * ord.rate() * zeta).atan();
    Ok(ord.norm() / (std::f64::consts::PI * zeta) * atan * (pi_zeta - pi_0))
}

fn require_positive_real_part(s: f64) -> Result<()> {
    ensure_finite("s", s)?;
    if s <= 0.0 {
        return Err(Error::Domain(format!(
            "transform variable s must have positive real part, got {s}"
        )));
    }
    Ok(())
}

fn require_positive_complex(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) || s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "transform variable s must have positive real part, got {s}"
        )));
    }
    Ok(())
}

fn require_positive_zeta(zeta: f64) -> Result<()> {
    ensure_finite("zeta", zeta)?;
    if zeta <= 0.0 {
        return Err(Error::Domain(format!(
            "Sumudu variable zeta must be positive, got {zeta}"
        )));
    }
    Ok(())
}

type RealImageFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;
type ComplexImageFn = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;
type FourierFn = Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>;

/// A Laplace-domain function. Every image supports real abscissae (the
/// Stehfest path); closed-form images may also carry a complex evaluator for
/// the Talbot contour.
#[derive(Clone)]
pub struct LaplaceImage {
    real: RealImageFn,
    complex: Option<ComplexImageFn>,
}

impl fmt::Debug for LaplaceImage {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt.debug_struct("LaplaceImage")
            .field("complex_capable", &self.complex.is_some())
            .finish()
    }
}

impl LaplaceImage {
    pub fn from_real(f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        Self {
            real: Arc::new(f),
            complex: None,
        }
    }

    pub fn with_complex(
        mut self,
        f: impl Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        self.complex = Some(Arc::new(f));
        self
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        require_positive_real_part(s)?;
        (self.real)(s)
    }

    /// Evaluate off the real axis. The image invariant only guarantees
    /// finiteness for Re(s) > 0, but the Talbot contour legitimately visits
    /// the left half plane, so only finiteness of s is enforced here.
    pub fn eval_complex(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::Domain(format!(
                "transform variable must be finite, got {s}"
            )));
        }
        match &self.complex {
            Some(f) => f(s),
            None => Err(Error::Config(
                "image does not support complex abscissae (required by the talbot method)".into(),
            )),
        }
    }

    pub fn supports_complex(&self) -> bool {
        self.complex.is_some()
    }
}

/// A Sumudu-domain function of a positive real variable.
#[derive(Clone)]
pub struct SumuduImage {
    f: RealImageFn,
}

impl fmt::Debug for SumuduImage {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt.write_str("SumuduImage")
    }
}

impl SumuduImage {
    pub fn new(f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f) }
    }

    pub fn eval(&self, zeta: f64) -> Result<f64> {
        require_positive_zeta(zeta)?;
        (self.f)(zeta)
    }
}

/// A Fourier-domain function of angular frequency.
#[derive(Clone)]
pub struct FourierImage {
    f: FourierFn,
}

impl fmt::Debug for FourierImage {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt.write_str("FourierImage")
    }
}

impl FourierImage {
    pub fn new(f: impl Fn(f64) -> Result<Complex64> + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f) }
    }

    /// Lift a real-valued image.
    pub fn from_real(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(move |xi| Ok(Complex64::new(f(xi), 0.0))),
        }
    }

    pub fn eval(&self, xi: f64) -> Result<Complex64> {
        ensure_finite("xi", xi)?;
        (self.f)(xi)
    }
}

/// Value of a numerically evaluated forward transform together with the
/// achieved quadrature bound and the truncated-tail estimate.
#[derive(Debug, Clone, Copy)]
pub struct ForwardTransform {
    pub value: f64,
    pub quadrature_error: f64,
    /// |f(t_max)| e^{-s t_max} / s, a decay-scale estimate of the truncated
    /// tail (not a rigorous bound for growing integrands).
    pub tail_bound: f64,
}

/// Forward Laplace transform by adaptive quadrature over [0, t_max].
pub fn numerical_laplace(
    f: impl Fn(f64) -> f64,
    s: f64,
    t_max: f64,
    q: &QuadratureConfig,
) -> Result<ForwardTransform> {
    require_positive_real_part(s)?;
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::Config(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    q.validate()?;
    let quad = adaptive_integrate(
        |t| (-s * t).exp() * f(t),
        0.0,
        t_max,
        q.rel_tol,
        q.abs_tol,
        q.max_panels,
    )?;
    let tail_bound = f(t_max).abs() * (-s * t_max).exp() / s;
    Ok(ForwardTransform {
        value: quad.value,
        quadrature_error: quad.error_bound,
        tail_bound,
    })
}

/// Forward Sumudu transform via the Laplace duality G(zeta) = F(1/zeta)/zeta.
pub fn numerical_sumudu(
    f: impl Fn(f64) -> f64,
    zeta: f64,
    q: &QuadratureConfig,
) -> Result<ForwardTransform> {
    require_positive_zeta(zeta)?;
    let t_max = 50.0 * zeta;
    let laplace = numerical_laplace(f, 1.0 / zeta, t_max, q)?;
    Ok(ForwardTransform {
        value: laplace.value / zeta,
        quadrature_error: laplace.quadrature_error / zeta,
        tail_bound: laplace.tail_bound / zeta,
    })
}
