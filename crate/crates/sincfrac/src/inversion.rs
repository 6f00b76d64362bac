//! Numerical inverse Laplace transform (Gaver–Stehfest primary, fixed-Talbot
//! optional) and inverse Sumudu via the Laplace duality.
//!
//! Stehfest weights are built in exact rational arithmetic and carried as
//! double-double values; the inversion inner product accumulates in the same
//! representation, so weight-level identities survive well below the f64
//! quantization floor of the individual coefficients.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::transforms::{LaplaceImage, SumuduImage};

/// Inversion algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InversionMethod {
    #[default]
    Stehfest,
    Talbot,
}

/// Inversion settings. Stehfest orders are even and capped at 20, past which
/// double-precision image evaluations drown the weights.
#[derive(Debug, Clone, Copy)]
pub struct InversionConfig {
    pub method: InversionMethod,
    pub stehfest_order: usize,
    pub talbot_nodes: usize,
    pub talbot_scale: f64,
}

impl Default for InversionConfig {
    fn default() -> Self {
        Self {
            method: InversionMethod::Stehfest,
            stehfest_order: 14,
            talbot_nodes: 32,
            talbot_scale: 1.0,
        }
    }
}

impl InversionConfig {
    pub fn validate(&self) -> Result<()> {
        validate_stehfest_order(self.stehfest_order)?;
        if self.talbot_nodes < 8 {
            return Err(Error::Config(format!(
                "talbot_nodes must be at least 8, got {}",
                self.talbot_nodes
            )));
        }
        if !(self.talbot_scale > 0.0 && self.talbot_scale.is_finite()) {
            return Err(Error::Config(format!(
                "talbot_scale must be positive, got {}",
                self.talbot_scale
            )));
        }
        Ok(())
    }
}

fn validate_stehfest_order(n: usize) -> Result<()> {
    if !(2..=20).contains(&n) || !n.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "stehfest order must be even and in [2, 20], got {n}"
        )));
    }
    Ok(())
}

/// Double-double value: hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    fn from_rational(r: &BigRational) -> Self {
        let hi = rational_to_f64(r);
        let residual = r - BigRational::from_float(hi).expect("finite weight");
        let lo = rational_to_f64(&residual);
        DoubleDouble { hi, lo }
    }

    fn add(self, other: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = fast_two_sum(s, e);
        DoubleDouble { hi, lo }
    }

    fn mul_f64(self, b: f64) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = fast_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    fn div_f64(self, b: f64) -> DoubleDouble {
        let q0 = self.hi / b;
        let (p, e) = two_prod(q0, b);
        let q1 = ((self.hi - p) - e + self.lo) / b;
        let (hi, lo) = fast_two_sum(q0, q1);
        DoubleDouble { hi, lo }
    }

    pub(crate) fn value(self) -> f64 {
        self.hi + self.lo
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

// Exact product via fused multiply-add.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back through a scaled division; weights for n <= 20 never
        // reach this path.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn stehfest_weights_exact(n: usize) -> Vec<BigRational> {
    let half = n / 2;
    let mut weights = Vec::with_capacity(n);
    for k in 1..=n {
        let mut sum = BigRational::zero();
        for j in k.div_ceil(2)..=k.min(half) {
            let numerator = BigInt::from(j).pow(half as u32) * factorial(2 * j);
            let denominator = factorial(half - j)
                * factorial(j)
                * factorial(j - 1)
                * factorial(k - j)
                * factorial(2 * j - k);
            sum += BigRational::new(numerator, denominator);
        }
        if !(half + k).is_multiple_of(2) {
            sum = -sum;
        }
        weights.push(sum);
    }
    weights
}

struct WeightTable {
    f64_view: Vec<f64>,
    dd: Vec<DoubleDouble>,
}

fn weight_table(n: usize) -> Arc<WeightTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<WeightTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("stehfest weight cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| {
            let exact = stehfest_weights_exact(n);
            Arc::new(WeightTable {
                f64_view: exact.iter().map(rational_to_f64).collect(),
                dd: exact.iter().map(DoubleDouble::from_rational).collect(),
            })
        })
        .clone()
}

/// Gaver–Stehfest weights V_1..V_n, computed exactly and rounded once.
pub fn stehfest_weights(n: usize) -> Result<Vec<f64>> {
    validate_stehfest_order(n)?;
    Ok(weight_table(n).f64_view.clone())
}

pub(crate) fn stehfest_weights_dd(n: usize) -> Result<Vec<DoubleDouble>> {
    validate_stehfest_order(n)?;
    Ok(weight_table(n).dd.clone())
}

/// Residuals of the exactness identities sum V_k = 0 and sum V_k / k = 1,
/// evaluated in the double-double representation the inversion carries.
pub fn stehfest_weight_identity_residuals(n: usize) -> Result<(f64, f64)> {
    let dd = stehfest_weights_dd(n)?;
    let mut sum = DoubleDouble::default();
    let mut harmonic = DoubleDouble::default();
    for (k, w) in dd.iter().enumerate() {
        sum = sum.add(*w);
        harmonic = harmonic.add(w.div_f64((k + 1) as f64));
    }
    Ok((sum.value().abs(), (harmonic.value() - 1.0).abs()))
}

/// Invert a Laplace image at time t.
pub fn laplace_invert(image: &LaplaceImage, t: f64, cfg: &InversionConfig) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!(
            "inversion time must be positive, got {t}"
        )));
    }
    cfg.validate()?;
    match cfg.method {
        InversionMethod::Stehfest => stehfest_invert(image, t, cfg.stehfest_order),
        InversionMethod::Talbot => talbot_invert(image, t, cfg.talbot_nodes, cfg.talbot_scale),
    }
}

fn stehfest_invert(image: &LaplaceImage, t: f64, order: usize) -> Result<f64> {
    let weights = stehfest_weights_dd(order)?;
    let log2_over_t = std::f64::consts::LN_2 / t;
    let mut acc = DoubleDouble::default();
    for (k, w) in weights.iter().enumerate() {
        let s = (k + 1) as f64 * log2_over_t;
        let sample = image.eval(s).map_err(|e| e.at_abscissa(s))?;
        acc = acc.add(w.mul_f64(sample));
    }
    Ok(acc.mul_f64(log2_over_t).value())
}

/// Fixed-Talbot inversion. Requires a complex-capable image; the contour is
/// s(theta) = r theta (cot theta + i) with r = 2 M / (5 t) times the scale.
fn talbot_invert(image: &LaplaceImage, t: f64, nodes: usize, scale: f64) -> Result<f64> {
    let m = nodes as f64;
    let r = scale * 2.0 * m / (5.0 * t);
    let first = image
        .eval_complex(Complex64::new(r, 0.0))
        .map_err(|e| e.at_abscissa(r))?;
    let mut acc = 0.5 * (first * (r * t).exp()).re;
    for k in 1..nodes {
        let theta = k as f64 * std::f64::consts::PI / m;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let sample = image.eval_complex(s).map_err(|e| e.at_abscissa(s.re))?;
        let term = (s * t).exp() * sample * Complex64::new(1.0, sigma);
        acc += term.re;
    }
    Ok(acc * r / m)
}

/// Invert a Sumudu image at mu by building the dual Laplace image
/// F(s) = G(1/s)/s and applying [`laplace_invert`].
pub fn sumudu_invert(image: &SumuduImage, mu: f64, cfg: &InversionConfig) -> Result<f64> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!(
            "inversion point mu must be positive, got {mu}"
        )));
    }
    let inner = image.clone();
    let dual = LaplaceImage::from_real(move |s| Ok(inner.eval(1.0 / s)? / s));
    laplace_invert(&dual, mu, cfg)
}
