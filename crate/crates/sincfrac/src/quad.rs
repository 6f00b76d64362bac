//! Adaptive Gauss–Legendre quadrature.
//!
//! Nodes and weights are generated at runtime by Newton iteration on the
//! Legendre polynomials and cached per order. Error estimation embeds a
//! 15-point rule inside the 31-point rule on every interval; the adaptive
//! driver bisects the interval with the largest estimated error until the
//! global tolerance is met or the subdivision budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Panel placement used by the fractional-derivative quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PanelStrategy {
    /// Split the interval at the kernel zeros x = mu - k/c.
    #[default]
    KernelZeros,
    /// Fixed uniform panels.
    Uniform,
}

/// Tolerances and budget for the oscillation-aware quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Global budget of interval subdivisions across all panels of one call.
    pub max_panels: usize,
    pub panel_strategy: PanelStrategy,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_panels: 50_000,
            panel_strategy: PanelStrategy::KernelZeros,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Config(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Config(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_panels < 1 {
            return Err(Error::Config("max_panels must be at least 1".into()));
        }
        Ok(())
    }
}

/// Gauss–Legendre rule on [-1, 1].
struct GlRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn compute_gl_rule(n: usize) -> GlRule {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Tricomi initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    GlRule { nodes, weights }
}

fn gl_rule(n: usize) -> Arc<GlRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GlRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("GL rule cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(compute_gl_rule(n)))
        .clone()
}

fn apply_rule<F: Fn(f64) -> f64>(rule: &GlRule, f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integral value with its achieved error bound.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_bound: f64,
    pub subdivisions: usize,
}

/// One interval with GL31 value and |GL31 - GL15| error estimate.
#[derive(Debug, Clone, Copy)]
struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn evaluate_interval<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Interval {
    let coarse = apply_rule(&gl_rule(15), f, a, b);
    let fine = apply_rule(&gl_rule(31), f, a, b);
    Interval {
        a,
        b,
        value: fine,
        error: (fine - coarse).abs(),
    }
}

/// Neumaier compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Adaptively integrate `f` over [a, b].
///
/// `max_subdivisions` bounds the number of interval bisections; exhausting it
/// without meeting `max(abs_tol, rel_tol * |value|)` reports non-convergence
/// carrying the best estimate.
pub fn adaptive_integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error_bound: 0.0,
            subdivisions: 0,
        });
    }
    let mut heap = BinaryHeap::new();
    heap.push(evaluate_interval(&f, a, b));
    let mut subdivisions = 0usize;

    loop {
        let total: f64 = compensated_sum(heap.iter().map(|iv| iv.value));
        let err: f64 = heap.iter().map(|iv| iv.error).sum();
        let target = abs_tol.max(rel_tol * total.abs());
        if err <= target {
            return Ok(Quadrature {
                value: total,
                error_bound: err,
                subdivisions,
            });
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                value: total,
                achieved: err,
                requested: target,
            });
        }
        let worst = heap.pop().expect("heap cannot be empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval narrower than f64 spacing: accept its estimate as-is.
            let mut saturated = worst;
            saturated.error = 0.0;
            heap.push(saturated);
            continue;
        }
        heap.push(evaluate_interval(&f, worst.a, mid));
        heap.push(evaluate_interval(&f, mid, worst.b));
        subdivisions += 1;
    }
}

/// Integrate over consecutive panels defined by `breaks`, refining each panel
/// adaptively. The subdivision budget is shared across all panels.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: F,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Quadrature> {
    assert!(breaks.len() >= 2, "at least one panel required");
    let n_panels = breaks.len() - 1;
    let panel_abs = abs_tol / n_panels as f64;
    let mut values = Vec::with_capacity(n_panels);
    let mut error_bound = 0.0;
    let mut subdivisions = 0usize;
    for w in breaks.windows(2) {
        let budget = max_subdivisions.saturating_sub(subdivisions);
        let q = adaptive_integrate(&f, w[0], w[1], rel_tol, panel_abs, budget)?;
        values.push(q.value);
        error_bound += q.error_bound;
        subdivisions += q.subdivisions;
    }
    Ok(Quadrature {
        value: compensated_sum(values),
        error_bound,
        subdivisions,
    })
}
