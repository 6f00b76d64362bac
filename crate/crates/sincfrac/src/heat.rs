//! Transform-domain solvers for the semi-infinite anomalous heat-diffusion
//! models: time-fractional, space-fractional, and the classical reduction.
//!
//! All three share the boundary temperature lambda(tau) applied at mu = 0,
//! zero initial data, and decay at infinity. Solutions are produced in the
//! Laplace (or Sumudu) domain and brought back to the time domain
//! numerically.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::inversion::{laplace_invert, sumudu_invert, InversionConfig};
use crate::kernel::FracOrder;
use crate::special::erfc;
use crate::transforms::{LaplaceImage, SumuduImage};

/// Which member of the model family a problem instance selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    TimeFractional,
    SpaceFractional,
    Classical,
}

impl ModelKind {
    pub fn label(self) -> &'static str {
        match self {
            ModelKind::TimeFractional => "time-fractional",
            ModelKind::SpaceFractional => "space-fractional",
            ModelKind::Classical => "classical",
        }
    }
}

/// Boundary temperature specification lambda(tau) at mu = 0.
#[derive(Debug, Clone)]
pub struct BoundarySpec {
    kind: BoundaryKind,
}

#[derive(Debug, Clone)]
enum BoundaryKind {
    /// lambda(tau) = amplitude, Laplace image amplitude / s.
    Step { amplitude: f64 },
    /// lambda(tau) = slope * tau, Laplace image slope / s^2.
    Ramp { slope: f64 },
    /// Caller-supplied Laplace image.
    Custom { image: LaplaceImage },
}

impl BoundarySpec {
    pub fn step(amplitude: f64) -> Result<Self> {
        ensure_finite("step amplitude", amplitude)?;
        Ok(Self {
            kind: BoundaryKind::Step { amplitude },
        })
    }

    pub fn ramp(slope: f64) -> Result<Self> {
        ensure_finite("ramp slope", slope)?;
        Ok(Self {
            kind: BoundaryKind::Ramp { slope },
        })
    }

    pub fn custom(image: LaplaceImage) -> Self {
        Self {
            kind: BoundaryKind::Custom { image },
        }
    }

    /// The Laplace image lambda(s).
    pub fn laplace_image(&self) -> LaplaceImage {
        match &self.kind {
            BoundaryKind::Step { amplitude } => {
                let a = *amplitude;
                LaplaceImage::from_real(move |s| Ok(a / s)).with_complex(move |s| Ok(a * s.finv()))
            }
            BoundaryKind::Ramp { slope } => {
                let r = *slope;
                LaplaceImage::from_real(move |s| Ok(r / (s * s)))
                    .with_complex(move |s| Ok(r * (s * s).finv()))
            }
            BoundaryKind::Custom { image } => image.clone(),
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            BoundaryKind::Step { amplitude } => format!("step:{amplitude}"),
            BoundaryKind::Ramp { slope } => format!("ramp:{slope}"),
            BoundaryKind::Custom { .. } => "custom".to_string(),
        }
    }
}

/// A diffusion problem: diffusivity, order (absent only for the classical
/// model), boundary data, and the model selector.
#[derive(Debug, Clone)]
pub struct DiffusionProblem {
    kappa: f64,
    order: Option<FracOrder>,
    boundary: BoundarySpec,
    model: ModelKind,
}

impl DiffusionProblem {
    pub fn new(
        kappa: f64,
        order: Option<FracOrder>,
        boundary: BoundarySpec,
        model: ModelKind,
    ) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::Config(format!(
                "thermal diffusivity kappa must be positive, got {kappa}"
            )));
        }
        if order.is_none() && model != ModelKind::Classical {
            return Err(Error::Config(format!(
                "model {} requires a fractional order",
                model.label()
            )));
        }
        Ok(Self {
            kappa,
            order,
            boundary,
            model,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn order(&self) -> Option<&FracOrder> {
        self.order.as_ref()
    }

    pub fn boundary(&self) -> &BoundarySpec {
        &self.boundary
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    fn require_order(&self) -> Result<&FracOrder> {
        self.order
            .as_ref()
            .ok_or_else(|| Error::Config("fractional model requires an order".into()))
    }
}

/// The Laplace-domain decay coefficient of the time-fractional model:
/// H(s) = p s / (pi kappa) * arctan((varpi pi / (1 - varpi)) / s).
pub fn h_factor(s: f64, ord: &FracOrder, kappa: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s must be positive, got {s}")));
    }
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::Domain(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    let c = ord.rate();
    Ok(ord.norm() * s / (std::f64::consts::PI * kappa) * (c * std::f64::consts::PI / s).atan())
}

/// Principal-branch continuation of [`h_factor`]; the Talbot contour visits
/// the left half plane, so only finiteness is enforced.
pub fn h_factor_complex(s: Complex64, ord: &FracOrder, kappa: f64) -> Result<Complex64> {
    if !s.re.is_finite() || !s.im.is_finite() || s == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!(
            "s must be finite and nonzero, got {s}"
        )));
    }
    let c = ord.rate();
    let atan = (c * std::f64::consts::PI / s).atan();
    Ok(s * ord.norm() / (std::f64::consts::PI * kappa) * atan)
}

/// Laplace-domain solution of the time-fractional model:
/// lambda(s) exp(-mu sqrt(H)).
pub fn timefrac_laplace_solution(mu: f64, s: f64, prob: &DiffusionProblem) -> Result<f64> {
    require_nonnegative_mu(mu)?;
    if prob.model != ModelKind::TimeFractional {
        return Err(Error::Config(format!(
            "timefrac_laplace_solution requires the time-fractional model, got {}",
            prob.model.label()
        )));
    }
    let h = h_factor(s, prob.require_order()?, prob.kappa)?;
    let lambda = prob.boundary.laplace_image().eval(s)?;
    Ok(lambda * (-mu * h.sqrt()).exp())
}

pub fn timefrac_laplace_solution_complex(
    mu: f64,
    s: Complex64,
    prob: &DiffusionProblem,
) -> Result<Complex64> {
    require_nonnegative_mu(mu)?;
    let h = h_factor_complex(s, prob.require_order()?, prob.kappa)?;
    let lambda = prob.boundary.laplace_image().eval_complex(s)?;
    Ok(lambda * (-mu * h.sqrt()).exp())
}

/// Laplace-domain solution of the classical model:
/// lambda(s) exp(-mu sqrt(s / kappa)).
pub fn classical_laplace_solution(mu: f64, s: f64, prob: &DiffusionProblem) -> Result<f64> {
    require_nonnegative_mu(mu)?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s must be positive, got {s}")));
    }
    let lambda = prob.boundary.laplace_image().eval(s)?;
    Ok(lambda * (-mu * (s / prob.kappa).sqrt()).exp())
}

/// Textbook time-domain solution of the classical model for step boundary
/// data: lambda0 * erfc(mu / (2 sqrt(kappa tau))).
pub fn classical_closed_form(mu: f64, tau: f64, kappa: f64, lambda0: f64) -> Result<f64> {
    require_nonnegative_mu(mu)?;
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::Domain(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    ensure_finite("lambda0", lambda0)?;
    Ok(lambda0 * erfc(mu / (2.0 * (kappa * tau).sqrt())))
}

/// The zeta-domain coefficient of the space-fractional balance:
/// A(zeta) = p / (pi zeta^2) * arctan(varpi pi zeta / (1 - varpi)).
pub fn spacefrac_coefficient(ord: &FracOrder, zeta: f64) -> Result<f64> {
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(Error::Domain(format!("zeta must be positive, got {zeta}")));
    }
    let atan = (ord.rate() * std::f64::consts::PI * zeta).atan();
    Ok(ord.norm() / (std::f64::consts::PI * zeta * zeta) * atan)
}

/// Sumudu-domain (in space) x Laplace-domain (in time) solution of the
/// space-fractional model: A lambda(s) / (A - s zeta / kappa).
pub fn spacefrac_sumudu_solution(zeta: f64, s: f64, prob: &DiffusionProblem) -> Result<f64> {
    if prob.model != ModelKind::SpaceFractional {
        return Err(Error::Config(format!(
            "spacefrac_sumudu_solution requires the space-fractional model, got {}",
            prob.model.label()
        )));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s must be positive, got {s}")));
    }
    let a = spacefrac_coefficient(prob.require_order()?, zeta)?;
    let denominator = a - s * zeta / prob.kappa;
    if denominator == 0.0 {
        return Err(Error::Singular { zeta, s });
    }
    let lambda = prob.boundary.laplace_image().eval(s)?;
    Ok(a * lambda / denominator)
}

/// A solved space-time grid with provenance and per-point flags.
#[derive(Debug, Clone)]
pub struct SolutionGrid {
    mu_points: Vec<f64>,
    tau_points: Vec<f64>,
    values: Vec<f64>,
    flags: Vec<PointFlag>,
    meta: SolveMeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagKind {
    /// The transform denominator crosses zero along the inversion abscissae.
    Singular,
}

impl FlagKind {
    pub fn label(self) -> &'static str {
        match self {
            FlagKind::Singular => "singularity",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PointFlag {
    pub mu_index: usize,
    pub tau_index: usize,
    pub kind: FlagKind,
}

/// Provenance recorded with every solved grid.
#[derive(Debug, Clone)]
pub struct SolveMeta {
    pub model: ModelKind,
    pub varpi: Option<f64>,
    pub norm: Option<f64>,
    pub kappa: f64,
    pub boundary: String,
    pub inversion: InversionConfig,
}

impl SolutionGrid {
    fn new(
        mu_points: Vec<f64>,
        tau_points: Vec<f64>,
        values: Vec<f64>,
        flags: Vec<PointFlag>,
        meta: SolveMeta,
    ) -> Result<Self> {
        assert_eq!(values.len(), mu_points.len() * tau_points.len());
        let grid = Self {
            mu_points,
            tau_points,
            values,
            flags,
            meta,
        };
        for (i, _) in grid.mu_points.iter().enumerate() {
            for (j, _) in grid.tau_points.iter().enumerate() {
                if grid.flag_at(i, j).is_none() && !grid.value(i, j).is_finite() {
                    return Err(Error::Domain(format!(
                        "non-finite unflagged value at grid point ({i}, {j})"
                    )));
                }
            }
        }
        Ok(grid)
    }

    pub fn mu_points(&self) -> &[f64] {
        &self.mu_points
    }

    pub fn tau_points(&self) -> &[f64] {
        &self.tau_points
    }

    pub fn value(&self, mu_index: usize, tau_index: usize) -> f64 {
        self.values[mu_index * self.tau_points.len() + tau_index]
    }

    pub fn flags(&self) -> &[PointFlag] {
        &self.flags
    }

    pub fn flag_at(&self, mu_index: usize, tau_index: usize) -> Option<&PointFlag> {
        self.flags
            .iter()
            .find(|f| f.mu_index == mu_index && f.tau_index == tau_index)
    }

    pub fn meta(&self) -> &SolveMeta {
        &self.meta
    }
}

fn require_nonnegative_mu(mu: f64) -> Result<()> {
    ensure_finite("mu", mu)?;
    if mu < 0.0 {
        return Err(Error::Domain(format!("mu must be non-negative, got {mu}")));
    }
    Ok(())
}

fn validate_grid(mu_points: &[f64], tau_points: &[f64]) -> Result<()> {
    if mu_points.is_empty() || tau_points.is_empty() {
        return Err(Error::Config(
            "grid must contain at least one point per axis".into(),
        ));
    }
    for &mu in mu_points {
        require_nonnegative_mu(mu)?;
    }
    for w in mu_points.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Config("mu grid must be strictly increasing".into()));
        }
    }
    for &tau in tau_points {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Config(format!(
                "tau grid values must be positive, got {tau}"
            )));
        }
    }
    for w in tau_points.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Config("tau grid must be strictly increasing".into()));
        }
    }
    Ok(())
}

fn meta_for(prob: &DiffusionProblem, inv: &InversionConfig) -> SolveMeta {
    SolveMeta {
        model: prob.model,
        varpi: prob.order.as_ref().map(|o| o.varpi()),
        norm: prob.order.as_ref().map(|o| o.norm()),
        kappa: prob.kappa,
        boundary: prob.boundary.describe(),
        inversion: *inv,
    }
}

/// Solve the time-fractional model on a rectangular grid by Stehfest (or
/// Talbot) inversion of the closed-form Laplace solution at every point.
pub fn solve_timefrac(
    prob: &DiffusionProblem,
    mu_points: &[f64],
    tau_points: &[f64],
    inv: &InversionConfig,
) -> Result<SolutionGrid> {
    if prob.model != ModelKind::TimeFractional {
        return Err(Error::Config(format!(
            "solve_timefrac requires the time-fractional model, got {}",
            prob.model.label()
        )));
    }
    validate_grid(mu_points, tau_points)?;
    prob.require_order()?;
    let mut values = Vec::with_capacity(mu_points.len() * tau_points.len());
    for &mu in mu_points {
        let p = prob.clone();
        let p2 = prob.clone();
        let image = LaplaceImage::from_real(move |s| timefrac_laplace_solution(mu, s, &p))
            .with_complex(move |s| timefrac_laplace_solution_complex(mu, s, &p2));
        for &tau in tau_points {
            let v = laplace_invert(&image, tau, inv).map_err(|e| e.at_grid_point(mu, tau))?;
            values.push(v);
        }
    }
    SolutionGrid::new(
        mu_points.to_vec(),
        tau_points.to_vec(),
        values,
        Vec::new(),
        meta_for(prob, inv),
    )
}

/// Solve the classical model on a grid through the same inversion pipeline.
pub fn solve_classical(
    prob: &DiffusionProblem,
    mu_points: &[f64],
    tau_points: &[f64],
    inv: &InversionConfig,
) -> Result<SolutionGrid> {
    validate_grid(mu_points, tau_points)?;
    let mut values = Vec::with_capacity(mu_points.len() * tau_points.len());
    for &mu in mu_points {
        let p = prob.clone();
        let kappa = prob.kappa;
        let boundary = prob.boundary.laplace_image();
        let image = LaplaceImage::from_real(move |s| classical_laplace_solution(mu, s, &p))
            .with_complex(
                move |s| Ok(boundary.eval_complex(s)? * (-mu * (s / kappa).sqrt()).exp()),
            );
        for &tau in tau_points {
            let v = laplace_invert(&image, tau, inv).map_err(|e| e.at_grid_point(mu, tau))?;
            values.push(v);
        }
    }
    SolutionGrid::new(
        mu_points.to_vec(),
        tau_points.to_vec(),
        values,
        Vec::new(),
        meta_for(prob, inv),
    )
}

/// Nested numerical double inversion: an inner Sumudu inversion over zeta at
/// every outer Stehfest abscissa s, then the outer Laplace inversion over s.
///
/// `g(zeta, s)` is the mixed-domain image. Cost is one g evaluation per
/// (inner, outer) abscissa pair.
///
/// The outer inversion amplifies the inner inversion's rounding noise by
/// roughly the sum of its |V_k|/k, so the nested noise floor grows like the
/// square of the single-inversion floor: about 6e-10 at order 8, 7e-7 at
/// order 10, 3e-4 at 12, and several percent at 14. Keep the order at or
/// below 10 for nested work.
pub fn invert_sumudu_laplace<G>(g: G, mu: f64, tau: f64, inv: &InversionConfig) -> Result<f64>
where
    G: Fn(f64, f64) -> Result<f64> + Send + Sync + Clone + 'static,
{
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!("mu must be positive, got {mu}")));
    }
    let inner_cfg = *inv;
    let outer = LaplaceImage::from_real(move |s| {
        let gg = g.clone();
        let image = SumuduImage::new(move |zeta| gg(zeta, s));
        sumudu_invert(&image, mu, &inner_cfg)
    });
    laplace_invert(&outer, tau, inv)
}

/// Solve the space-fractional model on a grid.
///
/// Before each inner inversion the zeta-domain denominator is sampled at
/// the Stehfest abscissae zeta_i = mu / (i ln 2); a sign change marks the
/// point singular (value NaN, flag recorded) instead of aborting the grid.
///
/// This double inversion is the accuracy bottleneck of the crate; see
/// [`invert_sumudu_laplace`] for the noise-floor analysis. Orders above 10
/// lose more to noise amplification than they gain in method accuracy.
pub fn solve_spacefrac(
    prob: &DiffusionProblem,
    mu_points: &[f64],
    tau_points: &[f64],
    inv: &InversionConfig,
) -> Result<SolutionGrid> {
    if prob.model != ModelKind::SpaceFractional {
        return Err(Error::Config(format!(
            "solve_spacefrac requires the space-fractional model, got {}",
            prob.model.label()
        )));
    }
    if inv.method != crate::inversion::InversionMethod::Stehfest {
        return Err(Error::Config(
            "the space-fractional double inversion supports the stehfest method only".into(),
        ));
    }
    validate_grid(mu_points, tau_points)?;
    let ord = *prob.require_order()?;
    let boundary_image = prob.boundary.laplace_image();
    let mut values = Vec::with_capacity(mu_points.len() * tau_points.len());
    let mut flags = Vec::new();
    for (i, &mu) in mu_points.iter().enumerate() {
        for (j, &tau) in tau_points.iter().enumerate() {
            if mu == 0.0 {
                // Boundary column: the solution is lambda itself.
                let v = laplace_invert(&boundary_image, tau, inv)
                    .map_err(|e| e.at_grid_point(mu, tau))?;
                values.push(v);
                continue;
            }
            let p = prob.clone();
            let order = ord;
            let kappa = prob.kappa;
            let inner_cfg = *inv;
            let outer = LaplaceImage::from_real(move |s| {
                check_denominator_sign(&order, kappa, mu, s, inner_cfg.stehfest_order)?;
                let p2 = p.clone();
                let image = SumuduImage::new(move |zeta| spacefrac_sumudu_solution(zeta, s, &p2));
                sumudu_invert(&image, mu, &inner_cfg)
            });
            let result = laplace_invert(&outer, tau, inv);
            match result {
                Ok(v) => values.push(v),
                Err(e) if error_is_singular(&e) => {
                    values.push(f64::NAN);
                    flags.push(PointFlag {
                        mu_index: i,
                        tau_index: j,
                        kind: FlagKind::Singular,
                    });
                }
                Err(e) => return Err(e.at_grid_point(mu, tau)),
            }
        }
    }
    SolutionGrid::new(
        mu_points.to_vec(),
        tau_points.to_vec(),
        values,
        flags,
        meta_for(prob, inv),
    )
}

/// Err(Singular) when A(zeta) - s zeta / kappa changes sign across the inner
/// Stehfest abscissae for this (mu, s).
fn check_denominator_sign(
    ord: &FracOrder,
    kappa: f64,
    mu: f64,
    s: f64,
    order_n: usize,
) -> Result<()> {
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..=order_n {
        let zeta = mu / (i as f64 * std::f64::consts::LN_2);
        let den = spacefrac_coefficient(ord, zeta)? - s * zeta / kappa;
        if den == 0.0 {
            return Err(Error::Singular { zeta, s });
        }
        if let Some((prev_zeta, prev_den)) = prev {
            if prev_den * den < 0.0 {
                return Err(Error::Singular {
                    zeta: 0.5 * (zeta + prev_zeta),
                    s,
                });
            }
        }
        prev = Some((zeta, den));
    }
    Ok(())
}

fn error_is_singular(e: &Error) -> bool {
    match e {
        Error::Singular { .. } => true,
        Error::ImageEval { source, .. } => error_is_singular(source),
        Error::GridPoint { source, .. } => error_is_singular(source),
        _ => false,
    }
}

/// Dispatch a problem to its model's solver.
pub fn solve(
    prob: &DiffusionProblem,
    mu_points: &[f64],
    tau_points: &[f64],
    inv: &InversionConfig,
) -> Result<SolutionGrid> {
    match prob.model {
        ModelKind::TimeFractional => solve_timefrac(prob, mu_points, tau_points, inv),
        ModelKind::SpaceFractional => solve_spacefrac(prob, mu_points, tau_points, inv),
        ModelKind::Classical => solve_classical(prob, mu_points, tau_points, inv),
    }
}

/// Side-by-side classical and fractional solutions on a shared grid.
#[derive(Debug, Clone)]
pub struct ModelComparison {
    pub classical: SolutionGrid,
    pub fractional: Vec<SolutionGrid>,
}

impl ModelComparison {
    /// Per-point difference (fractional - classical) for one order column.
    pub fn difference(&self, column: usize) -> Vec<f64> {
        let frac = &self.fractional[column];
        let n_tau = self.classical.tau_points().len();
        let n_mu = self.classical.mu_points().len();
        let mut out = Vec::with_capacity(n_mu * n_tau);
        for i in 0..n_mu {
            for j in 0..n_tau {
                out.push(frac.value(i, j) - self.classical.value(i, j));
            }
        }
        out
    }
}

/// Solve the classical model plus one fractional column per requested order,
/// all sharing kappa, boundary, and grid.
pub fn compare_models(
    kappa: f64,
    boundary: &BoundarySpec,
    fractional_model: ModelKind,
    orders: &[FracOrder],
    mu_points: &[f64],
    tau_points: &[f64],
    inv: &InversionConfig,
) -> Result<ModelComparison> {
    if fractional_model == ModelKind::Classical {
        return Err(Error::Config(
            "compare_models expects a fractional model for the order columns".into(),
        ));
    }
    let classical_prob =
        DiffusionProblem::new(kappa, None, boundary.clone(), ModelKind::Classical)?;
    let classical = solve_classical(&classical_prob, mu_points, tau_points, inv)?;
    let mut fractional = Vec::with_capacity(orders.len());
    for &ord in orders {
        let prob = DiffusionProblem::new(kappa, Some(ord), boundary.clone(), fractional_model)?;
        fractional.push(solve(&prob, mu_points, tau_points, inv)?);
    }
    Ok(ModelComparison {
        classical,
        fractional,
    })
}
