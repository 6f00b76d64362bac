//! Built-in function and image catalogues for the CLI.

use sincfrac::{FunctionSpec, LaplaceImage};

/// Functions selectable with `--fn`, each wired with its analytic
/// derivative and closed-form transform images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogFn {
    Constant,
    Linear,
    Quadratic,
    ExpDecay,
    Sine,
}

impl CatalogFn {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "constant" => Some(Self::Constant),
            "linear" => Some(Self::Linear),
            "quadratic" => Some(Self::Quadratic),
            "exp-decay" => Some(Self::ExpDecay),
            "sine" => Some(Self::Sine),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Constant => "constant",
            Self::Linear => "linear",
            Self::Quadratic => "quadratic",
            Self::ExpDecay => "exp-decay",
            Self::Sine => "sine",
        }
    }

    pub fn spec(&self) -> FunctionSpec {
        let build = |f: fn(f64) -> f64, d: fn(f64) -> f64| {
            FunctionSpec::new(f)
                .with_derivative(d)
                .expect("catalogue derivatives are consistent")
        };
        match self {
            Self::Constant => build(|_| 1.0, |_| 0.0),
            Self::Linear => build(|x| x, |_| 1.0),
            Self::Quadratic => build(|x| x * x, |x| 2.0 * x),
            Self::ExpDecay => build(|x| (-x).exp(), |x| -(-x).exp()),
            Self::Sine => build(|x| x.sin(), |x| x.cos()),
        }
    }

    /// Laplace image Pi(s) and initial value Pi(0).
    pub fn laplace_image_at(&self, s: f64) -> (f64, f64) {
        match self {
            Self::Constant => (1.0 / s, 1.0),
            Self::Linear => (1.0 / (s * s), 0.0),
            Self::Quadratic => (2.0 / (s * s * s), 0.0),
            Self::ExpDecay => (1.0 / (s + 1.0), 1.0),
            Self::Sine => (1.0 / (s * s + 1.0), 0.0),
        }
    }

    /// Sumudu image Pi(zeta) and initial value Pi(0).
    pub fn sumudu_image_at(&self, zeta: f64) -> (f64, f64) {
        match self {
            Self::Constant => (1.0, 1.0),
            Self::Linear => (zeta, 0.0),
            Self::Quadratic => (2.0 * zeta * zeta, 0.0),
            Self::ExpDecay => (1.0 / (1.0 + zeta), 1.0),
            Self::Sine => (zeta / (1.0 + zeta * zeta), 0.0),
        }
    }
}

/// Laplace images selectable with `--image` for the invert command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedImage {
    OneOverS,
    OneOverS2,
    OneOverSPlus1,
    Step(f64),
    Ramp(f64),
}

impl NamedImage {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "one-over-s" => return Some(Self::OneOverS),
            "one-over-s2" => return Some(Self::OneOverS2),
            "one-over-s-plus-1" => return Some(Self::OneOverSPlus1),
            _ => {}
        }
        if let Some(rest) = text.strip_prefix("step:") {
            return rest.parse().ok().map(Self::Step);
        }
        if let Some(rest) = text.strip_prefix("ramp:") {
            return rest.parse().ok().map(Self::Ramp);
        }
        None
    }

    pub fn describe(&self) -> String {
        match self {
            Self::OneOverS => "one-over-s".into(),
            Self::OneOverS2 => "one-over-s2".into(),
            Self::OneOverSPlus1 => "one-over-s-plus-1".into(),
            Self::Step(a) => format!("step:{a}"),
            Self::Ramp(r) => format!("ramp:{r}"),
        }
    }

    pub fn image(&self) -> LaplaceImage {
        match *self {
            Self::OneOverS => {
                LaplaceImage::from_real(|s| Ok(1.0 / s)).with_complex(|s| Ok(s.finv()))
            }
            Self::OneOverS2 => {
                LaplaceImage::from_real(|s| Ok(1.0 / (s * s))).with_complex(|s| Ok((s * s).finv()))
            }
            Self::OneOverSPlus1 => LaplaceImage::from_real(|s| Ok(1.0 / (s + 1.0)))
                .with_complex(|s| Ok((s + 1.0).finv())),
            Self::Step(a) => {
                LaplaceImage::from_real(move |s| Ok(a / s)).with_complex(move |s| Ok(a * s.finv()))
            }
            Self::Ramp(r) => LaplaceImage::from_real(move |s| Ok(r / (s * s)))
                .with_complex(move |s| Ok(r * (s * s).finv())),
        }
    }
}
