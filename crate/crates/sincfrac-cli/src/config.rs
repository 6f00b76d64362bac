//! Argument and config-file handling.
//!
//! Flags override file values; the file is line-oriented `key = value` text
//! with `#` comments and keys matching the long flag names. Every
//! precondition of the dispatched operations is validated here, before any
//! computation starts, and unknown file keys are rejected.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sincfrac::{
    BoundarySpec, DiffusionProblem, FourierMode, FracOrder, InversionConfig, InversionMethod,
    ModelKind, PanelStrategy, QuadratureConfig,
};

use crate::catalog::{CatalogFn, NamedImage};

#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration (exit code 2).
    Config(String),
    /// Numeric failure during computation or output (exit code 1).
    Numeric(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "sincfrac",
    about = "Sinc-kernel fractional derivative, transform images, and anomalous heat diffusion",
    version
)]
pub struct Cli {
    /// Line-oriented key = value config file; flags override file values
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output path (CSV defaults to stdout when omitted)
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_name = "csv|svg|both")]
    pub format: Option<String>,

    /// Suppress the summary line on stderr
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the normalized sinc and the scaled operator kernel on a grid
    Kernel(KernelArgs),
    /// Evaluate the fractional derivative of a catalogue function on a grid
    Deriv(DerivArgs),
    /// Evaluate closed-form transform images on a grid
    Image(ImageArgs),
    /// Numerically invert a named Laplace image
    Invert(InvertArgs),
    /// Solve a heat-diffusion model on a space-time grid
    Heat(HeatArgs),
    /// Compare the classical solution against fractional orders
    Compare(CompareArgs),
}

#[derive(Args, Debug, Default)]
pub struct KernelArgs {
    /// Fractional order in (0, 1)
    #[arg(long)]
    pub varpi: Option<f64>,
    /// Normalization constant override (default 1)
    #[arg(long)]
    pub norm: Option<f64>,
    /// Kernel argument grid, start:stop:step or comma list
    #[arg(long)]
    pub u: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct DerivArgs {
    /// Catalogue function: constant|linear|quadratic|exp-decay|sine
    #[arg(long = "fn")]
    pub function: Option<String>,
    /// Lower terminal of the operator
    #[arg(long)]
    pub a: Option<f64>,
    /// Evaluation grid, start:stop:step or comma list
    #[arg(long)]
    pub mu: Option<String>,
    /// Fractional order in (0, 1)
    #[arg(long)]
    pub varpi: Option<f64>,
    /// Normalization constant override (default 1)
    #[arg(long)]
    pub norm: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
    /// Absolute quadrature tolerance
    #[arg(long = "abs-tol")]
    pub abs_tol: Option<f64>,
    /// Subdivision budget
    #[arg(long = "max-panels")]
    pub max_panels: Option<usize>,
    /// kernel-zeros|uniform
    #[arg(long = "panel-strategy")]
    pub panel_strategy: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct ImageArgs {
    /// fourier-kernel|laplace-kernel|laplace-operator|sumudu-kernel|sumudu-operator
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub varpi: Option<f64>,
    #[arg(long)]
    pub norm: Option<f64>,
    /// Catalogue function for operator images
    #[arg(long = "fn")]
    pub function: Option<String>,
    /// Heaviside convention for the Fourier kernel image: as-paper|band-limited
    #[arg(long)]
    pub mode: Option<String>,
    /// Transform-variable grid, start:stop:step or comma list
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct InvertArgs {
    /// one-over-s, one-over-s2, one-over-s-plus-1, step:AMP, or ramp:SLOPE
    #[arg(long)]
    pub image: Option<String>,
    /// Time grid, start:stop:step or comma list
    #[arg(long)]
    pub t: Option<String>,
    /// stehfest|talbot
    #[arg(long)]
    pub method: Option<String>,
    /// Even Stehfest order in [2, 20] (default 14)
    #[arg(long = "stehfest-order")]
    pub stehfest_order: Option<usize>,
    /// Talbot contour nodes (at least 8)
    #[arg(long = "talbot-nodes")]
    pub talbot_nodes: Option<usize>,
    /// Talbot contour scale factor
    #[arg(long = "talbot-scale")]
    pub talbot_scale: Option<f64>,
}

#[derive(Args, Debug, Default)]
pub struct HeatArgs {
    /// time-fractional|space-fractional|classical
    #[arg(long)]
    pub model: Option<String>,
    /// step:AMP | ramp:SLOPE
    #[arg(long)]
    pub boundary: Option<String>,
    /// Thermal diffusivity
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Fractional order in (0, 1)
    #[arg(long)]
    pub varpi: Option<f64>,
    /// Normalization constant override (default 1)
    #[arg(long)]
    pub norm: Option<f64>,
    /// Space grid, start:stop:step or comma list
    #[arg(long)]
    pub mu: Option<String>,
    /// Time grid, start:stop:step or comma list
    #[arg(long)]
    pub tau: Option<String>,
    /// stehfest|talbot
    #[arg(long)]
    pub method: Option<String>,
    /// Stehfest order (defaults to 14, or 10 for the nested space-fractional solver)
    #[arg(long = "stehfest-order")]
    pub stehfest_order: Option<usize>,
    /// Talbot contour nodes (at least 8)
    #[arg(long = "talbot-nodes")]
    pub talbot_nodes: Option<usize>,
    /// Talbot contour scale factor
    #[arg(long = "talbot-scale")]
    pub talbot_scale: Option<f64>,
}

#[derive(Args, Debug, Default)]
pub struct CompareArgs {
    /// Fractional family for the order columns: time-fractional|space-fractional
    #[arg(long)]
    pub model: Option<String>,
    /// Comma list of fractional orders
    #[arg(long)]
    pub varpi: Option<String>,
    /// Normalization constant override applied to every order (default 1)
    #[arg(long)]
    pub norm: Option<f64>,
    /// step:AMP | ramp:SLOPE
    #[arg(long)]
    pub boundary: Option<String>,
    /// Thermal diffusivity
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Space grid, start:stop:step or comma list
    #[arg(long)]
    pub mu: Option<String>,
    /// Time grid, start:stop:step or comma list
    #[arg(long)]
    pub tau: Option<String>,
    /// Even Stehfest order in [2, 20] (default 14; 10 for space-fractional)
    #[arg(long = "stehfest-order")]
    pub stehfest_order: Option<usize>,
}

/// Output disposition shared by all scenarios.
#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub out: Option<PathBuf>,
    pub format: Format,
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Both,
}

impl Format {
    pub fn wants_csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
    pub fn wants_svg(self) -> bool {
        matches!(self, Format::Svg | Format::Both)
    }
}

/// Image kinds served by the `image` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageKind {
    FourierKernel,
    LaplaceKernel,
    LaplaceOperator,
    SumuduKernel,
    SumuduOperator,
}

impl ImageKind {
    fn parse(text: &str) -> Option<Self> {
        match text {
            "fourier-kernel" => Some(Self::FourierKernel),
            "laplace-kernel" => Some(Self::LaplaceKernel),
            "laplace-operator" => Some(Self::LaplaceOperator),
            "sumudu-kernel" => Some(Self::SumuduKernel),
            "sumudu-operator" => Some(Self::SumuduOperator),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::FourierKernel => "fourier-kernel",
            Self::LaplaceKernel => "laplace-kernel",
            Self::LaplaceOperator => "laplace-operator",
            Self::SumuduKernel => "sumudu-kernel",
            Self::SumuduOperator => "sumudu-operator",
        }
    }
}

/// A fully validated scenario.
#[derive(Debug)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub output: OutputSpec,
    /// Effective parameters, recorded in the CSV config comment.
    pub params: BTreeMap<String, String>,
}

#[derive(Debug)]
pub enum Scenario {
    Kernel {
        ord: FracOrder,
        u: Vec<f64>,
    },
    Deriv {
        function: CatalogFn,
        a: f64,
        mu: Vec<f64>,
        ord: FracOrder,
        quad: QuadratureConfig,
    },
    Image {
        kind: ImageKind,
        ord: FracOrder,
        function: Option<CatalogFn>,
        mode: FourierMode,
        at: Vec<f64>,
    },
    Invert {
        image: NamedImage,
        t: Vec<f64>,
        inv: InversionConfig,
    },
    Heat {
        prob: DiffusionProblem,
        mu: Vec<f64>,
        tau: Vec<f64>,
        inv: InversionConfig,
    },
    Compare {
        kappa: f64,
        boundary: BoundarySpec,
        model: ModelKind,
        orders: Vec<FracOrder>,
        mu: Vec<f64>,
        tau: Vec<f64>,
        inv: InversionConfig,
    },
}

/// Config-file contents with consumed-key tracking: whatever is left after
/// merging is an unknown key and rejects the scenario.
struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    fn empty() -> Self {
        Self {
            values: BTreeMap::new(),
        }
    }

    fn load(path: &PathBuf) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::config(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "config file line {} is not `key = value`: {raw:?}",
                    lineno + 1
                )));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    fn finish(self) -> Result<()> {
        if self.values.is_empty() {
            Ok(())
        } else {
            let keys: Vec<&str> = self.values.keys().map(|k| k.as_str()).collect();
            Err(CliError::config(format!(
                "unknown config key(s): {}",
                keys.join(", ")
            )))
        }
    }
}

fn merge_parse<T: std::str::FromStr>(
    flag: Option<T>,
    file: &mut FileConfig,
    key: &str,
) -> Result<Option<T>> {
    if flag.is_some() {
        file.take(key); // flag overrides; still consume the file key
        return Ok(flag);
    }
    match file.take(key) {
        None => Ok(None),
        Some(text) => text.parse::<T>().map(Some).map_err(|_| {
            CliError::config(format!("config key {key}: cannot parse value {text:?}"))
        }),
    }
}

fn require<T>(value: Option<T>, key: &str) -> Result<T> {
    value.ok_or_else(|| CliError::config(format!("missing required parameter: {key}")))
}

/// Parse `start:stop:step` or a comma list into a strictly increasing grid.
pub fn parse_grid(text: &str, key: &str) -> Result<Vec<f64>> {
    let bad = |why: String| CliError::config(format!("grid {key} = {text:?}: {why}"));
    let points: Vec<f64> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:stop:step".into()));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| bad(format!("bad start {:?}", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| bad(format!("bad stop {:?}", parts[1])))?;
        let step: f64 = parts[2]
            .parse()
            .map_err(|_| bad(format!("bad step {:?}", parts[2])))?;
        if !(step > 0.0 && step.is_finite()) {
            return Err(bad(format!("step must be positive, got {step}")));
        }
        if stop < start {
            return Err(bad(format!("stop {stop} below start {start}")));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        (0..=count).map(|i| start + i as f64 * step).collect()
    } else {
        let mut out = Vec::new();
        for part in text.split(',') {
            let v: f64 = part
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad value {:?}", part)))?;
            out.push(v);
        }
        out
    };
    if points.is_empty() {
        return Err(bad("empty grid".into()));
    }
    for p in &points {
        if !p.is_finite() {
            return Err(bad(format!("non-finite value {p}")));
        }
    }
    for w in points.windows(2) {
        if w[1] <= w[0] {
            return Err(bad(format!(
                "values must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    Ok(points)
}

fn validated_order(varpi: f64, norm: f64) -> Result<FracOrder> {
    if !(varpi > 0.0 && varpi < 1.0) {
        return Err(CliError::config(format!(
            "varpi must lie in open interval (0,1), got {varpi}"
        )));
    }
    FracOrder::with_norm(varpi, norm).map_err(|e| CliError::Config(e.to_string()))
}

fn parse_boundary(text: &str) -> Result<BoundarySpec> {
    if let Some(rest) = text.strip_prefix("step:") {
        let amp: f64 = rest.parse().map_err(|_| {
            CliError::config(format!("boundary step amplitude {rest:?} is not a number"))
        })?;
        return BoundarySpec::step(amp).map_err(|e| CliError::Config(e.to_string()));
    }
    if let Some(rest) = text.strip_prefix("ramp:") {
        let slope: f64 = rest.parse().map_err(|_| {
            CliError::config(format!("boundary ramp slope {rest:?} is not a number"))
        })?;
        return BoundarySpec::ramp(slope).map_err(|e| CliError::Config(e.to_string()));
    }
    Err(CliError::config(format!(
        "boundary must be step:<amp> or ramp:<slope>, got {text:?}"
    )))
}

fn parse_model(text: &str) -> Result<ModelKind> {
    match text {
        "time-fractional" => Ok(ModelKind::TimeFractional),
        "space-fractional" => Ok(ModelKind::SpaceFractional),
        "classical" => Ok(ModelKind::Classical),
        _ => Err(CliError::config(format!(
            "model must be time-fractional, space-fractional, or classical, got {text:?}"
        ))),
    }
}

fn parse_method(text: &str) -> Result<InversionMethod> {
    match text {
        "stehfest" => Ok(InversionMethod::Stehfest),
        "talbot" => Ok(InversionMethod::Talbot),
        _ => Err(CliError::config(format!(
            "method must be stehfest or talbot, got {text:?}"
        ))),
    }
}

fn validated_inversion(
    method: Option<String>,
    stehfest_order: Option<usize>,
    talbot_nodes: Option<usize>,
    talbot_scale: Option<f64>,
    default_order: usize,
) -> Result<InversionConfig> {
    let cfg = InversionConfig {
        method: method
            .as_deref()
            .map(parse_method)
            .transpose()?
            .unwrap_or_default(),
        stehfest_order: stehfest_order.unwrap_or(default_order),
        talbot_nodes: talbot_nodes.unwrap_or(32),
        talbot_scale: talbot_scale.unwrap_or(1.0),
    };
    cfg.validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(cfg)
}

fn method_name(m: InversionMethod) -> &'static str {
    match m {
        InversionMethod::Stehfest => "stehfest",
        InversionMethod::Talbot => "talbot",
    }
}

/// Merge flags with the optional config file and validate into a scenario.
pub fn parse_config(cli: Cli) -> Result<ScenarioConfig> {
    let mut file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::empty(),
    };

    let out = match cli.out {
        Some(p) => Some(p),
        None => file.take("out").map(PathBuf::from),
    };
    let format_text = match cli.format {
        Some(f) => Some(f),
        None => file.take("format"),
    };
    let format = match format_text.as_deref() {
        None | Some("csv") => Format::Csv,
        Some("svg") => Format::Svg,
        Some("both") => Format::Both,
        Some(other) => {
            return Err(CliError::config(format!(
                "format must be csv, svg, or both, got {other:?}"
            )))
        }
    };
    if format.wants_svg() && out.is_none() {
        return Err(CliError::config(
            "svg output requires --out (stdout is CSV-only)",
        ));
    }

    let mut params: BTreeMap<String, String> = BTreeMap::new();
    let mut record = |k: &str, v: String| {
        params.insert(k.to_string(), v);
    };

    let scenario = match cli.command {
        Command::Kernel(args) => {
            let varpi = require(merge_parse(args.varpi, &mut file, "varpi")?, "varpi")?;
            let norm = merge_parse(args.norm, &mut file, "norm")?.unwrap_or(1.0);
            let ord = validated_order(varpi, norm)?;
            let u_text = require(merge_parse(args.u, &mut file, "u")?, "u")?;
            let u = parse_grid(&u_text, "u")?;
            record("command", "kernel".into());
            record("varpi", format!("{varpi}"));
            record("norm", format!("{norm}"));
            record("u", u_text);
            Scenario::Kernel { ord, u }
        }
        Command::Deriv(args) => {
            let fn_name = require(merge_parse(args.function, &mut file, "fn")?, "fn")?;
            let function = CatalogFn::parse(&fn_name).ok_or_else(|| {
                CliError::config(format!(
                    "fn must be constant, linear, quadratic, exp-decay, or sine, got {fn_name:?}"
                ))
            })?;
            let a = merge_parse(args.a, &mut file, "a")?.unwrap_or(0.0);
            if !a.is_finite() {
                return Err(CliError::config(format!("a must be finite, got {a}")));
            }
            let mu_text = require(merge_parse(args.mu, &mut file, "mu")?, "mu")?;
            let mu = parse_grid(&mu_text, "mu")?;
            if mu[0] < a {
                return Err(CliError::config(format!(
                    "every mu must be at least a = {a}, got {}",
                    mu[0]
                )));
            }
            let varpi = require(merge_parse(args.varpi, &mut file, "varpi")?, "varpi")?;
            let norm = merge_parse(args.norm, &mut file, "norm")?.unwrap_or(1.0);
            let ord = validated_order(varpi, norm)?;
            let rel_tol = merge_parse(args.rel_tol, &mut file, "rel-tol")?.unwrap_or(1e-10);
            let abs_tol = merge_parse(args.abs_tol, &mut file, "abs-tol")?.unwrap_or(1e-12);
            let max_panels =
                merge_parse(args.max_panels, &mut file, "max-panels")?.unwrap_or(50_000);
            let strategy_text = merge_parse(args.panel_strategy, &mut file, "panel-strategy")?
                .unwrap_or_else(|| "kernel-zeros".to_string());
            let panel_strategy = match strategy_text.as_str() {
                "kernel-zeros" => PanelStrategy::KernelZeros,
                "uniform" => PanelStrategy::Uniform,
                other => {
                    return Err(CliError::config(format!(
                        "panel-strategy must be kernel-zeros or uniform, got {other:?}"
                    )))
                }
            };
            let quad = QuadratureConfig {
                rel_tol,
                abs_tol,
                max_panels,
                panel_strategy,
            };
            quad.validate()
                .map_err(|e| CliError::Config(e.to_string()))?;
            record("command", "deriv".into());
            record("fn", fn_name);
            record("a", format!("{a}"));
            record("mu", mu_text);
            record("varpi", format!("{varpi}"));
            record("norm", format!("{norm}"));
            record("rel-tol", format!("{rel_tol:e}"));
            record("abs-tol", format!("{abs_tol:e}"));
            record("max-panels", format!("{max_panels}"));
            record("panel-strategy", strategy_text);
            Scenario::Deriv {
                function,
                a,
                mu,
                ord,
                quad,
            }
        }
        Command::Image(args) => {
            let kind_text = require(merge_parse(args.kind, &mut file, "kind")?, "kind")?;
            let kind = ImageKind::parse(&kind_text).ok_or_else(|| {
                CliError::config(format!(
                    "kind must be fourier-kernel, laplace-kernel, laplace-operator, \
                     sumudu-kernel, or sumudu-operator, got {kind_text:?}"
                ))
            })?;
            let varpi = require(merge_parse(args.varpi, &mut file, "varpi")?, "varpi")?;
            let norm = merge_parse(args.norm, &mut file, "norm")?.unwrap_or(1.0);
            let ord = validated_order(varpi, norm)?;
            let function = match merge_parse(args.function, &mut file, "fn")? {
                Some(name) => Some(CatalogFn::parse(&name).ok_or_else(|| {
                    CliError::config(format!("unknown catalogue function {name:?}"))
                })?),
                None => None,
            };
            if matches!(kind, ImageKind::LaplaceOperator | ImageKind::SumuduOperator)
                && function.is_none()
            {
                return Err(CliError::config(format!(
                    "{} requires --fn to choose the transformed function",
                    kind.name()
                )));
            }
            let mode_text =
                merge_parse(args.mode, &mut file, "mode")?.unwrap_or_else(|| "as-paper".into());
            let mode = match mode_text.as_str() {
                "as-paper" => FourierMode::AsPaper,
                "band-limited" => FourierMode::BandLimited,
                other => {
                    return Err(CliError::config(format!(
                        "mode must be as-paper or band-limited, got {other:?}"
                    )))
                }
            };
            let at_text = require(merge_parse(args.at, &mut file, "at")?, "at")?;
            let at = parse_grid(&at_text, "at")?;
            match kind {
                ImageKind::LaplaceKernel | ImageKind::LaplaceOperator => {
                    if at[0] <= 0.0 {
                        return Err(CliError::config(
                            "laplace images require positive transform values",
                        ));
                    }
                }
                ImageKind::SumuduKernel | ImageKind::SumuduOperator => {
                    if at[0] <= 0.0 {
                        return Err(CliError::config(
                            "sumudu images require positive transform values",
                        ));
                    }
                }
                ImageKind::FourierKernel => {}
            }
            record("command", "image".into());
            record("kind", kind_text);
            record("varpi", format!("{varpi}"));
            record("norm", format!("{norm}"));
            if let Some(f) = function {
                record("fn", f.name().into());
            }
            if kind == ImageKind::FourierKernel {
                record("mode", mode_text);
            }
            record("at", at_text);
            Scenario::Image {
                kind,
                ord,
                function,
                mode,
                at,
            }
        }
        Command::Invert(args) => {
            let image_text = require(merge_parse(args.image, &mut file, "image")?, "image")?;
            let image = NamedImage::parse(&image_text).ok_or_else(|| {
                CliError::config(format!(
                    "image must be one-over-s, one-over-s2, one-over-s-plus-1, \
                     step:<amp>, or ramp:<slope>, got {image_text:?}"
                ))
            })?;
            let t_text = require(merge_parse(args.t, &mut file, "t")?, "t")?;
            let t = parse_grid(&t_text, "t")?;
            if t[0] <= 0.0 {
                return Err(CliError::config(format!(
                    "inversion times must be positive, got {}",
                    t[0]
                )));
            }
            let inv = validated_inversion(
                merge_parse(args.method, &mut file, "method")?,
                merge_parse(args.stehfest_order, &mut file, "stehfest-order")?,
                merge_parse(args.talbot_nodes, &mut file, "talbot-nodes")?,
                merge_parse(args.talbot_scale, &mut file, "talbot-scale")?,
                14,
            )?;
            record("command", "invert".into());
            record("image", image.describe());
            record("t", t_text);
            record("method", method_name(inv.method).into());
            record("stehfest-order", format!("{}", inv.stehfest_order));
            if inv.method == InversionMethod::Talbot {
                record("talbot-nodes", format!("{}", inv.talbot_nodes));
                record("talbot-scale", format!("{}", inv.talbot_scale));
            }
            Scenario::Invert { image, t, inv }
        }
        Command::Heat(args) => {
            let model_text = require(merge_parse(args.model, &mut file, "model")?, "model")?;
            let model = parse_model(&model_text)?;
            let boundary_text = require(
                merge_parse(args.boundary, &mut file, "boundary")?,
                "boundary",
            )?;
            let boundary = parse_boundary(&boundary_text)?;
            let kappa = merge_parse(args.kappa, &mut file, "kappa")?.unwrap_or(1.0);
            if !(kappa > 0.0 && kappa.is_finite()) {
                return Err(CliError::config(format!(
                    "kappa must be positive, got {kappa}"
                )));
            }
            let varpi = merge_parse(args.varpi, &mut file, "varpi")?;
            let norm = merge_parse(args.norm, &mut file, "norm")?.unwrap_or(1.0);
            let order = match (model, varpi) {
                (ModelKind::Classical, None) => None,
                (ModelKind::Classical, Some(_)) => {
                    return Err(CliError::config("the classical model takes no varpi"))
                }
                (_, Some(w)) => Some(validated_order(w, norm)?),
                (_, None) => {
                    return Err(CliError::config(format!(
                        "model {model_text} requires varpi"
                    )))
                }
            };
            let mu_text = require(merge_parse(args.mu, &mut file, "mu")?, "mu")?;
            let mu = parse_grid(&mu_text, "mu")?;
            if mu[0] < 0.0 {
                return Err(CliError::config(format!(
                    "mu grid must be non-negative, got {}",
                    mu[0]
                )));
            }
            let tau_text = require(merge_parse(args.tau, &mut file, "tau")?, "tau")?;
            let tau = parse_grid(&tau_text, "tau")?;
            if tau[0] <= 0.0 {
                return Err(CliError::config(format!(
                    "tau grid must be positive, got {}",
                    tau[0]
                )));
            }
            // the nested space-fractional inversion sits on a noise floor
            // above order 10
            let default_order = if model == ModelKind::SpaceFractional {
                10
            } else {
                14
            };
            let inv = validated_inversion(
                merge_parse(args.method, &mut file, "method")?,
                merge_parse(args.stehfest_order, &mut file, "stehfest-order")?,
                merge_parse(args.talbot_nodes, &mut file, "talbot-nodes")?,
                merge_parse(args.talbot_scale, &mut file, "talbot-scale")?,
                default_order,
            )?;
            if model == ModelKind::SpaceFractional && inv.method == InversionMethod::Talbot {
                return Err(CliError::config(
                    "the space-fractional solver supports the stehfest method only",
                ));
            }
            let prob = DiffusionProblem::new(kappa, order, boundary, model)
                .map_err(|e| CliError::Config(e.to_string()))?;
            record("command", "heat".into());
            record("model", model_text);
            record("boundary", boundary_text);
            record("kappa", format!("{kappa}"));
            if let Some(w) = varpi {
                record("varpi", format!("{w}"));
                record("norm", format!("{norm}"));
            }
            record("mu", mu_text);
            record("tau", tau_text);
            record("method", method_name(inv.method).into());
            record("stehfest-order", format!("{}", inv.stehfest_order));
            Scenario::Heat { prob, mu, tau, inv }
        }
        Command::Compare(args) => {
            let model_text = merge_parse(args.model, &mut file, "model")?
                .unwrap_or_else(|| "time-fractional".into());
            let model = parse_model(&model_text)?;
            if model == ModelKind::Classical {
                return Err(CliError::config(
                    "compare needs a fractional model for the order columns",
                ));
            }
            let varpi_text = require(merge_parse(args.varpi, &mut file, "varpi")?, "varpi")?;
            let norm = merge_parse(args.norm, &mut file, "norm")?.unwrap_or(1.0);
            let mut orders = Vec::new();
            for part in varpi_text.split(',') {
                let w: f64 = part.trim().parse().map_err(|_| {
                    CliError::config(format!("varpi list entry {part:?} is not a number"))
                })?;
                orders.push(validated_order(w, norm)?);
            }
            let boundary_text = require(
                merge_parse(args.boundary, &mut file, "boundary")?,
                "boundary",
            )?;
            let boundary = parse_boundary(&boundary_text)?;
            let kappa = merge_parse(args.kappa, &mut file, "kappa")?.unwrap_or(1.0);
            if !(kappa > 0.0 && kappa.is_finite()) {
                return Err(CliError::config(format!(
                    "kappa must be positive, got {kappa}"
                )));
            }
            let mu_text = require(merge_parse(args.mu, &mut file, "mu")?, "mu")?;
            let mu = parse_grid(&mu_text, "mu")?;
            if mu[0] < 0.0 {
                return Err(CliError::config(format!(
                    "mu grid must be non-negative, got {}",
                    mu[0]
                )));
            }
            let tau_text = require(merge_parse(args.tau, &mut file, "tau")?, "tau")?;
            let tau = parse_grid(&tau_text, "tau")?;
            if tau[0] <= 0.0 {
                return Err(CliError::config(format!(
                    "tau grid must be positive, got {}",
                    tau[0]
                )));
            }
            let default_order = if model == ModelKind::SpaceFractional {
                10
            } else {
                14
            };
            let inv = validated_inversion(
                None,
                merge_parse(args.stehfest_order, &mut file, "stehfest-order")?,
                None,
                None,
                default_order,
            )?;
            record("command", "compare".into());
            record("model", model_text);
            record("varpi", varpi_text);
            record("norm", format!("{norm}"));
            record("boundary", boundary_text);
            record("kappa", format!("{kappa}"));
            record("mu", mu_text);
            record("tau", tau_text);
            record("stehfest-order", format!("{}", inv.stehfest_order));
            Scenario::Compare {
                kappa,
                boundary,
                model,
                orders,
                mu,
                tau,
                inv,
            }
        }
    };

    file.finish()?;

    Ok(ScenarioConfig {
        scenario,
        output: OutputSpec {
            out,
            format,
            quiet: cli.quiet,
        },
        params,
    })
}
