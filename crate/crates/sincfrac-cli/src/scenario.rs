//! Scenario execution: compute the requested quantities, then emit CSV
//! and/or SVG.

use std::collections::BTreeMap;
use std::path::PathBuf;

use sincfrac::{
    compare_models, fourier_image_kernel, frac_derivative, laplace_image_kernel,
    laplace_image_operator, laplace_invert, nsinc, scaled_kernel, solve, sumudu_image_kernel,
    sumudu_image_operator, Error as LibError, SolutionGrid,
};

use crate::config::{CliError, Format, ImageKind, OutputSpec, Result, Scenario, ScenarioConfig};
use crate::svg::{write_svg, Series};
use crate::table::{render_csv, write_csv, Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Flagged { points: usize },
}

fn lib_error(e: LibError) -> CliError {
    match e {
        LibError::Config(_) | LibError::Domain(_) => CliError::Config(e.to_string()),
        other => CliError::Numeric(other.to_string()),
    }
}

struct Rendered {
    table: Table,
    series: Vec<Series>,
    x_label: String,
    y_label: String,
    flagged: usize,
}

pub fn run_scenario(cfg: ScenarioConfig) -> Result<Outcome> {
    let output = cfg.output.clone();
    if output.format.wants_svg() {
        ensure_plottable(&cfg.scenario)?;
    }
    let rendered = compute(cfg.scenario)?;
    emit(&rendered, &output, &cfg.params)?;
    if rendered.flagged > 0 {
        Ok(Outcome::Flagged {
            points: rendered.flagged,
        })
    } else {
        Ok(Outcome::Clean)
    }
}

fn ensure_plottable(scenario: &Scenario) -> Result<()> {
    let x_len = match scenario {
        Scenario::Kernel { u, .. } => u.len(),
        Scenario::Deriv { mu, .. } => mu.len(),
        Scenario::Image { at, .. } => at.len(),
        Scenario::Invert { t, .. } => t.len(),
        Scenario::Heat { mu, .. } => mu.len(),
        Scenario::Compare { mu, .. } => mu.len(),
    };
    if x_len < 2 {
        return Err(CliError::config(
            "svg output needs at least 2 points on the plotted axis",
        ));
    }
    Ok(())
}

fn compute(scenario: Scenario) -> Result<Rendered> {
    match scenario {
        Scenario::Kernel { ord, u } => {
            let mut table = Table::new(vec!["u[-]".into(), "nsinc[-]".into(), "kernel[-]".into()]);
            let mut sinc_series = Vec::new();
            let mut kernel_series = Vec::new();
            for &x in &u {
                let n = nsinc(x).map_err(lib_error)?;
                let k = scaled_kernel(&ord, x).map_err(lib_error)?;
                table.push_row(vec![Cell::Num(x), Cell::Num(n), Cell::Num(k)]);
                sinc_series.push((x, n));
                kernel_series.push((x, k));
            }
            Ok(Rendered {
                table,
                series: vec![
                    Series {
                        label: "nsinc".into(),
                        points: sinc_series,
                    },
                    Series {
                        label: format!("kernel varpi={}", ord.varpi()),
                        points: kernel_series,
                    },
                ],
                x_label: "u".into(),
                y_label: "value".into(),
                flagged: 0,
            })
        }
        Scenario::Deriv {
            function,
            a,
            mu,
            ord,
            quad,
        } => {
            let f = function.spec();
            let mut table = Table::new(vec!["mu[-]".into(), "derivative[-]".into()]);
            let mut points = Vec::new();
            for &m in &mu {
                let d = frac_derivative(&f, a, m, &ord, &quad).map_err(lib_error)?;
                table.push_row(vec![Cell::Num(m), Cell::Num(d)]);
                points.push((m, d));
            }
            Ok(Rendered {
                table,
                series: vec![Series {
                    label: format!("{} varpi={}", function.name(), ord.varpi()),
                    points,
                }],
                x_label: "mu".into(),
                y_label: "fractional derivative".into(),
                flagged: 0,
            })
        }
        Scenario::Image {
            kind,
            ord,
            function,
            mode,
            at,
        } => {
            let var_name = match kind {
                ImageKind::FourierKernel => "xi[-]",
                ImageKind::LaplaceKernel | ImageKind::LaplaceOperator => "s[-]",
                ImageKind::SumuduKernel | ImageKind::SumuduOperator => "zeta[-]",
            };
            let mut table = Table::new(vec![var_name.into(), "value[-]".into()]);
            let mut points = Vec::new();
            for &v in &at {
                let value = match kind {
                    ImageKind::FourierKernel => {
                        fourier_image_kernel(&ord, v, mode).map_err(lib_error)?
                    }
                    ImageKind::LaplaceKernel => laplace_image_kernel(&ord, v).map_err(lib_error)?,
                    ImageKind::SumuduKernel => sumudu_image_kernel(&ord, v).map_err(lib_error)?,
                    ImageKind::LaplaceOperator => {
                        let (pi_s, pi_0) = function.expect("validated").laplace_image_at(v);
                        laplace_image_operator(pi_s, pi_0, v, &ord).map_err(lib_error)?
                    }
                    ImageKind::SumuduOperator => {
                        let (pi_z, pi_0) = function.expect("validated").sumudu_image_at(v);
                        sumudu_image_operator(pi_z, pi_0, v, &ord).map_err(lib_error)?
                    }
                };
                table.push_row(vec![Cell::Num(v), Cell::Num(value)]);
                points.push((v, value));
            }
            Ok(Rendered {
                table,
                series: vec![Series {
                    label: format!("{} varpi={}", kind.name(), ord.varpi()),
                    points,
                }],
                x_label: var_name.split('[').next().unwrap_or("x").to_string(),
                y_label: "image value".into(),
                flagged: 0,
            })
        }
        Scenario::Invert { image, t, inv } => {
            let img = image.image();
            let mut table = Table::new(vec!["t[time]".into(), "value[-]".into()]);
            let mut points = Vec::new();
            for &time in &t {
                let v = laplace_invert(&img, time, &inv).map_err(lib_error)?;
                table.push_row(vec![Cell::Num(time), Cell::Num(v)]);
                points.push((time, v));
            }
            Ok(Rendered {
                table,
                series: vec![Series {
                    label: image.describe(),
                    points,
                }],
                x_label: "t".into(),
                y_label: "inverse transform".into(),
                flagged: 0,
            })
        }
        Scenario::Heat { prob, mu, tau, inv } => {
            let grid = solve(&prob, &mu, &tau, &inv).map_err(lib_error)?;
            let mut table = Table::new(vec![
                "mu[length]".into(),
                "tau[time]".into(),
                "value[temperature]".into(),
                "flag".into(),
            ]);
            for (i, &m) in mu.iter().enumerate() {
                for (j, &t) in tau.iter().enumerate() {
                    let (value, flag) = grid_cell(&grid, i, j);
                    table.push_row(vec![Cell::Num(m), Cell::Num(t), value, flag]);
                }
            }
            let series = tau_series(&grid, "");
            Ok(Rendered {
                table,
                series,
                x_label: "mu".into(),
                y_label: "temperature".into(),
                flagged: grid.flags().len(),
            })
        }
        Scenario::Compare {
            kappa,
            boundary,
            model,
            orders,
            mu,
            tau,
            inv,
        } => {
            let cmp = compare_models(kappa, &boundary, model, &orders, &mu, &tau, &inv)
                .map_err(lib_error)?;
            let mut columns = vec![
                "mu[length]".into(),
                "tau[time]".into(),
                "classical[temperature]".into(),
            ];
            for ord in &orders {
                columns.push(format!("varpi-{}[temperature]", ord.varpi()));
                columns.push(format!("diff-{}[temperature]", ord.varpi()));
            }
            columns.push("flag".into());
            let mut table = Table::new(columns);
            let mut flagged = 0usize;
            for (i, &m) in mu.iter().enumerate() {
                for (j, &t) in tau.iter().enumerate() {
                    let classical = cmp.classical.value(i, j);
                    let mut row = vec![Cell::Num(m), Cell::Num(t), Cell::Num(classical)];
                    let mut flags = Vec::new();
                    for (c, ord) in orders.iter().enumerate() {
                        let fg = &cmp.fractional[c];
                        let v = fg.value(i, j);
                        row.push(Cell::Num(v));
                        row.push(Cell::Num(v - classical));
                        if let Some(flag) = fg.flag_at(i, j) {
                            flags.push(format!("varpi={}:{}", ord.varpi(), flag.kind.label()));
                        }
                    }
                    if !flags.is_empty() {
                        flagged += 1;
                    }
                    row.push(if flags.is_empty() {
                        Cell::Empty
                    } else {
                        Cell::Text(flags.join(" "))
                    });
                    table.push_row(row);
                }
            }
            let mut series = tau_series(&cmp.classical, "classical");
            for (c, ord) in orders.iter().enumerate() {
                series.extend(tau_series(
                    &cmp.fractional[c],
                    &format!("varpi={}", ord.varpi()),
                ));
            }
            Ok(Rendered {
                table,
                series,
                x_label: "mu".into(),
                y_label: "temperature".into(),
                flagged,
            })
        }
    }
}

fn grid_cell(grid: &SolutionGrid, i: usize, j: usize) -> (Cell, Cell) {
    match grid.flag_at(i, j) {
        Some(flag) => (
            Cell::Num(f64::NAN),
            Cell::Text(flag.kind.label().to_string()),
        ),
        None => (Cell::Num(grid.value(i, j)), Cell::Empty),
    }
}

/// One value-vs-mu series per tau value, skipping flagged points.
fn tau_series(grid: &SolutionGrid, prefix: &str) -> Vec<Series> {
    let mut out = Vec::new();
    for (j, &t) in grid.tau_points().iter().enumerate() {
        let mut points = Vec::new();
        for (i, &m) in grid.mu_points().iter().enumerate() {
            if grid.flag_at(i, j).is_none() {
                points.push((m, grid.value(i, j)));
            }
        }
        let label = if prefix.is_empty() {
            format!("tau={t}")
        } else {
            format!("{prefix} tau={t}")
        };
        out.push(Series { label, points });
    }
    out
}

fn emit(rendered: &Rendered, output: &OutputSpec, params: &BTreeMap<String, String>) -> Result<()> {
    let io_error = |path: &PathBuf, e: std::io::Error| {
        CliError::Numeric(format!("cannot write {}: {e}", path.display()))
    };
    if output.format.wants_csv() {
        match &output.out {
            None => print!("{}", render_csv(&rendered.table, params)),
            Some(path) => {
                let path = if output.format == Format::Both {
                    path.with_extension("csv")
                } else {
                    path.clone()
                };
                write_csv(&rendered.table, params, &path).map_err(|e| io_error(&path, e))?;
                if !output.quiet {
                    eprintln!(
                        "wrote {} ({} rows)",
                        path.display(),
                        rendered.table.rows.len()
                    );
                }
            }
        }
    }
    if output.format.wants_svg() {
        let base = output.out.as_ref().expect("validated at parse time");
        let path = if output.format == Format::Both {
            base.with_extension("svg")
        } else {
            base.clone()
        };
        write_svg(
            &rendered.series,
            &rendered.x_label,
            &rendered.y_label,
            &path,
        )
        .map_err(|e| io_error(&path, e))?;
        if !output.quiet {
            eprintln!(
                "wrote {} ({} series)",
                path.display(),
                rendered.series.len()
            );
        }
    }
    Ok(())
}
