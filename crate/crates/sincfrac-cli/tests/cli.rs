//! End-to-end tests of the binary: parsing, precedence, output formats,
//! and error reporting.

use std::process::{Command, Output};

fn sincfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sincfrac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn kernel_grid_to_stdout() {
    let out = sincfrac(&["kernel", "--varpi", "0.5", "--u=-1:1:0.5", "--quiet"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "u[-],nsinc[-],kernel[-]");
    assert_eq!(lines.len(), 1 + 5 + 1); // header + 5 points + config
    assert!(lines.last().unwrap().starts_with("# config: "));
}

#[test]
fn deriv_defaults_are_filled() {
    let out = sincfrac(&[
        "deriv", "--fn", "linear", "--a", "0", "--mu", "1", "--varpi", "0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // defaults recorded in the config comment
    assert!(text.contains("norm=1"));
    assert!(text.contains("rel-tol=1e-10"));
    assert!(text.contains("abs-tol=1e-12"));
    // frozen closed-form value Si(pi)/pi
    assert!(text.contains("5.89489872236e-1"));
}

#[test]
fn invalid_varpi_exits_two_with_named_constraint() {
    let out = sincfrac(&[
        "deriv", "--fn", "linear", "--a", "0", "--mu", "1", "--varpi", "1.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("varpi"), "stderr: {err}");
    assert!(err.contains("(0,1)"), "stderr: {err}");
}

#[test]
fn unknown_subcommand_flag_exits_two() {
    let out = sincfrac(&["kernel", "--varpi", "0.5", "--u", "0,1", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("scenario.conf");
    std::fs::write(&conf, "kappa = 2\nvarpi = 0.3\nmu = 0,1\ntau = 1\n").unwrap();
    let out = sincfrac(&[
        "heat",
        "--config",
        conf.to_str().unwrap(),
        "--model",
        "time-fractional",
        "--boundary",
        "step:1",
        "--kappa",
        "0.5",
        "--quiet",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    // flag wins over file for kappa; file supplies varpi and grids
    assert!(text.contains("kappa=0.5"), "{text}");
    assert!(text.contains("varpi=0.3"), "{text}");
}

#[test]
fn unknown_config_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    std::fs::write(&conf, "bogus = 1\n").unwrap();
    let out = sincfrac(&[
        "heat",
        "--config",
        conf.to_str().unwrap(),
        "--model",
        "classical",
        "--boundary",
        "step:1",
        "--mu",
        "0,1",
        "--tau",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn malformed_config_line_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bad.conf");
    std::fs::write(&conf, "this is not a key value pair\n").unwrap();
    let out = sincfrac(&[
        "invert",
        "--config",
        conf.to_str().unwrap(),
        "--image",
        "one-over-s",
        "--t",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_syntax_errors_exit_two() {
    for grid in ["1:0:0.5", "0:1:0", "1,1", "2,1", "abc"] {
        let out = sincfrac(&["kernel", "--varpi", "0.5", "--u", grid]);
        assert_eq!(
            out.status.code(),
            Some(2),
            "grid {grid:?} should be rejected"
        );
    }
}

#[test]
fn invert_named_images() {
    let out = sincfrac(&["invert", "--image", "one-over-s2", "--t", "3", "--quiet"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 3.0).abs() < 1e-5);

    let out = sincfrac(&["invert", "--image", "ramp:0.5", "--t", "2", "--quiet"]);
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 1.0).abs() < 1e-5);
}

#[test]
fn invert_with_talbot_method() {
    let out = sincfrac(&[
        "invert",
        "--image",
        "one-over-s-plus-1",
        "--t",
        "1",
        "--method",
        "talbot",
        "--quiet",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - (-1.0f64).exp()).abs() < 1e-9, "got {value}");
}

#[test]
fn heat_classical_full_grid_matches_erfc_oracle() {
    let out = sincfrac(&[
        "heat",
        "--model",
        "classical",
        "--boundary",
        "step:1",
        "--kappa",
        "1",
        "--mu",
        "0:4:0.1",
        "--tau",
        "0.25,1,4",
        "--quiet",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rows = 0;
    for line in text.lines().skip(1) {
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let mu: f64 = fields[0].parse().unwrap();
        let tau: f64 = fields[1].parse().unwrap();
        let value: f64 = fields[2].parse().unwrap();
        let want = sincfrac::classical_closed_form(mu, tau, 1.0, 1.0).unwrap();
        assert!(
            (value - want).abs() < 1e-4,
            "mu {mu} tau {tau}: {value} vs {want}"
        );
        rows += 1;
    }
    assert_eq!(rows, 41 * 3);
}

#[test]
fn heat_classical_matches_closed_form_column() {
    let out = sincfrac(&[
        "heat",
        "--model",
        "classical",
        "--boundary",
        "step:1",
        "--kappa",
        "1",
        "--mu",
        "0:2:1",
        "--tau",
        "1",
        "--quiet",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // mu = 2, tau = 1, kappa = 1: erfc(1) = 0.157299...
    let row: Vec<&str> = text.lines().nth(3).unwrap().split(',').collect();
    let value: f64 = row[2].parse().unwrap();
    assert!((value - 0.15729920705).abs() < 1e-4, "got {value}");
}

#[test]
fn spacefrac_flags_exit_one_with_partial_results() {
    let out = sincfrac(&[
        "heat",
        "--model",
        "space-fractional",
        "--boundary",
        "step:1",
        "--kappa",
        "1",
        "--varpi",
        "0.5",
        "--mu",
        "0.05,2.0",
        "--tau",
        "1",
        "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("NAN,singularity"), "{text}");
    // the clean point is still present
    assert!(text.lines().nth(1).unwrap().starts_with("5.00000000000e-2"));
}

#[test]
fn classical_model_rejects_varpi() {
    let out = sincfrac(&[
        "heat",
        "--model",
        "classical",
        "--boundary",
        "step:1",
        "--varpi",
        "0.5",
        "--mu",
        "0,1",
        "--tau",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn svg_requires_out_path() {
    let out = sincfrac(&[
        "kernel", "--varpi", "0.5", "--u", "0:1:0.1", "--format", "svg",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn svg_single_point_grid_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.svg");
    let out = sincfrac(&[
        "kernel",
        "--varpi",
        "0.5",
        "--u",
        "1",
        "--format",
        "svg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_round_trip_preserves_rendered_digits() {
    let out = sincfrac(&[
        "deriv",
        "--fn",
        "sine",
        "--a",
        "0",
        "--mu",
        "0.5:3:0.5",
        "--varpi",
        "0.7",
        "--quiet",
    ]);
    let text = stdout(&out);
    for line in text.lines().skip(1) {
        if line.starts_with('#') {
            continue;
        }
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.11e}"), field);
        }
    }
}

#[test]
fn image_command_kinds() {
    // as-paper fourier image is constant in xi
    let out = sincfrac(&[
        "image",
        "--kind",
        "fourier-kernel",
        "--varpi",
        "0.5",
        "--at",
        "0,1,10",
        "--quiet",
    ]);
    let text = stdout(&out);
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!((values[0] - values[2]).abs() < 1e-15);

    // band-limited mode vanishes beyond the cutoff
    let out = sincfrac(&[
        "image",
        "--kind",
        "fourier-kernel",
        "--varpi",
        "0.5",
        "--mode",
        "band-limited",
        "--at",
        "0,7",
        "--quiet",
    ]);
    let text = stdout(&out);
    let last: f64 = text
        .lines()
        .nth(2)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(last, 0.0);

    // operator images need --fn
    let out = sincfrac(&[
        "image",
        "--kind",
        "laplace-operator",
        "--varpi",
        "0.5",
        "--at",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = sincfrac(&[
        "image",
        "--kind",
        "laplace-operator",
        "--fn",
        "linear",
        "--varpi",
        "0.5",
        "--at",
        "1,2",
        "--quiet",
    ]);
    assert!(out.status.success());
}
