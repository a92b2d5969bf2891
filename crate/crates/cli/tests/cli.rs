use std::path::Path;
use std::process::{Command, Output};

use lqscatter::harmonic::hardy_norm;
use lqscatter::scattering::io::{decode_sctr, from_json};
use lqscatter::scattering::{scatter, scattering_norm};
use lqscatter::signal::io::encode_sigf;
use lqscatter::signal::{lq_norm_pow, Contraction, Grid, Signal};
use lqscatter::synth::band_limited_noise;
use lqscatter::wavelet::admissibility::{check_admissibility_dyadic, fit_decay, vanishing_moments};
use lqscatter::wavelet::{build_bank, MotherWavelet, Normalization, ScaleGrid};
use lqscatter_cli::commands::admissibility_frequencies;
use lqscatter_cli::config::{RunConfig, Settings};
use lqscatter_cli::{parse_list, thread_count, CliError, ExitStatus};
use num_complex::Complex64;
use serde_json::Value;
use tempfile::TempDir;

fn lqscatter(args: &[&str], dir: &Path) -> Output {
    lqscatter_env(args, dir, None)
}

fn lqscatter_env(args: &[&str], dir: &Path, threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lqscatter"));
    cmd.args(args).current_dir(dir).env_remove("SCATTER_THREADS");
    if let Some(t) = threads {
        cmd.env("SCATTER_THREADS", t);
    }
    cmd.output().expect("the binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_signal(dir: &Path, name: &str, f: &Signal) {
    std::fs::write(dir.join(name), encode_sigf(f)).unwrap();
}

fn stdout_value(out: &Output, key: &str) -> f64 {
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")).map(|v| v.parse().unwrap()))
        .unwrap_or_else(|| panic!("no '{key}' line in {}", stdout(out)))
}

const MEYER_RUN: &[&str] = &[
    "scatter",
    "--input",
    "f.sigf",
    "--layers",
    "2",
    "--q",
    "2",
    "--mode",
    "dyadic",
    "--wavelet",
    "meyer",
];

fn meyer_input(dir: &Path) {
    write_signal(
        dir,
        "f.sigf",
        &band_limited_noise(Grid::new_1d(512, 1.0).unwrap(), 0.05, 2.5, 3),
    );
}

#[test]
fn zero_input_scatters_to_zero() {
    let dir = TempDir::new().unwrap();
    write_signal(
        dir.path(),
        "zeros.sigf",
        &Signal::zeros(Grid::new_1d(256, 1.0).unwrap()),
    );
    let out = lqscatter(
        &[
            "scatter",
            "--input",
            "zeros.sigf",
            "--layers",
            "1",
            "--q",
            "2",
            "--output",
            "z.sctr",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    assert_eq!(stdout_value(&out, "norm"), 0.0);
    let s = decode_sctr(&std::fs::read(dir.path().join("z.sctr")).unwrap()).unwrap();
    assert!(!s.is_empty());
    assert!(s.values().iter().all(|&v| v == 0.0));
    assert_eq!(stdout_value(&out, "coefficients"), s.len() as f64);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    meyer_input(dir.path());
    let mut outputs = Vec::new();
    for (name, threads) in [
        ("a.sctr", None),
        ("b.sctr", None),
        ("c.sctr", Some("1")),
        ("d.sctr", Some("3")),
    ] {
        let args: Vec<&str> = MEYER_RUN.iter().copied().chain(["--output", name]).collect();
        let out = lqscatter_env(&args, dir.path(), threads);
        assert_eq!(code(&out), 0, "{out:?}");
        outputs.push(std::fs::read(dir.path().join(name)).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn json_and_binary_outputs_decode_identically() {
    let dir = TempDir::new().unwrap();
    meyer_input(dir.path());
    let bin: Vec<&str> = MEYER_RUN.iter().copied().chain(["--output", "s.sctr"]).collect();
    let json: Vec<&str> = MEYER_RUN
        .iter()
        .copied()
        .chain(["--output", "s.out", "--json"])
        .collect();
    assert_eq!(code(&lqscatter(&bin, dir.path())), 0);
    assert_eq!(code(&lqscatter(&json, dir.path())), 0);
    let a = decode_sctr(&std::fs::read(dir.path().join("s.sctr")).unwrap()).unwrap();
    let b = from_json(&std::fs::read_to_string(dir.path().join("s.out")).unwrap()).unwrap();
    assert_eq!(a.len(), b.len());
    for ((pa, va, wa), (pb, vb, wb)) in a.iter().zip(b.iter()) {
        assert_eq!(pa, pb);
        assert_eq!(va.to_bits(), vb.to_bits());
        assert_eq!(wa.to_bits(), wb.to_bits());
    }
    assert_eq!(a.scales(), b.scales());
    assert_eq!(a.q().to_bits(), b.q().to_bits());
}

#[test]
fn scatter_matches_the_library() {
    let dir = TempDir::new().unwrap();
    meyer_input(dir.path());
    let args: Vec<&str> = MEYER_RUN
        .iter()
        .copied()
        .chain(["--j-min", "-1", "--j-max", "6", "--output", "s.csv"])
        .collect();
    let out = lqscatter(&args, dir.path());
    assert_eq!(code(&out), 0, "{out:?}");
    let grid = Grid::new_1d(512, 1.0).unwrap();
    let f = band_limited_noise(grid, 0.05, 2.5, 3);
    let bank = build_bank(
        &MotherWavelet::meyer(1, std::f64::consts::FRAC_PI_2).unwrap(),
        grid,
        ScaleGrid::dyadic(-1, 6).unwrap(),
        Normalization::L1,
        None,
    )
    .unwrap();
    let s = scatter(&f, &bank, 2, 2.0, Contraction::Modulus).unwrap();
    assert_eq!(stdout_value(&out, "norm"), scattering_norm(&s));
    let csv = std::fs::read_to_string(dir.path().join("s.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("path,value,weight"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), s.len());
    for (row, (_, v, w)) in rows.iter().zip(s.iter()) {
        assert_eq!(row[1].parse::<f64>().unwrap(), v);
        assert_eq!(row[2].parse::<f64>().unwrap(), w);
    }
}

#[test]
fn rotated_lattices_are_selectable() {
    let dir = TempDir::new().unwrap();
    let common = [
        "scatter", "--dims", "2", "--size", "32", "--angles", "4", "--j-min", "1", "--j-max", "3", "--layers", "2",
    ];
    let e: Vec<&str> = common.iter().copied().chain(["--output", "e.sctr"]).collect();
    let i: Vec<&str> = common
        .iter()
        .copied()
        .chain(["--lattice", "invariant", "--output", "i.sctr"])
        .collect();
    assert_eq!(code(&lqscatter(&e, dir.path())), 0);
    assert_eq!(code(&lqscatter(&i, dir.path())), 0);
    let e = decode_sctr(&std::fs::read(dir.path().join("e.sctr")).unwrap()).unwrap();
    let i = decode_sctr(&std::fs::read(dir.path().join("i.sctr")).unwrap()).unwrap();
    assert_eq!(e.len(), 12 * 12);
    assert_eq!(i.len(), 3 * 12);
}

fn check_report(args: &[&str]) -> (i32, Value) {
    let dir = TempDir::new().unwrap();
    let full: Vec<&str> = ["check-wavelet", "--json"]
        .into_iter()
        .chain(args.iter().copied())
        .collect();
    let out = lqscatter(&full, dir.path());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{e}: {out:?}"));
    (code(&out), report)
}

fn check_named<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check '{name}'"))
}

#[test]
fn meyer_bank_is_a_flat_partition() {
    for dims in ["1", "2"] {
        let (status, report) = check_report(&["--wavelet", "meyer", "--dims", dims, "--size", "128"]);
        assert_eq!(status, 0, "{report}");
        let flat = check_named(&report, "partition flatness");
        assert!(flat["value"].as_f64().unwrap() <= 1e-8);
        assert_eq!(flat["pass"], true);
        assert_eq!(report["passed"], true);
    }
}

#[test]
fn uncorrected_morlet_fails_the_zero_average_check() {
    let (status, report) = check_report(&["--wavelet", "morlet-uncorrected"]);
    assert_eq!(status, 1);
    let zero = check_named(&report, "zero average");
    assert_eq!(zero["pass"], false);
    assert!(zero["value"].as_f64().unwrap() > 1e-8);
    assert_eq!(report["passed"], false);
}

#[test]
fn wavelet_report_matches_direct_calls() {
    let (status, report) = check_report(&[
        "--wavelet",
        "mexican-hat",
        "--size",
        "512",
        "--j-min",
        "1",
        "--j-max",
        "5",
        "--seed",
        "7",
    ]);
    assert_eq!(status, 0, "{report}");
    let psi = MotherWavelet::mexican_hat(1, 1.0).unwrap();
    let scales = ScaleGrid::dyadic(1, 5).unwrap();
    let adm = check_admissibility_dyadic(&psi, &admissibility_frequencies(&psi, &scales), &scales).unwrap();
    assert_eq!(report["admissibility"]["min"].as_f64().unwrap(), adm.min);
    assert_eq!(report["admissibility"]["max"].as_f64().unwrap(), adm.max);
    assert_eq!(report["admissibility"]["mean"].as_f64().unwrap(), adm.mean);

    let fine = Grid::new_1d(1024, 0.05).unwrap();
    let fit = fit_decay(&psi, &fine).unwrap();
    assert_eq!(report["decay"]["epsilon"].as_f64().unwrap(), fit.epsilon);
    let moments = vanishing_moments(&psi, &fine).unwrap();
    let reported = report["moments"].as_array().unwrap();
    assert_eq!(reported.len(), moments.len());
    for (r, m) in reported.iter().zip(&moments) {
        assert_eq!(r["value"].as_f64().unwrap(), m.value);
    }

    let grid = Grid::new_1d(512, 1.0).unwrap();
    let f = band_limited_noise(grid, 0.5 * grid.fundamental(), 0.8 * grid.nyquist(), 7);
    let bank = build_bank(&psi, grid, scales, Normalization::L1, None).unwrap();
    let s1 = scatter(&f, &bank, 1, 2.0, Contraction::Modulus).unwrap();
    let ratio = scattering_norm(&s1) / lq_norm_pow(&f, 2.0).unwrap();
    assert_eq!(report["norm_ratio"].as_f64().unwrap(), ratio);
}

const SWEEP: &[&str] = &[
    "stability",
    "--dims",
    "2",
    "--size",
    "64",
    "--synth",
    "localized",
    "--band-high",
    "2.5",
    "--width",
    "5",
    "--seed",
    "31",
    "--wavelet",
    "morlet",
    "--mode",
    "dyadic",
    "--j-min",
    "1",
    "--j-max",
    "4",
    "--family",
    "dilation",
    "--params",
    "0.00390625,0.0078125,0.015625",
];

#[test]
fn dilation_sweep_writes_a_passing_report() {
    let dir = TempDir::new().unwrap();
    for (q, m) in [("1.5", "1"), ("2", "2")] {
        let args: Vec<&str> = SWEEP
            .iter()
            .copied()
            .chain(["--q", q, "--layers", m, "--output", "report.csv"])
            .collect();
        let out = lqscatter(&args, dir.path());
        assert_eq!(code(&out), 0, "{out:?}");
        let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("param,sup_Dtau,sup_D2tau,distance,input_term,ratio"));
        let ratios: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
        assert_eq!(ratios.len(), 3);
        let band = ratios.iter().copied().fold(0.0, f64::max) / ratios.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(ratios.iter().all(|r| r.is_finite()) && band <= 3.0, "{ratios:?}");
    }
}

#[test]
fn stability_reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let mut outputs = Vec::new();
    for (name, threads) in [("a.csv", None), ("b.csv", Some("1")), ("c.csv", Some("2"))] {
        let args: Vec<&str> = SWEEP.iter().copied().chain(["--output", name]).collect();
        assert_eq!(code(&lqscatter_env(&args, dir.path(), threads)), 0);
        outputs.push(std::fs::read(dir.path().join(name)).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn empty_family_is_a_config_error_without_output() {
    let dir = TempDir::new().unwrap();
    let out = lqscatter(&["stability", "--params", "", "--output", "report.csv"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(!dir.path().join("report.csv").exists());
    assert_eq!(
        std::fs::read_dir(dir.path()).unwrap().count(),
        0,
        "no temporary files are left behind"
    );
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    std::fs::write(d.join("junk.sigf"), b"not a signal").unwrap();
    let grid = Grid::new_1d(64, 1.0).unwrap();
    let mut bytes = encode_sigf(&Signal::zeros(grid));
    let n = bytes.len();
    bytes[n - 16..n - 8].copy_from_slice(&f64::NAN.to_le_bytes());
    std::fs::write(d.join("nan.sigf"), bytes).unwrap();
    let huge = Signal::from_fn(grid, |x| {
        Complex64::new(1e300 * (std::f64::consts::PI * x[0] / 4.0).cos(), 0.0)
    });
    write_signal(d, "huge.sigf", &huge);
    let cases: &[(&[&str], i32)] = &[
        (&["scatter", "--q", "3"], 2),
        (&["scatter", "--q", "0.5"], 2),
        (&["scatter", "--layers", "0"], 2),
        (&["scatter", "--wavelet", "haar"], 2),
        (&["scatter", "--param", "xi"], 2),
        (&["scatter", "--dims", "3"], 2),
        (
            &[
                "equivariance",
                "--dims",
                "2",
                "--size",
                "32",
                "--angles",
                "4",
                "--j-max",
                "3",
                "--theta",
                "30",
            ],
            2,
        ),
        (&["equivariance", "--dims", "2", "--size", "32", "--j-max", "3"], 2),
        (&["scatter", "--input", "missing.sigf"], 3),
        (&["scatter", "--input", "junk.sigf"], 3),
        (&["info", "junk.sigf"], 3),
        (&["scatter", "--output", "no/such/dir/out.sctr", "--size", "64"], 3),
        (&["scatter", "--input", "nan.sigf"], 4),
        (&["scatter", "--input", "huge.sigf", "--j-min", "1", "--j-max", "3"], 4),
    ];
    for (args, expected) in cases {
        let out = lqscatter(args, d);
        assert_eq!(
            code(&out),
            *expected,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let out = lqscatter_env(&["hardy"], d, Some("many"));
    assert_eq!(code(&out), 2);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    meyer_input(d);
    std::fs::write(
        d.join("run.toml"),
        "input = \"f.sigf\"\nq = 1.0\nlayers = 2\n[wavelet]\nname = \"meyer\"\n[scales]\nmode = \"dyadic\"\nj_min = -1\nj_max = 6\n",
    )
    .unwrap();
    let from_file = lqscatter(
        &["scatter", "--config", "run.toml", "--q", "2", "--output", "a.sctr"],
        d,
    );
    assert_eq!(code(&from_file), 0, "{from_file:?}");
    let from_flags = lqscatter(
        &[
            "scatter",
            "--input",
            "f.sigf",
            "--layers",
            "2",
            "--wavelet",
            "meyer",
            "--j-min",
            "-1",
            "--j-max",
            "6",
            "--output",
            "b.sctr",
        ],
        d,
    );
    assert_eq!(code(&from_flags), 0);
    assert_eq!(
        std::fs::read(d.join("a.sctr")).unwrap(),
        std::fs::read(d.join("b.sctr")).unwrap()
    );

    std::fs::write(d.join("bad.toml"), "[wavelet]\nnmae = \"meyer\"\n").unwrap();
    assert_eq!(code(&lqscatter(&["scatter", "--config", "bad.toml"], d)), 2);
    assert_eq!(code(&lqscatter(&["scatter", "--config", "absent.toml"], d)), 3);
}

#[test]
fn settings_overlay_replaces_only_set_fields() {
    let file =
        Settings::from_toml("q = 1.5\nlayers = 3\n[wavelet]\nname = \"meyer\"\n[wavelet.params]\nomega_c = 1.0\n")
            .unwrap();
    let flags = Settings::from_toml("layers = 1\n[wavelet.params]\nomega_c = 2.0\n").unwrap();
    let merged = file.overlay(flags).unwrap();
    assert_eq!(merged.q, Some(1.5));
    assert_eq!(merged.layers, Some(1));
    assert_eq!(merged.wavelet.name.as_deref(), Some("meyer"));
    assert_eq!(merged.wavelet.params["omega_c"], 2.0);
    let cfg = RunConfig::resolve(Settings::default()).unwrap();
    assert_eq!((cfg.q, cfg.m), (2.0, 2));
    assert!(matches!(
        RunConfig::resolve(Settings {
            q: Some(2.5),
            ..Settings::default()
        }),
        Err(CliError::Config(_))
    ));
}

#[test]
fn small_parsers() {
    assert_eq!(parse_list("").unwrap(), Vec::<f64>::new());
    assert_eq!(parse_list("0.5, 1,2").unwrap(), vec![0.5, 1.0, 2.0]);
    assert!(parse_list("1,x").is_err());
    assert_eq!(thread_count(None).unwrap(), 0);
    assert_eq!(thread_count(Some("4")).unwrap(), 4);
    assert!(thread_count(Some("-1")).is_err());
    assert_eq!(CliError::Numeric("x".into()).exit_status(), ExitStatus::NumericFailure);
}

#[test]
fn equivariance_reports_exact_quarter_turns() {
    let dir = TempDir::new().unwrap();
    let out = lqscatter(
        &[
            "equivariance",
            "--json",
            "--dims",
            "2",
            "--size",
            "32",
            "--angles",
            "4",
            "--j-min",
            "1",
            "--j-max",
            "3",
            "--synth",
            "bump",
            "--width",
            "3",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let r: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r["theta_degrees"], 90.0);
    assert!(r["equivariance"]["max_rel"].as_f64().unwrap() <= 1e-10);
    assert!(r["invariance"]["max_rel"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn hardy_report_matches_the_library() {
    let dir = TempDir::new().unwrap();
    let f = band_limited_noise(Grid::new_2d(32, 32, 1.0).unwrap(), 0.2, 2.0, 5);
    write_signal(dir.path(), "f.sigf", &f);
    let out = lqscatter(&["hardy", "--input", "f.sigf", "--json"], dir.path());
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let direct = hardy_norm(&f).unwrap();
    assert_eq!(r["total"].as_f64().unwrap(), direct.total);
    assert_eq!(r["transform_parts"].as_array().unwrap().len(), 2);
}

#[test]
fn info_describes_signals_and_coefficients() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let f = Signal::constant(Grid::new_2d(8, 16, 0.5).unwrap(), Complex64::new(2.0, 0.0));
    write_signal(d, "f.sigf", &f);
    let out = lqscatter(&["info", "f.sigf", "--json"], d);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r["kind"], "signal");
    assert_eq!(r["extents"], serde_json::json!([8, 16]));
    assert_eq!(r["energy"].as_f64().unwrap(), 4.0 * 128.0 * 0.25);

    meyer_input(d);
    let args: Vec<&str> = MEYER_RUN.iter().copied().chain(["--output", "s.sctr"]).collect();
    let scattered = lqscatter(&args, d);
    let info = lqscatter(&["info", "s.sctr"], d);
    assert_eq!(code(&info), 0);
    assert_eq!(stdout_value(&info, "norm"), stdout_value(&scattered, "norm"));
    assert_eq!(
        stdout_value(&info, "coefficients"),
        stdout_value(&scattered, "coefficients")
    );
}
