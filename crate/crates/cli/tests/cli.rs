use std::path::{Path, PathBuf};
use std::process::Command;

use tetrad_em_cli::report::Which;
use tetrad_em_cli::scenario::{Axis, SpinorSpec, Value};
use tetrad_em_cli::{check, integrate, report, verify, CliError, Scenario};

fn bundled(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn load(name: &str) -> Scenario {
    Scenario::load(&bundled(name)).unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tetrad-em")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tetrad-em-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn with_grid(mut s: Scenario, r: &str, theta: &str) -> Scenario {
    s.grid.insert("r".into(), Axis::Single(Value::Expr(r.into())));
    s.grid.insert("theta".into(), Axis::Values(vec![Value::Expr(theta.into())]));
    s
}

fn column(header: &str, row: &str, name: &str) -> f64 {
    let i = header.split(',').position(|h| h == name).unwrap();
    row.split(',').nth(i).unwrap().parse().unwrap()
}

fn matter_scenario() -> Scenario {
    let mut s = load("minkowski.json");
    s.maxwell_potential = Some(["0.1*x".into(), "0.2*t*y".into(), "0".into(), "0.3*x*z".into()]);
    s.spinor = Some(SpinorSpec {
        components: ["cos(t)", "0", "0.1*x", "0", "sin(t)", "0", "0", "0.05"].map(String::from),
        mass: 1.0,
        charge: 0.5,
    });
    s
}

#[test]
fn minkowski_check_has_zero_residuals() {
    let (rows, passed) = check::run(&load("minkowski.json").compile().unwrap()).unwrap();
    assert!(passed);
    for r in rows {
        assert_eq!(r.residual, 0.0, "{}", r.name);
    }
    let (code, out, _) = run(&["check", bundled("minkowski.json").to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("PASS\n"));
}

#[test]
fn schwarzschild_check_passes() {
    let (code, out, err) = run(&["check", bundled("schwarzschild.json").to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("cartan_structure"));
}

#[test]
fn typo_in_tetrad_names_the_entry() {
    let text = std::fs::read_to_string(bundled("schwarzschild.json")).unwrap();
    let bad = text.replace("r*sin(theta)", "r*si n(theta)");
    let p = write_temp("typo.json", &bad);
    let (code, _, err) = run(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("tetrad[3][3]"), "{err}");
}

#[test]
fn validation_errors_carry_field_paths() {
    let cases: Vec<(Box<dyn Fn(&mut Scenario)>, &str)> = vec![
        (
            Box::new(|s| {
                let axis = Axis::Range { min: Value::Number(3.0), max: Value::Number(4.0), count: 0 };
                s.grid.insert("r".into(), axis);
            }),
            "grid.r.count",
        ),
        (Box::new(|s| drop(s.grid.remove("phi"))), "grid.phi"),
        (Box::new(|s| drop(s.grid.insert("w".into(), Axis::Values(vec![])))), "grid.w"),
        (Box::new(|s| s.integration.as_mut().unwrap().r_coordinate = "theta".into()), "integration.r_coordinate"),
        (Box::new(|s| s.integration.as_mut().unwrap().tolerance = 0.0), "integration.tolerance"),
        (Box::new(|s| s.tetrad[1][1] = "(1-2*Q/r)^(-1/2)".into()), "tetrad[1][1]"),
        (Box::new(|s| *s = with_grid(s.clone(), "10", "pi/")), "grid.theta[0]"),
        (Box::new(|s| s.chart[3] = "theta".into()), "chart[3]"),
    ];
    for (edit, path) in cases {
        let mut s = load("schwarzschild.json");
        edit(&mut s);
        let err = s.compile().unwrap_err();
        assert!(matches!(err, CliError::Input(_) | CliError::Core(_)), "{err}");
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().starts_with(path), "{path}: {err}");
    }
    let mut s = matter_scenario();
    s.spinor.as_mut().unwrap().components[3] = "cos(".into();
    assert!(s.compile().unwrap_err().to_string().starts_with("spinor.components[3]"));
    let mut s = matter_scenario();
    s.maxwell_potential.as_mut().unwrap()[2] = "q".into();
    assert!(s.compile().unwrap_err().to_string().starts_with("maxwell_potential[2]"));
}

#[test]
fn malformed_json_is_an_input_error() {
    let p = write_temp("bad.json", "{\"chart\": [\"t\"]}");
    let (code, _, err) = run(&["report", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("scenario"), "{err}");
}

#[test]
fn report_shows_the_asymmetry() {
    let s = with_grid(load("schwarzschild.json"), "10", "pi/4").compile().unwrap();
    let out = report::report(&s, &[Which::Grav]).unwrap().output;
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    let t12 = column(lines[0], lines[1], "t12");
    let t21 = column(lines[0], lines[1], "t21");
    let expected = -(1.0f64 - 0.2).sqrt() / 100.0;
    assert!((t12 - expected).abs() < 1e-14, "{t12}");
    assert!(format!("{t12}").starts_with("-0.00894427"));
    assert!(t21.abs() < 1e-15, "{t21}");
}

#[test]
fn minkowski_report_is_all_zero() {
    let s = load("minkowski.json").compile().unwrap();
    let out = report::report(&s, &[Which::Grav, Which::Residuals, Which::Lagrangians])
        .unwrap()
        .output;
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let mut n = 0;
    for line in lines {
        for (h, v) in header.iter().zip(line.split(',')).skip(4) {
            assert_eq!(v, "0", "{h}");
        }
        n += 1;
    }
    assert_eq!(n, s.points.len());
}

#[test]
fn header_lists_each_column_once_in_fixed_order() {
    let s = matter_scenario().compile().unwrap();
    let all = [
        Which::Lagrangians,
        Which::Residuals,
        Which::Interaction,
        Which::Dirac,
        Which::Maxwell,
        Which::Grav,
        Which::Grav,
    ];
    let out = report::report(&s, &all).unwrap().output;
    let header: Vec<&str> = out.lines().next().unwrap().split(',').collect();
    let mut seen = std::collections::HashSet::new();
    for h in &header {
        assert!(seen.insert(*h), "{h} repeated");
    }
    let pos = |n: &str| header.iter().position(|h| *h == n).unwrap();
    assert_eq!(&header[..5], &["t", "x", "y", "z", "t00"]);
    assert!(pos("t33") < pos("TM00") && pos("TM33") < pos("TD00") && pos("TD33") < pos("TI00"));
    assert!(pos("TI33") < pos("route_equivalence"));
    assert_eq!(&header[header.len() - 4..], &["L_gravity", "L_maxwell", "L_dirac", "L_interaction"]);
    for line in out.lines() {
        assert_eq!(line.split(',').count(), header.len());
    }
}

#[test]
fn dirac_without_spinor_is_a_usage_error() {
    let s = load("schwarzschild.json").compile().unwrap();
    for w in [Which::Dirac, Which::Maxwell, Which::Interaction] {
        let err = report::report(&s, &[Which::Grav, w]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
    let (code, _, err) = run(&[
        "report",
        bundled("schwarzschild.json").to_str().unwrap(),
        "--which",
        "grav,dirac",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("spinor"), "{err}");
    let (code, _, _) = run(&["report", bundled("schwarzschild.json").to_str().unwrap(), "--which", "gravity"]);
    assert_eq!(code, 2);
}

#[test]
fn report_writes_the_csv_file() {
    let out = std::env::temp_dir().join(format!("tetrad-em-report-{}.csv", std::process::id()));
    let (code, stdout, _) = run(&[
        "report",
        bundled("schwarzschild.json").to_str().unwrap(),
        "--which",
        "grav",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    let expected = report::report(&load("schwarzschild.json").compile().unwrap(), &[Which::Grav])
        .unwrap()
        .output;
    assert_eq!(written, expected);
    std::fs::remove_file(out).unwrap();
}

#[test]
fn report_is_deterministic_across_runs_and_threads() {
    let s = load("schwarzschild.json").compile().unwrap();
    let which = [Which::Grav, Which::Residuals, Which::Lagrangians];
    let a = report::report(&s, &which).unwrap().output;
    let b = report::report(&s, &which).unwrap().output;
    assert_eq!(a, b);
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let c = pool.install(|| report::report(&s, &which).unwrap().output);
        assert_eq!(a.as_bytes(), c.as_bytes());
    }
    let path = bundled("schwarzschild.json");
    let (_, x, _) = run(&["report", path.to_str().unwrap()]);
    let (_, y, _) = run(&["report", path.to_str().unwrap()]);
    assert_eq!(x, y);
}

#[test]
fn scenario_round_trip_is_idempotent() {
    for s in [load("minkowski.json"), load("schwarzschild.json"), matter_scenario()] {
        let once = s.to_json();
        let parsed = Scenario::from_json(&once).unwrap();
        assert_eq!(parsed, s);
        assert_eq!(parsed.to_json(), once);
    }
}

#[test]
fn numbers_print_as_shortest_round_trip_decimals() {
    use tetrad_em_cli::fmt_real;
    assert_eq!(fmt_real(-0.0), "0");
    assert_eq!(fmt_real(0.1), "0.1");
    assert_eq!(fmt_real(-0.008944271909999158), "-0.008944271909999158");
    assert_eq!(fmt_real(1e-7), "1e-7");
    assert_eq!(fmt_real(2.5e20), "2.5e20");
    for x in [1.0 / 3.0, -2.0f64.sqrt() * 1e-9, 6.02e23, 0.037037037037036986] {
        assert_eq!(fmt_real(x).parse::<f64>().unwrap(), x);
    }
}

#[test]
fn integrate_schwarzschild() {
    let s = load("schwarzschild.json").compile().unwrap();
    let out = integrate(&s).unwrap().output;
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&str> = out
        .lines()
        .filter_map(|l| l.trim().strip_prefix('"'))
        .map(|l| l.split('"').next().unwrap())
        .collect();
    assert_eq!(keys, ["energy", "momentum", "panels"]);
    let e = v["energy"].as_f64().unwrap();
    let exact = verify::closed_energy(1.0, 10.0);
    assert!(((e - exact) / exact).abs() < 1e-6, "{e}");
    assert!(e.to_string().starts_with("-1.48325"));
    for p in v["momentum"].as_array().unwrap() {
        assert!(p.as_f64().unwrap().abs() < 1e-9);
    }
    assert!(v["panels"].as_u64().unwrap() >= 1);
}

#[test]
fn integrate_flat_and_bad_regions() {
    let mut s = load("schwarzschild.json");
    s.parameters.insert("M".into(), 0.0);
    s.integration.as_mut().unwrap().r_min = Value::Number(10.0);
    let v: serde_json::Value = serde_json::from_str(&integrate(&s.compile().unwrap()).unwrap().output).unwrap();
    assert_eq!(v["energy"].as_f64(), Some(0.0));

    let mut s = load("schwarzschild.json");
    s.integration.as_mut().unwrap().r_min = Value::Expr("2*M".into());
    let err = integrate(&s.compile().unwrap()).unwrap_err();
    assert!(matches!(err, CliError::Core(tetrad_em::Error::Region(_))), "{err}");
    assert_eq!(err.exit_code(), 2);

    let err = integrate(&load("minkowski.json").compile().unwrap()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("integration"));
}

#[test]
fn verify_schwarzschild_weak_and_strong_field() {
    for r in [10.0, 2.5] {
        let out = verify::verify(1.0, r).unwrap();
        assert!(out.passed, "{}", out.output);
    }
    let rows = verify::rows(1.0, 10.0).unwrap();
    assert!(rows.iter().take(6).all(|r| r.residual < 1e-8));
    let (code, _, err) = run(&["verify-schwarzschild", "--mass", "1", "--radius", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("region"), "{err}");
    let (code, _, _) = run(&["verify-schwarzschild", "--mass", "-1", "--radius", "2"]);
    assert_eq!(code, 2);
}
