use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use proptest::prelude::*;
use tetrad_em::expr::{eval_jet2, parse, ExprError, Symbols};

fn sym() -> Symbols {
    Symbols::new(&["t", "r", "theta", "phi"], &["M"])
}

fn cart() -> Symbols {
    Symbols::new(&["t", "x", "y", "z"], &[] as &[&str])
}

#[test]
fn evaluates_printed_lapse() {
    let e = parse("(1-2*M/r)^(1/2)", &sym()).unwrap();
    assert_eq!(e.eval(&[0.0, 4.0, 0.0, 0.0], &[1.0]).unwrap(), 0.7071067811865476);
    let e = parse("r*sin(theta)", &sym()).unwrap();
    assert_eq!(e.eval(&[0.0, 2.0, FRAC_PI_2, 0.0], &[1.0]).unwrap(), 2.0);
}

#[test]
fn unbalanced_parenthesis_reports_offset() {
    let s = Symbols::new(&["x", "y", "z", "w"], &[] as &[&str]);
    match parse("cot(x", &s) {
        Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 5),
        other => panic!("{other:?}"),
    }
}

#[test]
fn derivative_of_lapse() {
    let s = sym();
    let e = parse("(1-2*M/r)^(1/2)", &s).unwrap();
    let d = e.diff(1).eval(&[0.0, 4.0, 0.0, 0.0], &[1.0]).unwrap();
    let closed = (1.0 / 16.0) / 0.5f64.sqrt();
    assert!((d - closed).abs() < 1e-15);
    assert!((d - 0.0883883476).abs() < 1e-10);
    let fd = (e.eval(&[0.0, 4.0 + 1e-5, 0.0, 0.0], &[1.0]).unwrap()
        - e.eval(&[0.0, 4.0 - 1e-5, 0.0, 0.0], &[1.0]).unwrap())
        / 2e-5;
    assert!((d - fd).abs() < 1e-8);
    let sq = parse("r^2", &s).unwrap().diff(1);
    assert_eq!(sq.eval(&[0.0, 3.0, 0.0, 0.0], &[1.0]).unwrap(), 6.0);
    assert!(parse("7", &s).unwrap().diff(1).is_zero());
}

#[test]
fn jet_of_cylindrical_radius() {
    let e = parse("r*sin(theta)", &sym()).unwrap();
    let j = eval_jet2(&e, &[0.0, 3.0, FRAC_PI_6, 0.0], &[1.0]).unwrap();
    assert!((j.value - 1.5).abs() < 1e-15);
    assert!((j.grad[1] - 0.5).abs() < 1e-15);
    assert!((j.grad[2] - 2.598076211353316).abs() < 1e-14);
    assert!((j.hess[1][2] - 0.8660254037844387).abs() < 1e-15);
    assert_eq!(j.hess[1][2], j.hess[2][1]);
    let c = eval_jet2(&parse("7", &sym()).unwrap(), &[0.0, 3.0, 1.0, 0.0], &[1.0]).unwrap();
    assert_eq!(c.value, 7.0);
    assert_eq!(c.grad, [0.0; 4]);
    assert_eq!(c.hess, [[0.0; 4]; 4]);
}

#[test]
fn lapse_at_horizon_is_a_domain_error() {
    let e = parse("(1-2*M/r)^(-1/2)", &sym()).unwrap();
    assert!(matches!(
        eval_jet2(&e, &[0.0, 2.0, 1.0, 0.0], &[1.0]),
        Err(ExprError::Domain { .. })
    ));
}

#[test]
fn pi_is_built_in() {
    let e = parse("pi/4", &sym()).unwrap();
    assert_eq!(e.eval(&[0.0; 4], &[1.0]).unwrap(), std::f64::consts::FRAC_PI_4);
}

// one expression per function node, each finite on the sampling box below
const FUNCTION_CASES: [&str; 10] = [
    "sin(x*y + z)",
    "cos(t - x*z)",
    "tan(0.3*x + 0.2*y)",
    "cot(1.2 + 0.3*x*y)",
    "csc(1.3 + 0.2*z - 0.1*t)",
    "sqrt(2 + x*y + z^2)",
    "exp(0.5*x - y*z)",
    "log(3 + x + y*t)",
    "sinh(x*z + t)",
    "cosh(y - 0.5*t*x)",
];

fn value(e: &tetrad_em::Expr, p: [f64; 4]) -> f64 {
    e.eval(&p, &[]).unwrap()
}

fn shifted(p: [f64; 4], mu: usize, h: f64) -> [f64; 4] {
    let mut q = p;
    q[mu] += h;
    q
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn jets_match_central_differences(p in prop::array::uniform4(-0.5f64..0.5), which in 0usize..10) {
        let e = parse(FUNCTION_CASES[which], &cart()).unwrap();
        let j = eval_jet2(&e, &p, &[]).unwrap();
        let h = 1e-5;
        let scale = j.value.abs().max(1.0);
        for mu in 0..4 {
            let fd = (value(&e, shifted(p, mu, h)) - value(&e, shifted(p, mu, -h))) / (2.0 * h);
            prop_assert!((fd - j.grad[mu]).abs() <= 1e-6 * scale.max(j.grad[mu].abs()), "{} ∂{mu}: {fd} {}", FUNCTION_CASES[which], j.grad[mu]);
            for nu in 0..4 {
                let hh = 1e-4;
                let f = |a: f64, b: f64| value(&e, shifted(shifted(p, mu, a), nu, b));
                let fd2 = (f(hh, hh) - f(hh, -hh) - f(-hh, hh) + f(-hh, -hh)) / (4.0 * hh * hh);
                let exact = j.hess[mu][nu];
                prop_assert!((fd2 - exact).abs() <= 1e-6 * scale.max(exact.abs()), "{} ∂{mu}∂{nu}: {fd2} {exact}", FUNCTION_CASES[which]);
            }
        }
    }

    #[test]
    fn mixed_partials_commute(p in prop::array::uniform4(-0.5f64..0.5), which in 0usize..10, mu in 0usize..4, nu in 0usize..4) {
        let e = parse(FUNCTION_CASES[which], &cart()).unwrap();
        let a = e.diff(mu).diff(nu).eval(&p, &[]).unwrap();
        let b = e.diff(nu).diff(mu).eval(&p, &[]).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }
}
