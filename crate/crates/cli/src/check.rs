//! `check`: algebra axioms once, then calculus identities and energy-momentum
//! residuals at every grid point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tetrad_em::algebra::{grade_of, Multivector, MvJet};
use tetrad_em::calculus::{codifferential, covariant, covariant_all, dirac_operator, exterior_d};
use tetrad_em::energymomentum::Model;

use crate::{CliError, Compiled, Outcome};

/// One row of the residual table. Rows without a tolerance are informational:
/// they depend on whether the fields solve their equations, not on identities.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub name: String,
    pub residual: f64,
    pub tolerance: Option<f64>,
}

impl Row {
    pub fn passed(&self) -> bool {
        match self.tolerance {
            Some(t) => self.residual <= t,
            None => true,
        }
    }
}

const SEED: u64 = 0x5eed;

/// Coefficients on a 1/16 grid keep every product exact in `f64`, so
/// the identities hold with zero residual.
fn random_mv(rng: &mut ChaCha8Rng, grade_mask: impl Fn(usize) -> bool) -> Multivector {
    let mut x = Multivector::zero();
    for m in 0..16 {
        if grade_mask(grade_of(m)) {
            x.c[m] = rng.gen_range(-16i32..=16) as f64 / 16.0;
        }
    }
    x
}

pub fn algebra_rows() -> Vec<Row> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut assoc, mut anti, mut adjoint) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..200 {
        let a = random_mv(&mut rng, |_| true);
        let b = random_mv(&mut rng, |_| true);
        let c = random_mv(&mut rng, |_| true);
        assoc = assoc.max((a.gp(&b).gp(&c) - a.gp(&b.gp(&c))).norm_inf());
        let l = a.left_contract(&b).scalar_product(&c) - b.scalar_product(&a.reverse().wedge(&c));
        let r = b.right_contract(&a).scalar_product(&c) - b.scalar_product(&c.wedge(&a.reverse()));
        adjoint = adjoint.max(l.abs()).max(r.abs());
        let u = random_mv(&mut rng, |g| g == 1);
        let v = random_mv(&mut rng, |g| g == 1);
        let sym = u.gp(&v) + v.gp(&u) - Multivector::scalar(2.0 * u.scalar_product(&v));
        anti = anti.max(sym.norm_inf());
    }
    let mut star = 0.0f64;
    for m in 0..16 {
        let p = grade_of(m) as i32;
        let x = Multivector::blade(m, 1.0);
        let expected = x.scale(-(-1.0f64).powi(p));
        star = star.max((x.hodge_star().hodge_star() - expected).norm_inf());
    }
    vec![
        row("algebra_associativity", assoc, 1e-9),
        row("algebra_anticommutator", anti, 1e-9),
        row("algebra_contraction_adjoint", adjoint, 1e-9),
        row("algebra_double_star", star, 1e-9),
    ]
}

fn row(name: &str, residual: f64, tolerance: f64) -> Row {
    Row {
        name: name.into(),
        residual,
        tolerance: Some(tolerance),
    }
}

fn info(name: &str, residual: f64) -> Row {
    Row {
        name: name.into(),
        residual,
        tolerance: None,
    }
}

fn rel(x: &Multivector, scale: f64) -> f64 {
    x.norm_inf() / scale.max(1.0)
}

/// Identity residuals at one point, in a fixed order.
pub fn point_rows(model: &Model, point: &[f64; 4]) -> Result<Vec<Row>, CliError> {
    let frame = model.frame(point, 3)?;
    let order = frame.order();
    let blades: Vec<MvJet> = (0..16).map(|m| Multivector::blade(m, 1.0).to_jet(order)).collect();

    let (mut dd, mut delta2, mut split) = (0.0f64, 0.0f64, 0.0f64);
    for x in &blades {
        let dx = exterior_d(&frame, x)?;
        dd = dd.max(rel(&exterior_d(&frame, &dx)?.value(), dx.value().norm_inf()));
        let sx = codifferential(&frame, x)?;
        delta2 = delta2.max(rel(&codifferential(&frame, &sx)?.value(), sx.value().norm_inf()));
        let full = dirac_operator(&frame, x)?.value();
        let (d, s) = (dx.value(), sx.value());
        let scale = d.norm_inf().max(s.norm_inf());
        split = split.max(rel(&(full - (d - s)), scale));
    }

    let mut cartan = 0.0f64;
    for a in 0..4 {
        let ga = MvJet::basis_jet(a, order);
        let lhs = exterior_d(&frame, &ga)?.value();
        let mut rhs = Multivector::zero();
        for (k, dk) in covariant_all(&frame, &ga)?.iter().enumerate() {
            rhs += Multivector::basis(k).wedge(&dk.value());
        }
        cartan = cartan.max(rel(&(lhs.clone() - rhs), lhs.norm_inf()));
    }
    let mut tau = 0.0f64;
    for k in 0..4 {
        tau = tau.max(covariant(&frame, &frame.volume_form(), k)?.value().norm_inf());
    }

    let sample = frame.sample();
    let curv = sample.curvature_scale().max(1.0);
    let g = sample.einstein.expect("third-order frame has curvature");
    let mut asym = 0.0f64;
    for d in 0..4 {
        for k in 0..4 {
            asym = asym.max((g[d][k] - g[k][d]).abs() / curv);
        }
    }

    let mut rows = vec![
        row("d_squared", dd, 1e-9),
        row("delta_squared", delta2, 1e-9),
        row("dirac_split", split, 1e-9),
        row("cartan_structure", cartan, 1e-9),
        row("volume_parallel", tau, 1e-9),
        row("einstein_symmetry", asym, 1e-9),
    ];
    let report = model.report(point)?;
    for (name, r) in &report.residuals {
        rows.push(match *name {
            "route_equivalence" => row(name, *r, 1e-7),
            "einstein_identity" => row(name, *r, 1e-8),
            "field_equation" | "maxwell_equation" | "dirac_equation" => info(name, *r),
            _ => row(name, *r, 1e-9),
        });
    }
    Ok(rows)
}

/// The worst residual of each check over all grid points.
pub fn run(scenario: &Compiled) -> Result<(Vec<Row>, bool), CliError> {
    let per_point: Vec<Vec<Row>> = scenario
        .points
        .par_iter()
        .map(|p| point_rows(&scenario.model, p))
        .collect::<Result<_, _>>()?;
    let mut rows = algebra_rows();
    let mut merged = per_point[0].clone();
    for point in &per_point[1..] {
        for (m, r) in merged.iter_mut().zip(point) {
            // NaN sticks, so a bad point cannot hide behind a good one
            if !(r.residual <= m.residual) {
                m.residual = r.residual;
            }
        }
    }
    rows.extend(merged);
    let passed = rows.iter().all(Row::passed);
    Ok((rows, passed))
}

pub fn render(rows: &[Row]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0).max(5);
    let mut out = format!("{:width$}  {:>12}  {:>9}  status\n", "check", "max_residual", "tolerance");
    for r in rows {
        let tol = r.tolerance.map_or("-".to_string(), |t| format!("{t:.0e}"));
        let status = match (r.tolerance, r.passed()) {
            (None, _) => "info",
            (_, true) => "PASS",
            (_, false) => "FAIL",
        };
        out.push_str(&format!("{:width$}  {:>12.3e}  {:>9}  {status}\n", r.name, r.residual, tol));
    }
    out
}

pub fn check(scenario: &Compiled) -> Result<Outcome, CliError> {
    let (rows, passed) = run(scenario)?;
    let mut output = render(&rows);
    output.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    Ok(Outcome { output, passed })
}
