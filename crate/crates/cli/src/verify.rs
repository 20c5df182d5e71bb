//! `verify-schwarzschild`: the static Schwarzschild coframe against its
//! closed-form energy-momentum 1-forms, asymmetry, energy and momentum.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tetrad_em::algebra::Multivector;
use tetrad_em::energymomentum::{em_components, grav_em_nice};
use tetrad_em::quadrature::{integrate, Options, Region};
use tetrad_em::real::Dd;
use tetrad_em::{Error, Tetrad};

use crate::check::{render, Row};
use crate::{CliError, Outcome};

pub const SEED: u64 = 0xc4;
pub const POINTS: usize = 100;

/// t⁰..t³ of the Schwarzschild coframe at radius `r`, polar angle `th`.
pub fn closed_forms(m: f64, r: f64, th: f64) -> [Multivector; 4] {
    let f = 1.0 - 2.0 * m / r;
    [
        Multivector::basis(0) * (m * m / (f * r.powi(4))),
        Multivector::zero(),
        Multivector::basis(1) * (th.tan().recip() * f.sqrt() / (r * r)) - Multivector::basis(2) * (2.0 * m / r.powi(3)),
        Multivector::basis(3) * ((-m + r + m * (2.0 * th).cos()) / r.powi(3) / th.sin().powi(2)),
    ]
}

/// `4πM(1 − (1 − 2M/R)^{−1/2})`.
pub fn closed_energy(m: f64, r: f64) -> f64 {
    4.0 * PI * m * (1.0 - (1.0 - 2.0 * m / r).powf(-0.5))
}

/// Fixed-seed sample points `(t, r, θ, φ)` with `r ∈ [r_lo, r_hi]` and θ kept
/// 0.1 away from the axis.
pub fn sample_points(seed: u64, n: usize, r_lo: f64, r_hi: f64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(r_lo..=r_hi),
                rng.gen_range(0.1..PI - 0.1),
                rng.gen_range(0.0..2.0 * PI),
            ]
        })
        .collect()
}

fn relative(diff: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

pub fn rows(mass: f64, radius: f64) -> Result<Vec<Row>, CliError> {
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(CliError::Input(format!("--mass: {mass} must be finite and non-negative")));
    }
    if !(radius.is_finite() && radius > 2.0 * mass) {
        return Err(Error::Region(format!("radius {radius} must exceed 2M = {}", 2.0 * mass)).into());
    }
    let tetrad = Tetrad::schwarzschild();
    let params = [mass];
    let points = sample_points(SEED, POINTS, radius, (5.0 * radius).max(50.0));

    // Far from the source the 1-forms are small differences of large products,
    // so they are evaluated in double-double and rounded once.
    let per_point: Vec<[f64; 6]> = points
        .par_iter()
        .map(|p| -> Result<[f64; 6], CliError> {
            let frame = tetrad.jet_in::<Dd>(p, &params, 2)?;
            let t: [Multivector; 4] = grav_em_nice(&frame)?.map(|x| x.value().to_f64());
            let expected = closed_forms(mass, p[1], p[2]);
            let scale = expected.iter().map(Multivector::norm_inf).fold(0.0, f64::max);
            let mut out = [0.0; 6];
            for d in 0..4 {
                out[d] = relative((t[d].clone() - expected[d].clone()).norm_inf(), scale);
            }
            let c = em_components(&t);
            let f = 1.0 - 2.0 * mass / p[1];
            let t12 = -f.sqrt() / (p[2].tan() * p[1] * p[1]);
            out[4] = relative(c[2][1].abs(), scale);
            out[5] = relative((c[1][2] - t12).abs(), t12.abs());
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    let worst = |i: usize| per_point.iter().map(|r| r[i]).fold(0.0, |m: f64, x| if x > m || x.is_nan() { x } else { m });

    let i = integrate(&tetrad, &params, Region::new(radius), &Options::default())?;
    let exact = closed_energy(mass, radius);
    let energy = relative((i.energy - exact).abs(), exact.abs());
    let momentum = i.momentum.iter().fold(0.0f64, |m, p| m.max(p.abs()));

    let row = |name: &str, residual: f64, tol: f64| Row {
        name: name.into(),
        residual,
        tolerance: Some(tol),
    };
    Ok(vec![
        row("t0_closed_form", worst(0), 1e-8),
        row("t1_closed_form", worst(1), 1e-8),
        row("t2_closed_form", worst(2), 1e-8),
        row("t3_closed_form", worst(3), 1e-8),
        row("asymmetry_t21", worst(4), 1e-8),
        row("asymmetry_t12", worst(5), 1e-8),
        row("energy", energy, 1e-6),
        row("momentum", momentum, 1e-9),
    ])
}

pub fn verify(mass: f64, radius: f64) -> Result<Outcome, CliError> {
    let rows = rows(mass, radius)?;
    let passed = rows.iter().all(Row::passed);
    let mut output = format!("M = {}, R = {}, {POINTS} points\n", crate::fmt_real(mass), crate::fmt_real(radius));
    output.push_str(&render(&rows));
    output.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    Ok(Outcome { output, passed })
}
