#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tetrad_em::calculus::MultivectorField;
use tetrad_em::expr::parse;
use tetrad_em::{Symbols, Tetrad};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cartesian() -> Symbols {
    Symbols::new(&["t", "x", "y", "z"], &[] as &[&str])
}

const VARS: [&str; 4] = ["t", "x", "y", "z"];

/// A random cubic polynomial in the cartesian chart, coefficients in [−1, 1].
pub fn random_cubic(rng: &mut ChaCha8Rng) -> String {
    let mut terms = vec![format!("{:.6}", rng.gen_range(-1.0..1.0))];
    for i in 0..4 {
        terms.push(format!("{:.6}*{}", rng.gen_range(-1.0..1.0), VARS[i]));
        for j in i..4 {
            terms.push(format!("{:.6}*{}*{}", rng.gen_range(-1.0..1.0), VARS[i], VARS[j]));
        }
    }
    for _ in 0..4 {
        let (a, b, c) = (rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4));
        terms.push(format!("{:.6}*{}*{}*{}", rng.gen_range(-1.0..1.0), VARS[a], VARS[b], VARS[c]));
    }
    terms.join(" + ")
}

/// hᵃ_μ = δᵃ_μ + scale·(random cubic), over the cartesian chart.
pub fn synthetic_tetrad(seed: u64, scale: f64) -> Tetrad {
    let mut r = rng(seed);
    let entries: [[String; 4]; 4] = std::array::from_fn(|a| {
        std::array::from_fn(|mu| {
            let delta = if a == mu { "1" } else { "0" };
            format!("{delta} + {scale}*({})", random_cubic(&mut r))
        })
    });
    Tetrad::parse(cartesian(), &entries).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, half_width: f64) -> [f64; 4] {
    std::array::from_fn(|_| rng.gen_range(-half_width..half_width))
}

/// A random smooth Clifford field on the given blades, polynomial times trig.
pub fn random_field(rng: &mut ChaCha8Rng, symbols: &Symbols, masks: &[usize]) -> MultivectorField {
    let coords = symbols.coords.clone();
    let comps = masks
        .iter()
        .map(|&m| {
            let a = rng.gen_range(0..4);
            let b = rng.gen_range(0..4);
            let text = format!(
                "{:.5} + {:.5}*{}*{} + {:.5}*sin({:.3}*{})",
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                coords[a],
                coords[b],
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.2..1.0),
                coords[rng.gen_range(0..4)],
            );
            (m, parse(&text, symbols).unwrap())
        })
        .collect();
    MultivectorField::new(comps)
}

/// Random Schwarzschild chart point with r ∈ [r_lo, r_hi], θ away from the axis.
pub fn schwarzschild_point(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> [f64; 4] {
    [
        rng.gen_range(-1.0..1.0),
        rng.gen_range(r_lo..r_hi),
        rng.gen_range(0.1..std::f64::consts::PI - 0.1),
        rng.gen_range(0.0..2.0 * std::f64::consts::PI),
    ]
}

pub fn all_masks() -> Vec<usize> {
    (0..16).collect()
}

pub fn rel_close(a: f64, b: f64, rel: f64, scale: f64) -> bool {
    (a - b).abs() <= rel * scale.max(a.abs()).max(b.abs())
}
