//! Energy and momentum of a static field on a constant-time slice outside a
//! sphere.
//!
//! The chart is read as `(t, r, θ, φ)`. The slice is `t = region.time`, the
//! region `r ≥ region.r_min` over the full sphere, and `dV` the proper spatial
//! volume element `√det(−g_ij) dr dθ dφ`. The radial integral is mapped to a
//! finite interval by `r = R/s`, `s ∈ (0, 1]`.
//!
//! Both integration levels use Gauss-Legendre panels, whose nodes never touch
//! the panel ends, so the horizon-free end `s → 0` and the poles `θ = 0, π`
//! are never evaluated. Panels are refined until the difference between a
//! panel rule and the rule on its two halves, summed over panels, is below the
//! requested relative tolerance. Sums run in panel order with pairwise
//! summation, so results do not depend on the number of threads.

use std::f64::consts::{FRAC_PI_2, PI};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;

use crate::algebra::MvJet;
use crate::calculus::covariant_dalembertian;
use crate::energymomentum::grav_em_nice;
use crate::error::{Error, Result};
use crate::frame::Tetrad;
use crate::jet::DIM;
use crate::real::{Dd, Real};

/// Integration region `r ≥ r_min` on the slice `t = time`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Region {
    pub r_min: f64,
    pub time: f64,
}

impl Region {
    pub fn new(r_min: f64) -> Self {
        Region { r_min, time: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    /// Relative tolerance on the largest of the four integrals.
    pub tolerance: f64,
    /// Gauss-Legendre nodes per panel.
    pub nodes: usize,
    /// Radial panels before refinement.
    pub initial_panels: usize,
    /// Refinement stops with [`Error::NonConvergence`] beyond this many panels
    /// at either level.
    pub max_panels: usize,
    pub precision: Precision,
}

/// Scalar type for the frame jets behind each density evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    Double,
    DoubleDouble,
    /// Double-double when the two disagree at a probe point by more than a
    /// hundredth of the tolerance.
    #[default]
    Auto,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tolerance: 1e-8,
            nodes: 12,
            initial_panels: 2,
            max_panels: 512,
            precision: Precision::Auto,
        }
    }
}

/// Energy `E = −∫𝐭^{00}dV` and momentum `Pⁱ = −∫𝐭^{0i}dV`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub energy: f64,
    pub momentum: [f64; 3],
    /// Radial panels after refinement.
    pub panels: usize,
    /// The precision actually used.
    pub precision: Precision,
}

type Vec4 = [f64; 4];

fn add4(a: Vec4, b: Vec4) -> Vec4 {
    std::array::from_fn(|i| a[i] + b[i])
}

fn scale4(a: Vec4, s: f64) -> Vec4 {
    a.map(|x| x * s)
}

fn norm4(a: Vec4) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Pairwise sum in slice order.
fn pairwise(xs: &[Vec4]) -> Vec4 {
    match xs.len() {
        0 => [0.0; 4],
        1 => xs[0],
        n => add4(pairwise(&xs[..n / 2]), pairwise(&xs[n / 2..])),
    }
}

fn proper_volume(tetrad: &Tetrad, point: &[f64; DIM], params: &[f64]) -> Result<f64> {
    let h = tetrad.values(point, params)?;
    let g = nalgebra::Matrix3::from_fn(|i, j| {
        -(0..DIM)
            .map(|a| crate::algebra::ETA[a] * h[a][i + 1] * h[a][j + 1])
            .sum::<f64>()
    });
    Ok(g.determinant().sqrt())
}

/// The integrands `−𝔤⁰·t^a √det(−g_ij)` for `a = 0..3` at a chart point.
pub fn densities(tetrad: &Tetrad, params: &[f64], point: &[f64; DIM]) -> Result<Vec4> {
    densities_in::<f64>(tetrad, params, point)
}

/// [`densities`] with the frame jet computed in the scalar type `S`.
///
/// Each t^a is a sum of terms much larger than itself far from the source.
/// Values within roundoff of those terms are returned as exact zeros.
pub fn densities_in<S: Real>(tetrad: &Tetrad, params: &[f64], point: &[f64; DIM]) -> Result<Vec4> {
    let frame = tetrad.jet_in::<S>(point, params, 2)?;
    let t = grav_em_nice(&frame)?;
    let vol = proper_volume(tetrad, point, params)?;
    let mut scale = 0.0f64;
    for a in 0..DIM {
        let g = MvJet::<S>::basis_jet(a, 2);
        let boxed = covariant_dalembertian(&frame, &g)?;
        scale = scale.max(boxed.value().to_f64().norm_inf());
    }
    let noise = NOISE_ULPS * S::EPSILON * scale;
    // 𝔤⁰·X = X⁰ for a 1-form X
    Ok(std::array::from_fn(|a| {
        let x = t[a].value().c[1].to_f64();
        if x.abs() <= noise {
            0.0
        } else {
            -x * vol
        }
    }))
}

/// Multiple of the unit roundoff below which a density counts as zero.
const NOISE_ULPS: f64 = 64.0;

struct Rule {
    nodes: Vec<(f64, f64)>,
}

impl Rule {
    fn new(n: usize) -> Self {
        let gl = GaussLegendre::new(NonZeroUsize::new(n.max(1)).expect("nonzero"));
        let mut nodes: Vec<(f64, f64)> = gl.nodes().copied().zip(gl.weights().copied()).collect();
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        Rule { nodes }
    }

    fn apply<F: FnMut(f64) -> Result<Vec4>>(&self, a: f64, b: f64, mut f: F) -> Result<Vec4> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut terms = Vec::with_capacity(self.nodes.len());
        for &(x, w) in &self.nodes {
            terms.push(scale4(f(mid + half * x)?, w * half));
        }
        Ok(pairwise(&terms))
    }
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    coarse: Vec4,
    left: Vec4,
    right: Vec4,
    /// Splitting did not reduce the error estimate: what is left is roundoff.
    stalled: bool,
}

impl Panel {
    fn fine(&self) -> Vec4 {
        add4(self.left, self.right)
    }

    fn error(&self) -> f64 {
        norm4(std::array::from_fn(|i| self.fine()[i] - self.coarse[i]))
    }
}

#[derive(Clone, Copy)]
struct Job {
    a: f64,
    b: f64,
    coarse: Option<Vec4>,
    parent_error: f64,
}

fn split_eval<F>(rule: &Rule, job: Job, f: &F) -> Result<Panel>
where
    F: Fn(f64) -> Result<Vec4>,
{
    let Job { a, b, coarse, parent_error } = job;
    let m = 0.5 * (a + b);
    let coarse = match coarse {
        Some(c) => c,
        None => rule.apply(a, b, f)?,
    };
    let mut p = Panel {
        a,
        b,
        coarse,
        left: rule.apply(a, m, f)?,
        right: rule.apply(m, b, f)?,
        stalled: false,
    };
    p.stalled = p.error() >= parent_error;
    Ok(p)
}

/// Adaptive panel refinement from the given breakpoints until the summed
/// error estimate of the panels still converging is below
/// `max(tol·|total|, floor)`. Returns the integral and the number of panels.
fn adaptive<F>(
    rule: &Rule,
    breaks: &[f64],
    tol: f64,
    floor: f64,
    max_panels: usize,
    parallel: bool,
    f: &F,
) -> Result<(Vec4, usize)>
where
    F: Fn(f64) -> Result<Vec4> + Sync,
{
    let eval = |jobs: Vec<Job>| -> Result<Vec<Panel>> {
        if parallel {
            jobs.into_par_iter().map(|j| split_eval(rule, j, f)).collect()
        } else {
            jobs.into_iter().map(|j| split_eval(rule, j, f)).collect()
        }
    };
    let initial = breaks
        .windows(2)
        .map(|w| Job { a: w[0], b: w[1], coarse: None, parent_error: f64::INFINITY })
        .collect();
    let mut panels = eval(initial)?;
    loop {
        let fine: Vec<Vec4> = panels.iter().map(Panel::fine).collect();
        let total = pairwise(&fine);
        let errors: Vec<f64> = panels
            .iter()
            .map(|p| if p.stalled { 0.0 } else { p.error() })
            .collect();
        let err: f64 = errors.iter().sum();
        let target = (tol * norm4(total)).max(floor);
        if err <= target {
            return Ok((total, panels.len()));
        }
        let share = target / panels.len() as f64;
        let worst = errors.iter().cloned().fold(0.0, f64::max);
        let refine: Vec<bool> = errors.iter().map(|&e| e > share || e == worst).collect();
        let n_new = panels.len() + refine.iter().filter(|&&r| r).count();
        if n_new > max_panels {
            return Err(Error::NonConvergence {
                estimate: err / norm4(total).max(f64::MIN_POSITIVE),
                tolerance: tol,
            });
        }
        let mut jobs = Vec::new();
        for (p, &r) in panels.iter().zip(&refine) {
            if r {
                let m = 0.5 * (p.a + p.b);
                let e = p.error();
                jobs.push(Job { a: p.a, b: m, coarse: Some(p.left), parent_error: e });
                jobs.push(Job { a: m, b: p.b, coarse: Some(p.right), parent_error: e });
            }
        }
        let mut fresh = eval(jobs)?.into_iter();
        let mut next = Vec::with_capacity(n_new);
        for (p, r) in panels.into_iter().zip(refine) {
            if r {
                next.push(fresh.next().expect("left half"));
                next.push(fresh.next().expect("right half"));
            } else {
                next.push(p);
            }
        }
        panels = next;
    }
}

struct Setup<'a> {
    tetrad: &'a Tetrad,
    params: &'a [f64],
    region: Region,
    precision: Precision,
}

impl Setup<'_> {
    fn point(&self, s: f64, theta: f64) -> [f64; DIM] {
        [self.region.time, self.region.r_min / s, theta, 0.0]
    }

    fn raw(&self, p: &[f64; DIM]) -> Result<Vec4> {
        match self.precision {
            Precision::DoubleDouble => densities_in::<Dd>(self.tetrad, self.params, p),
            _ => densities(self.tetrad, self.params, p),
        }
    }

    /// Density in `(s, θ)` with the Jacobian of `r = R/s` and the φ integral.
    fn density(&self, s: f64, theta: f64) -> Result<Vec4> {
        let d = self.raw(&self.point(s, theta))?;
        Ok(scale4(d, 2.0 * PI * self.region.r_min / (s * s)))
    }

    fn resolve_precision(&mut self, tolerance: f64) -> Result<()> {
        if self.precision != Precision::Auto {
            return Ok(());
        }
        let p = self.point(0.5, 1.0);
        let lo = densities(self.tetrad, self.params, &p)?;
        let hi = densities_in::<Dd>(self.tetrad, self.params, &p)?;
        let diff = norm4(std::array::from_fn(|i| lo[i] - hi[i]));
        self.precision = if diff > 0.01 * tolerance * norm4(hi) {
            Precision::DoubleDouble
        } else {
            Precision::Double
        };
        Ok(())
    }

    fn check_region(&self) -> Result<()> {
        let r = self.region.r_min;
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Region(format!("r_min = {r} must be positive and finite")));
        }
        for theta in [FRAC_PI_2, 0.3] {
            let p = [self.region.time, r, theta, 0.0];
            let ok = self
                .tetrad
                .jet(&p, self.params, 2)
                .and_then(|_| proper_volume(self.tetrad, &p, self.params));
            match ok {
                Ok(v) if v.is_finite() && v > 0.0 => {}
                _ => {
                    return Err(Error::Region(format!(
                        "tetrad is not a regular static frame at r = {r}, theta = {theta}"
                    )))
                }
            }
        }
        Ok(())
    }

    /// The integrand must not depend on t or φ: spot checks at a few points.
    fn check_static(&self) -> Result<()> {
        let names = &self.tetrad.symbols().coords;
        for s in [0.35, 0.9] {
            for theta in [0.7, 2.2] {
                let p = self.point(s, theta);
                let base = self.raw(&p)?;
                for (mu, shift) in [(0usize, 0.83), (3, 1.27)] {
                    let mut q = p;
                    q[mu] += shift;
                    let moved = self.raw(&q)?;
                    let diff = norm4(std::array::from_fn(|i| moved[i] - base[i]));
                    if diff > 1e-10 * norm4(base).max(norm4(moved)) {
                        return Err(Error::NonStatic {
                            coordinate: names[mu].clone(),
                            point: q,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Energy and momentum with adaptive refinement at both levels.
pub fn integrate(tetrad: &Tetrad, params: &[f64], region: Region, opts: &Options) -> Result<Integral> {
    let mut setup = Setup { tetrad, params, region, precision: opts.precision };
    setup.check_region()?;
    setup.resolve_precision(opts.tolerance)?;
    setup.check_static()?;
    let rule = Rule::new(opts.nodes);
    // The θ integrals feed a radial integral over an interval of length one, so
    // an absolute error of 0.1·tol·|E| on each keeps the total within budget.
    // Far out the density is tiny and carries cancellation noise that a purely
    // relative inner target would chase forever.
    let rough = fixed(&setup, &rule, 1, 1)?;
    let scale = norm4([rough.energy, rough.momentum[0], rough.momentum[1], rough.momentum[2]]);
    let inner_tol = opts.tolerance * 0.1;
    let radial = |s: f64| -> Result<Vec4> {
        let f = |theta: f64| setup.density(s, theta);
        adaptive(&rule, &[0.0, FRAC_PI_2, PI], inner_tol, inner_tol * scale, opts.max_panels, false, &f)
            .map(|(v, _)| v)
    };
    let n0 = opts.initial_panels.max(1);
    let breaks: Vec<f64> = (0..=n0).map(|i| i as f64 / n0 as f64).collect();
    let (v, panels) = adaptive(&rule, &breaks, opts.tolerance, 0.0, opts.max_panels, true, &radial)?;
    Ok(Integral {
        energy: v[0],
        momentum: [v[1], v[2], v[3]],
        panels,
        precision: setup.precision,
    })
}

/// Energy and momentum on a fixed uniform grid of panels: `radial_panels` in
/// `s` and `polar_panels` on each half of `[0, π]`. No refinement and no error
/// control; used to check the adaptive result.
pub fn integrate_fixed(
    tetrad: &Tetrad,
    params: &[f64],
    region: Region,
    nodes: usize,
    radial_panels: usize,
    polar_panels: usize,
    precision: Precision,
) -> Result<Integral> {
    let mut setup = Setup { tetrad, params, region, precision };
    setup.check_region()?;
    setup.resolve_precision(Options::default().tolerance)?;
    fixed(&setup, &Rule::new(nodes), radial_panels, polar_panels)
}

fn fixed(setup: &Setup, rule: &Rule, radial_panels: usize, polar_panels: usize) -> Result<Integral> {
    let np = polar_panels.max(1);
    let nr = radial_panels.max(1);
    let radial = |s: f64| -> Result<Vec4> {
        let parts: Vec<Vec4> = (0..2 * np)
            .map(|i| {
                let w = FRAC_PI_2 / np as f64;
                rule.apply(i as f64 * w, (i + 1) as f64 * w, |th| setup.density(s, th))
            })
            .collect::<Result<_>>()?;
        Ok(pairwise(&parts))
    };
    let parts: Vec<Vec4> = (0..nr)
        .into_par_iter()
        .map(|i| rule.apply(i as f64 / nr as f64, (i + 1) as f64 / nr as f64, &radial))
        .collect::<Result<_>>()?;
    let v = pairwise(&parts);
    Ok(Integral {
        energy: v[0],
        momentum: [v[1], v[2], v[3]],
        panels: nr,
        precision: setup.precision,
    })
}

/// `E = −∫𝐭⁰·𝔤⁰ dV` over the region, to relative 1e-8.
pub fn integrate_energy(tetrad: &Tetrad, region: Region, params: &[f64]) -> Result<f64> {
    Ok(integrate(tetrad, params, region, &Options::default())?.energy)
}

/// `Pⁱ = −∫𝔤⁰·𝐭ⁱ dV` over the region.
pub fn momentum_components(tetrad: &Tetrad, region: Region, params: &[f64]) -> Result<[f64; 3]> {
    Ok(integrate(tetrad, params, region, &Options::default())?.momentum)
}

/// Adaptive Gauss-Legendre integral of a scalar function over `[a, b]`.
pub fn integrate_1d<F: Fn(f64) -> f64 + Sync>(f: F, a: f64, b: f64, tolerance: f64) -> Result<f64> {
    let rule = Rule::new(Options::default().nodes);
    let g = |x: f64| Ok([f(x), 0.0, 0.0, 0.0]);
    Ok(adaptive(&rule, &[a, b], tolerance, 0.0, Options::default().max_panels, false, &g)?.0[0])
}
