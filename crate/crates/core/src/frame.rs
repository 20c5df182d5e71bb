//! Tetrads, their jets at a point, and everything derived from them: inverse
//! frame, metric, structure coefficients, connection bivectors, frame
//! connection coefficients, Christoffel symbols and curvature.

use nalgebra::Matrix4;

use crate::algebra::{Mv, Multivector, MvJet, ETA, PSEUDOSCALAR};
use crate::error::{Error, Result};
use crate::expr::{parse, DiffExpr, Expr, Symbols};
use crate::jet::{Taylor, DIM, MAX_ORDER};
use crate::real::Real;

/// Largest accepted condition number of hᵃ_μ.
pub const MAX_CONDITION: f64 = 1e12;

type J<S> = Taylor<S>;
type Mat<T> = [[T; DIM]; DIM];
type Cube<T> = [[[T; DIM]; DIM]; DIM];

/// Four 1-forms 𝔤ᵃ = hᵃ_μ dx^μ given by closed-form entries over a chart.
#[derive(Clone, Debug)]
pub struct Tetrad {
    symbols: Symbols,
    h: [[DiffExpr; DIM]; DIM],
}

impl Tetrad {
    /// `h[a][mu]` is hᵃ_μ.
    pub fn new(symbols: Symbols, h: [[Expr; DIM]; DIM]) -> Self {
        Tetrad {
            symbols,
            h: h.map(|row| row.map(DiffExpr::new)),
        }
    }

    /// Parses every entry; errors name the offending `tetrad[a][mu]`.
    pub fn parse<S: AsRef<str>>(symbols: Symbols, h: &[[S; DIM]; DIM]) -> Result<Self> {
        let mut out: Vec<Expr> = Vec::with_capacity(16);
        for (a, row) in h.iter().enumerate() {
            for (mu, text) in row.iter().enumerate() {
                let e = parse(text.as_ref(), &symbols).map_err(|source| Error::Field {
                    path: format!("tetrad[{a}][{mu}]"),
                    source,
                })?;
                out.push(e);
            }
        }
        let h: [[Expr; DIM]; DIM] = std::array::from_fn(|a| std::array::from_fn(|mu| out[4 * a + mu].clone()));
        Ok(Tetrad::new(symbols, h))
    }

    /// hᵃ_μ = δᵃ_μ over the given chart.
    pub fn identity(symbols: Symbols) -> Self {
        let h = std::array::from_fn(|a| {
            std::array::from_fn(|mu| Expr::constant(if a == mu { 1.0 } else { 0.0 }))
        });
        Tetrad::new(symbols, h)
    }

    /// The static Schwarzschild coframe over the chart `(t, r, theta, phi)` with
    /// parameter `M`.
    pub fn schwarzschild() -> Self {
        let symbols = Symbols::new(&["t", "r", "theta", "phi"], &["M"]);
        let entries = [
            ["(1-2*M/r)^(1/2)", "0", "0", "0"],
            ["0", "(1-2*M/r)^(-1/2)", "0", "0"],
            ["0", "0", "r", "0"],
            ["0", "0", "0", "r*sin(theta)"],
        ];
        Tetrad::parse(symbols, &entries).expect("built-in tetrad parses")
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn entry(&self, a: usize, mu: usize) -> &DiffExpr {
        &self.h[a][mu]
    }

    /// Values hᵃ_μ at a point.
    pub fn values(&self, point: &[f64; DIM], params: &[f64]) -> Result<Mat<f64>> {
        let mut m = [[0.0; DIM]; DIM];
        for a in 0..DIM {
            for mu in 0..DIM {
                m[a][mu] = self.h[a][mu].expr().eval(point, params)?;
            }
        }
        Ok(m)
    }

    /// Builds the frame jet of the given order at `point`.
    pub fn jet(&self, point: &[f64; DIM], params: &[f64], order: usize) -> Result<FrameJet> {
        FrameJet::new(self, point, params, order)
    }

    /// [`Tetrad::jet`] with all jet arithmetic in the scalar type `S`.
    pub fn jet_in<S: Real>(&self, point: &[f64; DIM], params: &[f64], order: usize) -> Result<FrameJet<S>> {
        FrameJet::new(self, point, params, order)
    }

    /// All pointwise frame data, from a second-order jet.
    pub fn sample(&self, point: &[f64; DIM], params: &[f64]) -> Result<FrameSample> {
        Ok(self.jet(point, params, 2)?.sample())
    }
}

/// Condition number σ_max/σ_min of a 4×4 matrix.
pub fn condition_number(m: &Mat<f64>) -> f64 {
    let mat = Matrix4::from_fn(|i, j| m[i][j]);
    let sv = mat.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn inverse(m: &Mat<f64>) -> Option<Mat<f64>> {
    let inv = Matrix4::from_fn(|i, j| m[i][j]).try_inverse()?;
    Some(std::array::from_fn(|i| std::array::from_fn(|j| inv[(i, j)])))
}

fn mat_mul<S: Real>(a: &Mat<J<S>>, b: &Mat<J<S>>) -> Mat<J<S>> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = J::<S>::zero(a[i][0].order().min(b[0][j].order()));
            for k in 0..DIM {
                s.add_scaled_product(1.0, &a[i][k], &b[k][j]);
            }
            s
        })
    })
}

/// Inverse of a matrix of jets by the terminating Neumann series around its value.
fn jet_inverse<S: Real>(m: &Mat<J<S>>, order: usize) -> Option<Mat<J<S>>> {
    let values: Mat<S> = std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].value()));
    let rounded: Mat<f64> = values.map(|row| row.map(S::to_f64));
    let approx: Mat<S> = inverse(&rounded)?.map(|row| row.map(S::from_f64));
    // one Newton step X(2 − M₀X) lifts the f64 inverse to the working precision
    let residual: Mat<S> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = if i == j { S::from_f64(2.0) } else { S::zero() };
            for k in 0..DIM {
                s -= values[i][k] * approx[k][j];
            }
            s
        })
    });
    let inv0: Mat<S> = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = S::zero();
            for k in 0..DIM {
                s += approx[i][k] * residual[k][j];
            }
            s
        })
    });
    let inv0j: Mat<J<S>> = inv0.map(|row| row.map(|x| J::constant(x, order)));
    // N = −M₀⁻¹ ΔM has no constant term, so Nⁿ vanishes beyond the jet order
    let delta: Mat<J<S>> = std::array::from_fn(|i| {
        std::array::from_fn(|j| m[i][j] - J::constant(values[i][j], order))
    });
    let mut n = mat_mul(&inv0j, &delta);
    for row in n.iter_mut() {
        for x in row.iter_mut() {
            *x = -*x;
        }
    }
    let mut sum = inv0j;
    let mut term = inv0j;
    for _ in 0..order {
        term = mat_mul(&n, &term);
        for i in 0..DIM {
            for j in 0..DIM {
                sum[i][j] += term[i][j];
            }
        }
    }
    Some(sum)
}

fn zero_cube<S: Real>(order: usize) -> Box<Cube<J<S>>> {
    Box::new([[[J::<S>::zero(order); DIM]; DIM]; DIM])
}

/// The tetrad and its derived objects as Taylor jets about one chart point.
///
/// A frame jet of order K carries hᵃ_μ to order K, the structure
/// coefficients, connection bivectors and Christoffel symbols to order K−1,
/// and Ricci/Einstein to order K−2 (when K ≥ 2).
#[derive(Clone, Debug)]
pub struct FrameJet<S: Real = f64> {
    pub point: [f64; DIM],
    order: usize,
    /// hᵃ_μ, indexed `[a][mu]`.
    pub h: Mat<J<S>>,
    /// e_a^μ, indexed `[a][mu]`; 𝔢_a = e_a^μ ∂_μ.
    pub e: Mat<J<S>>,
    pub g_dn: Mat<J<S>>,
    pub g_up: Mat<J<S>>,
    /// c^k_{ab}, indexed `[k][a][b]`.
    pub c: Box<Cube<J<S>>>,
    /// L(𝔤_k).
    pub l: Box<[MvJet<S>; DIM]>,
    /// Λ^m_{kl}, indexed `[m][k][l]`; ∇_{𝔢_k}𝔢_l = Λ^m_{kl}𝔢_m.
    pub lambda: Box<Cube<J<S>>>,
    /// Γ^λ_{μν}, indexed `[lambda][mu][nu]`.
    pub christoffel: Box<Cube<J<S>>>,
    /// Frame Ricci components R_{dk}, present when the order is at least 2.
    pub ricci: Option<Mat<J<S>>>,
    /// Coordinate image of each tetrad blade 𝔤^J.
    to_coord: Vec<MvJet<S>>,
    /// Tetrad image of each coordinate blade dx^M.
    from_coord: Vec<MvJet<S>>,
}

impl<S: Real> FrameJet<S> {
    fn new(tetrad: &Tetrad, point: &[f64; DIM], params: &[f64], order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::InsufficientJetOrder {
                have: MAX_ORDER,
                need: order,
            });
        }
        let mut h: Mat<J<S>> = std::array::from_fn(|_| std::array::from_fn(|_| J::<S>::zero(order)));
        for a in 0..DIM {
            for mu in 0..DIM {
                h[a][mu] = tetrad.h[a][mu].eval_taylor_in(point, params, order)?;
            }
        }
        let values: Mat<f64> = std::array::from_fn(|a| std::array::from_fn(|mu| h[a][mu].value().to_f64()));
        let cond = condition_number(&values);
        if !(cond <= MAX_CONDITION) {
            return Err(Error::SingularTetrad { point: *point, cond });
        }
        // H E = 1 with E[mu][b] = e_b^mu
        let inv = jet_inverse(&h, order).ok_or(Error::SingularTetrad { point: *point, cond })?;
        let e: Mat<J<S>> = std::array::from_fn(|a| std::array::from_fn(|mu| inv[mu][a]));

        let mut g_dn: Mat<J<S>> = std::array::from_fn(|_| std::array::from_fn(|_| J::<S>::zero(order)));
        let mut g_up = g_dn;
        for mu in 0..DIM {
            for nu in 0..DIM {
                for a in 0..DIM {
                    g_dn[mu][nu].add_scaled_product(ETA[a], &h[a][mu], &h[a][nu]);
                    g_up[mu][nu].add_scaled_product(ETA[a], &e[a][mu], &e[a][nu]);
                }
            }
        }

        let lower = order.saturating_sub(1);
        let mut fj = FrameJet {
            point: *point,
            order,
            h,
            e,
            g_dn,
            g_up,
            c: zero_cube(lower),
            l: Box::new(std::array::from_fn(|_| MvJet::<S>::zero_jet(lower))),
            lambda: zero_cube(lower),
            christoffel: zero_cube(lower),
            ricci: None,
            to_coord: Vec::new(),
            from_coord: Vec::new(),
        };
        fj.build_outermorphisms();
        if order >= 1 {
            fj.build_structure();
            fj.build_christoffel();
        }
        if order >= 2 {
            fj.build_ricci();
        }
        Ok(fj)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn build_outermorphisms(&mut self) {
        let order = self.order;
        // 𝔤^a = h^a_μ dx^μ and dx^μ = e_a^μ 𝔤^a
        let images = |m: &Mat<J<S>>| -> [MvJet<S>; DIM] {
            std::array::from_fn(|a| {
                let mut v = MvJet::<S>::zero_jet(order);
                for mu in 0..DIM {
                    v.c[1 << mu] = m[a][mu];
                }
                v
            })
        };
        let tetrad_in_coord = images(&self.h);
        let e_t: Mat<J<S>> = std::array::from_fn(|mu| std::array::from_fn(|a| self.e[a][mu]));
        let coord_in_tetrad = images(&e_t);
        let build = |vecs: &[MvJet<S>; DIM]| -> Vec<MvJet<S>> {
            (0..16).map(|mask| {
                let mut acc = Mv::<S>::from_f64(&Multivector::scalar(1.0)).to_jet(order);
                for (i, v) in vecs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        acc = acc.wedge(v);
                    }
                }
                acc
            }).collect()
        };
        self.to_coord = build(&tetrad_in_coord);
        self.from_coord = build(&coord_in_tetrad);
    }

    /// Tetrad-basis components → coordinate-basis components.
    pub fn to_coordinate(&self, x: &MvJet<S>) -> MvJet<S> {
        Self::apply(&self.to_coord, x)
    }

    /// Coordinate-basis components → tetrad-basis components.
    pub fn from_coordinate(&self, y: &MvJet<S>) -> MvJet<S> {
        Self::apply(&self.from_coord, y)
    }

    fn apply(images: &[MvJet<S>], x: &MvJet<S>) -> MvJet<S> {
        let order = x.order().min(images[0].order());
        let mut out = MvJet::<S>::zero_jet(order);
        for (mask, img) in images.iter().enumerate() {
            if x.c[mask].is_zero() {
                continue;
            }
            for m in 0..16 {
                out.c[m].add_scaled_product(1.0, &x.c[mask], &img.c[m]);
            }
        }
        out
    }

    fn build_structure(&mut self) {
        let lower = self.order - 1;
        // c^k_ab = −(∂_μ h^k_ν − ∂_ν h^k_μ) e_a^μ e_b^ν
        let e: Mat<J<S>> = self.e.map(|row| row.map(|x| x.truncate(lower)));
        for k in 0..DIM {
            let curl: Mat<J<S>> = std::array::from_fn(|mu| {
                std::array::from_fn(|nu| self.h[k][nu].partial(mu) - self.h[k][mu].partial(nu))
            });
            for a in 0..DIM {
                for b in 0..DIM {
                    let mut s = J::<S>::zero(lower);
                    for mu in 0..DIM {
                        for nu in 0..DIM {
                            if mu == nu {
                                continue;
                            }
                            s.add_scaled_product(-1.0, &curl[mu][nu], &(e[a][mu] * e[b][nu]));
                        }
                    }
                    self.c[k][a][b] = s;
                }
            }
        }
        // c_{akl}: first slot lowered with η
        let c_low = |a: usize, k: usize, l: usize| self.c[a][k][l] * ETA[a];
        for k in 0..DIM {
            let mut bv = MvJet::<S>::zero_jet(lower);
            for r in 0..DIM {
                for s in 0..DIM {
                    if r == s {
                        continue;
                    }
                    let coeff = (c_low(r, k, s) + c_low(k, r, s) + c_low(s, r, k)) * 0.5;
                    let (lo, hi, sign) = if r < s { (r, s, 1.0) } else { (s, r, -1.0) };
                    bv.c[(1 << lo) | (1 << hi)].add_scaled(sign, &coeff);
                }
            }
            self.l[k] = bv;
        }
        // Λ^m_kl = −(D_k 𝔤^m)·𝔤_l with D_k 𝔤^m = ¼[L_k, 𝔤^m]
        for m in 0..DIM {
            let gm = MvJet::<S>::basis_jet(m, lower);
            for k in 0..DIM {
                let d = self.l[k].commutator(&gm).scale(0.25);
                for l in 0..DIM {
                    self.lambda[m][k][l] = -d.c[1 << l];
                }
            }
        }
    }

    fn build_christoffel(&mut self) {
        let lower = self.order - 1;
        let dg: Cube<J<S>> = std::array::from_fn(|s| {
            std::array::from_fn(|mu| std::array::from_fn(|nu| self.g_dn[mu][nu].partial(s)))
        });
        for lam in 0..DIM {
            for mu in 0..DIM {
                for nu in mu..DIM {
                    let mut s = J::<S>::zero(lower);
                    for sig in 0..DIM {
                        let bracket = dg[mu][sig][nu] + dg[nu][sig][mu] - dg[sig][mu][nu];
                        s.add_scaled_product(0.5, &self.g_up[lam][sig], &bracket);
                    }
                    self.christoffel[lam][mu][nu] = s;
                    self.christoffel[lam][nu][mu] = s;
                }
            }
        }
    }

    fn build_ricci(&mut self) {
        let o = self.order - 2;
        let gam = &self.christoffel;
        // R_σν = −(∂_ρΓ^ρ_νσ − ∂_νΓ^ρ_ρσ + Γ^ρ_ρλΓ^λ_νσ − Γ^ρ_νλΓ^λ_ρσ), the sign for
        // which ∂∧∂𝔤^a = R^a_k 𝔤^k
        let mut ric: Mat<J<S>> = std::array::from_fn(|_| std::array::from_fn(|_| J::<S>::zero(o)));
        for sig in 0..DIM {
            for nu in 0..DIM {
                let mut s = J::<S>::zero(o);
                for rho in 0..DIM {
                    s += gam[rho][nu][sig].partial(rho);
                    s -= gam[rho][rho][sig].partial(nu);
                    for lam in 0..DIM {
                        s.add_scaled_product(1.0, &gam[rho][rho][lam], &gam[lam][nu][sig]);
                        s.add_scaled_product(-1.0, &gam[rho][nu][lam], &gam[lam][rho][sig]);
                    }
                }
                ric[sig][nu] = s;
            }
        }
        let mut frame: Mat<J<S>> = std::array::from_fn(|_| std::array::from_fn(|_| J::<S>::zero(o)));
        for d in 0..DIM {
            for k in 0..DIM {
                let mut s = J::<S>::zero(o);
                for mu in 0..DIM {
                    for nu in 0..DIM {
                        s.add_scaled_product(-1.0, &(self.e[d][mu] * self.e[k][nu]), &ric[mu][nu]);
                    }
                }
                frame[d][k] = s;
            }
        }
        self.ricci = Some(frame);
    }

    /// Scalar curvature R = η^{dk}R_{dk}.
    pub fn ricci_scalar(&self) -> Option<J<S>> {
        let ric = self.ricci.as_ref()?;
        let mut r = J::<S>::zero(ric[0][0].order());
        for (d, row) in ric.iter().enumerate() {
            r.add_scaled(ETA[d], &row[d]);
        }
        Some(r)
    }

    /// Einstein components G_{dk} = R_{dk} − ½η_{dk}R.
    pub fn einstein(&self) -> Option<Mat<J<S>>> {
        let ric = self.ricci.as_ref()?;
        let r = self.ricci_scalar()?;
        Some(std::array::from_fn(|d| {
            std::array::from_fn(|k| {
                if d == k {
                    ric[d][k] - r * (0.5 * ETA[d])
                } else {
                    ric[d][k]
                }
            })
        }))
    }

    /// Einstein 1-forms G_d = G_{dk}𝔤^k.
    pub fn einstein_forms(&self) -> Option<[MvJet<S>; DIM]> {
        let g = self.einstein()?;
        Some(std::array::from_fn(|d| {
            let mut v = MvJet::<S>::zero_jet(g[d][0].order());
            for k in 0..DIM {
                v.c[1 << k] = g[d][k];
            }
            v
        }))
    }

    /// The tetrad-basis volume element τ, lifted to this jet's order.
    pub fn volume_form(&self) -> MvJet<S> {
        Mv::<S>::from_f64(&Multivector::blade(PSEUDOSCALAR, 1.0)).to_jet(self.order)
    }

    /// Tetrad components A_a = e_a^μ A_μ of a coordinate 1-form.
    pub fn one_form_from_coordinates(&self, a: &[J<S>; DIM]) -> MvJet<S> {
        let mut y = MvJet::<S>::zero_jet(a[0].order());
        for mu in 0..DIM {
            y.c[1 << mu] = a[mu];
        }
        self.from_coordinate(&y)
    }

    /// A truncated copy, for feeding lower-order consumers.
    pub fn truncate(&self, order: usize) -> FrameJet<S> {
        assert!(order <= self.order);
        if order == self.order {
            return self.clone();
        }
        let tm = |m: &Mat<J<S>>, o: usize| m.map(|r| r.map(|x| x.truncate(o)));
        let tc = |c: &Cube<J<S>>, o: usize| Box::new(c.map(|p| p.map(|r| r.map(|x| x.truncate(o)))));
        let lower = order.saturating_sub(1);
        FrameJet {
            point: self.point,
            order,
            h: tm(&self.h, order),
            e: tm(&self.e, order),
            g_dn: tm(&self.g_dn, order),
            g_up: tm(&self.g_up, order),
            c: tc(&self.c, lower),
            l: Box::new(std::array::from_fn(|k| self.l[k].truncate(lower))),
            lambda: tc(&self.lambda, lower),
            christoffel: tc(&self.christoffel, lower),
            ricci: if order >= 2 {
                self.ricci.as_ref().map(|r| tm(r, order - 2))
            } else {
                None
            },
            to_coord: self.to_coord.iter().map(|m| m.truncate(order)).collect(),
            from_coord: self.from_coord.iter().map(|m| m.truncate(order)).collect(),
        }
    }
}

impl<S: Real> FrameJet<S> {
    /// Plain values of everything at the expansion point.
    pub fn sample(&self) -> FrameSample {
        let v = |m: &Mat<J<S>>| m.map(|r| r.map(|x| x.value().to_f64()));
        let vc = |c: &Cube<J<S>>| c.map(|p| p.map(|r| r.map(|x| x.value().to_f64())));
        let h = v(&self.h);
        let det = Matrix4::from_fn(|i, j| h[i][j]).determinant();
        FrameSample {
            point: self.point,
            h,
            h_inv: v(&self.e),
            g_dn: v(&self.g_dn),
            g_up: v(&self.g_up),
            sqrt_abs_det_g: det.abs(),
            c: vc(&self.c),
            l: std::array::from_fn(|k| self.l[k].value().to_f64()),
            lambda: vc(&self.lambda),
            christoffel: vc(&self.christoffel),
            ricci: self.ricci.as_ref().map(v),
            ricci_scalar: self.ricci_scalar().map(|r| r.value().to_f64()),
            einstein: self.einstein().as_ref().map(v),
        }
    }
}

/// Frame data at a single chart point.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameSample {
    pub point: [f64; DIM],
    /// hᵃ_μ, `[a][mu]`.
    pub h: Mat<f64>,
    /// e_a^μ, `[a][mu]`.
    pub h_inv: Mat<f64>,
    pub g_dn: Mat<f64>,
    pub g_up: Mat<f64>,
    pub sqrt_abs_det_g: f64,
    /// c^k_{ab}, `[k][a][b]`.
    pub c: Cube<f64>,
    pub l: [Multivector; DIM],
    /// Λ^m_{kl}, `[m][k][l]`.
    pub lambda: Cube<f64>,
    pub christoffel: Cube<f64>,
    pub ricci: Option<Mat<f64>>,
    pub ricci_scalar: Option<f64>,
    pub einstein: Option<Mat<f64>>,
}

impl FrameSample {
    /// τ in the tetrad basis; always the unit blade.
    pub fn volume_form(&self) -> Multivector {
        Multivector::pseudoscalar()
    }

    /// Size of the structure coefficients and their first derivatives, used to
    /// scale residual tolerances.
    pub fn curvature_scale(&self) -> f64 {
        let c2 = self
            .c
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()))
            .powi(2);
        let ric = self
            .ricci
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        c2.max(ric)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schwarzschild_at(r: f64, theta: f64, order: usize) -> FrameJet {
        Tetrad::schwarzschild()
            .jet(&[0.3, r, theta, 1.1], &[1.0], order)
            .unwrap()
    }

    #[test]
    fn minkowski_is_flat() {
        let t = Tetrad::identity(Symbols::new(&["t", "x", "y", "z"], &[] as &[&str]));
        let s = t.sample(&[0.1, 0.2, 0.3, 0.4], &[]).unwrap();
        assert!(s.c.iter().flatten().flatten().all(|&x| x == 0.0));
        assert!(s.l.iter().all(|l| l.norm_inf() == 0.0));
        assert_eq!(s.ricci_scalar, Some(0.0));
        assert_eq!(s.sqrt_abs_det_g, 1.0);
    }

    #[test]
    fn schwarzschild_metric_diagonal() {
        let s = schwarzschild_at(10.0, std::f64::consts::FRAC_PI_4, 2).sample();
        let f = 1.0 - 2.0 / 10.0;
        let sin2 = 0.5;
        let expected = [f, -1.0 / f, -100.0, -100.0 * sin2];
        for mu in 0..4 {
            assert!((s.g_dn[mu][mu] - expected[mu]).abs() < 1e-12 * expected[mu].abs());
            for nu in 0..4 {
                if mu != nu {
                    assert_eq!(s.g_dn[mu][nu], 0.0);
                }
            }
        }
        assert!((s.sqrt_abs_det_g - 100.0 * sin2.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn schwarzschild_connection_component() {
        let s = schwarzschild_at(10.0, std::f64::consts::FRAC_PI_4, 1).sample();
        // d𝔤² = (√f/r)𝔤¹∧𝔤², so c_212 = √f/r and the full (r,s) sum doubles it
        let expected = 2.0 * (0.8f64).sqrt() / 10.0;
        let got = s.l[2].c[0b0110];
        assert!((got - expected).abs() < 1e-14, "{got}");
        for (k, l) in s.l.iter().enumerate() {
            assert_eq!(l.off_grade_magnitude(2), 0.0, "L_{k}");
        }
    }

    #[test]
    fn schwarzschild_is_ricci_flat() {
        let s = schwarzschild_at(10.0, std::f64::consts::FRAC_PI_4, 2).sample();
        assert!(s.ricci_scalar.unwrap().abs() < 1e-12);
        for row in s.einstein.unwrap() {
            for x in row {
                assert!(x.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_tetrad_rejected() {
        let t = Tetrad::schwarzschild();
        let err = t.jet(&[0.0, 10.0, 0.0, 0.0], &[1.0], 1).unwrap_err();
        assert!(matches!(err, Error::SingularTetrad { .. }), "{err}");
    }

    #[test]
    fn inverse_jet_is_inverse() {
        let fj = schwarzschild_at(4.0, 1.0, 3);
        for a in 0..4 {
            for b in 0..4 {
                let mut s = J::zero(3);
                for mu in 0..4 {
                    s.add_scaled_product(1.0, &fj.h[a][mu], &fj.e[b][mu]);
                }
                let target = if a == b { 1.0 } else { 0.0 };
                assert!((s - J::constant(target, 3)).max_abs() < 1e-13);
            }
        }
    }
}
