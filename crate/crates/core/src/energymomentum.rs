//! Energy-momentum 1-forms, Lagrangian densities and field-equation residuals.
//!
//! Frame labels follow the 1-forms: `t^d` (label up) from the Levi-Civita
//! formula and `𝐭_d` (label down) from the Lagrangian route. Component
//! matrices put the frame component first and the label second,
//! `𝐭^{da} = 𝔤^d·𝐭^a`.
//!
//! Curvature uses the sign for which `∂∧∂𝔤^a` is the Ricci 1-form, so the
//! gravitational field equations read `G_d = 𝒯_d` with the Maxwell
//! contribution `𝒯^M_d = −½F𝔤_dF̃`.

use crate::algebra::{Multivector, MvJet, ETA};
use crate::calculus::{
    codifferential, covariant_dalembertian, covariant_spinor, exterior_d, pfaff, SpinorField,
};
use crate::error::{Error, Result};
use crate::expr::{parse, DiffExpr, Expr, Symbols};
use crate::frame::{FrameJet, Tetrad};
use crate::jet::{Taylor, DIM};
use crate::real::Real;

pub type Mat = [[f64; DIM]; DIM];

/// 𝔤^a as constant jets.
pub fn coframe(order: usize) -> [MvJet; DIM] {
    std::array::from_fn(|a| MvJet::basis_jet(a, order))
}

/// 𝔤_a = η_ab 𝔤^b as constant jets.
pub fn coframe_lower(order: usize) -> [MvJet; DIM] {
    std::array::from_fn(|a| MvJet::basis_jet(a, order).scale(ETA[a]))
}

/// Lowers the frame label: X_d = η_dk X^k. With a diagonal η this also raises.
pub fn lower_label(x: &[MvJet; DIM]) -> [MvJet; DIM] {
    std::array::from_fn(|d| x[d].scale(ETA[d]))
}

fn sum<S: Real>(terms: impl IntoIterator<Item = MvJet<S>>) -> MvJet<S> {
    let mut it = terms.into_iter();
    let mut acc = it.next().expect("at least one term");
    for t in it {
        acc.add_scaled_mv(1.0, &t);
    }
    acc
}

fn values(x: &[MvJet; DIM]) -> [Multivector; DIM] {
    std::array::from_fn(|d| x[d].value())
}

/// Un-stars a 3-form (or any form) with ★⁻¹.
pub fn unstar(x: &MvJet) -> MvJet {
    x.hodge_star_inv()
}

/// t^d = ½R𝔤^d + ∂·∂𝔤^d + dδ𝔤^d (label up).
pub fn grav_em_nice<S: Real>(frame: &FrameJet<S>) -> Result<[MvJet<S>; DIM]> {
    let r = frame.ricci_scalar().ok_or(Error::InsufficientJetOrder {
        have: frame.order(),
        need: 2,
    })?;
    let g: [MvJet<S>; DIM] = std::array::from_fn(|a| MvJet::basis_jet(a, frame.order()));
    let mut out: [MvJet<S>; DIM] = std::array::from_fn(|_| MvJet::zero_jet(0));
    for d in 0..DIM {
        let boxed = covariant_dalembertian(frame, &g[d])?;
        let ddelta = exterior_d(frame, &codifferential(frame, &g[d])?)?;
        out[d] = sum([g[d].scale_by(&r).scale(0.5), boxed, ddelta]);
    }
    Ok(out)
}

/// The gravitational 3-forms of the Lagrangian route, label `d` down.
#[derive(Clone, Debug)]
pub struct LagrangianPieces {
    /// The six summands of ★t_d = ∂L_g/∂𝔤^d, one row per d.
    pub star_t_terms: Vec<[MvJet; 6]>,
    /// ★S_d = ∂L_g/∂d𝔤^d.
    pub star_s: Vec<MvJet>,
    /// The bracket whose exterior derivative is ★𝔥_d.
    pub h_potential: Vec<MvJet>,
    /// ★𝔥_d.
    pub star_h: Vec<MvJet>,
}

pub fn lagrangian_pieces(frame: &FrameJet) -> Result<LagrangianPieces> {
    let k = frame.order();
    let g_up = coframe(k);
    let g_dn = coframe_lower(k);
    let dg: Vec<MvJet> = g_up
        .iter()
        .map(|g| exterior_d(frame, g))
        .collect::<Result<_>>()?;
    let dg_dn: Vec<MvJet> = (0..DIM).map(|a| dg[a].scale(ETA[a])).collect();
    // W = d𝔤^a ∧ 𝔤_a
    let w = sum((0..DIM).map(|a| dg[a].wedge(&g_dn[a])));
    let star_w = w.hodge_star();
    // d★𝔤^a and ★d★𝔤_a
    let d_star: Vec<MvJet> = (0..DIM)
        .map(|a| exterior_d(frame, &g_up[a].hodge_star()))
        .collect::<Result<_>>()?;
    let b: Vec<MvJet> = (0..DIM).map(|a| d_star[a].scale(ETA[a]).hodge_star()).collect();

    let mut star_t_terms = Vec::with_capacity(DIM);
    let mut star_s = Vec::with_capacity(DIM);
    let mut h_potential = Vec::with_capacity(DIM);
    let mut star_h = Vec::with_capacity(DIM);
    for d in 0..DIM {
        let gd = &g_dn[d];
        // 𝔤_d ⌟ ★𝔤^a, constant in the frame
        let a_forms: Vec<MvJet> = (0..DIM).map(|a| gd.left_contract(&g_up[a].hodge_star())).collect();
        let t1 = sum((0..DIM).map(|a| {
            gd.left_contract(&dg[a])
                .wedge(&dg_dn[a].hodge_star())
                .sub_ref(&dg[a].wedge(&gd.left_contract(&dg_dn[a].hodge_star())))
        }))
        .scale(0.5);
        let t2 = sum(
            (0..DIM)
                .map(|a| Ok(exterior_d(frame, &a_forms[a])?.wedge(&b[a])))
                .collect::<Result<Vec<_>>>()?,
        );
        let t3 = sum((0..DIM).map(|a| gd.left_contract(&d_star[a]).wedge(&b[a]))).scale(0.5);
        let t4 = dg_dn[d].wedge(&star_w).scale(0.5);
        let t5 = w.wedge(&gd.left_contract(&star_w)).scale(-0.25);
        let t6 = gd.left_contract(&w).wedge(&star_w).scale(-0.25);
        star_t_terms.push([t1, t2, t3, t4, t5, t6]);

        let ab = sum((0..DIM).map(|a| a_forms[a].wedge(&b[a])));
        let half_g_star_w = gd.wedge(&star_w).scale(0.5);
        star_s.push(sum([dg_dn[d].hodge_star().scale(-1.0), ab.scale(-1.0), half_g_star_w.clone()]));
        let pot = ab.sub_ref(&half_g_star_w);
        star_h.push(exterior_d(frame, &pot)?);
        h_potential.push(pot);
    }
    Ok(LagrangianPieces {
        star_t_terms,
        star_s,
        h_potential,
        star_h,
    })
}

/// Un-starred results of the Lagrangian route, label `d` down.
#[derive(Clone, Debug)]
pub struct GravLagrangian {
    /// t_d = ★⁻¹ ∂L_g/∂𝔤^d.
    pub t: [MvJet; DIM],
    /// S_d, a 2-form.
    pub s: [MvJet; DIM],
    /// 𝔥_d.
    pub h: [MvJet; DIM],
    /// 𝐭_d = 𝔥_d − t_d.
    pub total: [MvJet; DIM],
}

pub fn grav_em_lagrangian(frame: &FrameJet) -> Result<GravLagrangian> {
    let p = lagrangian_pieces(frame)?;
    let t: [MvJet; DIM] = std::array::from_fn(|d| unstar(&sum(p.star_t_terms[d].iter().cloned())));
    let s = std::array::from_fn(|d| unstar(&p.star_s[d]));
    let h: [MvJet; DIM] = std::array::from_fn(|d| unstar(&p.star_h[d]));
    let total = std::array::from_fn(|d| h[d].sub_ref(&t[d]));
    Ok(GravLagrangian { t, s, h, total })
}

/// G_d rebuilt from the Lagrangian pieces, t_d + ★⁻¹d★S_d.
pub fn einstein_from_lagrangian(frame: &FrameJet) -> Result<[MvJet; DIM]> {
    let p = lagrangian_pieces(frame)?;
    let mut out: [MvJet; DIM] = std::array::from_fn(|_| MvJet::zero_jet(0));
    for d in 0..DIM {
        let star_t = sum(p.star_t_terms[d].iter().cloned());
        out[d] = unstar(&star_t.add_ref(&exterior_d(frame, &p.star_s[d])?));
    }
    Ok(out)
}

/// Component matrix `[d][a] = 𝔤^d·X^a` of four label-up 1-forms.
pub fn em_components(forms: &[Multivector; DIM]) -> Mat {
    std::array::from_fn(|d| std::array::from_fn(|a| Multivector::basis(d).scalar_product(&forms[a])))
}

/// 𝐭^{da} − 𝐭^{ad}.
pub fn em_asymmetry(forms: &[Multivector; DIM]) -> Mat {
    let c = em_components(forms);
    std::array::from_fn(|d| std::array::from_fn(|a| c[d][a] - c[a][d]))
}

/// A Maxwell potential A = A_μ dx^μ given by its coordinate components.
#[derive(Clone, Debug)]
pub struct Potential {
    components: [DiffExpr; DIM],
}

impl Potential {
    pub fn new(components: [Expr; DIM]) -> Self {
        Potential {
            components: components.map(DiffExpr::new),
        }
    }

    pub fn parse<S: AsRef<str>>(symbols: &Symbols, components: &[S; DIM]) -> Result<Self> {
        let mut out = Vec::with_capacity(DIM);
        for (i, text) in components.iter().enumerate() {
            out.push(parse(text.as_ref(), symbols).map_err(|source| Error::Field {
                path: format!("maxwell_potential[{i}]"),
                source,
            })?);
        }
        Ok(Potential::new(out.try_into().expect("four components")))
    }

    /// Tetrad-basis jet of A.
    pub fn jet(&self, frame: &FrameJet, params: &[f64], order: usize) -> Result<MvJet> {
        let mut a = [Taylor::zero(order); DIM];
        for (mu, e) in self.components.iter().enumerate() {
            a[mu] = e.eval_taylor(&frame.point, params, order)?;
        }
        Ok(frame.one_form_from_coordinates(&a))
    }
}

/// Maxwell energy-momentum at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxwellEM {
    pub f: Multivector,
    /// T_a = ⟨½F𝔤_aF̃⟩₁, label down.
    pub forms: [Multivector; DIM],
    /// T_ab from the component formula.
    pub components: Mat,
    /// Largest |T_a·𝔤_b − T_ab| between the two routes.
    pub route_mismatch: f64,
    /// Largest non-vector part of ½F𝔤_aF̃.
    pub off_grade: f64,
}

/// F_ab = 𝔤_b⌟(𝔤_a⌟F).
pub fn two_form_components(f: &Multivector) -> Mat {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            Multivector::basis_lower(b)
                .left_contract(&Multivector::basis_lower(a).left_contract(f))
                .c[0]
        })
    })
}

/// ½F𝔤_aF̃ for each a, all grades kept.
pub fn maxwell_forms(f: &MvJet) -> [MvJet; DIM] {
    let g_dn = coframe_lower(f.order());
    let rev = f.reverse();
    std::array::from_fn(|a| f.gp(&g_dn[a]).gp(&rev).scale(0.5))
}

pub fn maxwell_em(f: &Multivector) -> MaxwellEM {
    let full = values(&maxwell_forms(&f.to_jet(0)));
    let forms: [Multivector; DIM] = std::array::from_fn(|a| full[a].grade(1));
    let off_grade = (0..DIM).map(|a| full[a].off_grade_magnitude(1)).fold(0.0, f64::max);
    let fc = two_form_components(f);
    let mut invariant = 0.0;
    for c in 0..DIM {
        for d in 0..DIM {
            invariant += ETA[c] * ETA[d] * fc[c][d] * fc[c][d];
        }
    }
    let components: Mat = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let mut s = 0.0;
            for c in 0..DIM {
                s -= ETA[c] * fc[a][c] * fc[b][c];
            }
            s + if a == b { 0.25 * invariant * ETA[a] } else { 0.0 }
        })
    });
    let mut route_mismatch = 0.0f64;
    for a in 0..DIM {
        for b in 0..DIM {
            let via_form = forms[a].scalar_product(&Multivector::basis_lower(b));
            route_mismatch = route_mismatch.max((via_form - components[a][b]).abs());
        }
    }
    MaxwellEM {
        f: f.clone(),
        forms,
        components,
        route_mismatch,
        off_grade,
    }
}

fn g210() -> Multivector {
    Multivector::product_of_basis(&[2, 1, 0])
}

fn g021() -> Multivector {
    Multivector::product_of_basis(&[0, 2, 1])
}

fn g21() -> Multivector {
    Multivector::product_of_basis(&[2, 1])
}

/// Dirac energy-momentum at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracEM {
    /// T_mk, symmetric.
    pub components: Mat,
    /// T_k = T_km 𝔤^m, label down.
    pub forms: [Multivector; DIM],
    /// The unsymmetrized 1-form ⟨(D_kψ)~𝔤²𝔤¹𝔤⁰ψ̃ + ψD_kψ𝔤⁰𝔤²𝔤¹⟩₁ read literally.
    /// Diagnostics only.
    pub literal: [Multivector; DIM],
}

/// Symmetrized Dirac components as jets:
/// T_mk = ½(X_mk + X_km), X_mk = ⟨ψ̃𝔤_m D_kψ𝔤²𝔤¹𝔤⁰ − (D_kψ)~𝔤_m𝔤²𝔤¹𝔤⁰ψ⟩₀.
pub fn dirac_components(frame: &FrameJet, psi: &MvJet) -> Result<[[Taylor; DIM]; DIM]> {
    let dpsi: Vec<MvJet> = (0..DIM)
        .map(|k| covariant_spinor(frame, psi, k))
        .collect::<Result<_>>()?;
    let order = dpsi[0].order();
    let psi = psi.truncate(order);
    let w = g210().to_jet(order);
    let g_dn = coframe_lower(order);
    let rev = psi.reverse();
    let x: Vec<Vec<Taylor>> = (0..DIM)
        .map(|m| {
            (0..DIM)
                .map(|k| {
                    let first = rev.gp(&g_dn[m]).gp(&dpsi[k]).gp(&w);
                    let second = dpsi[k].reverse().gp(&g_dn[m]).gp(&w).gp(&psi);
                    first.c[0] - second.c[0]
                })
                .collect()
        })
        .collect();
    Ok(std::array::from_fn(|m| std::array::from_fn(|k| (x[m][k] + x[k][m]) * 0.5)))
}

fn forms_from_components(t: &[[Taylor; DIM]; DIM]) -> [MvJet; DIM] {
    std::array::from_fn(|k| {
        let mut v = MvJet::zero_jet(t[k][0].order());
        for m in 0..DIM {
            v.c[1 << m] = t[k][m];
        }
        v
    })
}

pub fn dirac_em(frame: &FrameJet, psi: &MvJet) -> Result<DiracEM> {
    let t = dirac_components(frame, psi)?;
    let components: Mat = t.map(|r| r.map(|x| x.value()));
    let forms = values(&forms_from_components(&t));
    let psi_v = psi.value();
    let mut literal: [Multivector; DIM] = std::array::from_fn(|_| Multivector::zero());
    for (k, out) in literal.iter_mut().enumerate() {
        let d = covariant_spinor(frame, psi, k)?.value();
        *out = (d.reverse() * g210() * psi_v.reverse() + psi_v.clone() * d * g021()).grade(1);
    }
    Ok(DiracEM {
        components,
        forms,
        literal,
    })
}

/// Maxwell-Dirac interaction energy-momentum at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionEM {
    /// e A_a ⟨ψ̃𝔤⁰ψ⟩₁, label down.
    pub forms: [Multivector; DIM],
    /// ½(T_a·𝔤_b + T_b·𝔤_a).
    pub components: Mat,
    /// |⟨ψ̃𝔤⁰ψ⟩₁ − ψ𝔤⁰ψ̃|, comparing the two printed currents.
    pub current_mismatch: f64,
}

/// e A_a ⟨ψ̃𝔤⁰ψ⟩₁ as jets.
pub fn interaction_forms(a: &MvJet, psi: &MvJet, charge: f64) -> [MvJet; DIM] {
    let order = a.order().min(psi.order());
    let psi = psi.truncate(order);
    let j = psi.reverse().gp(&MvJet::basis_jet(0, order)).gp(&psi).grade(1);
    std::array::from_fn(|k| j.scale_by(&a.c[1 << k].truncate(order)).scale(charge))
}

pub fn interaction_em(a: &MvJet, psi: &MvJet, charge: f64) -> InteractionEM {
    let forms = values(&interaction_forms(a, psi, charge));
    let dot = |x: usize, y: usize| forms[x].scalar_product(&Multivector::basis_lower(y));
    let components = std::array::from_fn(|x| std::array::from_fn(|y| 0.5 * (dot(x, y) + dot(y, x))));
    let p = psi.value();
    let g0 = Multivector::basis(0);
    let printed = (p.reverse() * g0.clone() * p.clone()).grade(1);
    let maxwell_current = p.clone() * g0 * p.reverse();
    InteractionEM {
        forms,
        components,
        current_mismatch: (printed - maxwell_current).magnitude(),
    }
}

/// 𝔤^a D_aψ 𝔤²𝔤¹ − mψ𝔤⁰ + eAψ.
pub fn dirac_residual(
    frame: &FrameJet,
    psi: &MvJet,
    a: Option<&MvJet>,
    mass: f64,
    charge: f64,
) -> Result<Multivector> {
    let mut out = Multivector::zero();
    for k in 0..DIM {
        let d = covariant_spinor(frame, psi, k)?.value();
        out += Multivector::basis(k) * d * g21();
    }
    let p = psi.value();
    out += p.clone() * Multivector::basis(0) * -mass;
    if let Some(a) = a {
        out += a.value() * p * charge;
    }
    Ok(out)
}

/// Maxwell residuals at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxwellResidual {
    /// dF, identically zero since F = dA.
    pub df: Multivector,
    /// δF + J_e with J_e = eψ𝔤⁰ψ̃.
    pub delta_f_plus_j: Multivector,
}

pub fn maxwell_residual(frame: &FrameJet, a: &MvJet, psi: Option<&MvJet>, charge: f64) -> Result<MaxwellResidual> {
    let f = exterior_d(frame, a)?;
    let df = exterior_d(frame, &f)?.value();
    let mut r = codifferential(frame, &f)?.value();
    if let Some(psi) = psi {
        let p = psi.value();
        r += p.clone() * Multivector::basis(0) * p.reverse() * charge;
    }
    Ok(MaxwellResidual {
        df,
        delta_f_plus_j: r,
    })
}

/// Matter content: an optional Maxwell potential and an optional Dirac field.
#[derive(Clone, Debug, Default)]
pub struct MatterFields {
    pub potential: Option<Potential>,
    pub spinor: Option<SpinorField>,
    pub mass: f64,
    pub charge: f64,
}

/// A tetrad, its matter fields and parameter values: everything needed to
/// evaluate at a chart point.
#[derive(Clone, Debug)]
pub struct Model {
    pub tetrad: Tetrad,
    pub matter: MatterFields,
    pub params: Vec<f64>,
}

/// The four Lagrangian densities as coefficients of τ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LagrangianDensities {
    pub gravity: f64,
    pub maxwell: Option<f64>,
    pub dirac: Option<f64>,
    pub interaction: Option<f64>,
}

/// Everything evaluated at one point.
#[derive(Clone, Debug)]
pub struct EMReport {
    pub point: [f64; DIM],
    /// t^d from the Levi-Civita formula, label up.
    pub t_nice: [Multivector; DIM],
    /// t_d of the Lagrangian route.
    pub t_partial: [Multivector; DIM],
    /// S_d.
    pub s: [Multivector; DIM],
    /// 𝔥_d.
    pub h: [Multivector; DIM],
    /// 𝐭_d = 𝔥_d − t_d.
    pub t_lagrangian: [Multivector; DIM],
    /// G_d = G_dk 𝔤^k.
    pub einstein: [Multivector; DIM],
    /// 𝐭^{da} = 𝔤^d·t^a.
    pub t_components: Mat,
    pub maxwell: Option<MaxwellEM>,
    pub dirac: Option<DiracEM>,
    pub interaction: Option<InteractionEM>,
    /// Named residuals, each already divided by its local scale.
    pub residuals: Vec<(&'static str, f64)>,
}

impl EMReport {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

fn max_norm(x: &[Multivector]) -> f64 {
    x.iter().map(Multivector::norm_inf).fold(0.0, f64::max)
}

fn max_diff(a: &[Multivector], b: &[Multivector]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y.clone()).norm_inf())
        .fold(0.0, f64::max)
}

impl Model {
    pub fn vacuum(tetrad: Tetrad, params: Vec<f64>) -> Self {
        Model {
            tetrad,
            matter: MatterFields::default(),
            params,
        }
    }

    pub fn frame(&self, point: &[f64; DIM], order: usize) -> Result<FrameJet> {
        self.tetrad.jet(point, &self.params, order)
    }

    fn potential_jet(&self, frame: &FrameJet) -> Result<Option<MvJet>> {
        self.matter
            .potential
            .as_ref()
            .map(|p| p.jet(frame, &self.params, frame.order()))
            .transpose()
    }

    fn spinor_jet(&self, frame: &FrameJet) -> Result<Option<MvJet>> {
        self.matter
            .spinor
            .as_ref()
            .map(|s| s.jet(&frame.point, &self.params, frame.order()))
            .transpose()
    }

    /// Total matter energy-momentum 𝒯_d as jets, two orders below the frame.
    pub fn matter_forms(&self, frame: &FrameJet) -> Result<[MvJet; DIM]> {
        let order = frame.order().saturating_sub(2);
        let mut out: [MvJet; DIM] = std::array::from_fn(|_| MvJet::zero_jet(order));
        let a = self.potential_jet(frame)?;
        let psi = self.spinor_jet(frame)?;
        if let Some(a) = &a {
            let f = exterior_d(frame, a)?;
            let t = maxwell_forms(&f);
            for d in 0..DIM {
                out[d].add_scaled_mv(-1.0, &t[d].grade(1).truncate(order));
            }
        }
        if let Some(psi) = &psi {
            let t = forms_from_components(&dirac_components(frame, psi)?);
            for d in 0..DIM {
                out[d].add_scaled_mv(1.0, &t[d].truncate(order));
            }
        }
        if let (Some(a), Some(psi)) = (&a, &psi) {
            let t = interaction_forms(a, psi, self.matter.charge);
            for d in 0..DIM {
                out[d].add_scaled_mv(1.0, &t[d].truncate(order));
            }
        }
        Ok(out)
    }

    /// Full evaluation at one point with second-order jets.
    pub fn report(&self, point: &[f64; DIM]) -> Result<EMReport> {
        let frame = self.frame(point, 2)?;
        let nice = grav_em_nice(&frame)?;
        let lag = grav_em_lagrangian(&frame)?;
        let einstein = frame.einstein_forms().expect("order 2 frame has curvature");
        let from_lag = einstein_from_lagrangian(&frame)?;

        let t_nice = values(&nice);
        let t_lagrangian = values(&lag.total);
        let t_lower = values(&lower_label(&nice));
        let g = values(&einstein);
        let t_scale = max_norm(&t_nice).max(max_norm(&t_lagrangian)).max(f64::MIN_POSITIVE);
        let curv_scale = frame.sample().curvature_scale().max(1.0);

        let mut residuals = vec![
            ("route_equivalence", max_diff(&t_lower, &t_lagrangian) / t_scale),
            ("einstein_identity", max_diff(&g, &values(&from_lag)) / curv_scale),
            (
                "grade_purity",
                t_nice
                    .iter()
                    .chain(&t_lagrangian)
                    .map(|x| x.off_grade_magnitude(1))
                    .fold(0.0, f64::max)
                    / t_scale,
            ),
        ];

        let a = self.potential_jet(&frame)?;
        let psi = self.spinor_jet(&frame)?;
        let maxwell = match &a {
            Some(a) => Some(maxwell_em(&exterior_d(&frame, a)?.value())),
            None => None,
        };
        let dirac = psi.as_ref().map(|p| dirac_em(&frame, p)).transpose()?;
        let interaction = match (&a, &psi) {
            (Some(a), Some(p)) => Some(interaction_em(a, p, self.matter.charge)),
            _ => None,
        };
        if let Some(m) = &maxwell {
            let scale = max_norm(&m.forms).max(f64::MIN_POSITIVE);
            residuals.push(("maxwell_routes", m.route_mismatch / scale));
            let mut asym = 0.0f64;
            for x in 0..DIM {
                for y in 0..DIM {
                    asym = asym.max((m.components[x][y] - m.components[y][x]).abs());
                }
            }
            residuals.push(("maxwell_symmetry", asym / scale));
        }
        if let Some(a) = &a {
            let r = maxwell_residual(&frame, a, psi.as_ref(), self.matter.charge)?;
            residuals.push(("maxwell_df", r.df.norm_inf()));
            residuals.push(("maxwell_equation", r.delta_f_plus_j.norm_inf()));
        }
        if let Some(p) = &psi {
            let r = dirac_residual(&frame, p, a.as_ref(), self.matter.mass, self.matter.charge)?;
            residuals.push(("dirac_equation", r.norm_inf()));
        }
        if let Some(i) = &interaction {
            residuals.push(("interaction_current_mismatch", i.current_mismatch));
        }

        let matter = values(&self.matter_forms(&frame)?);
        let fe = field_equation_terms(&frame, &lag.total)?;
        let field = (0..DIM)
            .map(|d| (fe[d].clone() + matter[d].clone()).norm_inf())
            .fold(0.0, f64::max);
        residuals.push(("field_equation", field / t_scale.max(max_norm(&matter)).max(curv_scale)));

        Ok(EMReport {
            point: *point,
            t_components: em_components(&t_nice),
            t_nice,
            t_partial: values(&lag.t),
            s: values(&lag.s),
            h: values(&lag.h),
            t_lagrangian,
            einstein: g,
            maxwell,
            dirac,
            interaction,
            residuals,
        })
    }

    /// δ(𝒯_d + 𝐭_d), using third-order jets so the divergence is exact.
    pub fn conservation_residual(&self, point: &[f64; DIM]) -> Result<[Multivector; DIM]> {
        let frame = self.frame(point, 3)?;
        let t = grav_em_lagrangian(&frame)?.total;
        let matter = self.matter_forms(&frame)?;
        let mut out: [Multivector; DIM] = std::array::from_fn(|_| Multivector::zero());
        for d in 0..DIM {
            out[d] = codifferential(&frame, &t[d].add_ref(&matter[d]))?.value();
        }
        Ok(out)
    }

    /// δℱ_d + 𝒯_d + 𝐭_d with ℱ_d = d𝔤_d.
    pub fn field_equation_residual(&self, point: &[f64; DIM]) -> Result<[Multivector; DIM]> {
        let frame = self.frame(point, 2)?;
        let t = grav_em_lagrangian(&frame)?.total;
        let fe = field_equation_terms(&frame, &t)?;
        let matter = values(&self.matter_forms(&frame)?);
        Ok(std::array::from_fn(|d| fe[d].clone() + matter[d].clone()))
    }

    pub fn lagrangian_densities(&self, point: &[f64; DIM]) -> Result<LagrangianDensities> {
        let frame = self.frame(point, 1)?;
        let g_up = coframe(1);
        let g_dn = coframe_lower(1);
        let mut l = Multivector::zero();
        let mut w = Multivector::zero();
        for a in 0..DIM {
            let dg = exterior_d(&frame, &g_up[a])?.value();
            let dg_dn = dg.clone() * ETA[a];
            let dl = codifferential(&frame, &g_up[a])?.value();
            l += dg.wedge(&dg_dn.hodge_star()) * -0.5;
            l += dl.wedge(&(dl.clone() * ETA[a]).hodge_star()) * 0.5;
            w += dg.wedge(&g_dn[a].value());
        }
        l += w.wedge(&w.hodge_star()) * 0.25;
        let gravity = l.c[0b1111];

        let a = self.potential_jet(&frame)?;
        let psi = self.spinor_jet(&frame)?;
        let maxwell = match &a {
            Some(a) => {
                let f = exterior_d(&frame, a)?.value();
                Some((f.wedge(&f.hodge_star()) * -0.5).c[0b1111])
            }
            None => None,
        };
        let dirac = psi
            .as_ref()
            .map(|p| dirac_density(&frame, p, self.matter.mass))
            .transpose()?;
        let interaction = match (&a, &psi) {
            (Some(a), Some(p)) => {
                let p = p.value();
                let j = p.reverse() * Multivector::basis(0) * p;
                Some((j.wedge(&a.value().hodge_star()) * self.matter.charge).c[0b1111])
            }
            _ => None,
        };
        Ok(LagrangianDensities {
            gravity,
            maxwell,
            dirac,
            interaction,
        })
    }
}

/// δ(d𝔤_d) + 𝐭_d.
fn field_equation_terms(frame: &FrameJet, total: &[MvJet; DIM]) -> Result<[Multivector; DIM]> {
    let g = coframe_lower(frame.order());
    let mut out: [Multivector; DIM] = std::array::from_fn(|_| Multivector::zero());
    for d in 0..DIM {
        let df = exterior_d(frame, &g[d])?;
        out[d] = codifferential(frame, &df)?.value() + total[d].value();
    }
    Ok(out)
}

/// The Dirac Lagrangian density, term by term as printed, including its
/// overall ½.
pub fn dirac_density(frame: &FrameJet, psi: &MvJet, mass: f64) -> Result<f64> {
    let p = psi.value();
    let rev = p.reverse();
    let w = g021();
    let mut deriv = Multivector::zero();
    let mut deriv_rev = Multivector::zero();
    let mut conn = Multivector::zero();
    let mut conn_rev = Multivector::zero();
    for k in 0..DIM {
        let gk = Multivector::basis(k);
        let dk = pfaff(frame, psi, k)?.value();
        let lk = frame.l[k].value();
        deriv_rev += gk.clone() * dk.reverse() * g21();
        deriv += gk.clone() * dk * w.clone();
        conn_rev += gk.clone() * rev.clone() * lk.clone() * w.clone();
        conn += gk * lk * p.clone() * w.clone();
    }
    let total = (deriv_rev * Multivector::basis(0)).scalar_product(&rev)
        - 0.25 * conn_rev.scalar_product(&rev)
        + p.scalar_product(&deriv)
        + 0.25 * p.scalar_product(&conn)
        + mass * p.scalar_product(&rev);
    Ok(0.5 * total)
}
