//! Differential operators on Clifford and spinor fields.
//!
//! Fields are handled as jets ([`MvJet`]) of their tetrad-basis components
//! about a point. Every operator that differentiates lowers the jet order by
//! one; asking for a derivative of an order-0 jet is an error.

use crate::algebra::{Multivector, MvJet, ETA, EVEN_BLADES};
use crate::error::{Error, Result};
use crate::expr::{parse, DiffExpr, Expr, Symbols};
use crate::frame::FrameJet;
use crate::jet::{Taylor, DIM};
use crate::real::Real;

fn need<S: Real>(x: &MvJet<S>, n: usize) -> Result<()> {
    let have = x.order();
    if have < n {
        Err(Error::InsufficientJetOrder { have, need: n })
    } else {
        Ok(())
    }
}

/// Pfaff derivative 𝔡_k X = e_k^μ ∂_μ X, basis blades held fixed.
pub fn pfaff<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>, k: usize) -> Result<MvJet<S>> {
    need(x, 1)?;
    let order = (x.order() - 1).min(frame.order());
    let mut out = MvJet::<S>::zero_jet(order);
    for mu in 0..DIM {
        let e = frame.e[k][mu];
        if e.is_zero() {
            continue;
        }
        out.add_scaled_mv(1.0, &x.partial(mu).scale_by(&e));
    }
    Ok(out)
}

/// Pfaff derivative along ξ = ξ^k 𝔢_k.
pub fn pfaff_along<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>, xi: &[Taylor<S>; DIM]) -> Result<MvJet<S>> {
    let mut out: Option<MvJet<S>> = None;
    for (k, xk) in xi.iter().enumerate() {
        let term = pfaff(frame, x, k)?.scale_by(xk);
        match out.as_mut() {
            None => out = Some(term),
            Some(acc) => acc.add_scaled_mv(1.0, &term),
        }
    }
    Ok(out.expect("four frame directions"))
}

/// Covariant derivative of a Clifford field, D_k X = 𝔡_k X + ¼[L(𝔤_k), X].
pub fn covariant<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>, k: usize) -> Result<MvJet<S>> {
    let mut out = pfaff(frame, x, k)?;
    out.add_scaled_mv(0.25, &frame.l[k].commutator(x));
    Ok(out)
}

/// Covariant derivative of a spinor representative, D_k ψ = 𝔡_k ψ + ¼L(𝔤_k)ψ.
pub fn covariant_spinor<S: Real>(frame: &FrameJet<S>, psi: &MvJet<S>, k: usize) -> Result<MvJet<S>> {
    let mut out = pfaff(frame, psi, k)?;
    out.add_scaled_mv(0.25, &frame.l[k].gp(psi));
    Ok(out)
}

/// All four covariant derivatives of a Clifford field.
pub fn covariant_all<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>) -> Result<[MvJet<S>; DIM]> {
    let d: Vec<MvJet<S>> = (0..DIM)
        .map(|k| covariant(frame, x, k))
        .collect::<Result<_>>()?;
    Ok(d.try_into().expect("four derivatives"))
}

/// Exterior derivative, computed on coordinate-basis components.
pub fn exterior_d<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>) -> Result<MvJet<S>> {
    need(x, 1)?;
    let y = frame.to_coordinate(x);
    let order = y.order() - 1;
    let mut dy = MvJet::<S>::zero_jet(order);
    for mu in 0..DIM {
        let dx = MvJet::<S>::basis_jet(mu, order);
        dy.add_scaled_mv(1.0, &dx.wedge(&y.partial(mu)));
    }
    Ok(frame.from_coordinate(&dy))
}

/// Dirac operator ∂X = 𝔤^k D_k X.
pub fn dirac_operator<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>) -> Result<MvJet<S>> {
    let d = covariant_all(frame, x)?;
    Ok(sum_over_frame(&d, |k, dk| MvJet::<S>::basis_jet(k, dk.order()).gp(dk)))
}

/// Σ_k 𝔤^k ∧ D_k X, the part of ∂ that equals d.
pub fn dirac_wedge_part<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>) -> Result<MvJet<S>> {
    let d = covariant_all(frame, x)?;
    Ok(sum_over_frame(&d, |k, dk| MvJet::<S>::basis_jet(k, dk.order()).wedge(dk)))
}

/// Codifferential δX = −Σ_k 𝔤^k ⌟ D_k X, so that ∂ = d − δ.
pub fn codifferential<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>) -> Result<MvJet<S>> {
    let d = covariant_all(frame, x)?;
    Ok(sum_over_frame(&d, |k, dk| {
        MvJet::<S>::basis_jet(k, dk.order()).left_contract(dk).scale(-1.0)
    }))
}

fn sum_over_frame<S: Real, F: Fn(usize, &MvJet<S>) -> MvJet<S>>(d: &[MvJet<S>; DIM], f: F) -> MvJet<S> {
    let mut out = f(0, &d[0]);
    for (k, dk) in d.iter().enumerate().skip(1) {
        out.add_scaled_mv(1.0, &f(k, dk));
    }
    out
}

/// Covariant D'Alembertian ∂·∂X = η^{kl}(D_k D_l X − Λ^m_{kl} D_m X).
pub fn covariant_dalembertian<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>) -> Result<MvJet<S>> {
    need(x, 2)?;
    let d = covariant_all(frame, x)?;
    let mut out: Option<MvJet<S>> = None;
    for k in 0..DIM {
        let mut term = covariant(frame, &d[k], k)?;
        for (m, dm) in d.iter().enumerate() {
            term.add_scaled_mv(-1.0, &dm.scale_by(&frame.lambda[m][k][k]));
        }
        let term = term.scale(ETA[k]);
        match out.as_mut() {
            None => out = Some(term),
            Some(acc) => acc.add_scaled_mv(1.0, &term),
        }
    }
    Ok(out.expect("four frame directions"))
}

/// The bivector S(ξ) = ξ^k L(𝔤_k) + dξ♭ generating the spinor Lie derivative.
pub fn lie_generator<S: Real>(frame: &FrameJet<S>, xi: &[Taylor<S>; DIM]) -> Result<MvJet<S>> {
    let mut flat = MvJet::<S>::zero_jet(xi.iter().map(|t| t.order()).min().unwrap_or(0));
    for k in 0..DIM {
        flat.c[1 << k] = xi[k] * ETA[k];
    }
    let mut s = exterior_d(frame, &flat)?;
    for k in 0..DIM {
        s.add_scaled_mv(1.0, &frame.l[k].scale_by(&xi[k]));
    }
    Ok(s)
}

/// Spinor Lie derivative of a Clifford field, 𝔡_ξ C + ¼[S(ξ), C].
pub fn lie_derivative<S: Real>(frame: &FrameJet<S>, x: &MvJet<S>, xi: &[Taylor<S>; DIM]) -> Result<MvJet<S>> {
    let s = lie_generator(frame, xi)?;
    let mut out = pfaff_along(frame, x, xi)?;
    out.add_scaled_mv(0.25, &s.commutator(x));
    Ok(out)
}

/// Spinor Lie derivative of a spinor representative, 𝔡_ξ ψ + ¼S(ξ)ψ.
pub fn lie_derivative_spinor<S: Real>(frame: &FrameJet<S>, psi: &MvJet<S>, xi: &[Taylor<S>; DIM]) -> Result<MvJet<S>> {
    let s = lie_generator(frame, xi)?;
    let mut out = pfaff_along(frame, psi, xi)?;
    out.add_scaled_mv(0.25, &s.gp(psi));
    Ok(out)
}

/// A Clifford field given by closed-form tetrad-basis components.
#[derive(Clone, Debug, Default)]
pub struct MultivectorField {
    components: Vec<(usize, DiffExpr)>,
}

impl MultivectorField {
    /// `components` pairs a blade mask with its coefficient expression.
    pub fn new(components: Vec<(usize, Expr)>) -> Self {
        MultivectorField {
            components: components
                .into_iter()
                .map(|(m, e)| (m, DiffExpr::new(e)))
                .collect(),
        }
    }

    /// A constant multivector.
    pub fn constant(x: &Multivector) -> Self {
        Self::new(
            (0..16)
                .filter(|&m| x.c[m] != 0.0)
                .map(|m| (m, Expr::constant(x.c[m])))
                .collect(),
        )
    }

    pub fn jet(&self, point: &[f64; DIM], params: &[f64], order: usize) -> Result<MvJet> {
        let mut out = MvJet::zero_jet(order);
        for (m, e) in &self.components {
            out.c[*m] += e.eval_taylor(point, params, order)?;
        }
        Ok(out)
    }
}

/// A Dirac-Hestenes spinor representative: eight components over
/// `[1, 𝔤⁰∧𝔤¹, 𝔤⁰∧𝔤², 𝔤⁰∧𝔤³, 𝔤¹∧𝔤², 𝔤¹∧𝔤³, 𝔤²∧𝔤³, τ]`.
#[derive(Clone, Debug)]
pub struct SpinorField {
    components: [DiffExpr; 8],
}

impl SpinorField {
    pub fn new(components: [Expr; 8]) -> Self {
        SpinorField {
            components: components.map(DiffExpr::new),
        }
    }

    pub fn parse<S: AsRef<str>>(symbols: &Symbols, components: &[S; 8]) -> Result<Self> {
        let mut out = Vec::with_capacity(8);
        for (i, text) in components.iter().enumerate() {
            out.push(parse(text.as_ref(), symbols).map_err(|source| Error::Field {
                path: format!("spinor.components[{i}]"),
                source,
            })?);
        }
        let arr: [Expr; 8] = out.try_into().expect("eight components");
        Ok(SpinorField::new(arr))
    }

    pub fn jet(&self, point: &[f64; DIM], params: &[f64], order: usize) -> Result<MvJet> {
        let mut out = MvJet::zero_jet(order);
        for (i, e) in self.components.iter().enumerate() {
            out.c[EVEN_BLADES[i]] = e.eval_taylor(point, params, order)?;
        }
        Ok(out)
    }
}

/// A vector field ξ = ξ^k 𝔢_k given by its frame components.
#[derive(Clone, Debug)]
pub struct VectorField {
    components: [DiffExpr; DIM],
}

impl VectorField {
    pub fn new(components: [Expr; DIM]) -> Self {
        VectorField {
            components: components.map(DiffExpr::new),
        }
    }

    pub fn jet(&self, point: &[f64; DIM], params: &[f64], order: usize) -> Result<[Taylor; DIM]> {
        let mut out = [Taylor::zero(order); DIM];
        for (k, e) in self.components.iter().enumerate() {
            out[k] = e.eval_taylor(point, params, order)?;
        }
        Ok(out)
    }
}
