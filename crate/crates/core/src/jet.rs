//! Truncated multivariate Taylor polynomials in the four chart coordinates.
//!
//! A [`Taylor`] of order `k` holds every partial derivative of a scalar field up
//! to order `k` at an expansion point, stored as monomial coefficients
//! `∂^α f / α!`. Products, sums and differentiation are exact on the truncated
//! polynomial, so derivative information propagates through the algebra without
//! finite differencing.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use crate::real::Real;

/// Number of chart coordinates.
pub const DIM: usize = 4;
/// Highest derivative order a jet can carry.
pub const MAX_ORDER: usize = 3;
/// Number of monomials of degree ≤ [`MAX_ORDER`] in [`DIM`] variables.
pub const MAX_TERMS: usize = 35;

const NONE: u8 = u8::MAX;

/// Number of monomials with total degree ≤ order.
pub const fn terms_up_to(order: usize) -> usize {
    match order {
        0 => 1,
        1 => 5,
        2 => 15,
        _ => 35,
    }
}

struct Tables {
    exps: [[u8; DIM]; MAX_TERMS],
    degree: [u8; MAX_TERMS],
    // index of monomial i*j, NONE when the degree exceeds MAX_ORDER
    product: [[u8; MAX_TERMS]; MAX_TERMS],
    // index of monomial i + e_mu
    raise: [[u8; MAX_TERMS]; DIM],
    // α! for each monomial
    factorial: [f64; MAX_TERMS],
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut exps = [[0u8; DIM]; MAX_TERMS];
        let mut degree = [0u8; MAX_TERMS];
        let mut n = 0;
        for deg in 0..=MAX_ORDER as u8 {
            // lexicographic order within a degree, highest power of x0 first
            for a in (0..=deg).rev() {
                for b in (0..=deg - a).rev() {
                    for c in (0..=deg - a - b).rev() {
                        let d = deg - a - b - c;
                        exps[n] = [a, b, c, d];
                        degree[n] = deg;
                        n += 1;
                    }
                }
            }
        }
        debug_assert_eq!(n, MAX_TERMS);
        let find = |e: [u8; DIM]| -> u8 {
            exps.iter()
                .position(|x| *x == e)
                .map(|p| p as u8)
                .unwrap_or(NONE)
        };
        let mut product = [[NONE; MAX_TERMS]; MAX_TERMS];
        for i in 0..MAX_TERMS {
            for j in 0..MAX_TERMS {
                if (degree[i] + degree[j]) as usize <= MAX_ORDER {
                    let mut e = exps[i];
                    for m in 0..DIM {
                        e[m] += exps[j][m];
                    }
                    product[i][j] = find(e);
                }
            }
        }
        let mut raise = [[NONE; MAX_TERMS]; DIM];
        for (mu, row) in raise.iter_mut().enumerate() {
            for i in 0..MAX_TERMS {
                if (degree[i] as usize) < MAX_ORDER {
                    let mut e = exps[i];
                    e[mu] += 1;
                    row[i] = find(e);
                }
            }
        }
        let mut factorial = [1.0; MAX_TERMS];
        for i in 0..MAX_TERMS {
            factorial[i] = exps[i]
                .iter()
                .map(|&p| (1..=p as u32).product::<u32>() as f64)
                .product();
        }
        Tables {
            exps,
            degree,
            product,
            raise,
            factorial,
        }
    })
}

/// Index of the monomial with exponent vector `exps`, if its degree is ≤ [`MAX_ORDER`].
pub fn monomial_index(exps: [u8; DIM]) -> Option<usize> {
    tables().exps.iter().position(|e| *e == exps)
}

/// Exponent vector of monomial `i`.
pub fn monomial_exponents(i: usize) -> [u8; DIM] {
    tables().exps[i]
}

/// Factorial weight `α!` of monomial `i`.
pub fn monomial_factorial(i: usize) -> f64 {
    tables().factorial[i]
}

/// A scalar field's jet at a point: Taylor coefficients up to `order`.
#[derive(Clone, Copy, PartialEq)]
pub struct Taylor<S = f64> {
    order: u8,
    c: [S; MAX_TERMS],
}

impl<S: Real> Taylor<S> {
    pub fn constant(value: S, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut c = [S::zero(); MAX_TERMS];
        c[0] = value;
        Taylor {
            order: order as u8,
            c,
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(S::zero(), order)
    }

    /// The coordinate function `x^mu` expanded about a point where it equals `value`.
    pub fn coordinate(mu: usize, value: S, order: usize) -> Self {
        let mut t = Self::constant(value, order);
        if order >= 1 {
            t.c[1 + mu] = S::one();
        }
        t
    }

    /// Builds a jet from raw monomial coefficients (`∂^α f / α!`).
    pub fn from_coefficients(order: usize, coeffs: &[S]) -> Self {
        let mut t = Self::zero(order);
        let n = terms_up_to(order);
        t.c[..n].copy_from_slice(&coeffs[..n]);
        t
    }

    /// Rounds every coefficient to `f64`.
    pub fn to_f64(&self) -> Taylor<f64> {
        Taylor {
            order: self.order,
            c: self.c.map(S::to_f64),
        }
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn value(&self) -> S {
        self.c[0]
    }

    pub fn coefficients(&self) -> &[S] {
        &self.c[..terms_up_to(self.order())]
    }

    pub fn coefficient_mut(&mut self, i: usize) -> &mut S {
        &mut self.c[i]
    }

    /// First partial derivative ∂f/∂x^mu at the expansion point.
    pub fn grad(&self, mu: usize) -> S {
        assert!(self.order >= 1, "gradient of an order-0 jet");
        self.c[1 + mu]
    }

    /// Second partial derivative ∂²f/∂x^mu∂x^nu at the expansion point.
    pub fn hess(&self, mu: usize, nu: usize) -> S {
        assert!(self.order >= 2, "Hessian of a jet of order < 2");
        let t = tables();
        let i = t.raise[mu][1 + nu] as usize;
        self.c[i] * t.factorial[i]
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order() {
            return *self;
        }
        let mut t = Self::zero(order);
        let n = terms_up_to(order);
        t.c[..n].copy_from_slice(&self.c[..n]);
        t
    }

    /// `self += s * a`, truncated to the lower of the two orders.
    pub fn add_scaled(&mut self, s: f64, a: &Self) {
        if a.order < self.order {
            let n = terms_up_to(a.order());
            self.c[n..].fill(S::zero());
            self.order = a.order;
        }
        let n = terms_up_to(self.order());
        for (x, y) in self.c[..n].iter_mut().zip(&a.c[..n]) {
            *x += *y * s;
        }
    }

    /// Exact partial derivative along `x^mu`; the result has one order less.
    pub fn partial(&self, mu: usize) -> Self {
        assert!(self.order >= 1, "partial derivative of an order-0 jet");
        let t = tables();
        let order = self.order() - 1;
        let mut out = Self::zero(order);
        for i in 0..terms_up_to(order) {
            let j = t.raise[mu][i] as usize;
            out.c[i] = self.c[j] * (t.exps[i][mu] as f64 + 1.0);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|&x| x == S::zero())
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coefficients()
            .iter()
            .fold(0.0, |m, x| m.max(x.to_f64().abs()))
    }

    /// `self += s * a * b`, truncated to `self.order()`.
    pub fn add_scaled_product(&mut self, s: f64, a: &Self, b: &Self) {
        let t = tables();
        let order = self.order();
        let na = terms_up_to(order.min(a.order()));
        for i in 0..na {
            let ai = a.c[i];
            if ai == S::zero() {
                continue;
            }
            let sai = ai * s;
            let rest = order - t.degree[i] as usize;
            let nb = terms_up_to(rest.min(b.order()));
            let row = &t.product[i];
            for j in 0..nb {
                let bj = b.c[j];
                if bj != S::zero() {
                    self.c[row[j] as usize] += sai * bj;
                }
            }
        }
    }

    /// Evaluates the truncated polynomial at a displacement from the expansion point.
    pub fn eval_at(&self, dx: [f64; DIM]) -> S {
        let t = tables();
        self.coefficients()
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (i, &ci)| {
                let e = t.exps[i];
                acc + ci * (0..DIM).map(|m| dx[m].powi(e[m] as i32)).product::<f64>()
            })
    }

    /// Reciprocal by series inversion about the value.
    pub fn recip(&self) -> Self {
        let v = self.value();
        let order = self.order();
        // 1/(v + δ) = (1/v) Σ (-δ/v)^n
        let inv = v.recip();
        let mut q = *self;
        q.c[0] = S::zero();
        for x in q.c.iter_mut() {
            *x = -(*x * inv);
        }
        let mut term = Self::constant(S::one(), order);
        let mut sum = term;
        for _ in 0..order {
            term = term * q;
            sum += term;
        }
        for x in sum.c.iter_mut() {
            *x *= inv;
        }
        sum
    }
}

impl<S: Real> fmt::Debug for Taylor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Taylor(order {}, {:?})", self.order, self.coefficients())
    }
}

impl<S: Real> Add for Taylor<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = self.truncate(order);
        for i in 0..terms_up_to(order) {
            out.c[i] += rhs.c[i];
        }
        out
    }
}

impl<S: Real> AddAssign for Taylor<S> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<S: Real> Sub for Taylor<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Real> SubAssign for Taylor<S> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<S: Real> Neg for Taylor<S> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for x in self.c.iter_mut() {
            *x = -*x;
        }
        self
    }
}

impl<S: Real> Mul for Taylor<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero(self.order().min(rhs.order()));
        out.add_scaled_product(1.0, &self, &rhs);
        out
    }
}

impl<S: Real> Mul<f64> for Taylor<S> {
    type Output = Self;
    fn mul(mut self, s: f64) -> Self {
        for x in self.c.iter_mut() {
            *x = *x * s;
        }
        self
    }
}

impl<S: Real> MulAssign<f64> for Taylor<S> {
    fn mul_assign(&mut self, s: f64) {
        *self = *self * s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        assert_eq!(monomial_exponents(0), [0, 0, 0, 0]);
        for mu in 0..DIM {
            let mut e = [0; DIM];
            e[mu] = 1;
            assert_eq!(monomial_index(e), Some(1 + mu));
        }
        assert_eq!(terms_up_to(2), 15);
        assert_eq!(monomial_factorial(monomial_index([2, 1, 0, 0]).unwrap()), 2.0);
    }

    #[test]
    fn product_matches_polynomial_evaluation() {
        // (1 + x + 2y)(3 - z + x w) at a small displacement, exact to order 3
        let x = Taylor::coordinate(0, 0.0, 3);
        let y = Taylor::coordinate(1, 0.0, 3);
        let z = Taylor::coordinate(2, 0.0, 3);
        let w = Taylor::coordinate(3, 0.0, 3);
        let one = Taylor::constant(1.0, 3);
        let p = (one + x + y * 2.0) * (one * 3.0 - z + x * w);
        let d = [0.1, -0.2, 0.3, 0.05];
        let exact = (1.0 + d[0] + 2.0 * d[1]) * (3.0 - d[2] + d[0] * d[3]);
        assert!((p.eval_at(d) - exact).abs() < 1e-14);
    }

    #[test]
    fn derivatives_of_known_polynomial() {
        // f = x0^2 x1 + 3 x2 about (1, 2, 0, 0)
        let x0 = Taylor::coordinate(0, 1.0, 3);
        let x1 = Taylor::coordinate(1, 2.0, 3);
        let x2 = Taylor::coordinate(2, 0.0, 3);
        let f = x0 * x0 * x1 + x2 * 3.0;
        assert_eq!(f.value(), 2.0);
        assert_eq!(f.grad(0), 4.0);
        assert_eq!(f.grad(1), 1.0);
        assert_eq!(f.grad(2), 3.0);
        assert_eq!(f.hess(0, 0), 4.0);
        assert_eq!(f.hess(0, 1), 2.0);
        assert_eq!(f.hess(1, 0), 2.0);
        let d01 = f.partial(0).partial(1);
        assert_eq!(d01.order(), 1);
        assert_eq!(d01.value(), 2.0);
        assert_eq!(d01.grad(0), 2.0);
    }

    #[test]
    fn reciprocal_series() {
        let x = Taylor::coordinate(0, 2.0, 3);
        let r = x.recip();
        assert!((r.value() - 0.5).abs() < 1e-15);
        assert!((r.grad(0) + 0.25).abs() < 1e-15);
        assert!((r.hess(0, 0) - 0.25).abs() < 1e-15);
        let prod = r * x;
        assert!((prod.value() - 1.0).abs() < 1e-15);
        assert!(prod.coefficients()[1..].iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = Taylor::coordinate(0, 1.0, 3);
        let b = Taylor::coordinate(1, 1.0, 1);
        assert_eq!((a + b).order(), 1);
        assert_eq!((a * b).order(), 1);
    }
}
