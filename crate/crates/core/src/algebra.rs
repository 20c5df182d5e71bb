//! The spacetime algebra ℝ₁,₃ on 16-component multivectors.
//!
//! Components are indexed by blade mask: bit `i` set means the blade contains the
//! basis 1-form `g^i`, factors in ascending index order. The signature is fixed to
//! η = diag(+1, −1, −1, −1). All products go through 16×16 sign/mask tables built
//! once on first use.
//!
//! [`Mv`] is generic over its coefficient so the same code serves plain
//! multivectors ([`Multivector`]) and jet-valued fields ([`MvJet`]).

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::jet::Taylor;
use crate::real::Real;

/// Diagonal of η_ab (and of η^ab, which is the same matrix).
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Mask of the unit pseudoscalar τ = g⁰g¹g²g³.
pub const PSEUDOSCALAR: usize = 0b1111;

/// The metric signature. Only ℝ₁,₃ is supported, so this is a zero-sized handle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Signature;

impl Signature {
    /// η_ab (lower indices).
    pub fn lower(&self, a: usize, b: usize) -> f64 {
        if a == b {
            ETA[a]
        } else {
            0.0
        }
    }

    /// η^ab (upper indices).
    pub fn upper(&self, a: usize, b: usize) -> f64 {
        self.lower(a, b)
    }
}

/// Blade masks listed in the documented order: scalar, vectors, bivectors,
/// trivectors, pseudoscalar, ascending within each grade.
pub const BLADE_ORDER: [usize; 16] = [
    0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100,
    0b0111, 0b1011, 0b1101, 0b1110, 0b1111,
];

/// Even-grade blades in the spinor component order
/// `[1, g0∧g1, g0∧g2, g0∧g3, g1∧g2, g1∧g3, g2∧g3, τ]`.
pub const EVEN_BLADES: [usize; 8] = [0b0000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111];

pub fn grade_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Sign of reversion on a blade of the given grade, (−1)^{r(r−1)/2}.
pub fn reverse_sign(grade: usize) -> f64 {
    if (grade * grade.saturating_sub(1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn involution_sign(grade: usize) -> f64 {
    if grade % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of the geometric product of two basis blades, from the reordering swaps
/// and the metric factors of shared vectors.
pub fn blade_product_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    let mut sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
    let common = a & b;
    for (i, eta) in ETA.iter().enumerate() {
        if common & (1 << i) != 0 {
            sign *= eta;
        }
    }
    sign
}

struct SignTable {
    gp: [[f64; 16]; 16],
}

fn sign_table() -> &'static SignTable {
    static TABLE: OnceLock<SignTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut gp = [[0.0; 16]; 16];
        for (a, row) in gp.iter_mut().enumerate() {
            for (b, s) in row.iter_mut().enumerate() {
                *s = blade_product_sign(a, b);
            }
        }
        SignTable { gp }
    })
}

/// The product sign table entry for blades `a`, `b`; the result blade is `a ^ b`.
pub fn product_sign(a: usize, b: usize) -> f64 {
    sign_table().gp[a][b]
}

/// Coefficient types a multivector can carry.
pub trait Coefficient: Clone + Send + Sync {
    /// A zero compatible with the combination of `a` and `b` (for jets, the lower order).
    fn zero_like(a: &Self, b: &Self) -> Self;
    fn zero_of(a: &Self) -> Self;
    fn add_scaled_product(&mut self, s: f64, a: &Self, b: &Self);
    fn add_scaled(&mut self, s: f64, a: &Self);
    fn scaled(&self, s: f64) -> Self;
    fn is_zero(&self) -> bool;
    fn magnitude(&self) -> f64;
    /// A unit coefficient carrying the same jet order as `x`.
    fn one_like(x: &Self) -> Self;
}

impl<S: Real> Coefficient for S {
    fn zero_like(_: &Self, _: &Self) -> Self {
        S::zero()
    }
    fn zero_of(_: &Self) -> Self {
        S::zero()
    }
    fn add_scaled_product(&mut self, s: f64, a: &Self, b: &Self) {
        *self += *a * *b * s;
    }
    fn add_scaled(&mut self, s: f64, a: &Self) {
        *self += *a * s;
    }
    fn scaled(&self, s: f64) -> Self {
        *self * s
    }
    fn is_zero(&self) -> bool {
        *self == S::zero()
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn one_like(_: &Self) -> Self {
        S::one()
    }
}

impl<S: Real> Coefficient for Taylor<S> {
    fn zero_like(a: &Self, b: &Self) -> Self {
        Taylor::zero(a.order().min(b.order()))
    }
    fn zero_of(a: &Self) -> Self {
        Taylor::zero(a.order())
    }
    fn add_scaled_product(&mut self, s: f64, a: &Self, b: &Self) {
        Taylor::add_scaled_product(self, s, a, b);
    }
    fn add_scaled(&mut self, s: f64, a: &Self) {
        Taylor::add_scaled(self, s, a);
    }
    fn scaled(&self, s: f64) -> Self {
        *self * s
    }
    fn is_zero(&self) -> bool {
        Taylor::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.value().to_f64().abs()
    }
    fn one_like(x: &Self) -> Self {
        Taylor::constant(S::one(), x.order())
    }
}

/// A multivector with coefficients of type `T` in the tetrad blade basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Mv<T> {
    pub c: [T; 16],
}

/// A multivector with real coefficients.
pub type Multivector = Mv<f64>;
/// A multivector field's jet at a point.
pub type MvJet<S = f64> = Mv<Taylor<S>>;

impl<T> Index<usize> for Mv<T> {
    type Output = T;
    fn index(&self, mask: usize) -> &T {
        &self.c[mask]
    }
}

impl<T> IndexMut<usize> for Mv<T> {
    fn index_mut(&mut self, mask: usize) -> &mut T {
        &mut self.c[mask]
    }
}

impl Multivector {
    pub fn zero() -> Self {
        Mv { c: [0.0; 16] }
    }

    pub fn scalar(s: f64) -> Self {
        Self::blade(0, s)
    }

    pub fn blade(mask: usize, coeff: f64) -> Self {
        let mut m = Self::zero();
        m.c[mask] = coeff;
        m
    }

    /// The basis 1-form g^a.
    pub fn basis(a: usize) -> Self {
        Self::blade(1 << a, 1.0)
    }

    /// The lowered basis 1-form g_a = η_ab g^b.
    pub fn basis_lower(a: usize) -> Self {
        Self::blade(1 << a, ETA[a])
    }

    pub fn vector(v: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for (a, x) in v.iter().enumerate() {
            m.c[1 << a] = *x;
        }
        m
    }

    /// The unit pseudoscalar τ.
    pub fn pseudoscalar() -> Self {
        Self::blade(PSEUDOSCALAR, 1.0)
    }

    /// Product of basis 1-forms in the given order, e.g. `[2, 1, 0]` for g²g¹g⁰.
    pub fn product_of_basis(indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::scalar(1.0), |acc, &a| acc.gp(&Self::basis(a)))
    }

    pub fn norm_inf(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Coefficients of g^a in the grade-1 part.
    pub fn vector_part(&self) -> [f64; 4] {
        std::array::from_fn(|a| self.c[1 << a])
    }
}

impl<S: Real> Mv<S> {
    /// Lifts to a constant jet of the given order.
    pub fn to_jet(&self, order: usize) -> MvJet<S> {
        Mv {
            c: std::array::from_fn(|i| Taylor::constant(self.c[i], order)),
        }
    }

    /// Rounds every coefficient to `f64`.
    pub fn to_f64(&self) -> Multivector {
        Mv {
            c: self.c.map(S::to_f64),
        }
    }

    /// Converts an `f64` multivector.
    pub fn from_f64(x: &Multivector) -> Self {
        Mv {
            c: x.c.map(S::from_f64),
        }
    }
}

impl<S: Real> Mv<Taylor<S>> {
    pub fn zero_jet(order: usize) -> Self {
        Mv {
            c: std::array::from_fn(|_| Taylor::zero(order)),
        }
    }

    pub fn basis_jet(a: usize, order: usize) -> Self {
        let mut m = Self::zero_jet(order);
        m.c[1 << a] = Taylor::constant(S::one(), order);
        m
    }

    pub fn order(&self) -> usize {
        self.c.iter().map(|t| t.order()).min().unwrap_or(0)
    }

    /// Values at the expansion point.
    pub fn value(&self) -> Mv<S> {
        Mv {
            c: std::array::from_fn(|i| self.c[i].value()),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Mv {
            c: std::array::from_fn(|i| self.c[i].truncate(order)),
        }
    }

    /// Component-wise partial derivative along x^mu.
    pub fn partial(&self, mu: usize) -> Self {
        Mv {
            c: std::array::from_fn(|i| self.c[i].partial(mu)),
        }
    }

    /// Multiplies every component by a scalar jet.
    pub fn scale_by(&self, s: &Taylor<S>) -> Self {
        Mv {
            c: std::array::from_fn(|i| self.c[i] * *s),
        }
    }

    /// Rounds every coefficient to `f64`.
    pub fn jet_to_f64(&self) -> MvJet {
        Mv {
            c: self.c.map(|t| t.to_f64()),
        }
    }
}

impl<T: Coefficient> Mv<T> {
    fn zero_from(&self, other: &Self) -> Self {
        Mv {
            c: std::array::from_fn(|i| T::zero_like(&self.c[i], &other.c[i])),
        }
    }

    fn combine<F: Fn(usize, usize) -> bool>(&self, other: &Self, keep: F) -> Self {
        let table = &sign_table().gp;
        let mut out = self.zero_from(other);
        for a in 0..16 {
            if self.c[a].is_zero() {
                continue;
            }
            for b in 0..16 {
                if !keep(a, b) || other.c[b].is_zero() {
                    continue;
                }
                out.c[a ^ b].add_scaled_product(table[a][b], &self.c[a], &other.c[b]);
            }
        }
        out
    }

    /// Geometric (Clifford) product.
    pub fn gp(&self, other: &Self) -> Self {
        self.combine(other, |_, _| true)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a & b == 0)
    }

    /// Left contraction X ⌟ Y: blade pairs with A ⊆ B, grade |B| − |A|.
    pub fn left_contract(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a & !b == 0)
    }

    /// Right contraction X ⌞ Y: blade pairs with B ⊆ A, grade |A| − |B|.
    pub fn right_contract(&self, other: &Self) -> Self {
        self.combine(other, |a, b| b & !a == 0)
    }

    /// Commutator `AB − BA` (no ½).
    pub fn commutator(&self, other: &Self) -> Self {
        self.gp(other).sub_ref(&other.gp(self))
    }

    /// Scalar product X·Y = ⟨X̃Y⟩₀ as a coefficient value.
    pub fn scalar_product(&self, other: &Self) -> T {
        let table = &sign_table().gp;
        let mut out = T::zero_like(&self.c[0], &other.c[0]);
        for a in 0..16 {
            if self.c[a].is_zero() || other.c[a].is_zero() {
                continue;
            }
            out.add_scaled_product(
                reverse_sign(grade_of(a)) * table[a][a],
                &self.c[a],
                &other.c[a],
            );
        }
        out
    }

    pub fn map_blades<F: Fn(usize) -> f64>(&self, sign: F) -> Self {
        Mv {
            c: std::array::from_fn(|i| self.c[i].scaled(sign(i))),
        }
    }

    pub fn reverse(&self) -> Self {
        self.map_blades(|m| reverse_sign(grade_of(m)))
    }

    pub fn grade_involution(&self) -> Self {
        self.map_blades(|m| involution_sign(grade_of(m)))
    }

    /// Grade projection ⟨X⟩_r.
    pub fn grade(&self, r: usize) -> Self {
        self.map_blades(|m| if grade_of(m) == r { 1.0 } else { 0.0 })
    }

    /// Hodge dual ★X := X̃ ⌟ τ.
    pub fn hodge_star(&self) -> Self {
        let mut tau = Mv {
            c: std::array::from_fn(|i| T::zero_of(&self.c[i])),
        };
        tau.c[PSEUDOSCALAR] = T::one_like(&self.c[PSEUDOSCALAR]);
        self.reverse().left_contract(&tau)
    }

    /// Inverse Hodge dual, using ★★X_r = −(−1)^r X_r.
    pub fn hodge_star_inv(&self) -> Self {
        self.hodge_star()
            .map_blades(|m| star_star_sign(grade_of(m)))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_blades(|_| s)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_mv(1.0, other);
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_mv(-1.0, other);
        out
    }

    /// `self += s * other`, truncated to the lower jet order.
    pub fn add_scaled_mv(&mut self, s: f64, other: &Self) {
        for (x, y) in self.c.iter_mut().zip(&other.c) {
            x.add_scaled(s, y);
        }
    }

    /// Largest component magnitude (at the expansion point, for jets).
    pub fn magnitude(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.magnitude()))
    }

    /// Magnitude of the part of grade other than `r`.
    pub fn off_grade_magnitude(&self, r: usize) -> f64 {
        (0..16)
            .filter(|&m| grade_of(m) != r)
            .fold(0.0, |acc, m| acc.max(self.c[m].magnitude()))
    }
}

/// ★★X_p = −(−1)^p X_p, so ★⁻¹ is ★ followed by this sign on the result grade.
fn star_star_sign(grade: usize) -> f64 {
    -involution_sign(grade)
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        self.add_ref(&rhs)
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        *self = self.add_ref(&rhs);
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        self.sub_ref(&rhs)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: expand both blades into vector lists and bubble-sort,
    // contracting equal neighbours with the metric.
    fn naive_product(a: usize, b: usize) -> (f64, usize) {
        let mut v: Vec<usize> = (0..4).filter(|i| a & (1 << i) != 0).collect();
        v.extend((0..4).filter(|i| b & (1 << i) != 0));
        let mut sign = 1.0;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < v.len() {
                if v[i] > v[i + 1] {
                    v.swap(i, i + 1);
                    sign = -sign;
                    changed = true;
                } else if v[i] == v[i + 1] {
                    sign *= ETA[v[i]];
                    v.drain(i..i + 2);
                    changed = true;
                    continue;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        (sign, v.iter().fold(0, |m, i| m | (1 << i)))
    }

    #[test]
    fn sign_table_matches_naive_expansion() {
        for a in 0..16 {
            for b in 0..16 {
                let (s, m) = naive_product(a, b);
                assert_eq!(m, a ^ b);
                assert_eq!(product_sign(a, b), s, "blades {a:04b} {b:04b}");
            }
        }
    }

    #[test]
    fn basic_identities() {
        let tau = Multivector::pseudoscalar();
        assert_eq!((tau.clone() * tau.clone()).c[0], -1.0);
        let g1 = Multivector::basis(1);
        assert_eq!((g1.clone() * g1).c[0], -1.0);
        let g01 = Multivector::basis(0).wedge(&Multivector::basis(1));
        let g23 = Multivector::basis(2).wedge(&Multivector::basis(3));
        assert_eq!(g01.wedge(&g23), tau);
        assert_eq!(
            Multivector::basis(0).left_contract(&tau),
            Multivector::blade(0b1110, 1.0)
        );
        assert_eq!(tau.hodge_star(), Multivector::scalar(-1.0));
        assert_eq!(Multivector::scalar(1.0).hodge_star(), tau);
        assert_eq!(
            g01.commutator(&Multivector::basis(0)),
            Multivector::basis(1) * -2.0
        );
    }

    #[test]
    fn double_dual_sign_by_grade() {
        for m in 0..16 {
            let x = Multivector::blade(m, 1.0);
            let expected = if grade_of(m) % 2 == 0 { -1.0 } else { 1.0 };
            assert_eq!(x.hodge_star().hodge_star(), x.scale(expected), "blade {m:04b}");
            assert_eq!(x.hodge_star().hodge_star_inv(), x);
            assert_eq!(x.hodge_star_inv().hodge_star(), x);
        }
    }

    #[test]
    fn star_relates_wedge_and_scalar_product() {
        // X ∧ ★Y = (X·Y) τ for equal grades
        for a in 0..16 {
            for b in 0..16 {
                if grade_of(a) != grade_of(b) {
                    continue;
                }
                let x = Multivector::blade(a, 1.0);
                let y = Multivector::blade(b, 1.0);
                let lhs = x.wedge(&y.hodge_star());
                let rhs = Multivector::pseudoscalar().scale(x.scalar_product(&y));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn contraction_is_adjoint_to_wedge() {
        // (X ⌟ Y)·Z = Y·(X̃ ∧ Z)
        for x in 0..16 {
            for y in 0..16 {
                for z in 0..16 {
                    let (x, y, z) = (
                        Multivector::blade(x, 1.0),
                        Multivector::blade(y, 1.0),
                        Multivector::blade(z, 1.0),
                    );
                    let lhs = x.left_contract(&y).scalar_product(&z);
                    let rhs = y.scalar_product(&x.reverse().wedge(&z));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn jets_follow_the_same_tables() {
        let a = Multivector::basis(0).add_ref(&Multivector::blade(0b0110, 2.0));
        let b = Multivector::basis(3).add_ref(&Multivector::scalar(0.5));
        let ja = a.to_jet(2);
        let jb = b.to_jet(1);
        let p = ja.gp(&jb);
        assert_eq!(p.order(), 1);
        assert_eq!(p.value(), a.gp(&b));
        assert_eq!(ja.hodge_star().value(), a.hodge_star());
    }
}
