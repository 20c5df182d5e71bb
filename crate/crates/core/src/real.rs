//! Scalar types for the jet arithmetic: `f64` and the double-double [`Dd`].
//!
//! Far from a compact source the energy-momentum 1-forms come out as small
//! differences of much larger connection products, so some evaluations are run
//! in double-double arithmetic (about 32 significant digits).

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use qd::Quad;

pub trait Real:
    Copy
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Unit roundoff.
    const EPSILON: f64;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `self^y` for a positive base.
    fn powf(self, y: Self) -> Self {
        (self.ln() * y).exp()
    }

    fn tan(self) -> Self {
        self.sin() / self.cos()
    }

    fn sinh(self) -> Self {
        let e = self.exp();
        (e - e.recip()) * 0.5
    }

    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()) * 0.5
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn powf(self, y: Self) -> Self {
        f64::powf(self, y)
    }
    fn tan(self) -> Self {
        f64::tan(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
}

/// Double-double number: an unevaluated sum of two `f64`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Dd(pub Quad);

const FRAC_PI_2: Quad = Quad(1.5707963267948966, 6.123233995736766e-17);

impl Dd {
    pub fn hi(self) -> f64 {
        self.0 .0
    }

    pub fn lo(self) -> f64 {
        self.0 .1
    }

    /// sin and cos of |r| ≤ π/4 by their Taylor series.
    fn sin_cos_reduced(r: Quad) -> (Quad, Quad) {
        let r2 = r * r;
        let mut s = r;
        let mut c = Quad::ONE;
        let mut ts = r;
        let mut tc = Quad::ONE;
        let mut k = 1.0;
        loop {
            ts = -(ts * r2) / Quad::from((2.0 * k) * (2.0 * k + 1.0));
            tc = -(tc * r2) / Quad::from((2.0 * k - 1.0) * (2.0 * k));
            s += ts;
            c += tc;
            if ts.0.abs() < 1e-34 && tc.0.abs() < 1e-34 {
                return (s, c);
            }
            k += 1.0;
        }
    }

    fn sin_cos(self) -> (Dd, Dd) {
        let x = self.0;
        let n = (x.0 / FRAC_PI_2.0).round();
        let r = x - FRAC_PI_2 * Quad::from(n);
        let (s, c) = Self::sin_cos_reduced(r);
        let (s, c) = match (n as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (Dd(s), Dd(c))
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd(Quad::from(x))
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        Dd(self.0 + rhs.0)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        Dd(self.0 - rhs.0)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        Dd(self.0 * rhs.0)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, rhs: f64) -> Dd {
        Dd(self.0 * Quad::from(rhs))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        Dd(self.0 / rhs.0)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, rhs: Dd) {
        *self = *self + rhs;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, rhs: Dd) {
        *self = *self - rhs;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, rhs: Dd) {
        *self = *self * rhs;
    }
}

impl Real for Dd {
    const EPSILON: f64 = 4.930380657631324e-32;

    fn from_f64(x: f64) -> Self {
        Dd::from(x)
    }
    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn sqrt(self) -> Self {
        Dd(self.0.sqrt())
    }
    fn exp(self) -> Self {
        Dd(self.0.exp())
    }
    fn ln(self) -> Self {
        Dd(self.0.ln())
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn powf(self, y: Self) -> Self {
        // exact for the half-integer powers tetrads are usually written with
        let twice = y.to_f64() * 2.0;
        if twice.fract() == 0.0 && twice.abs() < 64.0 && y == Dd::from(y.to_f64()) {
            let n = twice as i32;
            let half = self.sqrt().powi(n.rem_euclid(2));
            return self.powi(n.div_euclid(2)) * half;
        }
        (self.ln() * y).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: Dd, hi: f64, lo: f64, tol: f64) {
        let err = (x - Dd(Quad(hi, lo))).to_f64().abs();
        assert!(err <= tol * hi.abs(), "{x:?} vs ({hi}, {lo}): {err:e}");
    }

    // reference digits from a 50-digit evaluation
    #[test]
    fn trigonometry_to_double_double_accuracy() {
        let (s, c) = Dd::from(0.5).sin_cos();
        close(s, 0.479425538604203, 0.0, 1e-15);
        let one = s * s + c * c - Dd::one();
        assert!(one.to_f64().abs() < 1e-31, "{one:?}");
        for x in [0.1, 1.2, 2.9, 4.0, -3.3, 7.5] {
            let (s, c) = Dd::from(x).sin_cos();
            assert!((s.to_f64() - x.sin()).abs() < 1e-15);
            assert!((c.to_f64() - x.cos()).abs() < 1e-15);
            let pyth = s * s + c * c - Dd::one();
            assert!(pyth.to_f64().abs() < 1e-30, "{x}: {pyth:?}");
            // sin 2x = 2 sin x cos x
            let (s2, _) = (Dd::from(x) * 2.0).sin_cos();
            let dbl = s2 - s * c * 2.0;
            assert!(dbl.to_f64().abs() < 1e-30, "{x}: {dbl:?}");
        }
    }

    #[test]
    fn half_integer_powers() {
        let x = Dd::from(0.8);
        let p = x.powf(Dd::from(-1.5));
        let back = p * p * x * x * x - Dd::one();
        assert!(back.to_f64().abs() < 1e-30, "{back:?}");
        let q = x.powf(Dd::from(0.5));
        assert!((q * q - x).to_f64().abs() < 1e-31);
        let general = x.powf(Dd::from(0.3));
        assert!((general.to_f64() - 0.8f64.powf(0.3)).abs() < 1e-15);
    }

    #[test]
    fn third_is_exact_to_double_double() {
        let t = Dd::one() / Dd::from(3.0);
        assert!((t * 3.0 - Dd::one()).to_f64().abs() < 1e-31);
        assert!(t.lo() != 0.0);
    }
}
