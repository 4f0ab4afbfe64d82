//! Scalars of the quaternion skew field.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Squared norms below this are treated as zero divisors.
pub const EPS_ZERO: f64 = 1e-12;

/// A quaternion `w + x i + y j + z k`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest absolute value among the three imaginary components.
    pub fn imag_max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn is_real(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    /// Multiplicative inverse `conj(q) / |q|^2`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 < EPS_ZERO {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj() * (1.0 / n2))
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Distance `|self - other|`.
    pub fn dist(self, other: Quaternion) -> f64 {
        (self - other).norm()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, b: Quaternion) -> Quaternion {
        Quaternion::new(self.w + b.w, self.x + b.x, self.y + b.y, self.z + b.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, b: Quaternion) -> Quaternion {
        Quaternion::new(self.w - b.w, self.x - b.x, self.y - b.y, self.z - b.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, b: Quaternion) {
        *self = *self + b;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, b: Quaternion) {
        *self = *self - b;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, b: Quaternion) {
        *self = *self * b;
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |acc, q| acc + q)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.w)?;
        for (v, unit) in [(self.x, "i"), (self.y, "j"), (self.z, "k")] {
            if v != 0.0 {
                if v < 0.0 {
                    write!(f, "-{}{}", -v, unit)?;
                } else {
                    write!(f, "+{}{}", v, unit)?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(4)?;
        for v in self.to_array() {
            t.serialize_element(&v)?;
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;

        impl<'de> Visitor<'de> for QVisitor {
            type Value = Quaternion;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array [w, x, y, z] of four finite numbers")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Quaternion, A::Error> {
                let mut c = [0.0; 4];
                for (n, slot) in c.iter_mut().enumerate() {
                    *slot = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(n, &self))?;
                }
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(5, &self));
                }
                let q = Quaternion::from_array(c);
                if !q.is_finite() {
                    return Err(de::Error::custom("quaternion components must be finite"));
                }
                Ok(q)
            }
        }

        deserializer.deserialize_tuple(4, QVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    #[test]
    fn unit_table() {
        assert_eq!(I * J, K);
        assert_eq!(J * I, -K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        for u in [I, J, K] {
            assert_eq!(u * u, -ONE);
        }
        assert_eq!(I * J * K, -ONE);
    }

    #[test]
    fn distributive_expansion() {
        // (1+i)(1+j) = 1 + j + i + ij = 1 + i + j + k
        assert_eq!((ONE + I) * (ONE + J), Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conjugation() {
        let q = Quaternion::new(1.0, 2.0, -1.0, 0.0);
        assert_eq!(q.conj(), Quaternion::new(1.0, -2.0, 1.0, 0.0));
        assert_eq!(Quaternion::real(5.0).conj(), Quaternion::real(5.0));
        assert_eq!(I.conj() * I, ONE);
    }

    #[test]
    fn inverses() {
        assert_eq!(Quaternion::real(2.0).inv().unwrap(), Quaternion::real(0.5));
        assert_eq!(I.inv().unwrap(), -I);
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(q.inv().unwrap(), Quaternion::new(0.25, -0.25, -0.25, -0.25));
        assert!(matches!(Quaternion::ZERO.inv(), Err(Error::ZeroDivisor)));
        assert!(matches!(Quaternion::real(1e-7).inv(), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn json_array_form() {
        let q = Quaternion::new(1.0, -2.5, 0.0, 3.0);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[1.0,-2.5,0.0,3.0]");
        let back: Quaternion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Quaternion>("[1,2,3]").is_err());
        assert!(serde_json::from_str::<Quaternion>("[1,2,3,4,5]").is_err());
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from_array)
    }

    proptest! {
        #[test]
        fn conj_reverses_products(a in quat(), b in quat()) {
            let lhs = (a * b).conj();
            let rhs = b.conj() * a.conj();
            prop_assert!(lhs.dist(rhs) <= 1e-12 * (1.0 + lhs.norm()));
        }

        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            let lhs = (a * b).norm();
            let rhs = a.norm() * b.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn associativity(a in quat(), b in quat(), c in quat()) {
            let lhs = (a * b) * c;
            let rhs = a * (b * c);
            prop_assert!(lhs.dist(rhs) <= 1e-12 * (1.0 + lhs.norm()));
        }

        #[test]
        fn reals_commute(r in -10.0f64..10.0, q in quat()) {
            let r = Quaternion::real(r);
            prop_assert_eq!(r * q, q * r);
        }

        #[test]
        fn inverse_is_two_sided(q in quat()) {
            prop_assume!(q.norm_sqr() > 1e-3);
            let inv = q.inv().unwrap();
            prop_assert!((q * inv).dist(ONE) < 1e-12);
            prop_assert!((inv * q).dist(ONE) < 1e-12);
        }
    }
}
