//! Exact Gaussian rationals `a + b i`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rat::{ParseRatError, Rat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }

    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(Rat::from_int(n), Rat::zero())
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        GaussRat::new(Rat::new(n, d), Rat::zero())
    }

    pub fn real(r: Rat) -> Self {
        GaussRat::new(r, Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.im.is_zero() {
            return GaussRat::real(self.re.recip());
        }
        let n = self.norm_sqr().recip();
        GaussRat::new(&self.re * &n, -(&self.im * &n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat::new(&self.re * r, &self.im * r)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Parses a pair of rational strings `("p/q", "r/s")`.
    pub fn parse_parts(re: &str, im: &str) -> Result<Self, ParseRatError> {
        Ok(GaussRat::new(re.parse()?, im.parse()?))
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussRat::real(&self.re * &rhs.re),
            (true, false) => GaussRat::new(&self.re * &rhs.re, &self.re * &rhs.im),
            (false, true) => GaussRat::new(&self.re * &rhs.re, &self.im * &rhs.re),
            (false, false) => GaussRat::new(
                &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
                &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
            ),
        }
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inv()
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $f(self, rhs: GaussRat) -> GaussRat {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $f(self, rhs: &'a GaussRat) -> GaussRat {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::real(r)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})i", self.im),
            (false, false) => write!(f, "{}+({})i", self.re, self.im),
        }
    }
}

/// Serialized as `{"re": "p/q", "im": "r/s"}`.
#[derive(Serialize, Deserialize)]
struct GaussRatRepr {
    re: String,
    #[serde(default = "zero_string")]
    im: String,
}

fn zero_string() -> String {
    "0".to_string()
}

impl Serialize for GaussRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussRatRepr {
            re: self.re.to_string(),
            im: self.im.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GaussRatRepr::deserialize(d)?;
        GaussRat::parse_parts(&r.re, &r.im).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = GaussRat::new(Rat::new(1, 2), Rat::new(-3, 4));
        let b = GaussRat::new(Rat::new(2, 3), Rat::new(5, 1));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv(), GaussRat::one());
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
        assert_eq!((&a * &a.conj()).im, Rat::zero());
    }

    #[test]
    fn serde_roundtrip() {
        let a = GaussRat::new(Rat::new(7, 3), Rat::new(-1, 5));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"re":"7/3","im":"-1/5"}"#);
        let b: GaussRat = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
