//! Sparse multivariate polynomials over `GaussRat`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_complex::Complex64;

use crate::exact_linalg::GaussRat;

/// Exponent vector of a monomial.
pub trait Monomial: Ord + Clone + Debug {
    fn nvars(&self) -> usize;
    fn exp(&self, var: usize) -> u32;
    fn mul(&self, other: &Self) -> Self;
    /// Monomial with `var` exponent lowered by one; `None` if it is zero.
    fn lower(&self, var: usize) -> Option<Self>;
    fn raise(&self, var: usize) -> Self;

    fn eval(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for v in 0..self.nvars() {
            let e = self.exp(v);
            if e > 0 {
                acc *= point[v].powu(e);
            }
        }
        acc
    }
}

/// Two-variable monomial `μ^a μ̄^b`.
impl Monomial for [u32; 2] {
    fn nvars(&self) -> usize {
        2
    }
    fn exp(&self, var: usize) -> u32 {
        self[var]
    }
    fn mul(&self, o: &Self) -> Self {
        [self[0] + o[0], self[1] + o[1]]
    }
    fn lower(&self, var: usize) -> Option<Self> {
        let mut r = *self;
        if r[var] == 0 {
            return None;
        }
        r[var] -= 1;
        Some(r)
    }
    fn raise(&self, var: usize) -> Self {
        let mut r = *self;
        r[var] += 1;
        r
    }
}

/// General exponent vector with a fixed number of variables.
impl Monomial for Vec<u16> {
    fn nvars(&self) -> usize {
        self.len()
    }
    fn exp(&self, var: usize) -> u32 {
        self[var] as u32
    }
    fn mul(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| a + b).collect()
    }
    fn lower(&self, var: usize) -> Option<Self> {
        if self[var] == 0 {
            return None;
        }
        let mut r = self.clone();
        r[var] -= 1;
        Some(r)
    }
    fn raise(&self, var: usize) -> Self {
        let mut r = self.clone();
        r[var] += 1;
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<K: Monomial> {
    pub terms: BTreeMap<K, GaussRat>,
}

impl<K: Monomial> Default for Poly<K> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Monomial> Poly<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: K, c: GaussRat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: K, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, s: &GaussRat) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &o.terms {
            self.add_term(k.clone(), &(c * s));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &GaussRat::from_int(-1));
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussRat::from_int(-1))
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &K, s: &GaussRat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                r.add_term(k1.mul(k2), &(c1 * c2));
            }
        }
        r
    }

    pub fn pow(&self, one: &K, e: u32) -> Self {
        let mut acc = Poly::monomial(one.clone(), GaussRat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn deriv(&self, var: usize) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            let e = k.exp(var);
            if let Some(l) = k.lower(var) {
                r.add_term(l, &c.scale(&(e as i64).into()));
            }
        }
        r
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| c.to_c64() * k.eval(point))
            .sum()
    }

    pub fn max_exp(&self, var: usize) -> u32 {
        self.terms.keys().map(|k| k.exp(var)).max().unwrap_or(0)
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussRat) -> GaussRat) -> Self {
        let mut r = Self::zero();
        for (k, c) in &self.terms {
            r.add_term(k.clone(), &f(c));
        }
        r
    }
}

/// Polynomial in a fixed list of named variables.
pub type MPoly = Poly<Vec<u16>>;

pub fn mpoly_var(nvars: usize, v: usize) -> MPoly {
    let mut k = vec![0u16; nvars];
    k[v] = 1;
    MPoly::monomial(k, GaussRat::one())
}

pub fn mpoly_const(nvars: usize, c: GaussRat) -> MPoly {
    MPoly::monomial(vec![0u16; nvars], c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let x = mpoly_var(2, 0);
        let y = mpoly_var(2, 1);
        let p = x.mul(&x).add(&y.scale(&3.into()));
        let q = x.mul(&y).add(&mpoly_const(2, 2.into()));
        let lhs = p.mul(&q).deriv(0);
        let rhs = p.deriv(0).mul(&q).add(&p.mul(&q.deriv(0)));
        assert_eq!(lhs, rhs);
    }
}
