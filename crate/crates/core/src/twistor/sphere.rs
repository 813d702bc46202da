//! Functions on the twistor fibre in the chart `μ`: `P(μ, μ̄)/(1+μμ̄)ⁿ`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::exact_linalg::GaussRat;
use crate::poly::Poly;

pub type SpherePoly = Poly<[u32; 2]>;

/// `numer / (1+μμ̄)^den`, kept reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereScalar {
    numer: SpherePoly,
    den: u32,
}

fn one_plus_t() -> SpherePoly {
    let mut p = SpherePoly::zero();
    p.add_term([0, 0], &GaussRat::one());
    p.add_term([1, 1], &GaussRat::one());
    p
}

/// `P / (1+μμ̄)` if the division is exact.
fn divide_by_one_plus_t(p: &SpherePoly) -> Option<SpherePoly> {
    // Group by charge a−b; each class is a polynomial in t = μμ̄.
    let mut classes: BTreeMap<i64, BTreeMap<u32, GaussRat>> = BTreeMap::new();
    for (k, c) in &p.terms {
        let charge = k[0] as i64 - k[1] as i64;
        classes.entry(charge).or_default().insert(k[0].min(k[1]), c.clone());
    }
    let mut out = SpherePoly::zero();
    for (charge, coeffs) in classes {
        let deg = *coeffs.keys().next_back().unwrap();
        if deg == 0 {
            return None;
        }
        let c = |j: u32| coeffs.get(&j).cloned().unwrap_or_else(GaussRat::zero);
        // (1+t) Q = P:  q_{deg-1} = c_deg, q_{j-1} = c_j − q_j, and c_0 = q_0.
        let mut q = vec![GaussRat::zero(); deg as usize];
        q[deg as usize - 1] = c(deg);
        for j in (1..deg).rev() {
            q[j as usize - 1] = &c(j) - &q[j as usize];
        }
        if q[0] != c(0) {
            return None;
        }
        let base = [charge.max(0) as u32, (-charge).max(0) as u32];
        for (j, qj) in q.iter().enumerate() {
            out.add_term([base[0] + j as u32, base[1] + j as u32], qj);
        }
    }
    Some(out)
}

impl SphereScalar {
    pub fn new(numer: SpherePoly, den: u32) -> Self {
        let mut s = SphereScalar { numer, den };
        s.normalize();
        s
    }

    pub fn zero() -> Self {
        SphereScalar {
            numer: SpherePoly::zero(),
            den: 0,
        }
    }

    pub fn constant(c: GaussRat) -> Self {
        SphereScalar::new(SpherePoly::monomial([0, 0], c), 0)
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    /// `c μ^a μ̄^b / (1+μμ̄)^n`.
    pub fn monomial(c: GaussRat, a: u32, b: u32, n: u32) -> Self {
        SphereScalar::new(SpherePoly::monomial([a, b], c), n)
    }

    pub fn mu() -> Self {
        Self::monomial(GaussRat::one(), 1, 0, 0)
    }

    pub fn mubar() -> Self {
        Self::monomial(GaussRat::one(), 0, 1, 0)
    }

    /// `1 / (1+μμ̄)^n`.
    pub fn inv_d(n: u32) -> Self {
        Self::monomial(GaussRat::one(), 0, 0, n)
    }

    /// `μ / (1+μμ̄)`.
    pub fn f1() -> Self {
        Self::monomial(GaussRat::one(), 1, 0, 1)
    }

    /// `μ̄ / (1+μμ̄)`.
    pub fn f2() -> Self {
        Self::monomial(GaussRat::one(), 0, 1, 1)
    }

    /// `1 / (1+μμ̄)`.
    pub fn f3() -> Self {
        Self::inv_d(1)
    }

    pub fn numer(&self) -> &SpherePoly {
        &self.numer
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn normalize(&mut self) {
        if self.numer.is_zero() {
            self.den = 0;
            return;
        }
        while self.den > 0 {
            match divide_by_one_plus_t(&self.numer) {
                Some(q) => {
                    self.numer = q;
                    self.den -= 1;
                }
                None => break,
            }
        }
    }

    /// Numerator after raising the denominator power to `n ≥ den`.
    pub fn numer_at(&self, n: u32) -> SpherePoly {
        assert!(n >= self.den);
        let mut p = self.numer.clone();
        let d = one_plus_t();
        for _ in self.den..n {
            p = p.mul(&d);
        }
        p
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let n = self.den.max(o.den);
        SphereScalar::new(self.numer_at(n).add(&o.numer_at(n)), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        SphereScalar {
            numer: self.numer.neg(),
            den: self.den,
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SphereScalar {
            numer: self.numer.scale(c),
            den: self.den,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        SphereScalar::new(self.numer.mul(&o.numer), self.den + o.den)
    }

    /// Complex conjugation: swaps `μ ↔ μ̄` and conjugates coefficients.
    pub fn conj(&self) -> Self {
        let mut p = SpherePoly::zero();
        for (k, c) in &self.numer.terms {
            p.add_term([k[1], k[0]], &c.conj());
        }
        SphereScalar {
            numer: p,
            den: self.den,
        }
    }

    fn deriv(&self, var: usize) -> Self {
        // d(P/Dⁿ) = (P' D − n P D') / D^{n+1}, with D' = μ̄ (var 0) or μ (var 1).
        let dp = self.numer.deriv(var).mul(&one_plus_t());
        let dd = if var == 0 { [0, 1] } else { [1, 0] };
        let rest = self
            .numer
            .mul_monomial(&dd, &GaussRat::from_int(-(self.den as i64)));
        SphereScalar::new(dp.add(&rest), self.den + 1)
    }

    pub fn d_dmu(&self) -> Self {
        self.deriv(0)
    }

    pub fn d_dmubar(&self) -> Self {
        self.deriv(1)
    }

    pub fn eval(&self, mu: Complex64) -> Complex64 {
        let pt = [mu, mu.conj()];
        self.numer.eval(&pt) / (1.0 + mu.norm_sqr()).powi(self.den as i32)
    }

    /// Smoothness at `μ = ∞` after `μ = 1/ν`; with `as_dmubar_coeff` the
    /// factor `dμ̄ = −ν̄⁻² dν̄` is included.
    pub fn is_smooth_on_sphere(&self, as_dmubar_coeff: bool) -> bool {
        let extra = if as_dmubar_coeff { 2 } else { 0 };
        self.numer
            .terms
            .keys()
            .all(|k| k[0] <= self.den && k[1] + extra <= self.den)
    }

    /// Smoothness of `self · μ^{-twist}` at infinity, i.e. of the section of
    /// `O(twist)` whose trivialization over `μ ≠ ∞` is `self`.
    pub fn is_smooth_section(&self, twist: u32) -> bool {
        self.numer
            .terms
            .keys()
            .all(|k| k[0] <= self.den + twist && k[1] <= self.den)
    }

    /// Value at `μ = 0`.
    pub fn at_zero(&self) -> GaussRat {
        self.numer
            .terms
            .get(&[0, 0])
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }
}

impl fmt::Display for SphereScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in &self.numer.terms {
            let mut s = format!("({c})");
            if k[0] > 0 {
                s.push_str(&format!("·μ^{}", k[0]));
            }
            if k[1] > 0 {
                s.push_str(&format!("·μ̄^{}", k[1]));
            }
            parts.push(s);
        }
        write!(f, "[{}]", parts.join(" + "))?;
        if self.den > 0 {
            write!(f, "/(1+μμ̄)^{}", self.den)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_examples() {
        let g1 = SphereScalar::monomial(GaussRat::from_int(-1), 2, 0, 2);
        assert_eq!(SphereScalar::f1().d_dmubar(), g1);
        assert_eq!(SphereScalar::f2().d_dmubar(), SphereScalar::inv_d(2));
        assert_eq!(
            SphereScalar::f3().d_dmubar(),
            SphereScalar::monomial(GaussRat::from_int(-1), 1, 0, 2)
        );
    }

    #[test]
    fn reduction() {
        let d = SphereScalar::new(one_plus_t(), 2);
        assert_eq!(d, SphereScalar::inv_d(1));
        assert_eq!(SphereScalar::new(one_plus_t(), 1), SphereScalar::one());
        let s = SphereScalar::f1().add(&SphereScalar::f2());
        assert_eq!(s.den(), 1);
    }

    #[test]
    fn smoothness() {
        assert!(SphereScalar::f3().is_smooth_on_sphere(false));
        assert!(!SphereScalar::monomial(GaussRat::one(), 2, 0, 0).is_smooth_on_sphere(false));
        let g = SphereScalar::monomial(GaussRat::from_int(-1), 2, 0, 2);
        assert!(g.is_smooth_on_sphere(true));
        assert!(!SphereScalar::f3().is_smooth_on_sphere(true));
    }
}
