//! Polynomial calculus in the global coordinates `(x, y, z, e)` of
//! `H_{4m+1} × R³`.
//!
//! Variables are ordered `x1..x2m, y1..y2m, z, e1, e2, e3`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::exact_linalg::{GaussRat, Rat};
use crate::hypercomplex::{Endo, HyperTriple};
use crate::lie_core::HeisenbergBasis;
use crate::poly::{mpoly_const, mpoly_var, MPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoordError {
    #[error("point has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Variable layout for a given `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coords {
    pub m: usize,
}

impl Coords {
    pub fn nvars(&self) -> usize {
        4 * self.m + 4
    }
    pub fn x(&self, j: usize) -> usize {
        j - 1
    }
    pub fn y(&self, j: usize) -> usize {
        2 * self.m + j - 1
    }
    pub fn z(&self) -> usize {
        4 * self.m
    }
    pub fn e(&self, i: usize) -> usize {
        4 * self.m + i
    }
    pub fn var(&self, v: usize) -> MPoly {
        mpoly_var(self.nvars(), v)
    }
    pub fn constant(&self, c: GaussRat) -> MPoly {
        mpoly_const(self.nvars(), c)
    }
    pub fn zero(&self) -> MPoly {
        MPoly::zero()
    }
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=2 * self.m).map(|j| format!("x{j}")).collect();
        v.extend((1..=2 * self.m).map(|j| format!("y{j}")));
        v.push("z".into());
        v.extend((1..=3).map(|i| format!("e{i}")));
        v
    }
    /// Coordinate direction dual to the algebra basis element `b` in the
    /// ordering `(Z, E1, E2, E3, X.., Y..)`.
    pub fn direction_of_basis(&self, b: usize) -> usize {
        let hb = HeisenbergBasis { m: self.m };
        if b == hb.z() {
            self.z()
        } else if b <= 3 {
            self.e(b)
        } else if b <= 3 + 2 * self.m {
            self.x(b - 3)
        } else {
            self.y(b - 3 - 2 * self.m)
        }
    }
}

/// Group law on `H_{4m+1}` (points `(x, y, z)`), optionally with the `R³`
/// factor appended and multiplied additively.
pub fn group_mul(m: usize, p: &[Rat], q: &[Rat]) -> Result<Vec<Rat>, CoordError> {
    let n = 4 * m + 1;
    for v in [p, q] {
        if v.len() != n && v.len() != n + 3 {
            return Err(CoordError::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    if p.len() != q.len() {
        return Err(CoordError::LengthMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    let mut out: Vec<Rat> = p.iter().zip(q).map(|(a, b)| a + b).collect();
    let two = Rat::from_int(2);
    for j in 0..2 * m {
        let (x, y) = (&p[j], &p[2 * m + j]);
        let (xp, yp) = (&q[j], &q[2 * m + j]);
        let t = &(x * yp) - &(y * xp);
        out[4 * m] = &out[4 * m] - &(&two * &t);
    }
    Ok(out)
}

/// Same law on polynomial coordinates (used for symbolic pushforwards).
pub fn group_mul_poly(m: usize, p: &[MPoly], q: &[MPoly]) -> Vec<MPoly> {
    let mut out: Vec<MPoly> = p.iter().zip(q).map(|(a, b)| a.add(b)).collect();
    let two = GaussRat::from_int(2);
    for j in 0..2 * m {
        let t = p[j].mul(&q[2 * m + j]).sub(&p[2 * m + j].mul(&q[j]));
        out[4 * m] = out[4 * m].sub(&t.scale(&two));
    }
    out
}

/// Vector field with a polynomial coefficient per coordinate direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyField {
    pub coeffs: Vec<MPoly>,
}

impl PolyField {
    pub fn zero(c: Coords) -> Self {
        PolyField {
            coeffs: vec![MPoly::zero(); c.nvars()],
        }
    }

    pub fn coordinate(c: Coords, v: usize) -> Self {
        let mut f = Self::zero(c);
        f.coeffs[v] = c.constant(GaussRat::one());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        PolyField {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        PolyField {
            coeffs: self.coeffs.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &MPoly) -> Self {
        PolyField {
            coeffs: self.coeffs.iter().map(|a| a.mul(f)).collect(),
        }
    }

    /// Derivative of a function along the field.
    pub fn apply(&self, f: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (v, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                r.add_assign(&c.mul(&f.deriv(v)));
            }
        }
        r
    }

    pub fn eval(&self, point: &[f64]) -> Vec<Complex64> {
        let pt: Vec<Complex64> = point.iter().map(|x| Complex64::new(*x, 0.0)).collect();
        self.coeffs.iter().map(|c| c.eval(&pt)).collect()
    }
}

pub fn field_bracket(v: &PolyField, w: &PolyField) -> PolyField {
    PolyField {
        coeffs: v
            .coeffs
            .iter()
            .zip(&w.coeffs)
            .map(|(vk, wk)| v.apply(wk).sub(&w.apply(vk)))
            .collect(),
    }
}

/// Left-invariant fields in the algebra basis order `(Z, E1..E3, X.., Y..)`.
pub fn left_invariant_fields(m: usize) -> Vec<PolyField> {
    let c = Coords { m };
    let two = GaussRat::from_int(2);
    let mut out = vec![PolyField::coordinate(c, c.z())];
    for i in 1..=3 {
        out.push(PolyField::coordinate(c, c.e(i)));
    }
    for j in 1..=2 * m {
        let mut f = PolyField::coordinate(c, c.x(j));
        f.coeffs[c.z()] = c.var(c.y(j)).scale(&two);
        out.push(f);
    }
    for j in 1..=2 * m {
        let mut f = PolyField::coordinate(c, c.y(j));
        f.coeffs[c.z()] = c.var(c.x(j)).scale(&(-&two));
        out.push(f);
    }
    out
}

/// Differential form with polynomial coefficients, keyed by sorted index
/// sets of coordinate differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyForm {
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, MPoly>,
}

/// Sign and sorted index list of `dx_v ∧ dx_I`, or `None` if `v ∈ I`.
fn insert_index(v: usize, idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    if idx.contains(&v) {
        return None;
    }
    let pos = idx.iter().filter(|&&i| i < v).count();
    let mut out = idx.to_vec();
    out.insert(pos, v);
    Some((if pos % 2 == 0 { 1 } else { -1 }, out))
}

impl PolyForm {
    pub fn zero(degree: usize) -> Self {
        PolyForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(f: MPoly) -> Self {
        let mut w = Self::zero(0);
        w.add_term(vec![], &f);
        w
    }

    pub fn one_form(coeffs: &[(usize, MPoly)]) -> Self {
        let mut w = Self::zero(1);
        for (v, f) in coeffs {
            w.add_term(vec![*v], f);
        }
        w
    }

    pub fn differential(v: usize, nvars: usize) -> Self {
        let mut w = Self::zero(1);
        w.add_term(vec![v], &mpoly_const(nvars, GaussRat::one()));
        w
    }

    pub fn add_term(&mut self, idx: Vec<usize>, f: &MPoly) {
        debug_assert_eq!(idx.len(), self.degree);
        if f.is_zero() {
            return;
        }
        let e = self.terms.entry(idx.clone()).or_default();
        e.add_assign(f);
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree);
        let mut r = self.clone();
        for (k, f) in &o.terms {
            r.add_term(k.clone(), f);
        }
        r
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        let mut r = Self::zero(self.degree);
        for (k, f) in &self.terms {
            r.add_term(k.clone(), &f.scale(s));
        }
        r
    }

    pub fn mul_poly(&self, g: &MPoly) -> Self {
        let mut r = Self::zero(self.degree);
        for (k, f) in &self.terms {
            r.add_term(k.clone(), &f.mul(g));
        }
        r
    }

    pub fn coeff(&self, idx: &[usize]) -> MPoly {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.degree + o.degree);
        for (a, f) in &self.terms {
            for (b, g) in &o.terms {
                let mut idx = b.clone();
                let mut sign = 1i64;
                let mut ok = true;
                for &v in a.iter().rev() {
                    match insert_index(v, &idx) {
                        Some((s, n)) => {
                            sign *= s;
                            idx = n;
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    r.add_term(idx, &f.mul(g).scale(&sign.into()));
                }
            }
        }
        r
    }

    /// Evaluates a 1- or 2-form on fields, giving a polynomial.
    pub fn evaluate(&self, fields: &[&PolyField]) -> MPoly {
        assert_eq!(fields.len(), self.degree);
        if self.degree == 0 {
            return self.coeff(&[]);
        }
        let mut r = MPoly::zero();
        for (idx, f) in &self.terms {
            let det = match self.degree {
                1 => fields[0].coeffs[idx[0]].clone(),
                2 => fields[0].coeffs[idx[0]]
                    .mul(&fields[1].coeffs[idx[1]])
                    .sub(&fields[0].coeffs[idx[1]].mul(&fields[1].coeffs[idx[0]])),
                _ => unimplemented!("evaluation of forms of degree > 2"),
            };
            r.add_assign(&f.mul(&det));
        }
        r
    }

    pub fn eval(&self, point: &[f64]) -> BTreeMap<Vec<usize>, Complex64> {
        let pt: Vec<Complex64> = point.iter().map(|x| Complex64::new(*x, 0.0)).collect();
        self.terms
            .iter()
            .map(|(k, f)| (k.clone(), f.eval(&pt)))
            .filter(|(_, v)| v.norm() > 0.0)
            .collect()
    }
}

pub fn ext_d(w: &PolyForm) -> PolyForm {
    let mut r = PolyForm::zero(w.degree + 1);
    for (idx, f) in &w.terms {
        let nv = f.terms.keys().next().map_or(0, |k| k.len());
        for v in 0..nv {
            let df = f.deriv(v);
            if df.is_zero() {
                continue;
            }
            if let Some((s, n)) = insert_index(v, idx) {
                r.add_term(n, &df.scale(&s.into()));
            }
        }
    }
    r
}

/// `θ = dz − 2 Σ (y_i dx_i − x_i dy_i)`.
pub fn theta(m: usize) -> PolyForm {
    let c = Coords { m };
    let two = GaussRat::from_int(2);
    let mut t = vec![(c.z(), c.constant(GaussRat::one()))];
    for j in 1..=2 * m {
        t.push((c.x(j), c.var(c.y(j)).scale(&(-&two))));
        t.push((c.y(j), c.var(c.x(j)).scale(&two)));
    }
    PolyForm::one_form(&t)
}

/// Invariant coframe dual to [`left_invariant_fields`], in the same order:
/// `θ, de1..de3, dx.., dy..`.
pub fn invariant_coframe(m: usize) -> Vec<PolyForm> {
    let c = Coords { m };
    let n = c.nvars();
    let mut out = vec![theta(m)];
    for i in 1..=3 {
        out.push(PolyForm::differential(c.e(i), n));
    }
    for j in 1..=2 * m {
        out.push(PolyForm::differential(c.x(j), n));
    }
    for j in 1..=2 * m {
        out.push(PolyForm::differential(c.y(j), n));
    }
    out
}

/// Coefficients of a 1-form in the invariant coframe (polynomial entries).
pub fn to_invariant_coframe(m: usize, w: &PolyForm) -> Vec<MPoly> {
    assert_eq!(w.degree, 1);
    let c = Coords { m };
    let hb = HeisenbergBasis { m };
    let two = GaussRat::from_int(2);
    let cz = w.coeff(&[c.z()]);
    let mut out = vec![MPoly::zero(); hb.dim()];
    out[hb.z()] = cz.clone();
    for i in 1..=3 {
        out[hb.e(i)] = w.coeff(&[c.e(i)]);
    }
    for j in 1..=2 * m {
        out[hb.x(j)] = w.coeff(&[c.x(j)]).add(&cz.mul(&c.var(c.y(j))).scale(&two));
        out[hb.y(j)] = w.coeff(&[c.y(j)]).sub(&cz.mul(&c.var(c.x(j))).scale(&two));
    }
    out
}

pub fn from_invariant_coframe(m: usize, coeffs: &[MPoly]) -> PolyForm {
    let frame = invariant_coframe(m);
    let mut r = PolyForm::zero(1);
    for (f, w) in coeffs.iter().zip(&frame) {
        if !f.is_zero() {
            r = r.add(&w.mul_poly(f));
        }
    }
    r
}

/// Action of an almost complex structure on 1-forms by `ω ↦ ω ∘ J⁻¹`,
/// with `J⁻¹ = −J`.
pub fn endo_on_oneform(m: usize, j: &Endo, w: &PolyForm) -> PolyForm {
    let inv = to_invariant_coframe(m, w);
    let n = inv.len();
    let mut out = vec![MPoly::zero(); n];
    for (c, f) in inv.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for r in 0..n {
            // (J⁻¹)ᵀ_{rc} = −J_{cr}
            let s = j.0.get(c, r);
            if !s.is_zero() {
                out[r].add_assign(&f.scale(&(-&s)));
            }
        }
    }
    from_invariant_coframe(m, &out)
}

pub fn triple_on_oneforms(t: &HyperTriple, k: usize, m: usize, w: &PolyForm) -> PolyForm {
    endo_on_oneform(m, t.get(k), w)
}

/// The functions `f1, f2, f3` completing `z` to quaternionic coordinates.
pub fn quaternionic_functions(m: usize) -> [MPoly; 3] {
    let c = Coords { m };
    let two = GaussRat::from_int(2);
    let v = |i| c.var(i);
    let mut f1 = v(c.e(1));
    let mut f2 = v(c.e(2));
    let mut f3 = v(c.e(3));
    for a in 1..=m {
        let (xo, xe, yo, ye) = (
            v(c.x(2 * a - 1)),
            v(c.x(2 * a)),
            v(c.y(2 * a - 1)),
            v(c.y(2 * a)),
        );
        f1 = f1.add(&yo.mul(&xe).sub(&xo.mul(&ye)).scale(&two));
        f2 = f2.add(&yo.mul(&yo).add(&xo.mul(&xo)).sub(&ye.mul(&ye)).sub(&xe.mul(&xe)));
        f3 = f3.add(&yo.mul(&ye).add(&xo.mul(&xe)).scale(&two));
    }
    [f1, f2, f3]
}

/// `I_k dz = d f_k` for `k = 1, 2, 3`, as exact form identities.
pub fn verify_quaternionic_coordinates(m: usize) -> [bool; 3] {
    let t = crate::hypercomplex::standard_triple(m);
    let c = Coords { m };
    let dz = PolyForm::differential(c.z(), c.nvars());
    let f = quaternionic_functions(m);
    let mut out = [false; 3];
    for k in 1..=3 {
        let lhs = triple_on_oneforms(&t, k, m, &dz);
        let rhs = ext_d(&PolyForm::function(f[k - 1].clone()));
        out[k - 1] = lhs == rhs;
    }
    out
}

/// Symbolic differential of left multiplication: the image at `p` of the
/// coordinate frame at the identity, one field per coordinate direction of
/// `H_{4m+1}` (in the order `x.., y.., z`).
pub fn left_translation_pushforward(m: usize) -> Vec<PolyField> {
    let c = Coords { m };
    let n = 4 * m + 1;
    let big = 2 * n;
    let p: Vec<MPoly> = (0..n).map(|i| mpoly_var(big, i)).collect();
    let q: Vec<MPoly> = (0..n).map(|i| mpoly_var(big, n + i)).collect();
    let prod = group_mul_poly(m, &p, &q);
    let restrict = |f: &MPoly| -> MPoly {
        let mut r = MPoly::zero();
        for (k, v) in &f.terms {
            if k[n..].iter().all(|e| *e == 0) {
                let mut kk = vec![0u16; c.nvars()];
                kk[..n].copy_from_slice(&k[..n]);
                r.add_term(kk, v);
            }
        }
        r
    };
    (0..n)
        .map(|dir| {
            let mut f = PolyField::zero(c);
            for (out_coord, comp) in prod.iter().enumerate() {
                f.coeffs[out_coord] = restrict(&comp.deriv(n + dir));
            }
            f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn group_law_examples() {
        let p = vec![r(1), r(0), r(0), r(0), r(0)];
        let q = vec![r(0), r(0), r(1), r(0), r(0)];
        let pq = group_mul(1, &p, &q).unwrap();
        assert_eq!(pq, vec![r(1), r(0), r(1), r(0), r(-2)]);
        let e = vec![r(0); 5];
        assert_eq!(group_mul(1, &p, &e).unwrap(), p);
        assert!(group_mul(1, &p, &q[..4]).is_err());
    }

    #[test]
    fn field_examples() {
        let c = Coords { m: 1 };
        let f = left_invariant_fields(1);
        let hb = HeisenbergBasis { m: 1 };
        let x1 = &f[hb.x(1)];
        let y1 = &f[hb.y(1)];
        assert_eq!(x1.coeffs[c.z()], c.var(c.y(1)).scale(&2.into()));
        assert_eq!(field_bracket(y1, x1), f[hb.z()].scale(&4.into()));
        assert_eq!(field_bracket(x1, y1), f[hb.z()].scale(&(-4).into()));
        assert!(field_bracket(x1, &f[hb.e(2)]).is_zero());
        assert!(field_bracket(x1, x1).is_zero());
        let a = PolyField::coordinate(c, c.z()).mul_poly(&c.var(c.y(1)));
        let b = PolyField::coordinate(c, c.z()).mul_poly(&c.var(c.x(1)));
        assert!(field_bracket(&a, &b).is_zero());
        let v = x1.eval(&[0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(v[c.x(1)].re, 1.0);
        assert_eq!(v[c.z()].re, 6.0);
    }

    #[test]
    fn forms() {
        let m = 1;
        let c = Coords { m };
        let n = c.nvars();
        let dth = ext_d(&theta(m));
        let mut expect = PolyForm::zero(2);
        for j in 1..=2 {
            expect.add_term(vec![c.x(j), c.y(j)], &c.constant(4.into()));
        }
        assert_eq!(dth, expect);
        assert!(ext_d(&PolyForm::differential(c.z(), n)).is_zero());
        let w = PolyForm::one_form(&[(c.y(1), c.var(c.x(1)))]);
        let mut dxdy = PolyForm::zero(2);
        dxdy.add_term(vec![c.x(1), c.y(1)], &c.constant(1.into()));
        assert_eq!(ext_d(&w), dxdy);
        assert!(ext_d(&ext_d(&theta(m))).is_zero());
    }

    #[test]
    fn oneform_action() {
        let m = 1;
        let c = Coords { m };
        let n = c.nvars();
        let t = crate::hypercomplex::standard_triple(m);
        let dx1 = PolyForm::differential(c.x(1), n);
        let dx2 = PolyForm::differential(c.x(2), n);
        assert_eq!(triple_on_oneforms(&t, 1, m, &dx1), dx2);
        let th = theta(m);
        assert_eq!(
            triple_on_oneforms(&t, 1, m, &th),
            PolyForm::differential(c.e(1), n)
        );
        let twice = triple_on_oneforms(&t, 1, m, &triple_on_oneforms(&t, 1, m, &dx1));
        assert_eq!(twice, dx1.scale(&(-1).into()));
    }

    #[test]
    fn quaternionic_coordinates() {
        for m in 1..=3 {
            assert_eq!(verify_quaternionic_coordinates(m), [true; 3]);
        }
    }
}
