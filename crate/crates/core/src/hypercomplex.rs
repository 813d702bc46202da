//! The invariant hypercomplex structure on `h_{4m+1} ⊕ t³` and its Obata
//! connection on the left-invariant frame.

use crate::exact_linalg::{ExactMatrix, GaussRat, Rat};
use crate::lie_core::{AlgVector, HeisenbergBasis, LieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HyperError {
    #[error("endomorphism does not square to minus the identity")]
    NotAlmostComplex,
    #[error("structure is not integrable on the algebra (pair {0}, {1})")]
    NotIntegrable(usize, usize),
    #[error("direction vector is not a unit vector")]
    NotUnit,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Square matrix acting on the algebra; column `c` holds the image of `e_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endo(pub ExactMatrix);

impl Endo {
    pub fn identity(n: usize) -> Self {
        Endo(ExactMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, v: &AlgVector) -> AlgVector {
        AlgVector(self.0.mul_vec(&v.0).expect("endomorphism dimension"))
    }

    pub fn compose(&self, o: &Endo) -> Endo {
        Endo(self.0.mul(&o.0).expect("endomorphism dimension"))
    }

    pub fn add(&self, o: &Endo) -> Endo {
        Endo(self.0.add(&o.0))
    }

    pub fn scale(&self, c: &GaussRat) -> Endo {
        Endo(self.0.scale(c))
    }

    pub fn neg(&self) -> Endo {
        self.scale(&GaussRat::from_int(-1))
    }

    pub fn is_almost_complex(&self) -> bool {
        self.compose(self) == Endo::identity(self.dim()).neg()
    }

    /// Builds a complex structure from pairs `J e_src = sign · e_dst`; the
    /// partner `J e_dst = −sign · e_src` is implied by `J² = −1`.
    fn from_pairs(n: usize, pairs: &[(usize, usize, i64)]) -> Endo {
        let mut m = ExactMatrix::zeros(n, n);
        for &(s, d, sign) in pairs {
            m.set(d, s, GaussRat::from_int(sign));
            m.set(s, d, GaussRat::from_int(-sign));
        }
        Endo(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperTriple {
    pub i1: Endo,
    pub i2: Endo,
    pub i3: Endo,
}

/// The tabulated triple in the basis `(Z, E1, E2, E3, X.., Y..)`.
pub fn standard_triple(m: usize) -> HyperTriple {
    let b = HeisenbergBasis { m };
    let n = b.dim();
    let mut p1 = vec![(b.z(), b.e(1), 1), (b.e(2), b.e(3), 1)];
    let mut p2 = vec![(b.z(), b.e(2), 1), (b.e(1), b.e(3), -1)];
    let mut p3 = vec![(b.z(), b.e(3), 1), (b.e(1), b.e(2), 1)];
    for a in 1..=m {
        let (xo, xe, yo, ye) = (b.x(2 * a - 1), b.x(2 * a), b.y(2 * a - 1), b.y(2 * a));
        p1.push((xo, xe, 1));
        p1.push((yo, ye, 1));
        p2.push((xo, yo, 1));
        p2.push((xe, ye, -1));
        p3.push((xo, ye, 1));
        p3.push((xe, yo, 1));
    }
    HyperTriple {
        i1: Endo::from_pairs(n, &p1),
        i2: Endo::from_pairs(n, &p2),
        i3: Endo::from_pairs(n, &p3),
    }
}

impl HyperTriple {
    pub fn dim(&self) -> usize {
        self.i1.dim()
    }

    pub fn get(&self, a: usize) -> &Endo {
        match a {
            1 => &self.i1,
            2 => &self.i2,
            3 => &self.i3,
            _ => panic!("triple index {a} out of range"),
        }
    }

    /// `a₁I₁ + a₂I₂ + a₃I₃` for a unit vector with exact entries.
    pub fn direction(&self, a: &[GaussRat; 3]) -> Result<Endo, HyperError> {
        let norm = a.iter().fold(GaussRat::zero(), |acc, x| &acc + &(x * x));
        if !norm.is_one() {
            return Err(HyperError::NotUnit);
        }
        Ok(self
            .i1
            .scale(&a[0])
            .add(&self.i2.scale(&a[1]))
            .add(&self.i3.scale(&a[2])))
    }

    pub fn conjugate(&self, p: &Endo, p_inv: &Endo) -> HyperTriple {
        let c = |e: &Endo| p.compose(e).compose(p_inv);
        HyperTriple {
            i1: c(&self.i1),
            i2: c(&self.i2),
            i3: c(&self.i3),
        }
    }
}

/// Identities checked by [`check_quaternion_relations`], in order.
pub const QUATERNION_IDENTITIES: [&str; 5] = [
    "I1^2 = -1",
    "I2^2 = -1",
    "I3^2 = -1",
    "I1 I2 = I3",
    "I2 I1 = -I3",
];

/// `Ok(())` or the first failing identity from [`QUATERNION_IDENTITIES`].
pub fn check_quaternion_relations(t: &HyperTriple) -> Result<(), &'static str> {
    let minus_one = Endo::identity(t.dim()).neg();
    let checks = [
        t.i1.compose(&t.i1) == minus_one,
        t.i2.compose(&t.i2) == minus_one,
        t.i3.compose(&t.i3) == minus_one,
        t.i1.compose(&t.i2) == t.i3,
        t.i2.compose(&t.i1) == t.i3.neg(),
    ];
    match checks.iter().position(|ok| !ok) {
        Some(k) => Err(QUATERNION_IDENTITIES[k]),
        None => Ok(()),
    }
}

/// `N_J(v,w) = [Jv,Jw] − [v,w] − J[Jv,w] − J[v,Jw]`.
pub fn nijenhuis_invariant(
    a: &LieAlgebra,
    j: &Endo,
    v: &AlgVector,
    w: &AlgVector,
) -> Result<AlgVector, HyperError> {
    if j.dim() != a.dim() {
        return Err(HyperError::DimensionMismatch {
            expected: a.dim(),
            got: j.dim(),
        });
    }
    if !j.is_almost_complex() {
        return Err(HyperError::NotAlmostComplex);
    }
    let br = |x: &AlgVector, y: &AlgVector| a.bracket(x, y).expect("algebra dimension");
    let jv = j.apply(v);
    let jw = j.apply(w);
    Ok(br(&jv, &jw)
        .sub(&br(v, w))
        .sub(&j.apply(&br(&jv, w)))
        .sub(&j.apply(&br(v, &jw))))
}

/// First basis pair on which `N_J` is nonzero.
pub fn nijenhuis_failure(a: &LieAlgebra, j: &Endo) -> Result<Option<(usize, usize)>, HyperError> {
    let n = a.dim();
    for p in 0..n {
        for q in p + 1..n {
            let r = nijenhuis_invariant(a, j, &AlgVector::basis(n, p), &AlgVector::basis(n, q))?;
            if !r.is_zero() {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

/// First basis pair and index where `[I_a X, I_a Y] = [X, Y]` fails.
pub fn abelian_failure(a: &LieAlgebra, t: &HyperTriple) -> Option<(usize, usize, usize)> {
    let n = a.dim();
    for k in 1..=3 {
        let ik = t.get(k);
        for p in 0..n {
            for q in p + 1..n {
                let (x, y) = (AlgVector::basis(n, p), AlgVector::basis(n, q));
                let lhs = a.bracket(&ik.apply(&x), &ik.apply(&y)).unwrap();
                if lhs != a.bracket(&x, &y).unwrap() {
                    return Some((k, p, q));
                }
            }
        }
    }
    None
}

/// `∇_{e_i} e_j = Σ_k Γ_{ij}^k e_k`, stored as `gamma[i][j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionCoeffs {
    pub gamma: Vec<Vec<AlgVector>>,
}

impl ConnectionCoeffs {
    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    /// `∇_v w` for constant-coefficient vectors.
    pub fn covariant(&self, v: &AlgVector, w: &AlgVector) -> AlgVector {
        let n = self.dim();
        let mut out = AlgVector::zero(n);
        for i in 0..n {
            if v.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if w.0[j].is_zero() {
                    continue;
                }
                out = out.add(&self.gamma[i][j].scale(&(&v.0[i] * &w.0[j])));
            }
        }
        out
    }
}

fn half() -> GaussRat {
    GaussRat::real(Rat::new(1, 2))
}

/// `½[X,Y] + ½ Σ_i I_i[I_i X, Y]`, valid for abelian structures.
pub fn obata_reduced(a: &LieAlgebra, t: &HyperTriple, x: &AlgVector, y: &AlgVector) -> AlgVector {
    let br = |u: &AlgVector, w: &AlgVector| a.bracket(u, w).unwrap();
    let mut r = br(x, y).scale(&half());
    for k in 1..=3 {
        let ik = t.get(k);
        r = r.add(&ik.apply(&br(&ik.apply(x), y)).scale(&half()));
    }
    r
}

/// The general Obata formula for a hypercomplex Lie algebra.
pub fn obata_full(a: &LieAlgebra, t: &HyperTriple, x: &AlgVector, y: &AlgVector) -> AlgVector {
    let br = |u: &AlgVector, w: &AlgVector| a.bracket(u, w).unwrap();
    let twelfth = GaussRat::from_frac(1, 12);
    let sixth = GaussRat::from_frac(1, 6);
    let mut r = br(x, y).scale(&half());
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let (ii, ij, ik) = (t.get(i), t.get(j), t.get(k));
        let s = br(&ij.apply(x), &ik.apply(y)).add(&br(&ij.apply(y), &ik.apply(x)));
        r = r.add(&ii.apply(&s).scale(&twelfth));
    }
    for i in 1..=3 {
        let ii = t.get(i);
        let s = br(&ii.apply(x), y).add(&br(&ii.apply(y), x));
        r = r.add(&ii.apply(&s).scale(&sixth));
    }
    r
}

pub fn obata_connection(a: &LieAlgebra, t: &HyperTriple) -> Result<ConnectionCoeffs, HyperError> {
    for k in 1..=3 {
        if let Some((p, q)) = nijenhuis_failure(a, t.get(k))? {
            return Err(HyperError::NotIntegrable(p, q));
        }
    }
    if let Some((_, p, q)) = abelian_failure(a, t) {
        return Err(HyperError::NotIntegrable(p, q));
    }
    let n = a.dim();
    let gamma = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| obata_reduced(a, t, &AlgVector::basis(n, i), &AlgVector::basis(n, j)))
                .collect()
        })
        .collect();
    Ok(ConnectionCoeffs { gamma })
}

/// First pair `(i, j)` where `∇_i e_j − ∇_j e_i − [e_i, e_j] ≠ 0`.
pub fn torsion_failure(a: &LieAlgebra, c: &ConnectionCoeffs) -> Option<(usize, usize)> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let t = c.gamma[i][j]
                .sub(&c.gamma[j][i])
                .sub(&a.bracket(&AlgVector::basis(n, i), &AlgVector::basis(n, j)).unwrap());
            if !t.is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// First `(k, i, j)` where `(∇_{e_i} I_k) e_j ≠ 0`.
pub fn parallel_failure(t: &HyperTriple, c: &ConnectionCoeffs) -> Option<(usize, usize, usize)> {
    let n = c.dim();
    for k in 1..=3 {
        let ik = t.get(k);
        for i in 0..n {
            let ei = AlgVector::basis(n, i);
            for j in 0..n {
                let ej = AlgVector::basis(n, j);
                let lhs = c.covariant(&ei, &ik.apply(&ej));
                let rhs = ik.apply(&c.gamma[i][j]);
                if lhs != rhs {
                    return Some((k, i, j));
                }
            }
        }
    }
    None
}

/// First basis pair where the reduced and general formulas differ.
pub fn obata_formula_mismatch(a: &LieAlgebra, t: &HyperTriple) -> Option<(usize, usize)> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (AlgVector::basis(n, i), AlgVector::basis(n, j));
            if obata_reduced(a, t, &x, &y) != obata_full(a, t, &x, &y) {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::make_heisenberg_ext;

    #[test]
    fn table_entries() {
        let b = HeisenbergBasis { m: 1 };
        let t = standard_triple(1);
        let n = b.dim();
        let img = |e: &Endo, i: usize| e.apply(&AlgVector::basis(n, i));
        assert_eq!(img(&t.i1, b.x(1)), AlgVector::basis(n, b.x(2)));
        assert_eq!(img(&t.i2, b.x(2)), AlgVector::basis(n, b.y(2)).scale(&(-1).into()));
        for m in 1..=3 {
            let b = HeisenbergBasis { m };
            let t = standard_triple(m);
            let n = b.dim();
            assert_eq!(t.i3.apply(&AlgVector::basis(n, 0)), AlgVector::basis(n, b.e(3)));
            assert_eq!(t.i1.apply(&AlgVector::basis(n, b.e(2))), AlgVector::basis(n, b.e(3)));
            assert_eq!(
                t.i2.apply(&AlgVector::basis(n, b.e(1))),
                AlgVector::basis(n, b.e(3)).scale(&(-1).into())
            );
            assert_eq!(t.i3.apply(&AlgVector::basis(n, b.e(1))), AlgVector::basis(n, b.e(2)));
        }
    }

    #[test]
    fn relations() {
        for m in 1..=4 {
            assert_eq!(check_quaternion_relations(&standard_triple(m)), Ok(()));
        }
        let t = standard_triple(1);
        let bad = HyperTriple {
            i1: t.i1.clone(),
            i2: t.i1.clone(),
            i3: t.i1.clone(),
        };
        assert_eq!(check_quaternion_relations(&bad), Err("I1 I2 = I3"));
    }

    #[test]
    fn connection_example() {
        let a = make_heisenberg_ext(1).unwrap();
        let t = standard_triple(1);
        let c = obata_connection(&a, &t).unwrap();
        let b = HeisenbergBasis { m: 1 };
        assert_eq!(
            c.gamma[b.x(1)][b.y(1)],
            AlgVector::basis(8, 0).scale(&(-2).into())
        );
        for j in 0..8 {
            assert!(c.gamma[0][j].is_zero());
        }
    }
}
