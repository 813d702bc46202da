//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact_linalg::{
    normalize_row, ExactMatrix, GaussRat, ParseRatError, Rat, Rref, SparseRow,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("m must be at least 1")]
    ZeroRank,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("bad algebra description: {0}")]
    BadDescription(String),
    #[error(transparent)]
    Parse(#[from] ParseRatError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgVector(pub Vec<GaussRat>);

impl AlgVector {
    pub fn zero(n: usize) -> Self {
        AlgVector(vec![GaussRat::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = GaussRat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &AlgVector) -> AlgVector {
        AlgVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &AlgVector) -> AlgVector {
        AlgVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &GaussRat) -> AlgVector {
        AlgVector(self.0.iter().map(|a| a * c).collect())
    }
}

/// Structure constants are stored for ordered pairs exactly as given, so a
/// table that violates antisymmetry can be represented and diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    consts: BTreeMap<(usize, usize), SparseRow>,
}

/// Result of a Jacobi/antisymmetry scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiCheck {
    Pass,
    /// `[e_i,e_j] + [e_j,e_i] != 0`.
    Antisymmetry(usize, usize),
    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] != 0`.
    Jacobi(usize, usize, usize),
}

impl LieAlgebra {
    /// Builds from entries `(i, j, k, c)` meaning `c_{ij}^k = c`; the
    /// `(j, i)` partner is filled in with the opposite sign.
    pub fn from_antisymmetric(
        labels: Vec<String>,
        entries: &[(usize, usize, usize, GaussRat)],
    ) -> Self {
        let mut raw = Vec::new();
        for (i, j, k, c) in entries {
            raw.push((*i, *j, *k, c.clone()));
            raw.push((*j, *i, *k, -c));
        }
        Self::from_raw(labels, &raw)
    }

    /// Builds from entries taken literally for the ordered pair `(i, j)`.
    pub fn from_raw(labels: Vec<String>, entries: &[(usize, usize, usize, GaussRat)]) -> Self {
        let n = labels.len();
        let mut tmp: BTreeMap<(usize, usize), Vec<(usize, GaussRat)>> = BTreeMap::new();
        for (i, j, k, c) in entries {
            assert!(*i < n && *j < n && *k < n, "structure constant index out of range");
            tmp.entry((*i, *j)).or_default().push((*k, c.clone()));
        }
        let consts = tmp
            .into_iter()
            .map(|(p, r)| (p, normalize_row(r)))
            .filter(|(_, r)| !r.is_empty())
            .collect();
        LieAlgebra { labels, consts }
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("T{i}")).collect();
        Self::from_raw(labels, &[])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Result<usize, LieError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| LieError::UnknownLabel(label.to_string()))
    }

    pub fn basis(&self, label: &str) -> Result<AlgVector, LieError> {
        Ok(AlgVector::basis(self.dim(), self.index(label)?))
    }

    /// Structure constants of `[e_i, e_j]` as a sparse row over `k`.
    pub fn constants(&self, i: usize, j: usize) -> &[(usize, GaussRat)] {
        self.consts.get(&(i, j)).map_or(&[], |r| r.as_slice())
    }

    pub fn nonzero_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &SparseRow)> {
        self.consts.iter()
    }

    pub fn bracket(&self, v: &AlgVector, w: &AlgVector) -> Result<AlgVector, LieError> {
        for x in [v, w] {
            if x.dim() != self.dim() {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim(),
                    got: x.dim(),
                });
            }
        }
        let mut out = AlgVector::zero(self.dim());
        for ((i, j), row) in &self.consts {
            if v.0[*i].is_zero() || w.0[*j].is_zero() {
                continue;
            }
            let c = &v.0[*i] * &w.0[*j];
            for (k, s) in row {
                out.0[*k] += &(&c * s);
            }
        }
        Ok(out)
    }

    fn bracket_basis(&self, i: usize, j: usize) -> AlgVector {
        let mut out = AlgVector::zero(self.dim());
        for (k, s) in self.constants(i, j) {
            out.0[*k] = s.clone();
        }
        out
    }

    pub fn check_antisymmetry(&self) -> JacobiCheck {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let s = self.bracket_basis(i, j).add(&self.bracket_basis(j, i));
                if !s.is_zero() {
                    return JacobiCheck::Antisymmetry(i, j);
                }
            }
        }
        JacobiCheck::Pass
    }

    /// Brute-force scan over all ordered basis triples with the bracket as
    /// stored; reports the first failing triple.
    pub fn check_jacobi(&self) -> JacobiCheck {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let eij = self.bracket_basis(i, j);
                for k in 0..n {
                    let ei = AlgVector::basis(n, i);
                    let ej = AlgVector::basis(n, j);
                    let ek = AlgVector::basis(n, k);
                    let t1 = self.bracket(&ei, &self.bracket_basis(j, k)).unwrap();
                    let t2 = self.bracket(&ej, &self.bracket_basis(k, i)).unwrap();
                    let t3 = self.bracket(&ek, &eij).unwrap();
                    if !t1.add(&t2).add(&t3).is_zero() {
                        return JacobiCheck::Jacobi(i, j, k);
                    }
                }
            }
        }
        JacobiCheck::Pass
    }

    /// Matrix of `ad_v` restricted to nothing: rows `(w, k)`, columns `v_i`,
    /// entry `c_{i w}^k`; its kernel is the center.
    fn adjoint_stack(&self) -> ExactMatrix {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n * n);
        for w in 0..n {
            for k in 0..n {
                let mut r = Vec::new();
                for i in 0..n {
                    for (kk, s) in self.constants(i, w) {
                        if *kk == k {
                            r.push((i, s.clone()));
                        }
                    }
                }
                rows.push(r);
            }
        }
        ExactMatrix::from_sparse_rows(n, rows)
    }

    pub fn center_subspace(&self) -> Vec<AlgVector> {
        self.adjoint_stack()
            .rref()
            .kernel_basis()
            .into_iter()
            .map(AlgVector)
            .collect()
    }

    /// Echelon basis of the span of all basis brackets.
    pub fn derived_ideal(&self) -> Vec<AlgVector> {
        let n = self.dim();
        let mut e = Rref::new(n);
        for row in self.consts.values() {
            e.push(row.clone());
        }
        e.pivot_rows()
            .map(|(_, r)| {
                let mut v = AlgVector::zero(n);
                for (k, s) in r {
                    v.0[*k] = s.clone();
                }
                v
            })
            .collect()
    }

    /// Index of the unknown `D_{rc}` (so `D e_c = Σ_r D_{rc} e_r`).
    pub fn der_index(&self, r: usize, c: usize) -> usize {
        r * self.dim() + c
    }

    /// Linear equations on the `n²` entries of `D` expressing
    /// `D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]` for all ordered pairs.
    pub fn derivation_system(&self) -> Vec<SparseRow> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut by_l: BTreeMap<usize, Vec<(usize, GaussRat)>> = BTreeMap::new();
                for (k, c) in self.constants(i, j) {
                    for l in 0..n {
                        by_l.entry(l)
                            .or_default()
                            .push((self.der_index(l, *k), c.clone()));
                    }
                }
                for r in 0..n {
                    for (l, c) in self.constants(r, j) {
                        by_l.entry(*l)
                            .or_default()
                            .push((self.der_index(r, i), -c));
                    }
                    for (l, c) in self.constants(i, r) {
                        by_l.entry(*l)
                            .or_default()
                            .push((self.der_index(r, j), -c));
                    }
                }
                for (_, r) in by_l {
                    let r = normalize_row(r);
                    if !r.is_empty() {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    /// Equations `D∘I = I∘D` on the entries of `D`.
    pub fn commute_system(&self, i_mat: &ExactMatrix) -> Vec<SparseRow> {
        let n = self.dim();
        let mut out = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let mut row = Vec::new();
                for k in 0..n {
                    let ikc = i_mat.get(k, c);
                    if !ikc.is_zero() {
                        row.push((self.der_index(r, k), ikc));
                    }
                    let irk = i_mat.get(r, k);
                    if !irk.is_zero() {
                        row.push((self.der_index(k, c), -irk));
                    }
                }
                let row = normalize_row(row);
                if !row.is_empty() {
                    out.push(row);
                }
            }
        }
        out
    }

    /// Derivation algebra as the kernel of the assembled system plus any
    /// extra equations; each basis vector is an `n×n` matrix.
    pub fn derivation_basis(&self, commute_with: &[ExactMatrix], extra: &[SparseRow]) -> Vec<ExactMatrix> {
        let n = self.dim();
        let mut e = Rref::new(n * n);
        for r in self.derivation_system() {
            e.push(r);
        }
        for m in commute_with {
            for r in self.commute_system(m) {
                e.push(r);
            }
        }
        for r in extra {
            e.push(r.clone());
        }
        e.kernel_basis()
            .into_iter()
            .map(|v| {
                let rows = (0..n)
                    .map(|r| (0..n).map(|c| v[self.der_index(r, c)].clone()).collect())
                    .collect();
                ExactMatrix::from_dense(rows)
            })
            .collect()
    }

    pub fn derivation_dimension(&self, commute_with: &[ExactMatrix], extra: &[SparseRow]) -> usize {
        let n = self.dim();
        let mut e = Rref::new(n * n);
        for r in self.derivation_system() {
            e.push(r);
        }
        for m in commute_with {
            for r in self.commute_system(m) {
                e.push(r);
            }
        }
        for r in extra {
            e.push(r.clone());
        }
        n * n - e.rank()
    }
}

/// Index of each basis element in the fixed ordering
/// `(Z, E1, E2, E3, X1..X2m, Y1..Y2m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisenbergBasis {
    pub m: usize,
}

impl HeisenbergBasis {
    pub fn dim(&self) -> usize {
        4 * self.m + 4
    }
    pub fn z(&self) -> usize {
        0
    }
    /// `E_i` for `i` in 1..=3.
    pub fn e(&self, i: usize) -> usize {
        i
    }
    /// `X_j` for `j` in 1..=2m.
    pub fn x(&self, j: usize) -> usize {
        3 + j
    }
    /// `Y_j` for `j` in 1..=2m.
    pub fn y(&self, j: usize) -> usize {
        3 + 2 * self.m + j
    }
    pub fn labels(&self) -> Vec<String> {
        let mut l = vec!["Z".to_string(), "E1".into(), "E2".into(), "E3".into()];
        l.extend((1..=2 * self.m).map(|j| format!("X{j}")));
        l.extend((1..=2 * self.m).map(|j| format!("Y{j}")));
        l
    }
}

/// `h_{4m+1} ⊕ t³` with `[Y_j, X_j] = 4Z` as the only nonzero brackets.
pub fn make_heisenberg_ext(m: usize) -> Result<LieAlgebra, LieError> {
    if m == 0 {
        return Err(LieError::ZeroRank);
    }
    let b = HeisenbergBasis { m };
    let entries: Vec<_> = (1..=2 * m)
        .map(|j| (b.y(j), b.x(j), b.z(), GaussRat::from_int(4)))
        .collect();
    Ok(LieAlgebra::from_antisymmetric(b.labels(), &entries))
}

/// The Heisenberg algebra `h_{4m+1}` alone, basis `(Z, X.., Y..)`.
pub fn make_heisenberg(m: usize) -> Result<LieAlgebra, LieError> {
    if m == 0 {
        return Err(LieError::ZeroRank);
    }
    let mut labels = vec!["Z".to_string()];
    labels.extend((1..=2 * m).map(|j| format!("X{j}")));
    labels.extend((1..=2 * m).map(|j| format!("Y{j}")));
    let entries: Vec<_> = (1..=2 * m)
        .map(|j| (2 * m + j, j, 0, GaussRat::from_int(4)))
        .collect();
    Ok(LieAlgebra::from_antisymmetric(labels, &entries))
}

/// JSON description used by the command-line generic-algebra entry point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDescription {
    pub labels: Vec<String>,
    pub constants: Vec<ConstantEntry>,
    /// When true (the default) each `[i, j]` entry also sets `[j, i]`.
    #[serde(default = "default_true")]
    pub antisymmetrize: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub i: String,
    pub j: String,
    pub k: String,
    pub re: String,
    #[serde(default = "zero_str")]
    pub im: String,
}

fn zero_str() -> String {
    "0".into()
}

impl AlgebraDescription {
    pub fn build(&self) -> Result<LieAlgebra, LieError> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &self.labels {
            if !seen.insert(l) {
                return Err(LieError::BadDescription(format!("duplicate label {l:?}")));
            }
        }
        let idx = |s: &str| {
            self.labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| LieError::UnknownLabel(s.to_string()))
        };
        let mut entries = Vec::new();
        for e in &self.constants {
            let c = GaussRat::new(e.re.parse::<Rat>()?, e.im.parse::<Rat>()?);
            entries.push((idx(&e.i)?, idx(&e.j)?, idx(&e.k)?, c));
        }
        Ok(if self.antisymmetrize {
            LieAlgebra::from_antisymmetric(self.labels.clone(), &entries)
        } else {
            LieAlgebra::from_raw(self.labels.clone(), &entries)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_brackets() {
        let a = make_heisenberg_ext(1).unwrap();
        let y1 = a.basis("Y1").unwrap();
        let x1 = a.basis("X1").unwrap();
        let z = a.basis("Z").unwrap();
        assert_eq!(a.bracket(&y1, &x1).unwrap(), z.scale(&4.into()));
        let x2 = a.basis("X2").unwrap();
        assert!(a.bracket(&x1, &x2).unwrap().is_zero());
        assert_eq!(make_heisenberg_ext(2).unwrap().dim(), 12);
        assert_eq!(make_heisenberg_ext(0), Err(LieError::ZeroRank));
    }

    #[test]
    fn bracket_examples() {
        let a = make_heisenberg_ext(2).unwrap();
        let v = a.basis("Y1").unwrap().add(&a.basis("Y2").unwrap());
        let x1 = a.basis("X1").unwrap();
        assert_eq!(a.bracket(&v, &x1).unwrap(), a.basis("Z").unwrap().scale(&4.into()));
        assert!(a.bracket(&v, &v).unwrap().is_zero());
        let z = a.basis("Z").unwrap();
        for l in a.labels() {
            assert!(a.bracket(&z, &a.basis(l).unwrap()).unwrap().is_zero());
        }
        assert!(a.bracket(&z, &AlgVector::zero(3)).is_err());
    }

    #[test]
    fn center_and_derived() {
        for m in 1..=3 {
            let a = make_heisenberg_ext(m).unwrap();
            let c = a.center_subspace();
            assert_eq!(c.len(), 4);
            for v in &c {
                assert!(v.0[4..].iter().all(|x| x.is_zero()));
            }
            let d = a.derived_ideal();
            assert_eq!(d.len(), 1);
            assert_eq!(d[0], AlgVector::basis(a.dim(), 0));
        }
        assert_eq!(LieAlgebra::abelian(4).center_subspace().len(), 4);
        assert!(LieAlgebra::abelian(4).derived_ideal().is_empty());
        let h = make_heisenberg(1).unwrap();
        assert_eq!(h.center_subspace(), vec![AlgVector::basis(5, 0)]);
    }

    #[test]
    fn derivation_counts() {
        assert_eq!(make_heisenberg_ext(1).unwrap().derivation_dimension(&[], &[]), 39);
        assert_eq!(make_heisenberg_ext(2).unwrap().derivation_dimension(&[], &[]), 81);
        assert_eq!(LieAlgebra::abelian(4).derivation_dimension(&[], &[]), 16);
    }
}
