//! Automorphisms of `h_{4m+1} ⊕ R³`: the block forms of Lie and
//! hypercomplex automorphisms and the dimension counts of the groups.
//!
//! Matrices act on column vectors in the basis `(Z, E1, E2, E3, X1..X2m,
//! Y1..Y2m)`. The quaternionic block structure groups the `(X, Y)` part into
//! the four-dimensional blocks `(X_{2a−1}, X_{2a}, Y_{2a−1}, Y_{2a})`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exact_linalg::{normalize_row, rank, ExactMatrix, GaussRat, Rat, Rref, SparseRow};
use crate::hypercomplex::HyperTriple;
use crate::lie_core::{make_heisenberg_ext, AlgVector, HeisenbergBasis, LieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutError {
    #[error("matrix must be {expected}×{expected}, got {rows}×{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("bad entry at ({0}, {1}): {2}")]
    Entry(usize, usize, String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Square matrix of size `4m + 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutMatrix {
    pub m: usize,
    pub mat: ExactMatrix,
}

#[derive(Serialize, Deserialize)]
struct AutMatrixJson {
    m: usize,
    rows: Vec<Vec<String>>,
}

impl AutMatrix {
    pub fn new(m: usize, mat: ExactMatrix) -> Result<Self, AutError> {
        let n = 4 * m + 4;
        if mat.rows() != n || mat.cols() != n {
            return Err(AutError::Shape {
                expected: n,
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        Ok(AutMatrix { m, mat })
    }

    pub fn identity(m: usize) -> Self {
        AutMatrix {
            m,
            mat: ExactMatrix::identity(4 * m + 4),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> GaussRat {
        self.mat.get(r, c)
    }

    /// `{"m": .., "rows": [["p/q", ..], ..]}` with real rational entries.
    pub fn from_json(s: &str) -> Result<Self, AutError> {
        let j: AutMatrixJson = serde_json::from_str(s).map_err(|e| AutError::Json(e.to_string()))?;
        let mut rows = Vec::with_capacity(j.rows.len());
        for (r, row) in j.rows.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (c, x) in row.iter().enumerate() {
                let v: Rat = x.trim().parse().map_err(|e: crate::exact_linalg::ParseRatError| AutError::Entry(r, c, e.0))?;
                out.push(GaussRat::real(v));
            }
            if out.len() != j.rows.len() {
                return Err(AutError::Shape {
                    expected: 4 * j.m + 4,
                    rows: j.rows.len(),
                    cols: out.len(),
                });
            }
            rows.push(out);
        }
        if rows.is_empty() {
            return Err(AutError::Shape {
                expected: 4 * j.m + 4,
                rows: 0,
                cols: 0,
            });
        }
        AutMatrix::new(j.m, ExactMatrix::from_dense(rows))
    }

    pub fn to_json(&self) -> String {
        let rows = self
            .mat
            .to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_string()).collect())
            .collect();
        serde_json::to_string(&AutMatrixJson { m: self.m, rows }).expect("matrix serialization")
    }

    pub fn mul(&self, o: &AutMatrix) -> AutMatrix {
        AutMatrix {
            m: self.m,
            mat: self.mat.mul(&o.mat).expect("same size"),
        }
    }

    fn is_invertible(&self) -> bool {
        rank(&self.mat) == self.mat.rows()
    }
}

/// `ω` on the `(X, Y)` part, defined by `[V, V'] = −2 ω(V, V') Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticData {
    pub omega: ExactMatrix,
}

impl SymplecticData {
    pub fn from_algebra(a: &LieAlgebra, m: usize) -> Self {
        let n = 4 * m;
        let mut omega = ExactMatrix::zeros(n, n);
        let minus_half = GaussRat::from_frac(-1, 2);
        for p in 0..n {
            for q in 0..n {
                for (k, c) in a.constants(p + 4, q + 4) {
                    if *k == 0 {
                        omega.set(p, q, c * &minus_half);
                    }
                }
            }
        }
        SymplecticData { omega }
    }

    /// `ω(Cv, Cv')` for `v, v'` running over the basis.
    pub fn pullback(&self, c: &ExactMatrix) -> ExactMatrix {
        c.transpose().mul(&self.omega).and_then(|x| x.mul(c)).expect("sizes")
    }
}

/// Full-basis indices of the four-dimensional block `a`.
pub fn quaternion_block(m: usize, a: usize) -> [usize; 4] {
    let b = HeisenbergBasis { m };
    [b.x(2 * a - 1), b.x(2 * a), b.y(2 * a - 1), b.y(2 * a)]
}

/// `(parameter, sign)` at position `(r, c)` of
/// `[[a,b,c,d],[−b,a,−d,c],[−c,d,a,−b],[−d,−c,b,a]]`.
pub const B_PATTERN: [[(usize, i64); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, -1), (0, 1), (3, -1), (2, 1)],
    [(2, -1), (3, 1), (0, 1), (1, -1)],
    [(3, -1), (2, -1), (1, 1), (0, 1)],
];

pub fn b_pattern(p: &[GaussRat; 4]) -> [[GaussRat; 4]; 4] {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let (k, s) = B_PATTERN[r][c];
            &p[k] * &GaussRat::from_int(s)
        })
    })
}

fn matches_pattern(block: &[[GaussRat; 4]; 4], rows: std::ops::Range<usize>) -> bool {
    // parameters read off the first checked row
    let r0 = rows.start;
    let mut p: [Option<GaussRat>; 4] = Default::default();
    for c in 0..4 {
        let (k, s) = B_PATTERN[r0][c];
        p[k] = Some(&block[r0][c] * &GaussRat::from_int(s));
    }
    rows.into_iter().all(|r| {
        (0..4).all(|c| {
            let (k, s) = B_PATTERN[r][c];
            block[r][c] == p[k].as_ref().unwrap() * &GaussRat::from_int(s)
        })
    })
}

fn sub_block(mat: &ExactMatrix, rows: &[usize; 4], cols: &[usize; 4]) -> [[GaussRat; 4]; 4] {
    std::array::from_fn(|r| std::array::from_fn(|c| mat.get(rows[r], cols[c])))
}

/// `M[v, w] = [Mv, Mw]` on all basis pairs, with `M` invertible.
pub fn is_lie_automorphism(m: &AutMatrix, a: &LieAlgebra) -> bool {
    let n = a.dim();
    if m.mat.rows() != n || m.mat.cols() != n || !m.is_invertible() {
        return false;
    }
    let col = |i: usize| AlgVector((0..n).map(|r| m.get(r, i)).collect());
    let apply = |v: &AlgVector| AlgVector(m.mat.mul_vec(&v.0).expect("size"));
    for i in 0..n {
        for j in i + 1..n {
            let lhs = apply(&a.bracket(&AlgVector::basis(n, i), &AlgVector::basis(n, j)).expect("dims"));
            let rhs = a.bracket(&col(i), &col(j)).expect("dims");
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Block-triangular shape preserving the centre, `Z ↦ S₀ Z`, and
/// `ω(Cv, Cv') = S₀ ω(v, v')` for the `(X, Y)` block `C`. Returns `S₀` when
/// all conditions hold.
pub fn is_prop2_form(m: &AutMatrix) -> Option<GaussRat> {
    let n = 4 * m.m + 4;
    if m.mat.rows() != n || !m.is_invertible() {
        return None;
    }
    let s0 = m.get(0, 0);
    if s0.is_zero() || (1..n).any(|r| !m.get(r, 0).is_zero()) {
        return None;
    }
    for r in 4..n {
        for c in 0..4 {
            if !m.get(r, c).is_zero() {
                return None;
            }
        }
    }
    let alg = make_heisenberg_ext(m.m).expect("m ≥ 1");
    let w = SymplecticData::from_algebra(&alg, m.m);
    let c = ExactMatrix::from_dense((4..n).map(|r| (4..n).map(|c| m.get(r, c)).collect()).collect());
    w.pullback(&c).same_entries(&w.omega.scale(&s0)).then_some(s0)
}

/// `M I_a = I_a M` for `a = 1, 2, 3`.
pub fn is_hypercomplex_automorphism(m: &AutMatrix, t: &HyperTriple) -> bool {
    (1..=3).all(|a| {
        let i = &t.get(a).0;
        match (m.mat.mul(i), i.mul(&m.mat)) {
            (Ok(x), Ok(y)) => x.same_entries(&y),
            _ => false,
        }
    })
}

/// The quaternionic block form: scalar centre block `sI`, zero
/// lower-left block, quaternion-linear `(X, Y)` blocks with
/// `ω(Cv, Cv') = s ω(v, v')`, and strip blocks `(Z, E)×(X, Y)` whose `E`-rows
/// follow the pattern while the `Z`-row is free.
pub fn is_prop3_form(m: &AutMatrix) -> bool {
    let k = m.m;
    let Some(s) = is_prop2_form(m) else {
        return false;
    };
    for r in 0..4 {
        for c in 0..4 {
            let want = if r == c { s.clone() } else { GaussRat::zero() };
            if m.get(r, c) != want {
                return false;
            }
        }
    }
    let center = [0, 1, 2, 3];
    for a in 1..=k {
        let cols = quaternion_block(k, a);
        if !matches_pattern(&sub_block(&m.mat, &center, &cols), 1..4) {
            return false;
        }
        for b in 1..=k {
            let rows = quaternion_block(k, b);
            if !matches_pattern(&sub_block(&m.mat, &rows, &cols), 0..4) {
                return false;
            }
        }
    }
    true
}

/// Linear equations on an infinitesimal generator `D` (entries indexed
/// `r·n + c`) for the quaternionic block form.
pub fn prop3_tangent_system(m: usize) -> Vec<SparseRow> {
    let n = 4 * m + 4;
    let idx = |r: usize, c: usize| r * n + c;
    let one = GaussRat::one;
    let mut eqs: Vec<SparseRow> = Vec::new();
    let mut push = |row: Vec<(usize, GaussRat)>| {
        let r = normalize_row(row);
        if !r.is_empty() {
            eqs.push(r);
        }
    };
    // centre block sI
    for r in 0..4 {
        for c in 0..4 {
            if r != c {
                push(vec![(idx(r, c), one())]);
            } else if r > 0 {
                push(vec![(idx(r, r), one()), (idx(0, 0), -one())]);
            }
        }
    }
    // lower-left block
    for r in 4..n {
        for c in 0..4 {
            push(vec![(idx(r, c), one())]);
        }
    }
    // quaternion-linear (X, Y) blocks
    for a in 1..=m {
        for b in 1..=m {
            let (rows, cols) = (quaternion_block(m, b), quaternion_block(m, a));
            pattern_equations(&rows, &cols, 0..4, idx, &mut push);
        }
    }
    // strip E-rows
    for a in 1..=m {
        pattern_equations(&[0, 1, 2, 3], &quaternion_block(m, a), 1..4, idx, &mut push);
    }
    // ω(Dv, v') + ω(v, Dv') = D_ZZ ω(v, v')
    let alg = make_heisenberg_ext(m).expect("m ≥ 1");
    let w = SymplecticData::from_algebra(&alg, m).omega;
    for p in 0..4 * m {
        for q in 0..4 * m {
            let mut row = Vec::new();
            for k in 0..4 * m {
                let wkq = w.get(k, q);
                if !wkq.is_zero() {
                    row.push((idx(k + 4, p + 4), wkq));
                }
                let wpk = w.get(p, k);
                if !wpk.is_zero() {
                    row.push((idx(k + 4, q + 4), wpk));
                }
            }
            let wpq = w.get(p, q);
            if !wpq.is_zero() {
                row.push((idx(0, 0), -wpq));
            }
            push(row);
        }
    }
    eqs
}

fn pattern_equations(
    rows: &[usize; 4],
    cols: &[usize; 4],
    which: std::ops::Range<usize>,
    idx: impl Fn(usize, usize) -> usize,
    push: &mut impl FnMut(Vec<(usize, GaussRat)>),
) {
    for param in 0..4 {
        let mut slots = Vec::new();
        for r in which.clone() {
            for c in 0..4 {
                let (k, s) = B_PATTERN[r][c];
                if k == param {
                    slots.push((idx(rows[r], cols[c]), GaussRat::from_int(s)));
                }
            }
        }
        for w in slots.windows(2) {
            push(vec![(w[0].0, w[0].1.clone()), (w[1].0, -&w[1].1)]);
        }
    }
}

/// `(dim Aut, dim of the hypercomplex form, difference)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupDimensions {
    pub dim_g: usize,
    pub dim_h: usize,
    pub effective: usize,
}

pub fn group_dimensions(m: usize) -> GroupDimensions {
    let alg = make_heisenberg_ext(m).expect("m ≥ 1");
    let dim_g = alg.derivation_dimension(&[], &[]);
    let n = alg.dim();
    let mut e = Rref::new(n * n);
    for r in prop3_tangent_system(m) {
        e.push(r);
    }
    let dim_h = n * n - e.rank();
    GroupDimensions {
        dim_g,
        dim_h,
        effective: dim_g - dim_h,
    }
}

/// Dimension of the derivations commuting with the whole triple.
pub fn hypercomplex_derivation_dimension(m: usize, t: &HyperTriple) -> usize {
    let alg = make_heisenberg_ext(m).expect("m ≥ 1");
    alg.derivation_dimension(&[t.i1.0.clone(), t.i2.0.clone(), t.i3.0.clone()], &[])
}

fn small_rat(rng: &mut impl Rng) -> GaussRat {
    GaussRat::real(Rat::new(rng.gen_range(-3i64..=3), rng.gen_range(1..=2)))
}

fn nonzero_rat(rng: &mut impl Rng) -> GaussRat {
    loop {
        let x = small_rat(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// One random elementary Lie automorphism of block-triangular form.
pub fn random_elementary(m: usize, rng: &mut impl Rng) -> AutMatrix {
    let b = HeisenbergBasis { m };
    let n = b.dim();
    let mut mat = ExactMatrix::identity(n);
    match rng.gen_range(0..5) {
        0 => {
            // Z ↦ sZ, Y ↦ sY
            let s = nonzero_rat(rng);
            mat.set(0, 0, s.clone());
            for j in 1..=2 * m {
                mat.set(b.y(j), b.y(j), s.clone());
            }
        }
        1 => {
            // symplectic transvection v ↦ v + r ω(u, v) u
            let alg = make_heisenberg_ext(m).expect("m ≥ 1");
            let w = SymplecticData::from_algebra(&alg, m).omega;
            let u: Vec<GaussRat> = (0..4 * m).map(|_| GaussRat::from_int(rng.gen_range(-1..=1))).collect();
            let r = small_rat(rng);
            for col in 0..4 * m {
                let mut wu = GaussRat::zero();
                for k in 0..4 * m {
                    wu += &(&u[k] * &w.get(k, col));
                }
                for row in 0..4 * m {
                    let add = &(&r * &wu) * &u[row];
                    let cur = mat.get(row + 4, col + 4);
                    mat.set(row + 4, col + 4, &cur + &add);
                }
            }
        }
        2 => {
            // mixing of E_a inside the centre
            let src = rng.gen_range(1..=3);
            let dst = rng.gen_range(0..=3);
            if dst != src {
                mat.set(dst, src, small_rat(rng));
            } else {
                mat.set(src, src, nonzero_rat(rng));
            }
        }
        3 => {
            // strip: X_j or Y_j picks up a central component
            let col = rng.gen_range(4..n);
            mat.set(rng.gen_range(0..4), col, small_rat(rng));
        }
        _ => {
            // X_j ↦ Y_j, Y_j ↦ −X_j
            let j = rng.gen_range(1..=2 * m);
            let (x, y) = (b.x(j), b.y(j));
            mat.set(x, x, GaussRat::zero());
            mat.set(y, y, GaussRat::zero());
            mat.set(y, x, GaussRat::one());
            mat.set(x, y, GaussRat::from_int(-1));
        }
    }
    AutMatrix { m, mat }
}

/// Product of `factors` random elementary automorphisms.
pub fn random_prop2(m: usize, factors: usize, rng: &mut impl Rng) -> AutMatrix {
    let mut acc = AutMatrix::identity(m);
    for _ in 0..factors {
        acc = acc.mul(&random_elementary(m, rng));
    }
    acc
}

/// Random matrix of the quaternionic block form: each `(X, Y)` block is
/// `±t` times one of the pattern units `a, b, c, d`, the centre is `±t²·I`
/// accordingly, and the strip has a free `Z`-row.
pub fn random_prop3(m: usize, rng: &mut impl Rng) -> AutMatrix {
    let n = 4 * m + 4;
    let t = nonzero_rat(rng);
    // units b and d of the pattern reverse ω, a and c preserve it
    let unit = rng.gen_range(0..4);
    let s = if unit % 2 == 0 { &t * &t } else { -(&t * &t) };
    let mut mat = ExactMatrix::zeros(n, n);
    for r in 0..4 {
        mat.set(r, r, s.clone());
    }
    for a in 1..=m {
        let q = quaternion_block(m, a);
        let mut p = [GaussRat::zero(), GaussRat::zero(), GaussRat::zero(), GaussRat::zero()];
        p[unit] = if rng.gen_bool(0.5) { t.clone() } else { -t.clone() };
        let blk = b_pattern(&p);
        for r in 0..4 {
            for c in 0..4 {
                mat.set(q[r], q[c], blk[r][c].clone());
            }
        }
        let strip: [GaussRat; 4] = std::array::from_fn(|_| small_rat(rng));
        let sb = b_pattern(&strip);
        for c in 0..4 {
            mat.set(0, q[c], small_rat(rng));
            for r in 1..4 {
                mat.set(r, q[c], sb[r][c].clone());
            }
        }
    }
    AutMatrix { m, mat }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::standard_triple;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(m: usize, f: impl Fn(usize) -> i64) -> AutMatrix {
        let n = 4 * m + 4;
        let mut mat = ExactMatrix::zeros(n, n);
        for i in 0..n {
            mat.set(i, i, GaussRat::from_int(f(i)));
        }
        AutMatrix { m, mat }
    }

    #[test]
    fn lie_examples() {
        let m = 2;
        let a = make_heisenberg_ext(m).unwrap();
        let b = HeisenbergBasis { m };
        assert!(is_lie_automorphism(&AutMatrix::identity(m), &a));
        let d = diag(m, |i| if i == 0 || i >= b.y(1) { 2 } else { 1 });
        assert!(is_lie_automorphism(&d, &a));
        assert_eq!(is_prop2_form(&d), Some(GaussRat::from_int(2)));
        let mut swap = ExactMatrix::identity(b.dim());
        swap.set(0, 0, GaussRat::zero());
        swap.set(1, 1, GaussRat::zero());
        swap.set(0, 1, GaussRat::one());
        swap.set(1, 0, GaussRat::one());
        let swap = AutMatrix { m, mat: swap };
        assert!(!is_lie_automorphism(&swap, &a));
        assert!(is_prop2_form(&swap).is_none());
    }

    #[test]
    fn prop2_examples() {
        let z2 = diag(1, |i| if i == 0 { 2 } else { 1 });
        assert!(is_prop2_form(&z2).is_none());
        let mut ll = AutMatrix::identity(1);
        ll.mat.set(5, 2, GaussRat::one());
        assert!(is_prop2_form(&ll).is_none());
    }

    #[test]
    fn pattern_commutes_with_blocks() {
        let t = standard_triple(1);
        let p = [
            GaussRat::from_int(2),
            GaussRat::from_int(-3),
            GaussRat::from_frac(1, 2),
            GaussRat::from_int(5),
        ];
        let blk = b_pattern(&p);
        let mut mat = ExactMatrix::identity(8);
        let q = quaternion_block(1, 1);
        for r in 0..4 {
            for c in 0..4 {
                mat.set(q[r], q[c], blk[r][c].clone());
            }
        }
        assert!(is_hypercomplex_automorphism(&AutMatrix { m: 1, mat }, &t));
        let i1 = AutMatrix {
            m: 1,
            mat: t.i1.0.clone(),
        };
        assert!(!is_hypercomplex_automorphism(&i1, &t));
        assert!(is_hypercomplex_automorphism(&AutMatrix::identity(1), &t));
    }

    #[test]
    fn prop3_examples() {
        assert!(is_prop3_form(&AutMatrix::identity(2)));
        let a = diag(1, |i| if i == 1 { 2 } else { 1 });
        assert!(!is_prop3_form(&a));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let alg = make_heisenberg_ext(2).unwrap();
        for _ in 0..20 {
            let x = random_prop3(2, &mut rng);
            assert!(is_prop3_form(&x));
            assert!(is_lie_automorphism(&x, &alg));
        }
    }

    #[test]
    fn random_prop2_are_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in 1..=2 {
            let a = make_heisenberg_ext(m).unwrap();
            for _ in 0..30 {
                let x = random_prop2(m, 6, &mut rng);
                assert!(is_lie_automorphism(&x, &a));
                assert!(is_prop2_form(&x).is_some());
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_prop2(1, 4, &mut rng);
        assert_eq!(AutMatrix::from_json(&x.to_json()).unwrap(), x);
        assert!(AutMatrix::from_json(r#"{"m":1,"rows":[["1"]]}"#).is_err());
    }

    #[test]
    fn dimensions() {
        let t1 = standard_triple(1);
        for m in 1..=3 {
            let d = group_dimensions(m);
            assert_eq!(d.dim_g, 13 + 18 * m + 8 * m * m);
            assert_eq!(d.dim_h, 2 * m * m + 7 * m + 1);
            assert_eq!(d.effective, d.dim_g - d.dim_h);
        }
        assert_eq!(hypercomplex_derivation_dimension(1, &t1), 6);
    }
}
