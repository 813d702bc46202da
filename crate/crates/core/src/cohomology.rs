//! λ-homogeneous bases of the cohomology spaces on the twistor spaces, the
//! coboundary maps of the two exact sequences, and the dimension counts.
//!
//! An element `λ₁^k λ₂^{d−k} V_i^α ⊗ Ω̄_{j₁}^{β₁} ∧ …` is a [`CohoElement`].
//! Coboundary matrices are built from their closed-form images; the
//! `*_via_twistor` functions recompute them through the twistor chart
//! calculus for comparison.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::exact_linalg::{dense_to_sparse, kernel_basis, rank, ExactMatrix, GaussRat, Rref};
use crate::twistor::{FormSymbol, FrameSymbol, SphereScalar, Twistor, VectorValuedForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohoError {
    #[error("twist ℓ = {0} is below -1")]
    TwistTooLow(i32),
    #[error("space {0} is not defined on this twistor space")]
    Unsupported(String),
    #[error("element {0} is not in the basis of {1}")]
    NotInBasis(String, String),
    #[error("chart expression is not of λ-monomial type: {0}")]
    NotChartMonomial(String),
}

/// `λ₁^k λ₂^{d−k} ⊗ V ⊗ Ω̄…`; `vector` is `None` for sections of `p*O(ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CohoElement {
    pub k: u32,
    pub d: u32,
    pub vector: Option<(u8, usize)>,
    pub forms: Vec<(u8, usize)>,
}

impl CohoElement {
    pub fn new(k: u32, d: u32, vector: Option<(u8, usize)>, forms: &[(u8, usize)]) -> Self {
        assert!(k <= d);
        CohoElement {
            k,
            d,
            vector,
            forms: forms.to_vec(),
        }
    }
}

impl fmt::Display for CohoElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l1^{} l2^{}", self.k, self.d - self.k)?;
        if let Some((i, a)) = self.vector {
            write!(f, " V{i}^{a}")?;
        }
        for (j, b) in &self.forms {
            write!(f, " W{j}^{b}")?;
        }
        Ok(())
    }
}

/// Linear combination of [`CohoElement`]s.
pub type Combo = BTreeMap<CohoElement, GaussRat>;

fn combo_add(c: &mut Combo, e: CohoElement, x: &GaussRat) {
    if x.is_zero() {
        return;
    }
    let v = c.entry(e.clone()).or_insert_with(GaussRat::zero);
    *v += x;
    if v.is_zero() {
        c.remove(&e);
    }
}

/// Sorted wedge of form indices with sign, `None` on a repeat.
fn wedge(left: &[(u8, usize)], right: &[(u8, usize)]) -> Option<(i64, Vec<(u8, usize)>)> {
    let mut v: Vec<(u8, usize)> = left.iter().chain(right).copied().collect();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// A `λ`-linear vector part `Σ c λ^{(k,d)} V` times a form part `Σ c λ^{(k,d)} Ω̄…`.
type VecPart = Vec<(u32, u32, (u8, usize), GaussRat)>;
type FormPart = Vec<(u32, u32, Vec<(u8, usize)>, GaussRat)>;

fn tensor(vp: &VecPart, fp: &FormPart) -> Combo {
    let mut out = Combo::new();
    for (k1, d1, v, c1) in vp {
        for (k2, d2, f, c2) in fp {
            if let Some((s, sorted)) = wedge(f, &[]) {
                let e = CohoElement::new(k1 + k2, d1 + d2, Some(*v), &sorted);
                combo_add(&mut out, e, &(c1 * c2).scale(&(s.into())));
            }
        }
    }
    out
}

fn g(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

fn gi(n: i64) -> GaussRat {
    &GaussRat::i() * &g(n)
}

/// The fibre-bundle total spaces: `W` over the nilmanifold, `Z` over the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Base {
    W,
    Z,
}

/// Coefficient sheaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sheaf {
    /// `p*O(ℓ)`
    O(i32),
    /// `D_Z` (on `Z` only)
    D,
    /// `V = ker dΨ ∩ D_W` (on `W` only)
    V,
    /// `Ψ*D_Z` (on `W` only)
    PsiDZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceSpec {
    pub k: u32,
    pub base: Base,
    pub sheaf: Sheaf,
}

impl SpaceSpec {
    pub fn new(k: u32, base: Base, sheaf: Sheaf) -> Self {
        SpaceSpec { k, base, sheaf }
    }

    pub fn name(&self) -> String {
        let s = match self.sheaf {
            Sheaf::O(l) => format!("O({l})"),
            Sheaf::D => "D_Z".into(),
            Sheaf::V => "V".into(),
            Sheaf::PsiDZ => "PsiD_Z".into(),
        };
        format!("H{}({:?},{s})", self.k, self.base)
    }
}

/// Explicit monomial basis of a cohomology space.
#[derive(Debug, Clone)]
pub struct GradedSpace {
    pub name: String,
    pub basis: Vec<CohoElement>,
    index: HashMap<CohoElement, usize>,
}

impl GradedSpace {
    pub fn from_basis(name: impl Into<String>, basis: Vec<CohoElement>) -> Self {
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        GradedSpace {
            name: name.into(),
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, e: &CohoElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Coordinates of a combination.
    pub fn coords(&self, c: &Combo) -> Result<Vec<GaussRat>, CohoError> {
        let mut v = vec![GaussRat::zero(); self.dim()];
        for (e, x) in c {
            let i = self
                .index_of(e)
                .ok_or_else(|| CohoError::NotInBasis(e.to_string(), self.name.clone()))?;
            v[i] = x.clone();
        }
        Ok(v)
    }

    /// Matrix whose columns are the coordinates of `images`.
    pub fn matrix_of(&self, images: &[Combo]) -> Result<ExactMatrix, CohoError> {
        let mut cols = Vec::with_capacity(images.len());
        for c in images {
            cols.push(dense_to_sparse(&self.coords(c)?));
        }
        Ok(ExactMatrix::from_sparse_rows(self.dim(), cols).transpose())
    }
}

fn subsets(items: &[(u8, usize)], k: usize) -> Vec<Vec<(u8, usize)>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, *x);
            out.push(rest);
        }
    }
    out
}

/// Form indices `(j, β)` in sorted order.
fn form_indices(top: usize) -> Vec<(u8, usize)> {
    let mut v = Vec::new();
    for j in 1..=2 {
        for b in 1..=top {
            v.push((j, b));
        }
    }
    v
}

/// Enumerated basis of `H^k(base, sheaf)`.
pub fn basis_space(spec: SpaceSpec, m: usize) -> Result<GradedSpace, CohoError> {
    let k = spec.k;
    let top = match spec.base {
        Base::W => m + 1,
        Base::Z => m,
    };
    let (degree, vectors): (i64, Vec<Option<(u8, usize)>>) = match (spec.base, spec.sheaf) {
        (_, Sheaf::O(l)) if l < -1 => return Err(CohoError::TwistTooLow(l)),
        (_, Sheaf::O(l)) => (k as i64 + l as i64, vec![None]),
        (Base::Z, Sheaf::D) | (Base::W, Sheaf::PsiDZ) => (
            k as i64 + 1,
            (1..=m).flat_map(|a| [Some((1, a)), Some((2, a))]).collect(),
        ),
        (Base::W, Sheaf::V) => (k as i64 + 1, vec![Some((1, m + 1)), Some((2, m + 1))]),
        _ => return Err(CohoError::Unsupported(spec.name())),
    };
    let mut basis = Vec::new();
    if degree >= 0 {
        let d = degree as u32;
        for v in &vectors {
            for f in subsets(&form_indices(top), k as usize) {
                for kk in 0..=d {
                    basis.push(CohoElement::new(kk, d, *v, &f));
                }
            }
        }
    }
    Ok(GradedSpace::from_basis(spec.name(), basis))
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Tensor-product dimension formula for [`basis_space`].
pub fn dimension_formula(spec: SpaceSpec, m: usize) -> Option<usize> {
    let k = spec.k as usize;
    let nforms = match spec.base {
        Base::W => 2 * m + 2,
        Base::Z => 2 * m,
    };
    let forms = binom(nforms, k);
    match (spec.base, spec.sheaf) {
        (_, Sheaf::O(l)) if l >= -1 => Some(forms * (k as i64 + l as i64 + 1) as usize),
        (Base::Z, Sheaf::D) | (Base::W, Sheaf::PsiDZ) => Some(2 * m * forms * (k + 2)),
        (Base::W, Sheaf::V) => Some(2 * forms * (k + 2)),
        _ => None,
    }
}

/// `W₀ = λ₁V₁ + λ₂V₂` with `V_i = V_i^{m+1}`, times `c`.
fn w0(m: usize, c: GaussRat) -> VecPart {
    vec![(1, 1, (1, m + 1), c.clone()), (0, 1, (2, m + 1), c)]
}

/// Column labels `W_k^a` of the first δ₀, ordered by `a` then `k`.
pub fn delta0_domain_labels(m: usize) -> Vec<String> {
    let mut v = Vec::new();
    for a in 1..=m {
        for k in 0..4 {
            v.push(format!("W{k}^{a}"));
        }
    }
    v
}

/// Closed-form images `δ₀(W_k^a)` in `H¹(W, V)`.
pub fn delta0_images(m: usize) -> Vec<Combo> {
    let mut out = Vec::new();
    let om = |l1: GaussRat, j1: u8, l2: GaussRat, j2: u8, a: usize| -> FormPart {
        vec![(1, 1, vec![(j1, a)], l1), (0, 1, vec![(j2, a)], l2)]
    };
    for a in 1..=m {
        // δ₀(W₀^a) = 2W₀ ⊗ (λ₁Ω̄₂^a − λ₂Ω̄₁^a)
        out.push(tensor(&w0(m, g(2)), &om(g(1), 2, g(-1), 1, a)));
        // δ₀(W₁^a) = 2iW₀ ⊗ (λ₁Ω̄₂^a + λ₂Ω̄₁^a)
        out.push(tensor(&w0(m, gi(2)), &om(g(1), 2, g(1), 1, a)));
        // δ₀(W₂^a) = −2W₀ ⊗ (λ₁Ω̄₁^a + λ₂Ω̄₂^a)
        out.push(tensor(&w0(m, g(-2)), &om(g(1), 1, g(1), 2, a)));
        // δ₀(W₃^a) = −2iW₀ ⊗ (λ₁Ω̄₁^a − λ₂Ω̄₂^a)
        out.push(tensor(&w0(m, gi(-2)), &om(g(1), 1, g(-1), 2, a)));
    }
    out
}

/// δ₀ : H⁰(W, Ψ*D_Z) → H¹(W, V), columns `W_k^a`.
pub fn delta0_map(m: usize) -> ExactMatrix {
    let target = basis_space(SpaceSpec::new(1, Base::W, Sheaf::V), m).unwrap();
    target.matrix_of(&delta0_images(m)).unwrap()
}

/// Closed-form `δ₁` of a basis element of `H¹(W, Ψ*D_Z)`.
pub fn delta1_image(e: &CohoElement, m: usize) -> Combo {
    let (i, a) = e.vector.expect("vector-valued element");
    let (sign, j) = if i == 1 { (2, 2) } else { (-2, 1) };
    let forms: Vec<(u8, usize)> = std::iter::once((j, a)).chain(e.forms.iter().copied()).collect();
    let fp: FormPart = vec![(e.k, e.d, forms, GaussRat::one())];
    tensor(&w0(m, g(sign)), &fp)
}

/// δ₁ : H¹(W, Ψ*D_Z) → H²(W, V) in the enumerated bases.
pub fn delta1_map(m: usize) -> ExactMatrix {
    let dom = basis_space(SpaceSpec::new(1, Base::W, Sheaf::PsiDZ), m).unwrap();
    let cod = basis_space(SpaceSpec::new(2, Base::W, Sheaf::V), m).unwrap();
    let imgs: Vec<Combo> = dom.basis.iter().map(|e| delta1_image(e, m)).collect();
    cod.matrix_of(&imgs).unwrap()
}

/// The three explicit families spanning `ker δ₁`, as combinations.
pub fn kernel_delta1_display(m: usize) -> Vec<Combo> {
    let mut out = Vec::new();
    for k in 0..=2 {
        let el = |i: u8, a: usize, j: u8, b: usize| CohoElement::new(k, 2, Some((i, a)), &[(j, b)]);
        for a in 1..=m {
            for b in a..=m {
                for (i, j) in [(1, 2), (2, 1)] {
                    let mut c = Combo::new();
                    combo_add(&mut c, el(i, a, j, b), &g(1));
                    combo_add(&mut c, el(i, b, j, a), &g(1));
                    out.push(c);
                }
            }
        }
        for a in 1..=m {
            for b in 1..=m {
                let mut c = Combo::new();
                combo_add(&mut c, el(1, a, 1, b), &g(1));
                combo_add(&mut c, el(2, b, 2, a), &g(-1));
                out.push(c);
            }
        }
    }
    out
}

/// Explicit spanning set of `coker δ₀'`.
pub fn coker_prime_display(m: usize) -> Vec<Combo> {
    let t = m + 1;
    let mut out = Vec::new();
    for a in 1..=m {
        for j in 1..=2u8 {
            for (lk, _) in [(1u32, 0), (0u32, 1)] {
                // (λ₁V₁ − λ₂V₂) λ_i Ω̄_j^a
                let vp: VecPart = vec![(1, 1, (1, t), g(1)), (0, 1, (2, t), g(-1))];
                let fp: FormPart = vec![(lk, 1, vec![(j, a)], g(1))];
                out.push(tensor(&vp, &fp));
            }
            let mut c = Combo::new();
            combo_add(&mut c, CohoElement::new(0, 2, Some((1, t)), &[(j, a)]), &g(1));
            out.push(c);
            let mut c = Combo::new();
            combo_add(&mut c, CohoElement::new(2, 2, Some((2, t)), &[(j, a)]), &g(1));
            out.push(c);
        }
    }
    out
}

fn rank_of_combos(space: &GradedSpace, combos: &[Combo]) -> usize {
    let mut e = Rref::new(space.dim());
    for c in combos {
        e.push(dense_to_sparse(&space.coords(c).unwrap()));
    }
    e.rank()
}

/// Outcome of assembling `H¹(W, D_W) = coker δ₀'' ⊕ coker δ₀' ⊕ ker δ₁`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Assembly {
    pub m: usize,
    pub h1_v: usize,
    pub delta0_rank: usize,
    pub delta0_domain: usize,
    pub image_avoids_top_forms: bool,
    pub coker_double_prime: usize,
    pub coker_prime: usize,
    pub coker_prime_display_complements: bool,
    pub delta1_domain: usize,
    pub ker_delta1: usize,
    pub ker_matches_display: bool,
    pub total: usize,
}

pub fn assemble_h1_w_d(m: usize) -> H1Assembly {
    let h1v = basis_space(SpaceSpec::new(1, Base::W, Sheaf::V), m).unwrap();
    let images = delta0_images(m);
    let d0 = h1v.matrix_of(&images).unwrap();
    let r0 = rank(&d0);

    let top_forms: Vec<Combo> = h1v
        .basis
        .iter()
        .filter(|e| e.forms[0].1 == m + 1)
        .map(|e| Combo::from([(e.clone(), g(1))]))
        .collect();
    let avoids = images
        .iter()
        .all(|c| c.keys().all(|e| e.forms[0].1 != m + 1));
    let mut stacked = images.clone();
    stacked.extend(top_forms.iter().cloned());
    let coker_dd = rank_of_combos(&h1v, &stacked) - r0;
    let coker_d = h1v.dim() - r0 - coker_dd;

    let display = coker_prime_display(m);
    let mut with_display = images.clone();
    with_display.extend(display.iter().cloned());
    let complements = display.len() == coker_d && rank_of_combos(&h1v, &with_display) == r0 + coker_d;

    let dom1 = basis_space(SpaceSpec::new(1, Base::W, Sheaf::PsiDZ), m).unwrap();
    let d1 = delta1_map(m);
    let ker = kernel_basis(&d1);
    let disp = kernel_delta1_display(m);
    let mut e = Rref::new(dom1.dim());
    for v in &ker {
        e.push(dense_to_sparse(v));
    }
    let disp_rank = rank_of_combos(&dom1, &disp);
    for c in &disp {
        e.push(dense_to_sparse(&dom1.coords(c).unwrap()));
    }
    let matches = e.rank() == ker.len() && disp_rank == ker.len();

    H1Assembly {
        m,
        h1_v: h1v.dim(),
        delta0_rank: r0,
        delta0_domain: images.len(),
        image_avoids_top_forms: avoids,
        coker_double_prime: coker_dd,
        coker_prime: coker_d,
        coker_prime_display_complements: complements,
        delta1_domain: dom1.dim(),
        ker_delta1: ker.len(),
        ker_matches_display: matches,
        total: coker_dd + coker_d + ker.len(),
    }
}

/// `λ^{(2−l, 2)} Σ_α (V₁^α Ω̄₂^α − V₂^α Ω̄₁^α)` and its degree-shifted
/// versions: the image of `λ^{(k,d)} ⊗ Ω̄…` under the coboundary of
/// `0 → D → Θ → p*O(2) → 0`, with `α` running to `top`.
pub fn quaternionic_image(e: &CohoElement, top: usize) -> Combo {
    let mut vp: VecPart = Vec::new();
    let mut out = Combo::new();
    for a in 1..=top {
        vp.clear();
        vp.push((0, 0, (1, a), g(1)));
        let fp: FormPart = vec![(
            e.k,
            e.d,
            std::iter::once((2, a)).chain(e.forms.iter().copied()).collect(),
            g(1),
        )];
        for (x, c) in tensor(&vp, &fp) {
            combo_add(&mut out, x, &c);
        }
        vp.clear();
        vp.push((0, 0, (2, a), g(-1)));
        let fp: FormPart = vec![(
            e.k,
            e.d,
            std::iter::once((1, a)).chain(e.forms.iter().copied()).collect(),
            g(1),
        )];
        for (x, c) in tensor(&vp, &fp) {
            combo_add(&mut out, x, &c);
        }
    }
    out
}

/// All `λ^{(k,d)} V_i^α Ω̄…` with `q` forms over `W`: the cochain space in
/// which `H^q(W, V)` and `H^q(W, Ψ*D_Z)` sit side by side.
fn ambient(m: usize, q: u32) -> GradedSpace {
    let mut basis = basis_space(SpaceSpec::new(q, Base::W, Sheaf::V), m).unwrap().basis;
    basis.extend(basis_space(SpaceSpec::new(q, Base::W, Sheaf::PsiDZ), m).unwrap().basis);
    basis.sort();
    GradedSpace::from_basis(format!("C{q}(W)"), basis)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuaternionicReport {
    pub m: usize,
    pub delta0_rank: usize,
    pub delta0_lands_in_h1: bool,
    pub delta0_injective: bool,
    pub delta1_domain: usize,
    pub delta1_rank: usize,
    pub h1_w_d: usize,
    pub h1_w_theta: usize,
}

/// The sequence `0 → D_W → Θ_W → p*O(2) → 0`.
pub fn quaternionic_sequence(m: usize) -> QuaternionicReport {
    let asm = assemble_h1_w_d(m);
    let amb = ambient(m, 1);
    let h0 = basis_space(SpaceSpec::new(0, Base::W, Sheaf::O(2)), m).unwrap();
    let q_images: Vec<Combo> = h0.basis.iter().map(|e| quaternionic_image(e, m + 1)).collect();

    // H¹(W, D_W) inside the cochains: H¹(W,V) ⊕ ker δ₁, modulo im δ₀.
    let mut sub = Rref::new(amb.dim());
    for e in basis_space(SpaceSpec::new(1, Base::W, Sheaf::V), m).unwrap().basis {
        sub.push(dense_to_sparse(&amb.coords(&Combo::from([(e, g(1))])).unwrap()));
    }
    for c in kernel_delta1_display(m) {
        sub.push(dense_to_sparse(&amb.coords(&c).unwrap()));
    }
    let lands = q_images
        .iter()
        .all(|c| sub.contains(&dense_to_sparse(&amb.coords(c).unwrap())));

    let mut img = Rref::new(amb.dim());
    for c in delta0_images(m) {
        img.push(dense_to_sparse(&amb.coords(&c).unwrap()));
    }
    let base_rank = img.rank();
    for c in &q_images {
        img.push(dense_to_sparse(&amb.coords(c).unwrap()));
    }
    let r0 = img.rank() - base_rank;

    let amb2 = ambient(m, 2);
    let h1 = basis_space(SpaceSpec::new(1, Base::W, Sheaf::O(2)), m).unwrap();
    let imgs1: Vec<Combo> = h1.basis.iter().map(|e| quaternionic_image(e, m + 1)).collect();
    let r1 = rank_of_combos(&amb2, &imgs1);

    QuaternionicReport {
        m,
        delta0_rank: r0,
        delta0_lands_in_h1: lands,
        delta0_injective: r0 == h0.dim(),
        delta1_domain: h1.dim(),
        delta1_rank: r1,
        h1_w_d: asm.total,
        h1_w_theta: asm.total - r0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusReport {
    pub m: usize,
    pub h0_z_d: usize,
    pub h1_z_d: usize,
    pub delta0_rank: usize,
    pub quaternionic: usize,
}

/// Counts for the flat torus `T^{4m}`.
pub fn torus_dims(m: usize) -> TorusReport {
    let h0 = basis_space(SpaceSpec::new(0, Base::Z, Sheaf::D), m).unwrap();
    let h1 = basis_space(SpaceSpec::new(1, Base::Z, Sheaf::D), m).unwrap();
    let o2 = basis_space(SpaceSpec::new(0, Base::Z, Sheaf::O(2)), m).unwrap();
    let imgs: Vec<Combo> = o2.basis.iter().map(|e| quaternionic_image(e, m)).collect();
    let r = rank(&h1.matrix_of(&imgs).unwrap());
    TorusReport {
        m,
        h0_z_d: h0.dim(),
        h1_z_d: h1.dim(),
        delta0_rank: r,
        quaternionic: h1.dim() - r,
    }
}

// ---------------------------------------------------------------------------
// Chart dictionary and recomputation through the twistor calculus.

/// `λ₁^k λ₂^{d−k} V_i^α ⊗ Ω̄…  ↦  μ^k/(1+μμ̄) · ∂_i^α ⊗ σ̄…`.
pub fn chart_restrict(c: &Combo) -> Result<VectorValuedForm, CohoError> {
    let mut out: Option<VectorValuedForm> = None;
    for (e, x) in c {
        let (i, a) = e
            .vector
            .ok_or_else(|| CohoError::Unsupported(format!("{e} has no vector slot")))?;
        let forms: Vec<FormSymbol> = e.forms.iter().map(|(j, b)| FormSymbol::SigmaBar(*j, *b)).collect();
        let r = out.get_or_insert_with(|| VectorValuedForm::zero(forms.len()));
        if r.degree != forms.len() {
            return Err(CohoError::Unsupported("mixed form degrees".into()));
        }
        let coeff = SphereScalar::monomial(x.clone(), e.k, 0, 1);
        r.add_wedge(FrameSymbol::Holo(i, a), &forms, &coeff);
    }
    Ok(out.unwrap_or_else(|| VectorValuedForm::zero(1)))
}

/// Inverse of [`chart_restrict`] for λ-degree `d`.
pub fn unchart(v: &VectorValuedForm, d: u32) -> Result<Combo, CohoError> {
    let mut out = Combo::new();
    for ((sym, forms), c) in &v.terms {
        let bad = || CohoError::NotChartMonomial(format!("{c} {sym} {forms:?}"));
        let FrameSymbol::Holo(i, a) = *sym else {
            return Err(bad());
        };
        let mut fs = Vec::new();
        for f in forms {
            match f {
                FormSymbol::SigmaBar(j, b) => fs.push((*j, *b)),
                FormSymbol::DMuBar => return Err(bad()),
            }
        }
        if c.den() > 1 {
            return Err(bad());
        }
        for (key, x) in &c.numer_at(1).terms {
            if key[1] != 0 || key[0] > d {
                return Err(bad());
            }
            combo_add(&mut out, CohoElement::new(key[0], d, Some((i, a)), &fs), x);
        }
    }
    Ok(out)
}

/// Lifts `W̃_k^a` of the twisted fields in the chart frame.
pub fn lifted_w(k: usize, a: usize) -> VectorValuedForm {
    use FrameSymbol::Holo;
    let inv = SphereScalar::inv_d(1);
    let mu_inv = SphereScalar::f1();
    let i = GaussRat::i();
    let (c1, v1, c2, v2) = match k {
        0 => (mu_inv, Holo(1, a), inv, Holo(2, a)),
        1 => (mu_inv.scale(&i), Holo(1, a), inv.scale(&-&i), Holo(2, a)),
        2 => (mu_inv, Holo(2, a), inv.neg(), Holo(1, a)),
        3 => (mu_inv.scale(&i), Holo(2, a), inv.scale(&i), Holo(1, a)),
        _ => panic!("k must be 0..=3"),
    };
    let mut r = VectorValuedForm::zero(0);
    r.add_wedge(v1, &[], &c1);
    r.add_wedge(v2, &[], &c2);
    r
}

/// δ₀ recomputed as `∂̄^∇ W̃_k^a` with `∂̄^∇_X Y = [X, Y]^{1,0}`.
pub fn delta0_via_twistor(m: usize) -> Result<ExactMatrix, CohoError> {
    let t = Twistor::new(m);
    let target = basis_space(SpaceSpec::new(1, Base::W, Sheaf::V), m).unwrap();
    let mut imgs = Vec::new();
    for a in 1..=m {
        for k in 0..4 {
            imgs.push(unchart(&t.dbar_apply(&lifted_w(k, a)), 2)?);
        }
    }
    target.matrix_of(&imgs)
}

/// δ₁ recomputed by applying `∂̄` to chart representatives.
pub fn delta1_via_twistor(m: usize) -> Result<ExactMatrix, CohoError> {
    let t = Twistor::new(m);
    let dom = basis_space(SpaceSpec::new(1, Base::W, Sheaf::PsiDZ), m).unwrap();
    let cod = basis_space(SpaceSpec::new(2, Base::W, Sheaf::V), m).unwrap();
    let mut imgs = Vec::new();
    for e in &dom.basis {
        let c = chart_restrict(&Combo::from([(e.clone(), g(1))]))?;
        imgs.push(unchart(&t.dbar_apply(&c), 3)?);
    }
    cod.matrix_of(&imgs)
}

/// Quaternionic δ₀ recomputed as `μ^{2−l} ∂̄^∇(∂/∂μ)`; columns follow the
/// basis of `H⁰(W, p*O(2))`.
pub fn quaternionic_delta0_via_twistor(m: usize) -> Result<Vec<Combo>, CohoError> {
    let t = Twistor::new(m);
    let dmu = t.dbar_frame(FrameSymbol::DMu);
    let h0 = basis_space(SpaceSpec::new(0, Base::W, Sheaf::O(2)), m).unwrap();
    h0.basis
        .iter()
        .map(|e| unchart(&dmu.scale(&SphereScalar::monomial(GaussRat::one(), e.k, 0, 0)), 2))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_match_formulas() {
        for m in 1..=3 {
            for k in 0..=2 {
                for spec in [
                    SpaceSpec::new(k, Base::W, Sheaf::V),
                    SpaceSpec::new(k, Base::W, Sheaf::PsiDZ),
                    SpaceSpec::new(k, Base::W, Sheaf::O(-1)),
                    SpaceSpec::new(k, Base::W, Sheaf::O(2)),
                    SpaceSpec::new(k, Base::Z, Sheaf::D),
                    SpaceSpec::new(k, Base::Z, Sheaf::O(0)),
                ] {
                    assert_eq!(
                        basis_space(spec, m).unwrap().dim(),
                        dimension_formula(spec, m).unwrap(),
                        "{spec:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn small_spaces() {
        let h = basis_space(SpaceSpec::new(1, Base::Z, Sheaf::O(0)), 1).unwrap();
        assert_eq!(h.dim(), 4);
        assert_eq!(basis_space(SpaceSpec::new(0, Base::W, Sheaf::V), 3).unwrap().dim(), 4);
        assert_eq!(basis_space(SpaceSpec::new(0, Base::Z, Sheaf::O(-1)), 2).unwrap().dim(), 0);
        assert_eq!(
            basis_space(SpaceSpec::new(0, Base::Z, Sheaf::O(-2)), 2).unwrap_err(),
            CohoError::TwistTooLow(-2)
        );
    }

    #[test]
    fn delta0_first_column() {
        let c = &delta0_images(1)[0];
        let el = |k, i, j| CohoElement::new(k, 2, Some((i, 2)), &[(j, 1)]);
        let expect = Combo::from([
            (el(2, 1, 2), g(2)),
            (el(1, 2, 2), g(2)),
            (el(1, 1, 1), g(-2)),
            (el(0, 2, 1), g(-2)),
        ]);
        assert_eq!(*c, expect);
    }

    #[test]
    fn theorem_counts() {
        for m in 1..=3 {
            let a = assemble_h1_w_d(m);
            assert_eq!(a.delta0_rank, 4 * m);
            assert_eq!(a.coker_double_prime, 12);
            assert_eq!(a.coker_prime, 8 * m);
            assert_eq!(a.ker_delta1, 3 * m * (2 * m + 1));
            assert!(a.ker_matches_display && a.coker_prime_display_complements);
            assert_eq!(a.total, 6 * m * m + 11 * m + 12);
        }
    }

    #[test]
    fn twistor_recomputation_agrees() {
        for m in 1..=2 {
            assert_eq!(delta0_via_twistor(m).unwrap(), delta0_map(m));
            assert_eq!(delta1_via_twistor(m).unwrap(), delta1_map(m));
            let h0 = basis_space(SpaceSpec::new(0, Base::W, Sheaf::O(2)), m).unwrap();
            let direct: Vec<Combo> = h0.basis.iter().map(|e| quaternionic_image(e, m + 1)).collect();
            assert_eq!(quaternionic_delta0_via_twistor(m).unwrap(), direct);
        }
    }

    #[test]
    fn quaternionic_and_torus() {
        let q = quaternionic_sequence(1);
        assert_eq!((q.delta0_rank, q.h1_w_theta), (3, 26));
        assert!(q.delta0_lands_in_h1);
        assert_eq!(q.delta1_rank, q.delta1_domain);
        let t = torus_dims(3);
        assert_eq!((t.h1_z_d, t.quaternionic, t.h0_z_d), (108, 105, 12));
    }
}
