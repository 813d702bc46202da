//! Frame symbols, forms and vector-valued forms in the chart `U₂`, with the
//! bracket and Lie-derivative rewrite tables.

use std::collections::BTreeMap;
use std::fmt;

use crate::exact_linalg::GaussRat;

use super::sphere::SphereScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameSymbol {
    /// `∂_i^α`
    Holo(u8, usize),
    /// `∂̄_i^α`
    Antiholo(u8, usize),
    /// `∂/∂μ`
    DMu,
    /// `∂/∂μ̄`
    DMuBar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormSymbol {
    /// `dμ̄`
    DMuBar,
    /// `σ̄_j^β`
    SigmaBar(u8, usize),
}

impl fmt::Display for FrameSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameSymbol::Holo(i, a) => write!(f, "d{i}^{a}"),
            FrameSymbol::Antiholo(i, a) => write!(f, "dbar{i}^{a}"),
            FrameSymbol::DMu => write!(f, "d_mu"),
            FrameSymbol::DMuBar => write!(f, "d_mubar"),
        }
    }
}

impl fmt::Display for FormSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSymbol::DMuBar => write!(f, "dmubar"),
            FormSymbol::SigmaBar(j, b) => write!(f, "sigmabar{j}^{b}"),
        }
    }
}

impl FrameSymbol {
    pub fn is_holo(&self) -> bool {
        matches!(self, FrameSymbol::Holo(..))
    }

    /// Part of type (1,0): holomorphic frame vectors and `∂/∂μ`.
    pub fn is_type_10(&self) -> bool {
        matches!(self, FrameSymbol::Holo(..) | FrameSymbol::DMu)
    }

    pub fn valid_for(&self, m: usize) -> bool {
        match self {
            FrameSymbol::Holo(i, a) | FrameSymbol::Antiholo(i, a) => {
                (1..=2).contains(i) && (1..=m + 1).contains(a)
            }
            _ => true,
        }
    }

    /// Derivative of a fibre function along the symbol.
    pub fn apply(&self, f: &SphereScalar) -> SphereScalar {
        match self {
            FrameSymbol::DMu => f.d_dmu(),
            FrameSymbol::DMuBar => f.d_dmubar(),
            _ => SphereScalar::zero(),
        }
    }
}

/// All frame symbols for a given `m`, in canonical order.
pub fn all_frame_symbols(m: usize) -> Vec<FrameSymbol> {
    let mut v = Vec::new();
    for a in 1..=m + 1 {
        for i in 1..=2 {
            v.push(FrameSymbol::Holo(i, a));
        }
    }
    for a in 1..=m + 1 {
        for i in 1..=2 {
            v.push(FrameSymbol::Antiholo(i, a));
        }
    }
    v.push(FrameSymbol::DMu);
    v.push(FrameSymbol::DMuBar);
    v
}

pub fn all_form_symbols(m: usize) -> Vec<FormSymbol> {
    let mut v = vec![FormSymbol::DMuBar];
    for b in 1..=m + 1 {
        for j in 1..=2 {
            v.push(FormSymbol::SigmaBar(j, b));
        }
    }
    v
}

/// Linear combination of frame symbols with fibre-function coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrameVector {
    pub terms: BTreeMap<FrameSymbol, SphereScalar>,
}

impl FrameVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(s: FrameSymbol, c: SphereScalar) -> Self {
        let mut v = Self::zero();
        v.add_term(s, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: FrameSymbol, c: &SphereScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s).or_insert_with(SphereScalar::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(*s, c);
        }
        r
    }

    pub fn scale(&self, c: &SphereScalar) -> Self {
        let mut r = Self::zero();
        for (s, v) in &self.terms {
            r.add_term(*s, &v.mul(c));
        }
        r
    }

    pub fn scale_num(&self, c: &GaussRat) -> Self {
        self.scale(&SphereScalar::constant(c.clone()))
    }

    pub fn project_10(&self) -> Self {
        FrameVector {
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.is_type_10())
                .map(|(s, c)| (*s, c.clone()))
                .collect(),
        }
    }

    pub fn coeff(&self, s: FrameSymbol) -> SphereScalar {
        self.terms.get(&s).cloned().unwrap_or_else(SphereScalar::zero)
    }
}

/// A 1-form `Σ c · FormSymbol`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OneForm {
    pub terms: BTreeMap<FormSymbol, SphereScalar>,
}

impl OneForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(s: FormSymbol, c: SphereScalar) -> Self {
        let mut v = Self::zero();
        v.add_term(s, &c);
        v
    }

    pub fn add_term(&mut self, s: FormSymbol, c: &SphereScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s).or_insert_with(SphereScalar::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Sign and sorted list for `forms ∧ extra` (extra appended on the right),
/// or `None` when a factor repeats.
pub fn wedge_sorted(left: &[FormSymbol], right: &[FormSymbol]) -> Option<(i64, Vec<FormSymbol>)> {
    let mut v: Vec<FormSymbol> = left.iter().chain(right).copied().collect();
    let mut sign = 1i64;
    // insertion sort counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((sign, v))
}

pub type VvfKey = (FrameSymbol, Vec<FormSymbol>);

/// `Σ c · V ⊗ (ω₁ ∧ … ∧ ω_q)` with sorted form slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorValuedForm {
    pub degree: usize,
    pub terms: BTreeMap<VvfKey, SphereScalar>,
}

impl VectorValuedForm {
    pub fn zero(degree: usize) -> Self {
        VectorValuedForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(v: FrameSymbol, forms: &[FormSymbol], c: SphereScalar) -> Self {
        let mut r = Self::zero(forms.len());
        r.add_wedge(v, forms, &c);
        r
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

    /// Adds `c · v ⊗ forms`, sorting the form slots (with sign).
    pub fn add_wedge(&mut self, v: FrameSymbol, forms: &[FormSymbol], c: &SphereScalar) {
        debug_assert_eq!(forms.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let Some((sign, sorted)) = wedge_sorted(forms, &[]) else {
            return;
        };
        let c = if sign < 0 { c.neg() } else { c.clone() };
        let key = (v, sorted);
        let e = self.terms.entry(key.clone()).or_insert_with(SphereScalar::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "degree mismatch");
        let mut r = self.clone();
        for ((v, f), c) in &o.terms {
            r.add_wedge(*v, f, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_num(&GaussRat::from_int(-1))
    }

    pub fn scale(&self, c: &SphereScalar) -> Self {
        let mut r = Self::zero(self.degree);
        for ((v, f), x) in &self.terms {
            r.add_wedge(*v, f, &x.mul(c));
        }
        r
    }

    pub fn scale_num(&self, c: &GaussRat) -> Self {
        let mut r = Self::zero(self.degree);
        if c.is_zero() {
            return r;
        }
        for (k, x) in &self.terms {
            r.terms.insert(k.clone(), x.scale(c));
        }
        r
    }

    pub fn coeff(&self, v: FrameSymbol, forms: &[FormSymbol]) -> SphereScalar {
        self.terms
            .get(&(v, forms.to_vec()))
            .cloned()
            .unwrap_or_else(SphereScalar::zero)
    }

    pub fn holomorphic_vectors_only(&self) -> bool {
        self.terms.keys().all(|(v, _)| v.is_holo())
    }
}

impl fmt::Display for VectorValuedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((v, fs), c)| {
                let w: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                format!("{c} {v} ⊗ {}", w.join("∧"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sc(n: i64) -> SphereScalar {
    SphereScalar::constant(GaussRat::from_int(n))
}

/// Rewrite tables for a fixed `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Twistor {
    pub m: usize,
}

impl Twistor {
    pub fn new(m: usize) -> Self {
        Twistor { m }
    }

    /// `(1+μμ̄) Z = μ∂₁^{m+1} + ∂₂^{m+1} + μ̄∂̄₁^{m+1} + ∂̄₂^{m+1}`.
    pub fn d_times_z(&self) -> FrameVector {
        let t = self.m + 1;
        let mut v = FrameVector::zero();
        v.add_term(FrameSymbol::Holo(1, t), &SphereScalar::mu());
        v.add_term(FrameSymbol::Holo(2, t), &SphereScalar::one());
        v.add_term(FrameSymbol::Antiholo(1, t), &SphereScalar::mubar());
        v.add_term(FrameSymbol::Antiholo(2, t), &SphereScalar::one());
        v
    }

    /// Brackets for one orientation of each nonzero pair.
    fn oriented(&self, a: FrameSymbol, b: FrameSymbol) -> Option<FrameVector> {
        use FrameSymbol::*;
        let m = self.m;
        let inv = SphereScalar::inv_d(1);
        let minus_inv = inv.neg();
        let combo = |s1: FrameSymbol, c1: SphereScalar, s2: FrameSymbol, c2: SphereScalar| {
            let mut v = FrameVector::zero();
            v.add_term(s1, &c1.mul(&minus_inv));
            v.add_term(s2, &c2.mul(&minus_inv));
            v
        };
        match (a, b) {
            (Antiholo(2, x), Holo(1, y)) if x == y && x <= m => {
                Some(self.d_times_z().scale(&sc(2)))
            }
            (Antiholo(1, x), Holo(2, y)) if x == y && x <= m => {
                Some(self.d_times_z().scale(&sc(-2)))
            }
            (Holo(1, x), DMuBar) => Some(combo(
                Holo(1, x),
                SphereScalar::mu(),
                Antiholo(2, x),
                SphereScalar::one(),
            )),
            (Holo(2, x), DMuBar) => Some(combo(
                Holo(2, x),
                SphereScalar::mu(),
                Antiholo(1, x),
                sc(-1),
            )),
            (Antiholo(1, x), DMu) => Some(combo(
                Antiholo(1, x),
                SphereScalar::mubar(),
                Holo(2, x),
                SphereScalar::one(),
            )),
            (Antiholo(2, x), DMu) => Some(combo(
                Antiholo(2, x),
                SphereScalar::mubar(),
                Holo(1, x),
                sc(-1),
            )),
            _ => None,
        }
    }

    /// Full bracket `[a, b]` of two frame symbols.
    pub fn frame_bracket(&self, a: FrameSymbol, b: FrameSymbol) -> FrameVector {
        debug_assert!(a.valid_for(self.m) && b.valid_for(self.m));
        if let Some(v) = self.oriented(a, b) {
            return v;
        }
        if let Some(v) = self.oriented(b, a) {
            return v.scale(&sc(-1));
        }
        FrameVector::zero()
    }

    /// Bracket of general frame vectors, with product-rule terms.
    pub fn bracket(&self, x: &FrameVector, y: &FrameVector) -> FrameVector {
        let mut r = FrameVector::zero();
        for (a, f) in &x.terms {
            for (b, g) in &y.terms {
                r = r.add(&self.frame_bracket(*a, *b).scale(&f.mul(g)));
                let ag = a.apply(g);
                if !ag.is_zero() {
                    r.add_term(*b, &f.mul(&ag));
                }
                let bf = b.apply(f);
                if !bf.is_zero() {
                    r.add_term(*a, &g.mul(&bf).neg());
                }
            }
        }
        r
    }

    /// `L_v ω` for a holomorphic frame symbol `v` and a form symbol `ω`.
    pub fn lie_derivative_form(&self, v: FrameSymbol, w: FormSymbol) -> OneForm {
        let FrameSymbol::Holo(i, alpha) = v else {
            panic!("lie_derivative_form requires a holomorphic frame symbol");
        };
        let FormSymbol::SigmaBar(j, beta) = w else {
            return OneForm::zero();
        };
        let m = self.m;
        if alpha <= m && beta == m + 1 {
            let (target, coeff) = match (i, j) {
                (1, 1) => (FormSymbol::SigmaBar(2, alpha), SphereScalar::mubar().scale(&2.into())),
                (2, 1) => (FormSymbol::SigmaBar(1, alpha), SphereScalar::mubar().scale(&(-2).into())),
                (1, 2) => (FormSymbol::SigmaBar(2, alpha), sc(2)),
                (2, 2) => (FormSymbol::SigmaBar(1, alpha), sc(-2)),
                _ => unreachable!(),
            };
            return OneForm::single(target, coeff);
        }
        if alpha == beta && i != j {
            let eps = if i == 1 { 1 } else { -1 };
            return OneForm::single(FormSymbol::DMuBar, SphereScalar::inv_d(1).scale(&eps.into()));
        }
        OneForm::zero()
    }

    /// `{Φ, Ψ}` for degree-1 tensors with holomorphic vector slots.
    pub fn nijenhuis_bracket(&self, phi: &VectorValuedForm, psi: &VectorValuedForm) -> VectorValuedForm {
        assert!(phi.degree == 1 && psi.degree == 1, "degree-1 inputs required");
        assert!(
            phi.holomorphic_vectors_only() && psi.holomorphic_vectors_only(),
            "holomorphic vector slots required"
        );
        let mut out = VectorValuedForm::zero(2);
        for ((v, wv), c) in &phi.terms {
            let w = wv[0];
            for ((vp, wvp), cp) in &psi.terms {
                let wp = wvp[0];
                let cc = c.mul(cp);
                // ω' ∧ L_{V'} ω ⊗ V
                for (s, x) in &self.lie_derivative_form(*vp, w).terms {
                    out.add_wedge(*v, &[wp, *s], &x.mul(&cc));
                }
                // ω ∧ L_V ω' ⊗ V'
                for (s, x) in &self.lie_derivative_form(*v, wp).terms {
                    out.add_wedge(*vp, &[w, *s], &x.mul(&cc));
                }
                // ω ∧ ω' ⊗ [V, V']^{1,0}
                for (s, x) in &self.frame_bracket(*v, *vp).project_10().terms {
                    out.add_wedge(*s, &[w, wp], &x.mul(&cc));
                }
            }
        }
        out
    }

    /// `∂̄` of a holomorphic frame vector as a vector-valued 1-form:
    /// `Σ_X θ_X ⊗ [X, v]^{1,0}` over the (0,1) frame.
    pub fn dbar_frame(&self, v: FrameSymbol) -> VectorValuedForm {
        let mut out = VectorValuedForm::zero(1);
        let mut coframe = vec![(FrameSymbol::DMuBar, FormSymbol::DMuBar)];
        for b in 1..=self.m + 1 {
            for j in 1..=2 {
                coframe.push((FrameSymbol::Antiholo(j, b), FormSymbol::SigmaBar(j, b)));
            }
        }
        for (x, theta) in coframe {
            for (s, c) in &self.frame_bracket(x, v).project_10().terms {
                out.add_wedge(*s, &[theta], c);
            }
        }
        out
    }

    /// `∂̄(c ω ⊗ V) = ∂̄c ∧ ω ⊗ V + (−1)^q c ω ∧ ∂̄V`.
    pub fn dbar_apply(&self, phi: &VectorValuedForm) -> VectorValuedForm {
        assert!(phi.holomorphic_vectors_only(), "holomorphic vector slots required");
        let q = phi.degree;
        let mut out = VectorValuedForm::zero(q + 1);
        let sign = if q.is_multiple_of(2) { 1 } else { -1 };
        let mut cache: BTreeMap<FrameSymbol, VectorValuedForm> = BTreeMap::new();
        for ((v, forms), c) in &phi.terms {
            let dc = c.d_dmubar();
            if !dc.is_zero() {
                let mut f = vec![FormSymbol::DMuBar];
                f.extend(forms);
                out.add_wedge(*v, &f, &dc);
            }
            let dv = cache.entry(*v).or_insert_with(|| self.dbar_frame(*v));
            for ((s, theta), x) in &dv.terms {
                let mut f = forms.clone();
                f.push(theta[0]);
                out.add_wedge(*s, &f, &x.mul(c).scale(&sign.into()));
            }
        }
        out
    }

    /// `μ^k/(1+μμ̄) · ∂_i^α ⊗ σ̄…`, the chart image of
    /// `λ₁^k λ₂^{d−k} V_i^α ⊗ Ω̄…`.
    pub fn chart_monomial(&self, k: u32, i: u8, alpha: usize, forms: &[(u8, usize)]) -> VectorValuedForm {
        let fs: Vec<FormSymbol> = forms.iter().map(|(j, b)| FormSymbol::SigmaBar(*j, *b)).collect();
        VectorValuedForm::single(
            FrameSymbol::Holo(i, alpha),
            &fs,
            SphereScalar::monomial(GaussRat::one(), k, 0, 1),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_table_examples() {
        let t = Twistor::new(2);
        let v = t
            .frame_bracket(FrameSymbol::Antiholo(1, 1), FrameSymbol::Holo(2, 1))
            .project_10();
        let mut expect = FrameVector::zero();
        expect.add_term(FrameSymbol::Holo(1, 3), &SphereScalar::mu().scale(&(-2).into()));
        expect.add_term(FrameSymbol::Holo(2, 3), &sc(-2));
        assert_eq!(v, expect);
        assert!(t
            .frame_bracket(FrameSymbol::Antiholo(1, 1), FrameSymbol::Holo(1, 2))
            .is_zero());
        assert!(t
            .frame_bracket(FrameSymbol::Antiholo(2, 3), FrameSymbol::Holo(1, 1))
            .is_zero());
    }

    #[test]
    fn lie_table_examples() {
        let t = Twistor::new(2);
        assert_eq!(
            t.lie_derivative_form(FrameSymbol::Holo(1, 1), FormSymbol::SigmaBar(2, 1)),
            OneForm::single(FormSymbol::DMuBar, SphereScalar::inv_d(1))
        );
        assert_eq!(
            t.lie_derivative_form(FrameSymbol::Holo(2, 1), FormSymbol::SigmaBar(2, 3)),
            OneForm::single(FormSymbol::SigmaBar(1, 1), sc(-2))
        );
        assert!(t
            .lie_derivative_form(FrameSymbol::Holo(1, 1), FormSymbol::SigmaBar(1, 2))
            .is_zero());
    }

    #[test]
    fn wedge_signs() {
        use FormSymbol::*;
        let (s, v) = wedge_sorted(&[SigmaBar(1, 1)], &[DMuBar]).unwrap();
        assert_eq!((s, v), (-1, vec![DMuBar, SigmaBar(1, 1)]));
        assert!(wedge_sorted(&[DMuBar], &[DMuBar]).is_none());
    }
}
