//! The space `E` of deformation directions and the decomposition of
//! brackets as `Σ ∂̄(g_τ Υ_τ)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_linalg::GaussRat;

use super::frame::{FormSymbol, FrameSymbol, Twistor, VectorValuedForm};
use super::primitive::{solve_weighted, PrimitiveError};
use super::sphere::SphereScalar;

/// Fibre part of an element of `E` (the λ-power is kept separately).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum EFamily {
    /// `V_i^{m+1} Ω̄_j^β`
    #[serde(rename = "HV")]
    Hv { i: u8, j: u8, beta: usize },
    /// `V_1^a Ω̄_2^b + V_1^b Ω̄_2^a`, `a ≤ b`
    #[serde(rename = "ker1_sym12")]
    Sym12 { a: usize, b: usize },
    /// `V_2^a Ω̄_1^b + V_2^b Ω̄_1^a`, `a ≤ b`
    #[serde(rename = "ker1_sym21")]
    Sym21 { a: usize, b: usize },
    /// `V_1^a Ω̄_1^b − V_2^b Ω̄_2^a`
    #[serde(rename = "ker1_diag")]
    Diag { a: usize, b: usize },
}

/// `λ₁^k λ₂^{2−k} ⊗ family`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EElement {
    pub k: u32,
    pub family: EFamily,
}

impl fmt::Display for EElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lam = format!("l1^{} l2^{}", self.k, 2 - self.k);
        match self.family {
            EFamily::Hv { i, j, beta } => write!(f, "{lam} V{i}^top W{j}^{beta}"),
            EFamily::Sym12 { a, b } => write!(f, "{lam} (V1^{a} W2^{b} + V1^{b} W2^{a})"),
            EFamily::Sym21 { a, b } => write!(f, "{lam} (V2^{a} W1^{b} + V2^{b} W1^{a})"),
            EFamily::Diag { a, b } => write!(f, "{lam} (V1^{a} W1^{b} - V2^{b} W2^{a})"),
        }
    }
}

impl EFamily {
    pub fn valid_for(&self, m: usize) -> bool {
        match *self {
            EFamily::Hv { i, j, beta } => {
                (1..=2).contains(&i) && (1..=2).contains(&j) && (1..=m + 1).contains(&beta)
            }
            EFamily::Sym12 { a, b } | EFamily::Sym21 { a, b } => 1 <= a && a <= b && b <= m,
            EFamily::Diag { a, b } => (1..=m).contains(&a) && (1..=m).contains(&b),
        }
    }

    /// `(vector, form, weight)` entries of the fibre combination.
    pub fn combination(&self, m: usize) -> Vec<(FrameSymbol, FormSymbol, GaussRat)> {
        use FormSymbol::SigmaBar;
        use FrameSymbol::Holo;
        let one = GaussRat::one;
        let merge = |a: (FrameSymbol, FormSymbol), b: (FrameSymbol, FormSymbol)| {
            if a == b {
                vec![(a.0, a.1, GaussRat::from_int(2))]
            } else {
                vec![(a.0, a.1, one()), (b.0, b.1, one())]
            }
        };
        match *self {
            EFamily::Hv { i, j, beta } => vec![(Holo(i, m + 1), SigmaBar(j, beta), one())],
            EFamily::Sym12 { a, b } => merge((Holo(1, a), SigmaBar(2, b)), (Holo(1, b), SigmaBar(2, a))),
            EFamily::Sym21 { a, b } => merge((Holo(2, a), SigmaBar(1, b)), (Holo(2, b), SigmaBar(1, a))),
            EFamily::Diag { a, b } => vec![
                (Holo(1, a), SigmaBar(1, b), one()),
                (Holo(2, b), SigmaBar(2, a), GaussRat::from_int(-1)),
            ],
        }
    }

    /// The family containing the fibre monomial `v ⊗ w`, if any.
    pub fn of_monomial(v: FrameSymbol, w: FormSymbol, m: usize) -> Option<EFamily> {
        let (FrameSymbol::Holo(i, alpha), FormSymbol::SigmaBar(j, beta)) = (v, w) else {
            return None;
        };
        if alpha == m + 1 {
            return Some(EFamily::Hv { i, j, beta });
        }
        if beta == m + 1 {
            return None;
        }
        let (lo, hi) = (alpha.min(beta), alpha.max(beta));
        Some(match (i, j) {
            (1, 2) => EFamily::Sym12 { a: lo, b: hi },
            (2, 1) => EFamily::Sym21 { a: lo, b: hi },
            (1, 1) => EFamily::Diag { a: alpha, b: beta },
            (2, 2) => EFamily::Diag { a: beta, b: alpha },
            _ => return None,
        })
    }
}

/// Fibre families of `E` in canonical order.
pub fn e_families(m: usize) -> Vec<EFamily> {
    let mut v = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            for beta in 1..=m + 1 {
                v.push(EFamily::Hv { i, j, beta });
            }
        }
    }
    for a in 1..=m {
        for b in a..=m {
            v.push(EFamily::Sym12 { a, b });
        }
    }
    for a in 1..=m {
        for b in a..=m {
            v.push(EFamily::Sym21 { a, b });
        }
    }
    for a in 1..=m {
        for b in 1..=m {
            v.push(EFamily::Diag { a, b });
        }
    }
    v
}

/// Basis of `E`, `3(2m² + 5m + 4)` elements.
pub fn e_basis(m: usize) -> Vec<EElement> {
    let mut v = Vec::new();
    for k in 0..=2 {
        for f in e_families(m) {
            v.push(EElement { k, family: f });
        }
    }
    v
}

impl Twistor {
    /// Chart image `μ^k/(1+μμ̄) · Σ weight · ∂ ⊗ σ̄`.
    pub fn chart_e(&self, e: &EElement) -> VectorValuedForm {
        let base = SphereScalar::monomial(GaussRat::one(), e.k, 0, 1);
        let mut r = VectorValuedForm::zero(1);
        for (v, w, c) in e.family.combination(self.m) {
            r.add_wedge(v, &[w], &base.scale(&c));
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("term {0} is not of the form dμ̄ ∧ σ̄ with a holomorphic vector")]
    BadShape(String),
    #[error("fibre monomial {0} lies outside E")]
    OutsideE(String),
    #[error("coefficients inconsistent with the E-combination {0}")]
    Inconsistent(String),
    #[error("primitive for {0}: {1}")]
    Primitive(String, PrimitiveError),
}

/// Coefficients `g_τ` with `R = Σ_τ ∂̄(g_τ Υ_τ)`, sorted by `τ`.
pub type Decomposition = Vec<(EElement, SphereScalar)>;

/// Writes a degree-2 tensor `R` (all terms `h · V ⊗ dμ̄ ∧ σ̄`) as
/// `Σ ∂̄(g_τ Υ_τ)` with smooth `g_τ`, `g_τ(0) = 0`.
pub fn decompose_dbar_exact(t: &Twistor, r: &VectorValuedForm) -> Result<Decomposition, DecomposeError> {
    let m = t.m;
    let mut per_family: BTreeMap<EFamily, SphereScalar> = BTreeMap::new();
    for ((v, forms), c) in &r.terms {
        let bad = || format!("{v} ⊗ {:?}", forms);
        if forms.len() != 2 || forms[0] != FormSymbol::DMuBar {
            return Err(DecomposeError::BadShape(bad()));
        }
        let w = forms[1];
        let fam = EFamily::of_monomial(*v, w, m).ok_or_else(|| DecomposeError::OutsideE(bad()))?;
        if per_family.contains_key(&fam) {
            continue;
        }
        let weight = fam
            .combination(m)
            .into_iter()
            .find(|(vv, ww, _)| vv == v && *ww == w)
            .map(|(_, _, c)| c)
            .unwrap();
        per_family.insert(fam, c.scale(&weight.inv()));
    }
    // consistency: every monomial of each family carries h · weight
    let mut rebuilt = VectorValuedForm::zero(2);
    for (fam, h) in &per_family {
        for (v, w, c) in fam.combination(m) {
            rebuilt.add_wedge(v, &[FormSymbol::DMuBar, w], &h.scale(&c));
        }
    }
    if rebuilt != *r {
        let diff = rebuilt.sub(r);
        let (k, _) = diff.terms.iter().next().unwrap();
        return Err(DecomposeError::Inconsistent(format!("{} ⊗ {:?}", k.0, k.1)));
    }
    let weights: Vec<SphereScalar> = (0..=2)
        .map(|k| SphereScalar::monomial(GaussRat::one(), k, 0, 1))
        .collect();
    let mut out = Vec::new();
    for (fam, h) in per_family {
        let start = h.den() + 1;
        let g = solve_weighted(&h, &weights, start)
            .map_err(|e| DecomposeError::Primitive(format!("{fam:?}"), e))?;
        for (k, gk) in g.into_iter().enumerate() {
            if !gk.is_zero() {
                out.push((EElement { k: k as u32, family: fam }, gk));
            }
        }
    }
    out.sort_by_key(|a| a.0);
    Ok(out)
}

/// `Σ g_τ Υ_τ` in the chart.
pub fn assemble(t: &Twistor, d: &Decomposition) -> VectorValuedForm {
    let mut r = VectorValuedForm::zero(1);
    for (e, g) in d {
        r = r.add(&t.chart_e(e).scale(g));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_size() {
        for m in 1..=4 {
            assert_eq!(e_basis(m).len(), 6 * m * m + 15 * m + 12);
        }
    }

    #[test]
    fn monomials_map_back() {
        let m = 3;
        for f in e_families(m) {
            for (v, w, _) in f.combination(m) {
                assert_eq!(EFamily::of_monomial(v, w, m), Some(f));
            }
        }
    }
}

#[cfg(test)]
mod closure_tests {
    use super::*;

    #[test]
    fn chart_elements_are_closed() {
        for m in 1..=2 {
            let t = Twistor::new(m);
            for e in e_basis(m) {
                assert!(t.dbar_apply(&t.chart_e(&e)).is_zero(), "{e}");
            }
        }
    }

    #[test]
    fn brackets_decompose_m1() {
        let t = Twistor::new(1);
        let basis = e_basis(1);
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                let r = t.nijenhuis_bracket(&t.chart_e(a), &t.chart_e(b));
                let d = decompose_dbar_exact(&t, &r).unwrap_or_else(|e| panic!("{a} , {b}: {e}"));
                assert_eq!(t.dbar_apply(&assemble(&t, &d)), r, "{a} , {b}");
            }
        }
    }
}
