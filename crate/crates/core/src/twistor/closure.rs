//! Bracket closure on `E`: every `{Υ_σ, Υ_τ}` is `∂̄` of an element of
//! `Γ⁰ ⊗ E`, organised by the case split of the bracket lemmas.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact_linalg::GaussRat;

use super::ebasis::{assemble, decompose_dbar_exact, e_basis, EElement, EFamily};
use super::frame::{FormSymbol, FrameSymbol, Twistor, VectorValuedForm};
use super::sphere::SphereScalar;

/// Case labels for a pair of fibre families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCase {
    /// both in `H¹(W, V)`
    HvHv,
    Sym12Sym12,
    Sym21Sym21,
    /// `{V₁Ω̄₂-type, V₂Ω̄₁-type}`, expected to vanish
    Sym12Sym21,
    Sym12Diag,
    Sym21Diag,
    DiagDiag,
    /// kernel element against `V_i^{m+1} Ω̄_j^b`, `b ≤ m`
    KerHv,
    /// kernel element against `V_i^{m+1} Ω̄_j^{m+1}`, expected to vanish
    KerHvTop,
}

impl PairCase {
    pub fn expects_zero(&self) -> bool {
        matches!(self, PairCase::Sym12Sym21 | PairCase::KerHvTop)
    }
}

fn rank(f: &EFamily) -> u8 {
    match f {
        EFamily::Hv { .. } => 3,
        EFamily::Sym12 { .. } => 0,
        EFamily::Sym21 { .. } => 1,
        EFamily::Diag { .. } => 2,
    }
}

pub fn pair_case(x: &EFamily, y: &EFamily, m: usize) -> PairCase {
    let (x, y) = if rank(x) <= rank(y) { (x, y) } else { (y, x) };
    use EFamily::*;
    match (x, y) {
        (Hv { .. }, Hv { .. }) => PairCase::HvHv,
        (Sym12 { .. }, Sym12 { .. }) => PairCase::Sym12Sym12,
        (Sym21 { .. }, Sym21 { .. }) => PairCase::Sym21Sym21,
        (Sym12 { .. }, Sym21 { .. }) => PairCase::Sym12Sym21,
        (Sym12 { .. }, Diag { .. }) => PairCase::Sym12Diag,
        (Sym21 { .. }, Diag { .. }) => PairCase::Sym21Diag,
        (Diag { .. }, Diag { .. }) => PairCase::DiagDiag,
        (_, Hv { beta, .. }) if *beta == m + 1 => PairCase::KerHvTop,
        (_, Hv { .. }) => PairCase::KerHv,
        _ => unreachable!(),
    }
}

/// Closed form of `{μ^k/D ∂_i^α σ̄_j^β, μ^{k'}/D ∂_{i'}^{α'} σ̄_{j'}^{β'}}` when
/// `α = α' = m+1` or `β, β' ≤ m`:
/// `−μ^{k+k'}/D³ dμ̄ ∧ (δ_{α'β} ε_{i'j} ∂_i^α σ̄_{j'}^{β'} + δ_{αβ'} ε_{ij'} ∂_{i'}^{α'} σ̄_j^β)`.
pub fn generic_bracket(
    k: u32,
    (i, alpha, j, beta): (u8, usize, u8, usize),
    kp: u32,
    (ip, alphap, jp, betap): (u8, usize, u8, usize),
) -> VectorValuedForm {
    let eps = |a: u8, b: u8| -> i64 {
        match (a, b) {
            (1, 2) => 1,
            (2, 1) => -1,
            _ => 0,
        }
    };
    let base = SphereScalar::monomial(GaussRat::from_int(-1), k + kp, 0, 3);
    let mut r = VectorValuedForm::zero(2);
    if alphap == beta {
        let e = eps(ip, j);
        r.add_wedge(
            FrameSymbol::Holo(i, alpha),
            &[FormSymbol::DMuBar, FormSymbol::SigmaBar(jp, betap)],
            &base.scale(&e.into()),
        );
    }
    if alpha == betap {
        let e = eps(i, jp);
        r.add_wedge(
            FrameSymbol::Holo(ip, alphap),
            &[FormSymbol::DMuBar, FormSymbol::SigmaBar(j, beta)],
            &base.scale(&e.into()),
        );
    }
    r
}

/// Summary of the closure computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub m: usize,
    pub pairs_checked: usize,
    pub exhaustive: bool,
    /// `(checked, passed)` per case
    pub by_case: BTreeMap<String, (usize, usize)>,
    pub symmetric: bool,
    pub generic_formula_pairs: usize,
    pub generic_formula_ok: bool,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.symmetric && self.generic_formula_ok
    }
}

fn support_ok(case: PairCase, fams: impl Iterator<Item = EFamily>) -> bool {
    let mut fams = fams;
    match case {
        PairCase::HvHv | PairCase::KerHv => fams.all(|f| matches!(f, EFamily::Hv { .. })),
        _ => fams.all(|f| !matches!(f, EFamily::Hv { .. })),
    }
}

/// Checks the pair `(a, b)`; `Err` carries a failure description.
pub fn check_pair(t: &Twistor, a: &EElement, b: &EElement) -> Result<PairCase, String> {
    let case = pair_case(&a.family, &b.family, t.m);
    let r = t.nijenhuis_bracket(&t.chart_e(a), &t.chart_e(b));
    if case.expects_zero() {
        return if r.is_zero() {
            Ok(case)
        } else {
            Err(format!("{{{a}, {b}}} should vanish"))
        };
    }
    let d = decompose_dbar_exact(t, &r).map_err(|e| format!("{{{a}, {b}}}: {e}"))?;
    if t.dbar_apply(&assemble(t, &d)) != r {
        return Err(format!("{{{a}, {b}}}: primitive does not reproduce the bracket"));
    }
    for (_, g) in &d {
        if !g.is_smooth_on_sphere(false) || !g.at_zero().is_zero() {
            return Err(format!("{{{a}, {b}}}: coefficient {g} not smooth or not normalized"));
        }
    }
    if !support_ok(case, d.iter().map(|(e, _)| e.family)) {
        return Err(format!("{{{a}, {b}}}: primitive leaves the expected summand"));
    }
    Ok(case)
}

/// Runs the closure check over all unordered pairs of `E`-basis elements, or
/// over `sample` seeded random pairs.
pub fn verify_bracket_closure(m: usize, sample: Option<(usize, u64)>) -> ClosureReport {
    let t = Twistor::new(m);
    let basis = e_basis(m);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            pairs.push((i, j));
        }
    }
    let exhaustive = match sample {
        Some((n, seed)) if n < pairs.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            pairs.shuffle(&mut rng);
            pairs.truncate(n);
            pairs.sort();
            false
        }
        _ => true,
    };

    let mut by_case: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut symmetric = true;
    for (i, j) in &pairs {
        let (a, b) = (&basis[*i], &basis[*j]);
        let case = pair_case(&a.family, &b.family, m);
        let entry = by_case.entry(format!("{case:?}")).or_default();
        entry.0 += 1;
        match check_pair(&t, a, b) {
            Ok(_) => entry.1 += 1,
            Err(e) => failures.push(e),
        }
        if i != j {
            let ab = t.nijenhuis_bracket(&t.chart_e(a), &t.chart_e(b));
            let ba = t.nijenhuis_bracket(&t.chart_e(b), &t.chart_e(a));
            if ab != ba {
                symmetric = false;
                failures.push(format!("{{{a}, {b}}} is not symmetric"));
            }
        }
    }

    let (generic_formula_pairs, generic_formula_ok) = check_generic_formula(&t);
    ClosureReport {
        m,
        pairs_checked: pairs.len(),
        exhaustive,
        by_case,
        symmetric,
        generic_formula_pairs,
        generic_formula_ok,
        failures,
    }
}

/// Compares the engine with [`generic_bracket`] on all chart monomials in
/// the generic index range.
fn check_generic_formula(t: &Twistor) -> (usize, bool) {
    let m = t.m;
    let mut monos = Vec::new();
    for k in 0..=2 {
        for i in 1..=2u8 {
            for alpha in 1..=m + 1 {
                for j in 1..=2u8 {
                    for beta in 1..=m + 1 {
                        monos.push((k, (i, alpha, j, beta)));
                    }
                }
            }
        }
    }
    let mut count = 0;
    for (p, (k, x)) in monos.iter().enumerate() {
        for (kp, y) in &monos[p..] {
            let generic = (x.1 == m + 1 && y.1 == m + 1) || (x.3 <= m && y.3 <= m);
            if !generic {
                continue;
            }
            let cx = t.chart_monomial(*k, x.0, x.1, &[(x.2, x.3)]);
            let cy = t.chart_monomial(*kp, y.0, y.1, &[(y.2, y.3)]);
            let got = t.nijenhuis_bracket(&cx, &cy);
            // the bracket table contributes [∂, ∂] = 0; only the Lie terms remain
            if got != generic_bracket(*k, *x, *kp, *y) {
                return (count, false);
            }
            count += 1;
        }
    }
    (count, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_cases() {
        let t = Twistor::new(2);
        let a = EElement {
            k: 1,
            family: EFamily::Sym12 { a: 1, b: 2 },
        };
        let b = EElement {
            k: 2,
            family: EFamily::Hv { i: 2, j: 1, beta: 3 },
        };
        assert!(t.nijenhuis_bracket(&t.chart_e(&a), &t.chart_e(&b)).is_zero());
        let c = EElement {
            k: 0,
            family: EFamily::Sym21 { a: 2, b: 2 },
        };
        assert!(t.nijenhuis_bracket(&t.chart_e(&a), &t.chart_e(&c)).is_zero());
    }

    #[test]
    fn self_bracket_top_top_vanishes() {
        let t = Twistor::new(1);
        let phi = VectorValuedForm::single(
            FrameSymbol::Holo(1, 2),
            &[FormSymbol::SigmaBar(1, 2)],
            SphereScalar::f1(),
        );
        assert!(t.nijenhuis_bracket(&phi, &phi).is_zero());
    }

    #[test]
    fn full_closure_m1() {
        let r = verify_bracket_closure(1, None);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.pairs_checked, 33 * 34 / 2);
    }
}
