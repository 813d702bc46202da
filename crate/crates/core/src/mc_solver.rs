//! Maurer–Cartan series `Φ(t) = Σ Φ_n tⁿ` on the twistor space, built order
//! by order from `∂̄Φ_{n+1} = −½ Σ_{i=1}^n {Φ_i, Φ_{n+1−i}}`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact_linalg::{GaussRat, Rat};
use crate::twistor::{
    assemble, decompose_dbar_exact, e_basis, DecomposeError, Decomposition, EElement, EFamily,
    FormSymbol, FrameSymbol, SphereScalar, Twistor, VectorValuedForm,
};

pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum McError {
    #[error("order must lie in 1..={MAX_ORDER}, got {0}")]
    Order(usize),
    #[error("order {order}: bracket is not ∂̄ of an element of Γ⁰⊗E: {source}")]
    Decomposition { order: usize, source: DecomposeError },
    #[error("invalid deformation parameter: {0}")]
    Param(String),
}

/// One entry of the JSON form of a [`DeformationParam`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamEntry {
    pub k: u32,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    pub re: String,
    #[serde(default = "zero_str")]
    pub im: String,
}

fn zero_str() -> String {
    "0".into()
}

/// First-order deformation `φ₁ ∈ E`, stored as coefficients on the `E` basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeformationParam {
    pub coeffs: BTreeMap<EElement, GaussRat>,
}

impl DeformationParam {
    pub fn single(e: EElement, c: GaussRat) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, c);
        DeformationParam { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(GaussRat::is_zero)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        DeformationParam {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, x)| (*e, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn from_entries(entries: &[ParamEntry], m: usize) -> Result<Self, McError> {
        let mut out = DeformationParam::default();
        for (n, en) in entries.iter().enumerate() {
            let bad = |what: &str| McError::Param(format!("entry {n}: {what}"));
            if en.k > 2 {
                return Err(bad("k must be 0, 1 or 2"));
            }
            let need = |x: Option<usize>, name: &str| x.ok_or_else(|| bad(&format!("missing `{name}`")));
            let family = match en.family.as_str() {
                "HV" => {
                    if let Some(alpha) = en.alpha {
                        if alpha != m + 1 {
                            return Err(bad("HV entries have alpha = m + 1"));
                        }
                    }
                    EFamily::Hv {
                        i: en.i.ok_or_else(|| bad("missing `i`"))?,
                        j: en.j.ok_or_else(|| bad("missing `j`"))?,
                        beta: need(en.beta, "beta")?,
                    }
                }
                "ker1_sym12" | "ker1_sym21" => {
                    let (a, b) = (need(en.a, "a")?, need(en.b, "b")?);
                    let (a, b) = (a.min(b), a.max(b));
                    if en.family == "ker1_sym12" {
                        EFamily::Sym12 { a, b }
                    } else {
                        EFamily::Sym21 { a, b }
                    }
                }
                "ker1_diag" => EFamily::Diag {
                    a: need(en.a, "a")?,
                    b: need(en.b, "b")?,
                },
                other => return Err(bad(&format!("unknown family `{other}`"))),
            };
            if !family.valid_for(m) {
                return Err(bad("indices out of range"));
            }
            let c = GaussRat::parse_parts(&en.re, &en.im).map_err(|e| bad(&e.0))?;
            let slot = out.coeffs.entry(EElement { k: en.k, family }).or_insert_with(GaussRat::zero);
            *slot += &c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn from_json(s: &str, m: usize) -> Result<Self, McError> {
        let entries: Vec<ParamEntry> = serde_json::from_str(s).map_err(|e| McError::Param(e.to_string()))?;
        Self::from_entries(&entries, m)
    }

    pub fn to_entries(&self, m: usize) -> Vec<ParamEntry> {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                let mut en = ParamEntry {
                    k: e.k,
                    family: String::new(),
                    i: None,
                    alpha: None,
                    j: None,
                    beta: None,
                    a: None,
                    b: None,
                    re: c.re.to_string(),
                    im: c.im.to_string(),
                };
                match e.family {
                    EFamily::Hv { i, j, beta } => {
                        en.family = "HV".into();
                        en.i = Some(i);
                        en.alpha = Some(m + 1);
                        en.j = Some(j);
                        en.beta = Some(beta);
                    }
                    EFamily::Sym12 { a, b } | EFamily::Sym21 { a, b } | EFamily::Diag { a, b } => {
                        en.family = match e.family {
                            EFamily::Sym12 { .. } => "ker1_sym12",
                            EFamily::Sym21 { .. } => "ker1_sym21",
                            _ => "ker1_diag",
                        }
                        .into();
                        en.a = Some(a);
                        en.b = Some(b);
                    }
                }
                en
            })
            .collect()
    }

    pub fn to_json(&self, m: usize) -> String {
        serde_json::to_string_pretty(&self.to_entries(m)).expect("param serialization")
    }

    /// Random element with `support` nonzero small rational coefficients.
    pub fn random(m: usize, support: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = e_basis(m);
        let mut out = DeformationParam::default();
        while out.coeffs.len() < support.min(basis.len()) {
            let e = basis[rng.gen_range(0..basis.len())];
            let mut num = 0;
            while num == 0 {
                num = rng.gen_range(-4i64..=4);
            }
            let re = Rat::new(num, rng.gen_range(1..=3));
            let im = if rng.gen_bool(0.5) {
                Rat::new(rng.gen_range(-2i64..=2), rng.gen_range(1..=3))
            } else {
                Rat::zero()
            };
            out.coeffs.insert(e, GaussRat::new(re, im));
        }
        out
    }

    /// `Σ c_τ Υ_τ` in the chart.
    pub fn chart(&self, t: &Twistor) -> VectorValuedForm {
        let d: Decomposition = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e, SphereScalar::constant(c.clone())))
            .collect();
        assemble(t, &d)
    }
}

/// Truncated series `Φ₁ t + … + Φ_N t^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCSeries {
    pub m: usize,
    pub order: usize,
    /// `terms[n − 1] = Φ_n`
    pub terms: Vec<VectorValuedForm>,
    /// `Φ_n = Σ g_τ Υ_τ` as found by the solver
    pub coefficients: Vec<Decomposition>,
}

impl MCSeries {
    pub fn term(&self, n: usize) -> &VectorValuedForm {
        &self.terms[n - 1]
    }
}

fn bracket_sum(t: &Twistor, terms: &[VectorValuedForm], n: usize) -> VectorValuedForm {
    // Σ_{i+j=n} {Φ_i, Φ_j}, using symmetry of the bracket on 1-forms
    let mut s = VectorValuedForm::zero(2);
    for i in 1..n {
        let j = n - i;
        if i > j {
            break;
        }
        let b = t.nijenhuis_bracket(&terms[i - 1], &terms[j - 1]);
        s = if i == j { s.add(&b) } else { s.add(&b.scale_num(&GaussRat::from_int(2))) };
    }
    s
}

pub fn solve_mc(phi1: &DeformationParam, m: usize, order: usize) -> Result<MCSeries, McError> {
    if order == 0 || order > MAX_ORDER {
        return Err(McError::Order(order));
    }
    let t = Twistor::new(m);
    let mut terms = vec![phi1.chart(&t)];
    let mut coefficients: Vec<Decomposition> = vec![phi1
        .coeffs
        .iter()
        .map(|(e, c)| (*e, SphereScalar::constant(c.clone())))
        .collect()];
    let minus_half = GaussRat::from_frac(-1, 2);
    for n in 1..order {
        let rhs = bracket_sum(&t, &terms, n + 1).scale_num(&minus_half);
        let d = decompose_dbar_exact(&t, &rhs).map_err(|source| McError::Decomposition {
            order: n + 1,
            source,
        })?;
        terms.push(assemble(&t, &d));
        coefficients.push(d);
    }
    Ok(MCSeries {
        m,
        order,
        terms,
        coefficients,
    })
}

/// Coefficient of `tⁿ` in `∂̄Φ + ½{Φ, Φ}` for `n = 2..=N`.
pub fn mc_residual(s: &MCSeries) -> Vec<(usize, VectorValuedForm)> {
    let t = Twistor::new(s.m);
    let half = GaussRat::from_frac(1, 2);
    (2..=s.order)
        .map(|n| {
            let r = t
                .dbar_apply(s.term(n))
                .add(&bracket_sum(&t, &s.terms, n).scale_num(&half));
            (n, r)
        })
        .collect()
}

/// Independent membership test `Φ_n ∈ Γ⁰ ⊗ E`: every term is a holomorphic
/// vector against one `σ̄`, the monomials of each `E`-family carry the
/// family weights, and the family coefficient `h` has `h · (1+μμ̄)` a smooth
/// section of `O(2)`, i.e. `h = Σ_k g_k μ^k/(1+μμ̄)` with smooth `g_k`.
pub fn check_invariance(s: &MCSeries) -> bool {
    s.terms.iter().all(|phi| in_gamma_e(phi, s.m))
}

fn in_gamma_e(phi: &VectorValuedForm, m: usize) -> bool {
    if phi.degree != 1 {
        return false;
    }
    let mut per_family: BTreeMap<EFamily, SphereScalar> = BTreeMap::new();
    for ((v, forms), c) in &phi.terms {
        let [w] = forms.as_slice() else { return false };
        if !matches!(v, FrameSymbol::Holo(..)) || !matches!(w, FormSymbol::SigmaBar(..)) {
            return false;
        }
        let Some(fam) = EFamily::of_monomial(*v, *w, m) else {
            return false;
        };
        let weight = fam
            .combination(m)
            .into_iter()
            .find(|(vv, ww, _)| vv == v && ww == w)
            .map(|(_, _, x)| x)
            .unwrap();
        let h = c.scale(&weight.inv());
        match per_family.get(&fam) {
            Some(prev) if *prev != h => return false,
            _ => {
                per_family.insert(fam, h);
            }
        }
    }
    let d = SphereScalar::monomial(GaussRat::one(), 1, 1, 0).add(&SphereScalar::one());
    per_family.iter().all(|(fam, h)| {
        fam.combination(m).iter().all(|(v, w, x)| phi.coeff(*v, &[*w]) == h.scale(x))
            && h.mul(&d).is_smooth_section(2)
    })
}

/// Every vector slot is some `∂_i^α`, so `dp_W` kills the deformed
/// `(0,1)`-directions.
pub fn check_holomorphic_projection(s: &MCSeries) -> bool {
    s.terms.iter().all(VectorValuedForm::holomorphic_vectors_only)
}

/// Sampled sup-norm of the coefficients of each `Φ_n` over `samples` random
/// points of the sphere, with the ratios `‖Φ_{n+1}‖/‖Φ_n‖`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormGrowth {
    pub norms: Vec<f64>,
    pub ratios: Vec<Option<f64>>,
}

pub fn norm_growth(s: &MCSeries, samples: usize, seed: u64) -> NormGrowth {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Complex64> = (0..samples)
        .map(|_| {
            // uniform point on S², stereographic coordinate from the north pole
            let z: f64 = rng.gen_range(-1.0..1.0);
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - z * z).sqrt();
            Complex64::new(r * th.cos(), r * th.sin()) / (1.0 - z).max(1e-12)
        })
        .collect();
    let norms: Vec<f64> = s
        .terms
        .iter()
        .map(|phi| {
            let mut sup = 0.0f64;
            for c in phi.terms.values() {
                for p in &pts {
                    sup = sup.max(c.eval(*p).norm());
                }
            }
            sup
        })
        .collect();
    let ratios = norms
        .windows(2)
        .map(|w| if w[0] > 0.0 { Some(w[1] / w[0]) } else { None })
        .collect();
    NormGrowth { norms, ratios }
}

/// `solve_mc(c φ₁)` has `Φ_n` equal to `cⁿ Φ_n`.
pub fn check_homogeneity(s: &MCSeries, scaled: &MCSeries, c: &GaussRat) -> bool {
    s.order == scaled.order
        && (1..=s.order).all(|n| scaled.term(n) == &s.term(n).scale_num(&c.pow(n as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twistor::generic_bracket;

    fn hv(k: u32, i: u8, j: u8, beta: usize) -> EElement {
        EElement {
            k,
            family: EFamily::Hv { i, j, beta },
        }
    }

    #[test]
    fn zero_param() {
        let s = solve_mc(&DeformationParam::default(), 1, 4).unwrap();
        assert!(s.terms.iter().all(VectorValuedForm::is_zero));
        assert!(check_invariance(&s) && check_holomorphic_projection(&s));
        assert!(norm_growth(&s, 10, 1).norms.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn order_guard() {
        let p = DeformationParam::default();
        assert_eq!(solve_mc(&p, 1, 0), Err(McError::Order(0)));
        assert_eq!(solve_mc(&p, 1, 9), Err(McError::Order(9)));
    }

    #[test]
    fn hv_self_bracket_matches_closed_form() {
        let t = Twistor::new(1);
        // V_1^2 Ω̄_2^2: one Lie term survives, twice
        let p = DeformationParam::single(hv(1, 1, 2, 2), GaussRat::one());
        let s = solve_mc(&p, 1, 2).unwrap();
        let oracle = generic_bracket(1, (1, 2, 2, 2), 1, (1, 2, 2, 2));
        assert!(!oracle.is_zero());
        assert_eq!(t.dbar_apply(s.term(2)), oracle.scale_num(&GaussRat::from_frac(-1, 2)));
        // V_1^2 Ω̄_1^2: ε₁₁ = 0 kills both terms
        let p = DeformationParam::single(hv(0, 1, 1, 2), GaussRat::one());
        let s = solve_mc(&p, 1, 3).unwrap();
        assert!(s.term(2).is_zero() && s.term(3).is_zero());
    }

    #[test]
    fn kernel_self_bracket_second_order() {
        let e = EElement {
            k: 0,
            family: EFamily::Sym12 { a: 1, b: 1 },
        };
        let s = solve_mc(&DeformationParam::single(e, GaussRat::one()), 1, 2).unwrap();
        let t = Twistor::new(1);
        let expected = t.nijenhuis_bracket(s.term(1), s.term(1)).scale_num(&GaussRat::from_frac(-1, 2));
        assert_eq!(t.dbar_apply(s.term(2)), expected);
    }

    #[test]
    fn random_series_m1() {
        for seed in 0..3 {
            let p = DeformationParam::random(1, 4, seed);
            let s = solve_mc(&p, 1, 4).unwrap();
            assert!(mc_residual(&s).iter().all(|(_, r)| r.is_zero()));
            assert!(check_invariance(&s));
            assert!(check_holomorphic_projection(&s));
            let two = GaussRat::from_int(2);
            let s2 = solve_mc(&p.scale(&two), 1, 4).unwrap();
            assert!(check_homogeneity(&s, &s2, &two));
        }
    }

    #[test]
    fn perturbation_breaks_residual() {
        let p = DeformationParam::random(1, 3, 7);
        let mut s = solve_mc(&p, 1, 3).unwrap();
        let t = Twistor::new(1);
        s.terms[1] = s.terms[1].add(&t.chart_e(&hv(0, 1, 1, 1)).scale(&SphereScalar::mubar()));
        let r = mc_residual(&s);
        assert!(!r[0].1.is_zero());
    }

    #[test]
    fn invariance_rejects_bad_slots() {
        let t = Twistor::new(1);
        let good = t.chart_e(&hv(0, 1, 1, 1));
        let mk = |phi: VectorValuedForm| MCSeries {
            m: 1,
            order: 2,
            terms: vec![good.clone(), phi],
            coefficients: vec![],
        };
        let dmubar = VectorValuedForm::single(FrameSymbol::Holo(1, 2), &[FormSymbol::DMuBar], SphereScalar::one());
        assert!(!check_invariance(&mk(dmubar)));
        let dmu = VectorValuedForm::single(FrameSymbol::DMu, &[FormSymbol::SigmaBar(1, 1)], SphereScalar::one());
        assert!(!check_invariance(&mk(dmu.clone())));
        assert!(!check_holomorphic_projection(&mk(dmu)));
        assert!(check_invariance(&mk(good.clone())));
    }

    #[test]
    fn json_roundtrip() {
        let p = DeformationParam::random(2, 5, 3);
        let q = DeformationParam::from_json(&p.to_json(2), 2).unwrap();
        assert_eq!(p, q);
        assert!(DeformationParam::from_json(r#"[{"k":3,"family":"HV","i":1,"j":1,"beta":1,"re":"1"}]"#, 1).is_err());
        assert!(DeformationParam::from_json(r#"[{"k":0,"family":"ker1_diag","a":1,"b":2,"re":"1"}]"#, 1).is_err());
    }
}
