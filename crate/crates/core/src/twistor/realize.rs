//! Floating-point cross-check of the chart rewrite tables against explicit
//! vector fields and forms on `N × C`, with coordinates `(x, y, z, e, μ, μ̄)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coord_calc::{field_bracket, left_invariant_fields, Coords, PolyField, PolyForm};
use crate::exact_linalg::GaussRat;
use crate::hypercomplex::standard_triple;
use crate::lie_core::HeisenbergBasis;
use crate::poly::{mpoly_const, mpoly_var, MPoly};

use super::frame::{all_form_symbols, all_frame_symbols, FormSymbol, FrameSymbol, Twistor};

/// Maximum absolute discrepancies, one per table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub m: usize,
    pub trials: usize,
    pub duality: f64,
    pub frame_bracket: f64,
    pub lie_derivative: f64,
    pub sigma_holomorphy: f64,
    pub w0_identity: f64,
    pub type_01: f64,
}

impl CrosscheckReport {
    pub fn max_error(&self) -> f64 {
        [
            self.duality,
            self.frame_bracket,
            self.lie_derivative,
            self.sigma_holomorphy,
            self.w0_identity,
            self.type_01,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Realized frame: fields as combinations of left-invariant fields with
/// coefficients in `μ, μ̄`, plus the two fibre directions.
struct Realization {
    m: usize,
    n: usize,
    mu: usize,
    mubar: usize,
    basis: Vec<PolyField>,
    d: MPoly,
}

fn pad(p: &MPoly, n: usize) -> MPoly {
    let mut r = MPoly::zero();
    for (k, c) in &p.terms {
        let mut k = k.clone();
        k.resize(n, 0);
        r.add_term(k, c);
    }
    r
}

fn c(re: i64, im: i64) -> GaussRat {
    GaussRat::new(re.into(), im.into())
}

impl Realization {
    fn new(m: usize) -> Self {
        let n = Coords { m }.nvars() + 2;
        let basis = left_invariant_fields(m)
            .into_iter()
            .map(|f| {
                let mut coeffs: Vec<MPoly> = f.coeffs.iter().map(|p| pad(p, n)).collect();
                coeffs.resize(n, MPoly::zero());
                PolyField { coeffs }
            })
            .collect();
        let (mu, mubar) = (n - 2, n - 1);
        let d = mpoly_const(n, GaussRat::one()).add(&mpoly_var(n, mu).mul(&mpoly_var(n, mubar)));
        Realization {
            m,
            n,
            mu,
            mubar,
            basis,
            d,
        }
    }

    fn var(&self, v: usize) -> MPoly {
        mpoly_var(self.n, v)
    }

    fn konst(&self, x: GaussRat) -> MPoly {
        mpoly_const(self.n, x)
    }

    /// Algebra coefficients (basis order `Z, E, X, Y`) of `∂̄_i^α`.
    fn antiholo_coeffs(&self, i: u8, alpha: usize) -> Vec<MPoly> {
        let hb = HeisenbergBasis { m: self.m };
        let mut v = vec![MPoly::zero(); hb.dim()];
        let half = GaussRat::from_frac(1, 2);
        let mu = self.var(self.mu).scale(&half);
        let k = |x: GaussRat| self.konst(&x * &half);
        let (p, q, r, s) = if alpha <= self.m {
            (hb.x(2 * alpha - 1), hb.x(2 * alpha), hb.y(2 * alpha - 1), hb.y(2 * alpha))
        } else {
            (hb.z(), hb.e(1), hb.e(2), hb.e(3))
        };
        if i == 1 {
            // ½{μ(P + iQ) − (R − iS)}
            v[p] = mu.clone();
            v[q] = mu.scale(&c(0, 1));
            v[r] = k(c(-1, 0));
            v[s] = k(c(0, 1));
        } else {
            // ½{(P − iQ) + μ(R + iS)}
            v[p] = k(c(1, 0));
            v[q] = k(c(0, -1));
            v[r] = mu.clone();
            v[s] = mu.scale(&c(0, 1));
        }
        v
    }

    /// Complex conjugation of a coefficient: conjugate numbers, swap `μ ↔ μ̄`.
    fn conj(&self, p: &MPoly) -> MPoly {
        let mut r = MPoly::zero();
        for (k, x) in &p.terms {
            let mut k = k.clone();
            k.swap(self.mu, self.mubar);
            r.add_term(k, &x.conj());
        }
        r
    }

    fn algebra_coeffs(&self, s: FrameSymbol) -> Option<Vec<MPoly>> {
        match s {
            FrameSymbol::Antiholo(i, a) => Some(self.antiholo_coeffs(i, a)),
            FrameSymbol::Holo(i, a) => {
                Some(self.antiholo_coeffs(i, a).iter().map(|p| self.conj(p)).collect())
            }
            _ => None,
        }
    }

    fn field(&self, s: FrameSymbol) -> PolyField {
        let mut f = PolyField {
            coeffs: vec![MPoly::zero(); self.n],
        };
        match s {
            FrameSymbol::DMu => f.coeffs[self.mu] = self.konst(GaussRat::one()),
            FrameSymbol::DMuBar => f.coeffs[self.mubar] = self.konst(GaussRat::one()),
            _ => {
                for (b, cb) in self.algebra_coeffs(s).unwrap().iter().enumerate() {
                    if !cb.is_zero() {
                        f = f.add(&self.basis[b].mul_poly(cb));
                    }
                }
            }
        }
        f
    }

    /// `(1+μμ̄) · w` as a polynomial 1-form.
    fn form_times_d(&self, w: FormSymbol) -> PolyForm {
        let cz = Coords { m: self.m };
        let mub = self.var(self.mubar);
        let one = self.konst(GaussRat::one());
        let i = GaussRat::i();
        let dif = |v: usize| {
            let mut f = PolyForm::zero(1);
            f.add_term(vec![v], &one);
            f
        };
        match w {
            FormSymbol::DMuBar => {
                let mut f = PolyForm::zero(1);
                f.add_term(vec![self.mubar], &self.d);
                f
            }
            FormSymbol::SigmaBar(j, b) if b <= self.m => {
                // z₁ = x_{2b−1} + i x_{2b},  z₂ = y_{2b−1} + i y_{2b}
                let dz1 = dif(cz.x(2 * b - 1)).add(&dif(cz.x(2 * b)).scale(&i));
                let dz1b = dif(cz.x(2 * b - 1)).add(&dif(cz.x(2 * b)).scale(&-&i));
                let dz2 = dif(cz.y(2 * b - 1)).add(&dif(cz.y(2 * b)).scale(&i));
                let dz2b = dif(cz.y(2 * b - 1)).add(&dif(cz.y(2 * b)).scale(&-&i));
                if j == 1 {
                    dz1b.mul_poly(&mub).add(&dz2.scale(&GaussRat::from_int(-1)))
                } else {
                    dz2b.mul_poly(&mub).add(&dz1)
                }
            }
            FormSymbol::SigmaBar(j, _) => {
                let th = pad_form(&crate::coord_calc::theta(self.m), self.n);
                let de = |k: usize| dif(cz.e(k));
                if j == 1 {
                    // μ̄(θ − i de₁) − (de₂ + i de₃)
                    th.add(&de(1).scale(&-&i))
                        .mul_poly(&mub)
                        .add(&de(2).add(&de(3).scale(&i)).scale(&GaussRat::from_int(-1)))
                } else {
                    // (θ + i de₁) + μ̄(de₂ − i de₃)
                    th.add(&de(1).scale(&i)).add(&de(2).add(&de(3).scale(&-&i)).mul_poly(&mub))
                }
            }
        }
    }
}

fn pad_form(w: &PolyForm, n: usize) -> PolyForm {
    let mut r = PolyForm::zero(w.degree);
    for (k, p) in &w.terms {
        r.add_term(k.clone(), &pad(p, n));
    }
    r
}

fn field_eval(f: &PolyField, pt: &[Complex64]) -> Vec<Complex64> {
    f.coeffs.iter().map(|p| p.eval(pt)).collect()
}

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Value of `w(Y)` and of `V(w(Y))` for `w = τ/D`, as polynomial data.
struct Pairing {
    p: MPoly,
    vp: MPoly,
    vd: MPoly,
}

impl Pairing {
    fn new(r: &Realization, tau: &PolyForm, y: &PolyField, v: &PolyField) -> Self {
        let p = tau.evaluate(&[y]);
        Pairing {
            vp: v.apply(&p),
            vd: v.apply(&r.d),
            p,
        }
    }

    /// `V(P/D) = V(P)/D − P·V(D)/D²` at a point.
    fn derivative(&self, pt: &[Complex64], d: Complex64) -> Complex64 {
        self.vp.eval(pt) / d - self.p.eval(pt) * self.vd.eval(pt) / (d * d)
    }
}

fn dual_value(w: FormSymbol, y: FrameSymbol) -> f64 {
    match (w, y) {
        (FormSymbol::DMuBar, FrameSymbol::DMuBar) => 1.0,
        (FormSymbol::SigmaBar(j, b), FrameSymbol::Antiholo(i, a)) if i == j && a == b => 1.0,
        _ => 0.0,
    }
}

fn is_01(s: FrameSymbol) -> bool {
    matches!(s, FrameSymbol::Antiholo(..) | FrameSymbol::DMuBar)
}

/// Evaluates the rewrite tables against the realized fields at `trials`
/// random points.
pub fn numeric_crosscheck(m: usize, trials: usize, seed: u64) -> CrosscheckReport {
    let r = Realization::new(m);
    let t = Twistor::new(m);
    let syms = all_frame_symbols(m);
    let forms = all_form_symbols(m);
    let fields: Vec<PolyField> = syms.iter().map(|s| r.field(*s)).collect();
    let taus: Vec<PolyForm> = forms.iter().map(|w| r.form_times_d(*w)).collect();

    let mut brackets = Vec::new();
    for (ia, a) in syms.iter().enumerate() {
        for (ib, b) in syms.iter().enumerate().skip(ia + 1) {
            brackets.push((
                field_bracket(&fields[ia], &fields[ib]),
                t.frame_bracket(*a, *b),
            ));
        }
    }
    let pairings: Vec<Vec<MPoly>> = taus
        .iter()
        .map(|tau| fields.iter().map(|f| tau.evaluate(&[f])).collect())
        .collect();

    // Cartan data: (L_V w)(Y) = V(w(Y)) − w([V, Y]) for holomorphic V and (0,1) Y.
    struct LieCase {
        pairing: Pairing,
        bracket_pairing: MPoly,
        expect: super::frame::OneForm,
        y: FrameSymbol,
    }
    let mut lie = Vec::new();
    for (iv, v) in syms.iter().enumerate().filter(|(_, s)| s.is_holo()) {
        for (iw, w) in forms.iter().enumerate() {
            let expect = t.lie_derivative_form(*v, *w);
            for (iy, y) in syms.iter().enumerate().filter(|(_, s)| is_01(**s)) {
                let vy = field_bracket(&fields[iv], &fields[iy]);
                lie.push(LieCase {
                    pairing: Pairing::new(&r, &taus[iw], &fields[iy], &fields[iv]),
                    bracket_pairing: taus[iw].evaluate(&[&vy]),
                    expect: expect.clone(),
                    y: *y,
                });
            }
        }
    }
    // dσ̄(Y₁, Y₂) = Y₁(σ̄(Y₂)) − Y₂(σ̄(Y₁)) − σ̄([Y₁, Y₂]) on (0,1) pairs.
    let mut holo = Vec::new();
    for (iw, w) in forms.iter().enumerate() {
        if !matches!(w, FormSymbol::SigmaBar(..)) {
            continue;
        }
        let idx01: Vec<usize> = (0..syms.len()).filter(|i| is_01(syms[*i])).collect();
        for (p, &i1) in idx01.iter().enumerate() {
            for &i2 in &idx01[p + 1..] {
                let b = field_bracket(&fields[i1], &fields[i2]);
                holo.push((
                    Pairing::new(&r, &taus[iw], &fields[i2], &fields[i1]),
                    Pairing::new(&r, &taus[iw], &fields[i1], &fields[i2]),
                    taus[iw].evaluate(&[&b]),
                ));
            }
        }
    }

    let triple = standard_triple(m);
    let hb = HeisenbergBasis { m };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CrosscheckReport {
        m,
        trials,
        duality: 0.0,
        frame_bracket: 0.0,
        lie_derivative: 0.0,
        sigma_holomorphy: 0.0,
        w0_identity: 0.0,
        type_01: 0.0,
    };
    for _ in 0..trials {
        let mut pt: Vec<Complex64> = (0..r.n - 2)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), 0.0))
            .collect();
        let mu = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        pt.push(mu);
        pt.push(mu.conj());
        let d = 1.0 + mu.norm_sqr();
        let dc = Complex64::new(d, 0.0);

        for (iw, w) in forms.iter().enumerate() {
            for (is, s) in syms.iter().enumerate() {
                let got = pairings[iw][is].eval(&pt) / d;
                rep.duality = rep.duality.max((got - dual_value(*w, *s)).norm());
            }
        }

        for (real, table) in &brackets {
            let lhs = field_eval(real, &pt);
            let mut rhs = vec![Complex64::new(0.0, 0.0); r.n];
            for (s, cf) in &table.terms {
                let k = cf.eval(mu);
                let fs = field_eval(&fields[syms.iter().position(|x| x == s).unwrap()], &pt);
                for (a, b) in rhs.iter_mut().zip(fs) {
                    *a += k * b;
                }
            }
            rep.frame_bracket = rep.frame_bracket.max(dist(&lhs, &rhs));
        }

        for case in &lie {
            let got = case.pairing.derivative(&pt, dc) - case.bracket_pairing.eval(&pt) / d;
            let mut want = Complex64::new(0.0, 0.0);
            for (s, cf) in &case.expect.terms {
                want += cf.eval(mu) * dual_value(*s, case.y);
            }
            rep.lie_derivative = rep.lie_derivative.max((got - want).norm());
        }

        for (p12, p21, b) in &holo {
            let got = p12.derivative(&pt, dc) - p21.derivative(&pt, dc) - b.eval(&pt) / d;
            rep.sigma_holomorphy = rep.sigma_holomorphy.max(got.norm());
        }

        // (1+|μ|²) W₀ = μ∂₁^{m+1} + ∂₂^{m+1}, W₀ = ½(Z − i I_a Z)
        let a = [
            (mu.norm_sqr() - 1.0) / d,
            (Complex64::new(0.0, -1.0) * (mu - mu.conj())).re / d,
            (mu + mu.conj()).re / d,
        ];
        let mut w0 = vec![Complex64::new(0.0, 0.0); hb.dim()];
        w0[hb.z()] = Complex64::new(0.5 * d, 0.0);
        for k in 0..3 {
            w0[hb.e(k + 1)] = Complex64::new(0.0, -0.5 * d * a[k]);
        }
        let alg = |s: FrameSymbol| -> Vec<Complex64> {
            r.algebra_coeffs(s).unwrap().iter().map(|p| p.eval(&pt)).collect()
        };
        let h1 = alg(FrameSymbol::Holo(1, m + 1));
        let h2 = alg(FrameSymbol::Holo(2, m + 1));
        let rhs: Vec<Complex64> = h1.iter().zip(&h2).map(|(x, y)| mu * x + y).collect();
        rep.w0_identity = rep.w0_identity.max(dist(&w0, &rhs));

        // I_a ∂̄ = −i ∂̄ on the antiholomorphic frame
        for s in syms.iter().filter(|s| matches!(s, FrameSymbol::Antiholo(..))) {
            let v = alg(*s);
            let mut iv = vec![Complex64::new(0.0, 0.0); v.len()];
            for (k, ak) in a.iter().enumerate() {
                let mat = triple.get(k + 1);
                for (col, x) in v.iter().enumerate() {
                    for row in 0..v.len() {
                        let e = mat.0.get(row, col);
                        if !e.is_zero() {
                            iv[row] += e.to_c64() * x * *ak;
                        }
                    }
                }
            }
            let want: Vec<Complex64> = v.iter().map(|x| Complex64::new(0.0, -1.0) * x).collect();
            rep.type_01 = rep.type_01.max(dist(&iv, &want));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_m1() {
        let rep = numeric_crosscheck(1, 10, 7);
        assert!(rep.max_error() < 1e-9, "{rep:?}");
    }
}
