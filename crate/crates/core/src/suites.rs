//! Verification suites: each runs the checks of one module for a given `m`
//! and collects them into a [`Report`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automorphisms::{
    group_dimensions, hypercomplex_derivation_dimension, is_hypercomplex_automorphism, is_lie_automorphism,
    is_prop2_form, is_prop3_form, random_prop2, random_prop3, AutMatrix,
};
use crate::cohomology::{
    assemble_h1_w_d, basis_space, delta0_map, delta0_via_twistor, delta1_map, delta1_via_twistor,
    quaternionic_delta0_via_twistor, quaternionic_image, quaternionic_sequence, torus_dims, Base, Combo, Sheaf,
    SpaceSpec,
};
use crate::coord_calc::{
    ext_d, field_bracket, group_mul, left_invariant_fields, theta, verify_quaternionic_coordinates, Coords, PolyField,
    PolyForm,
};
use crate::exact_linalg::{GaussRat, Rat};
use crate::hypercomplex::{
    check_quaternion_relations, nijenhuis_failure, obata_connection, obata_formula_mismatch, parallel_failure,
    standard_triple, torsion_failure,
};
use crate::lie_core::{make_heisenberg_ext, AlgVector, HeisenbergBasis, JacobiCheck};
use crate::mc_solver::{
    check_holomorphic_projection, check_homogeneity, check_invariance, mc_residual, norm_growth, solve_mc,
    DeformationParam,
};
use crate::report::Report;
use crate::twistor::{
    e_basis, numeric_crosscheck, pair_case, verify_bracket_closure, EFamily, SphereScalar, Twistor,
};

pub const SUITES: [&str; 7] = ["algebra", "hypercomplex", "coords", "twistor", "cohomology", "mc", "aut"];

pub const DEFAULT_SEED: u64 = 20240517;

/// Runs the named suite, or all of them for `"all"`.
pub fn run_suite(name: &str, m: usize, seed: u64) -> Option<Report> {
    let mut r = match name {
        "algebra" => algebra(m),
        "hypercomplex" => hypercomplex(m),
        "coords" => coords(m, seed),
        "twistor" => twistor(m, seed),
        "cohomology" => cohomology(m),
        "mc" => mc(m, seed),
        "aut" => aut(m, seed),
        "all" => {
            let mut all = Report::new("all", m, seed);
            for s in SUITES {
                all.extend(run_suite(s, m, seed)?);
            }
            all
        }
        _ => return None,
    };
    r.seed = seed;
    r.sort();
    Some(r)
}

fn g(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

pub fn algebra(m: usize) -> Report {
    let mut r = Report::new("algebra", m, 0);
    let a = make_heisenberg_ext(m).expect("m ≥ 1");
    let b = HeisenbergBasis { m };
    let n = b.dim();
    r.push(
        "algebra.antisymmetry",
        "[e_i, e_j] = −[e_j, e_i] on the stored table",
        a.check_antisymmetry() == JacobiCheck::Pass,
        format!("{:?}", a.check_antisymmetry()),
    );
    let jac = a.check_jacobi();
    r.push(
        "algebra.jacobi",
        "Jacobi identity on all basis triples",
        jac == JacobiCheck::Pass,
        format!("{jac:?}"),
    );
    let center = a.center_subspace();
    r.push("algebra.center", "the centre is span{Z, E1, E2, E3}", center.len() == 4, format!("dim = {}", center.len()));
    let derived = a.derived_ideal();
    let z = AlgVector::basis(n, b.z());
    let derived_ok = derived.len() == 1 && derived[0] == z;
    r.push(
        "algebra.derived",
        "the derived ideal is span{Z}",
        derived_ok,
        format!("dim = {}", derived.len()),
    );
    let mut table_ok = true;
    for p in 0..n {
        for q in 0..n {
            let mut want = AlgVector::zero(n);
            for j in 1..=2 * m {
                if p == b.y(j) && q == b.x(j) {
                    want = z.scale(&g(4));
                }
                if p == b.x(j) && q == b.y(j) {
                    want = z.scale(&g(-4));
                }
            }
            let got = a.bracket(&AlgVector::basis(n, p), &AlgVector::basis(n, q)).expect("dims");
            table_ok &= got == want;
        }
    }
    r.push(
        "algebra.table",
        "[Y_j, X_k] = 4 δ_jk Z and all other basis brackets vanish",
        table_ok,
        format!("{n}×{n} pairs"),
    );
    r
}

pub fn hypercomplex(m: usize) -> Report {
    let mut r = Report::new("hypercomplex", m, 0);
    let a = make_heisenberg_ext(m).expect("m ≥ 1");
    let t = standard_triple(m);
    let rel = check_quaternion_relations(&t);
    r.push(
        "hypercomplex.quaternion",
        "I_a² = −1 and I1 I2 = I3 = −I2 I1",
        rel.is_ok(),
        rel.err().unwrap_or(""),
    );
    for k in 1..=3 {
        let f = nijenhuis_failure(&a, t.get(k));
        r.push(
            format!("hypercomplex.nijenhuis.i{k}"),
            format!("N_{{I{k}}}(e_p, e_q) = 0 on all basis pairs"),
            matches!(f, Ok(None)),
            format!("{f:?}"),
        );
    }
    match obata_connection(&a, &t) {
        Ok(c) => {
            let tf = torsion_failure(&a, &c);
            r.push(
                "hypercomplex.obata.torsion",
                "the Obata connection is torsion-free",
                tf.is_none(),
                format!("{tf:?}"),
            );
            let pf = parallel_failure(&t, &c);
            r.push(
                "hypercomplex.obata.parallel",
                "∇ I_a = 0 for a = 1, 2, 3",
                pf.is_none(),
                format!("{pf:?}"),
            );
        }
        Err(e) => r.push("hypercomplex.obata.torsion", "the Obata connection exists", false, e.to_string()),
    }
    let mm = obata_formula_mismatch(&a, &t);
    r.push(
        "hypercomplex.obata.reduced",
        "the abelian reduction of the Obata formula agrees with the general one",
        mm.is_none(),
        format!("{mm:?}"),
    );
    r
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n)
        .map(|_| Rat::new(rng.gen_range(-6i64..=6), rng.gen_range(1..=4)))
        .collect()
}

pub fn coords(m: usize, seed: u64) -> Report {
    let mut r = Report::new("coords", m, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC00D);
    let n = 4 * m + 1;
    let mut assoc = 0;
    for _ in 0..100 {
        let p = random_point(&mut rng, n);
        let q = random_point(&mut rng, n);
        let s = random_point(&mut rng, n);
        let l = group_mul(m, &group_mul(m, &p, &q).unwrap(), &s).unwrap();
        let rr = group_mul(m, &p, &group_mul(m, &q, &s).unwrap()).unwrap();
        assoc += (l == rr) as usize;
    }
    r.push(
        "coords.associativity",
        "(pq)s = p(qs) for the group law",
        assoc == 100,
        format!("{assoc}/100 random exact triples"),
    );

    let fields = left_invariant_fields(m);
    let a = make_heisenberg_ext(m).expect("m ≥ 1");
    let dim = fields.len();
    let mut realize_ok = true;
    for p in 0..dim {
        for q in p + 1..dim {
            let got = field_bracket(&fields[p], &fields[q]);
            let mut want = PolyField::zero(Coords { m });
            for (k, c) in a.constants(p, q) {
                want = want.add(&fields[*k].scale(c));
            }
            realize_ok &= got == want;
        }
    }
    r.push(
        "coords.fields",
        "the left-invariant fields realize the bracket table",
        realize_ok,
        String::new(),
    );

    let th = theta(m);
    let dth = ext_d(&th);
    let mut structure_ok = true;
    for p in 0..dim {
        for q in p + 1..dim {
            let lhs = dth.evaluate(&[&fields[p], &fields[q]]);
            let rhs = th.evaluate(&[&field_bracket(&fields[p], &fields[q])]).scale(&g(-1));
            structure_ok &= lhs == rhs;
        }
    }
    let c = Coords { m };
    let mut closed = PolyForm::zero(2);
    for j in 1..=2 * m {
        closed.add_term(vec![c.x(j), c.y(j)], &c.constant(g(4)));
    }
    r.push(
        "coords.dtheta",
        "dθ(V, W) = −θ([V, W]) on left-invariant fields, and dθ = 4 Σ dx_j ∧ dy_j",
        structure_ok && dth == closed,
        String::new(),
    );
    let q = verify_quaternionic_coordinates(m);
    for k in 1..=3 {
        r.push(
            format!("coords.quaternionic.f{k}"),
            format!("I_{k} dz = d f_{k}"),
            q[k - 1],
            String::new(),
        );
    }
    r
}

pub fn twistor(m: usize, seed: u64) -> Report {
    let mut r = Report::new("twistor", m, seed);
    let t = Twistor::new(m);

    let cc = numeric_crosscheck(m, 64, seed);
    let tol = 1e-9;
    for (name, err) in [
        ("duality", cc.duality),
        ("frame_bracket", cc.frame_bracket),
        ("lie_derivative", cc.lie_derivative),
        ("sigma_holomorphy", cc.sigma_holomorphy),
        ("w0_identity", cc.w0_identity),
        ("type_01", cc.type_01),
    ] {
        r.push(
            format!("twistor.numeric.{name}"),
            format!("the {} table agrees with the coordinate realization", name.replace('_', " ")),
            err < tol,
            format!("max error {err:.3e} over {} samples", cc.trials),
        );
    }

    let minus = |a, n| SphereScalar::monomial(g(-1), a, 0, n);
    let displays = [
        ("f1", SphereScalar::f1(), minus(2, 2), "−μ²/(1+μμ̄)²"),
        ("f2", SphereScalar::f2(), SphereScalar::inv_d(2), "1/(1+μμ̄)²"),
        ("f3", SphereScalar::f3(), minus(1, 2), "−μ/(1+μμ̄)²"),
    ];
    for (name, f, want, shown) in displays {
        let got = f.d_dmubar();
        r.push(
            format!("twistor.dbar.{name}"),
            format!("∂̄{name} = {shown} dμ̄"),
            got == want,
            format!("{got}"),
        );
    }

    let basis = e_basis(m);
    let closed = basis.iter().all(|e| t.dbar_apply(&t.chart_e(e)).is_zero());
    r.push(
        "twistor.e_closed",
        "each chart-restricted element of E is ∂̄-closed",
        closed,
        format!("{} elements", basis.len()),
    );
    let coeffs = [
        SphereScalar::f1(),
        SphereScalar::f2(),
        SphereScalar::f3(),
        SphereScalar::monomial(g(3), 1, 2, 2),
    ];
    let mut sq_ok = true;
    for e in &basis {
        for c in &coeffs {
            let phi = t.chart_e(e).scale(c);
            sq_ok &= t.dbar_apply(&t.dbar_apply(&phi)).is_zero();
        }
    }
    r.push(
        "twistor.dbar_squared",
        "∂̄∘∂̄ = 0 on vector-valued forms with smooth coefficients",
        sq_ok,
        format!("{} test tensors", basis.len() * coeffs.len()),
    );

    let sample = if m == 1 { None } else { Some((200, seed)) };
    let cl = verify_bracket_closure(m, sample);
    for (case, (checked, passed)) in &cl.by_case {
        r.push(
            format!("twistor.closure.{case}"),
            "{Υ_σ, Υ_τ} = Σ ∂̄(g_τ Υ_τ) with smooth g_τ in the expected summand, or 0 where the lemma says so",
            checked == passed,
            format!("{passed}/{checked} pairs"),
        );
    }
    r.push(
        "twistor.closure.all",
        "every bracket of E-basis elements is ∂̄-exact in Γ⁰⊗E",
        cl.failures.is_empty(),
        format!(
            "{} pairs ({}){}",
            cl.pairs_checked,
            if cl.exhaustive { "all" } else { "sampled" },
            cl.failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        ),
    );
    r.push(
        "twistor.closure.symmetric",
        "{φ, ψ} = {ψ, φ} on E-valued 1-forms",
        cl.symmetric,
        String::new(),
    );
    r.push(
        "twistor.closure.generic_formula",
        "engine bracket equals the closed form on all generic monomial pairs",
        cl.generic_formula_ok,
        format!("{} pairs", cl.generic_formula_pairs),
    );

    // both vanishing families, exhaustively
    let mut sym = (0, 0);
    let mut top = (0, 0);
    for a in &basis {
        for b in &basis {
            let case = pair_case(&a.family, &b.family, m);
            let slot = match (a.family, case) {
                (EFamily::Sym12 { .. }, crate::twistor::PairCase::Sym12Sym21) => &mut sym,
                (EFamily::Hv { .. }, _) => continue,
                (_, crate::twistor::PairCase::KerHvTop) => &mut top,
                _ => continue,
            };
            slot.0 += 1;
            slot.1 += t.nijenhuis_bracket(&t.chart_e(a), &t.chart_e(b)).is_zero() as usize;
        }
    }
    r.push(
        "twistor.zero.sym12_sym21",
        "{V₁Ω̄₂-type, V₂Ω̄₁-type} = 0",
        sym.0 == sym.1 && sym.0 > 0,
        format!("{}/{} pairs", sym.1, sym.0),
    );
    r.push(
        "twistor.zero.ker_top",
        "{ker δ₁ element, V_i^{m+1} Ω̄_j^{m+1}} = 0",
        top.0 == top.1 && top.0 > 0,
        format!("{}/{} pairs", top.1, top.0),
    );
    r
}

pub fn cohomology(m: usize) -> Report {
    let mut r = Report::new("cohomology", m, 0);
    let h = assemble_h1_w_d(m);
    let want = 6 * m * m + 11 * m + 12;
    r.push(
        "cohomology.h1_w_d",
        "dim H1(W,D_W) = 6m² + 11m + 12",
        h.total == want,
        format!("dim H1(W,D_W) = {} (formula {want})", h.total),
    );
    r.push(
        "cohomology.split",
        "coker δ₀'' ⊕ coker δ₀' ⊕ ker δ₁ has dimensions 12, 8m, 3m(2m+1)",
        (h.coker_double_prime, h.coker_prime, h.ker_delta1) == (12, 8 * m, 3 * m * (2 * m + 1)),
        format!("{} / {} / {}", h.coker_double_prime, h.coker_prime, h.ker_delta1),
    );
    r.push(
        "cohomology.delta0",
        "δ₀ is injective of rank 4m and its image avoids the Ω̄^{m+1} directions",
        h.delta0_rank == 4 * m && h.delta0_domain == 4 * m && h.image_avoids_top_forms,
        format!("rank {} on a {}-dimensional domain", h.delta0_rank, h.delta0_domain),
    );
    r.push(
        "cohomology.coker_display",
        "the explicit elements complement the image of δ₀ in the Ω̄^{≤m} part",
        h.coker_prime_display_complements,
        String::new(),
    );
    r.push(
        "cohomology.ker_delta1",
        "ker δ₁ has dimension 3m(2m+1) and equals the explicit span",
        h.ker_delta1 == 3 * m * (2 * m + 1) && h.ker_matches_display,
        format!("dim ker δ₁ = {}", h.ker_delta1),
    );
    let q = quaternionic_sequence(m);
    let want_theta = 6 * m * m + 11 * m + 9;
    r.push(
        "cohomology.h1_w_theta",
        "dim H1(W,Θ_W) = 6m² + 11m + 9",
        q.h1_w_theta == want_theta && q.delta0_injective && q.delta0_lands_in_h1,
        format!("dim H1(W,Θ_W) = {} (formula {want_theta})", q.h1_w_theta),
    );
    let tr = torus_dims(m);
    r.push(
        "cohomology.torus",
        "for the torus: dim H1(Z,D) = 12m² and the quaternionic count is 12m² − 3",
        tr.h1_z_d == 12 * m * m && tr.quaternionic == 12 * m * m - 3,
        format!("{} and {}", tr.h1_z_d, tr.quaternionic),
    );
    if m <= 2 {
        let d0 = delta0_via_twistor(m).map(|x| x.same_entries(&delta0_map(m)));
        r.push(
            "cohomology.delta0_twistor",
            "δ₀ from the closed form equals δ₀ recomputed through the twistor calculus",
            d0 == Ok(true),
            format!("{d0:?}"),
        );
        let d1 = delta1_via_twistor(m).map(|x| x.same_entries(&delta1_map(m)));
        r.push(
            "cohomology.delta1_twistor",
            "δ₁ from the closed form equals δ₁ recomputed through the twistor calculus",
            d1 == Ok(true),
            format!("{d1:?}"),
        );
        let h0 = basis_space(SpaceSpec::new(0, Base::W, Sheaf::O(2)), m).expect("valid space");
        let direct: Vec<Combo> = h0.basis.iter().map(|e| quaternionic_image(e, m + 1)).collect();
        let qd = quaternionic_delta0_via_twistor(m);
        r.push(
            "cohomology.quaternionic_twistor",
            "the coboundary into H1(W,D_W) agrees with ∂̄ of ∂/∂μ",
            qd.as_ref().map(|x| *x == direct).unwrap_or(false),
            String::new(),
        );
    }
    r
}

pub const MC_ORDER: usize = 6;
pub const MC_SAMPLES: usize = 5;

pub fn mc(m: usize, seed: u64) -> Report {
    let mut r = Report::new("mc", m, seed);
    let zero = solve_mc(&DeformationParam::default(), m, MC_ORDER);
    r.push(
        "mc.zero",
        "φ₁ = 0 gives the zero series",
        zero.map(|s| s.terms.iter().all(|t| t.is_zero())).unwrap_or(false),
        String::new(),
    );
    let two = g(2);
    for i in 0..MC_SAMPLES {
        let id = format!("mc.phi{i}");
        let phi = DeformationParam::random(m, 8 * m + 4, seed.wrapping_mul(31).wrapping_add(i as u64));
        let s = match solve_mc(&phi, m, MC_ORDER) {
            Ok(s) => s,
            Err(e) => {
                r.push(format!("{id}.solve"), "the recursion can be solved to order N", false, e.to_string());
                continue;
            }
        };
        let res = mc_residual(&s);
        let bad: Vec<usize> = res.iter().filter(|(_, x)| !x.is_zero()).map(|(n, _)| *n).collect();
        r.push(
            format!("{id}.residual"),
            "∂̄Φ + ½{Φ, Φ} = 0 through order N",
            bad.is_empty(),
            format!("{} nonzero E-coefficients in φ₁, N = {MC_ORDER}, failing orders {bad:?}", phi.coeffs.len()),
        );
        r.push(
            format!("{id}.invariance"),
            "every Φ_n lies in Γ⁰⊗E",
            check_invariance(&s),
            String::new(),
        );
        r.push(
            format!("{id}.holomorphic_projection"),
            "every vector slot of Φ is holomorphic, so dp_W kills the deformed (0,1)-directions",
            check_holomorphic_projection(&s),
            String::new(),
        );
        let hom = solve_mc(&phi.scale(&two), m, MC_ORDER)
            .map(|s2| check_homogeneity(&s, &s2, &two))
            .unwrap_or(false);
        r.push(
            format!("{id}.homogeneity"),
            "φ₁ ↦ 2φ₁ sends Φ_n to 2ⁿ Φ_n",
            hom,
            String::new(),
        );
        let ng = norm_growth(&s, 64, seed ^ i as u64);
        let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4e}")).collect::<Vec<_>>().join(", ");
        let ratios: Vec<f64> = ng.ratios.iter().map(|x| x.unwrap_or(0.0)).collect();
        r.info(
            format!("{id}.norm_growth"),
            "sampled sup-norms of Φ_n and successive ratios",
            format!("norms [{}]; ratios [{}]", fmt(&ng.norms), fmt(&ratios)),
        );
    }
    r
}

pub const AUT_SAMPLES: usize = 200;

pub fn aut(m: usize, seed: u64) -> Report {
    let mut r = Report::new("aut", m, seed);
    let d = group_dimensions(m);
    let (fg, fh, fe) = (13 + 18 * m + 8 * m * m, 1 + 9 * m + 2 * m * m, 12 + 9 * m + 6 * m * m);
    let computed = format!(
        "(dimG, dimH, effective) = ({}, {}, {}); formulas give ({fg}, {fh}, {fe})",
        d.dim_g, d.dim_h, d.effective
    );
    r.push("aut.dim_g", "dim Aut = 13 + 18m + 8m²", d.dim_g == fg, computed.clone());
    r.push(
        "aut.dim_h",
        "the hypercomplex form has 1 + 9m + 2m² parameters",
        d.dim_h == fh,
        computed.clone(),
    );
    r.push(
        "aut.effective",
        "dimG − dimH = 12 + 9m + 6m²",
        d.effective == fe,
        computed,
    );
    let h1 = 6 * m * m + 11 * m + 12;
    r.push(
        "aut.gap_formula",
        "12 + 9m + 6m² < 6m² + 11m + 12",
        fe < h1,
        format!("{fe} < {h1}"),
    );
    r.push(
        "aut.gap_computed",
        "the computed effective count is below dim H1(W,D_W)",
        d.effective < h1,
        format!("effective {} vs dim H1(W,D_W) = {h1}", d.effective),
    );
    let t = standard_triple(m);
    r.info(
        "aut.commutant",
        "derivations commuting with I1, I2, I3",
        format!("dimension {}", hypercomplex_derivation_dimension(m, &t)),
    );

    let alg = make_heisenberg_ext(m).expect("m ≥ 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA07);
    let mut lie = 0;
    let mut p2 = 0;
    for _ in 0..AUT_SAMPLES {
        let x = random_prop2(m, 6, &mut rng);
        lie += is_lie_automorphism(&x, &alg) as usize;
        p2 += is_prop2_form(&x).is_some() as usize;
    }
    r.push(
        "aut.random_prop2",
        "random block-triangular conformal-symplectic matrices are Lie automorphisms",
        lie == AUT_SAMPLES && p2 == AUT_SAMPLES,
        format!("{lie}/{AUT_SAMPLES} automorphisms, {p2}/{AUT_SAMPLES} in block form"),
    );
    let mut p3 = 0;
    let mut hyper = 0;
    for _ in 0..AUT_SAMPLES / 4 {
        let x = random_prop3(m, &mut rng);
        p3 += (is_prop3_form(&x) && is_lie_automorphism(&x, &alg)) as usize;
        hyper += is_hypercomplex_automorphism(&x, &t) as usize;
    }
    r.push(
        "aut.random_prop3",
        "matrices of the quaternionic block form are Lie automorphisms",
        p3 == AUT_SAMPLES / 4,
        format!("{p3}/{}", AUT_SAMPLES / 4),
    );
    r.info(
        "aut.prop3_commuting",
        "how many of those commute with I1, I2, I3",
        format!("{hyper}/{}", AUT_SAMPLES / 4),
    );
    let id = AutMatrix::identity(m);
    r.push(
        "aut.identity",
        "the identity satisfies all four predicates with S₀ = 1",
        is_lie_automorphism(&id, &alg)
            && is_prop2_form(&id) == Some(GaussRat::one())
            && is_hypercomplex_automorphism(&id, &t)
            && is_prop3_form(&id),
        String::new(),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for s in ["algebra", "hypercomplex", "coords", "cohomology"] {
            let r = run_suite(s, 1, 1).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(run_suite("nope", 1, 1).is_none());
    }
}
