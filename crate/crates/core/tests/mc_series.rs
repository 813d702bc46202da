use nilquat::exact_linalg::GaussRat;
use nilquat::mc_solver::{check_invariance, mc_residual, solve_mc, DeformationParam};
use nilquat::twistor::{generic_bracket, EElement, EFamily, Twistor};

const FIXTURE: &str = include_str!("../../../fixtures/phi1_m1.json");

#[test]
fn fixture_second_order_against_closed_form() {
    let phi = DeformationParam::from_json(FIXTURE, 1).unwrap();
    assert_eq!(
        phi,
        DeformationParam::single(
            EElement {
                k: 2,
                family: EFamily::Sym12 { a: 1, b: 1 }
            },
            GaussRat::one()
        )
    );
    let t = Twistor::new(1);
    let mono = t.chart_monomial(2, 1, 1, &[(2, 1)]);
    // V₁¹Ω̄₂¹ + V₁¹Ω̄₂¹ = 2 V₁¹Ω̄₂¹
    assert_eq!(phi.chart(&t), mono.scale_num(&GaussRat::from_int(2)));

    let s = solve_mc(&phi, 1, 4).unwrap();
    // {Φ₁, Φ₁} = 4 {μ²/D ∂₁¹σ̄₂¹, same}, so ∂̄Φ₂ = −2 × closed form
    let closed = generic_bracket(2, (1, 1, 2, 1), 2, (1, 1, 2, 1));
    assert!(!closed.is_zero());
    assert_eq!(t.dbar_apply(s.term(2)), closed.scale_num(&GaussRat::from_int(-2)));
    assert!(mc_residual(&s).iter().all(|(_, r)| r.is_zero()));
    assert!(check_invariance(&s));
}

#[test]
fn param_json_roundtrip() {
    for m in 1..=3 {
        for seed in 0..8 {
            let p = DeformationParam::random(m, 6, seed);
            assert_eq!(DeformationParam::from_json(&p.to_json(m), m).unwrap(), p);
        }
    }
}

#[test]
fn param_schema_violations() {
    let bad = [
        r#"[{"k": 3, "family": "ker1_diag", "a": 1, "b": 1, "re": "1"}]"#,
        r#"[{"k": 0, "family": "HV", "i": 1, "j": 1, "beta": 1, "alpha": 1, "re": "1"}]"#,
        r#"[{"k": 0, "family": "ker1_sym12", "a": 1, "re": "1"}]"#,
        r#"[{"k": 0, "family": "ker1_diag", "a": 5, "b": 1, "re": "1"}]"#,
        r#"[{"k": 0, "family": "other", "re": "1"}]"#,
        r#"[{"k": 0, "family": "ker1_diag", "a": 1, "b": 1, "re": "1/0"}]"#,
        r#"{"k": 0}"#,
    ];
    for s in bad {
        assert!(DeformationParam::from_json(s, 1).is_err(), "{s}");
    }
}

#[test]
fn order_bounds() {
    let p = DeformationParam::default();
    assert!(solve_mc(&p, 1, 0).is_err());
    assert!(solve_mc(&p, 1, 9).is_err());
    assert!(solve_mc(&p, 1, 8).unwrap().terms.iter().all(|t| t.is_zero()));
}
