use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nilquat::automorphisms::{
    b_pattern, group_dimensions, is_lie_automorphism, is_prop2_form, is_prop3_form, quaternion_block, random_prop2,
    random_prop3, AutMatrix,
};
use nilquat::exact_linalg::{ExactMatrix, GaussRat, Rat};
use nilquat::hypercomplex::standard_triple;
use nilquat::lie_core::{make_heisenberg_ext, HeisenbergBasis};

fn g(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

/// Z-component of `[v, w]` from `ω(X_j, Y_j) = 2`, `[v, w] = −2ω(v, w) Z`.
fn oracle_z(m: usize, v: &[GaussRat], w: &[GaussRat]) -> GaussRat {
    let b = HeisenbergBasis { m };
    let mut om = GaussRat::zero();
    for j in 1..=2 * m {
        om += &(&(&v[b.x(j)] * &w[b.y(j)]) - &(&v[b.y(j)] * &w[b.x(j)]));
    }
    &om * &g(-4)
}

/// `M[e_i, e_j] = [Me_i, Me_j]` on all basis pairs, via the oracle bracket.
fn preserves_bracket(a: &AutMatrix) -> bool {
    let m = a.m;
    let b = HeisenbergBasis { m };
    let n = b.dim();
    let cols: Vec<Vec<GaussRat>> = (0..n).map(|c| (0..n).map(|r| a.get(r, c)).collect()).collect();
    let unit = |i: usize| -> Vec<GaussRat> { (0..n).map(|k| if k == i { g(1) } else { g(0) }).collect() };
    for i in 0..n {
        for j in 0..n {
            let z = oracle_z(m, &unit(i), &unit(j));
            let lhs: Vec<GaussRat> = cols[b.z()].iter().map(|x| x * &z).collect();
            let zz = oracle_z(m, &cols[i], &cols[j]);
            let rhs: Vec<GaussRat> = (0..n).map(|k| if k == b.z() { zz.clone() } else { g(0) }).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn embed_block(m: usize, a: usize, p: &[GaussRat; 4]) -> AutMatrix {
    let n = 4 * m + 4;
    let mut mat = ExactMatrix::identity(n);
    let idx = quaternion_block(m, a);
    let blk = b_pattern(p);
    for r in 0..4 {
        for c in 0..4 {
            mat.set(idx[r], idx[c], blk[r][c].clone());
        }
    }
    AutMatrix::new(m, mat).unwrap()
}

fn commutes_with_triple(a: &AutMatrix) -> bool {
    let t = standard_triple(a.m);
    (1..=3).all(|k| {
        let i = &t.get(k).0;
        a.mat.mul(i).unwrap().same_entries(&i.mul(&a.mat).unwrap())
    })
}

fn param() -> impl Strategy<Value = [GaussRat; 4]> {
    prop::array::uniform4((-6i64..=6, 1i64..=3)).prop_map(|xs| xs.map(|(a, b)| GaussRat::from_frac(a, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pattern_blocks_commute(m in 1usize..=3, p in param(), blk in 0usize..3) {
        let a = 1 + blk % m;
        let x = embed_block(m, a, &p);
        prop_assert!(commutes_with_triple(&x));
    }

    #[test]
    fn off_pattern_blocks_do_not_commute(m in 1usize..=2, p in param(), r in 0usize..4, c in 0usize..4) {
        let mut x = embed_block(m, 1, &p);
        let idx = quaternion_block(m, 1);
        let old = x.mat.get(idx[r], idx[c]);
        x.mat.set(idx[r], idx[c], &old + &g(1));
        prop_assert!(!commutes_with_triple(&x));
    }

    #[test]
    fn random_prop2_against_oracle(m in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_prop2(m, 5, &mut rng);
        let alg = make_heisenberg_ext(m).unwrap();
        prop_assert!(preserves_bracket(&x));
        prop_assert!(is_lie_automorphism(&x, &alg));
        let s = is_prop2_form(&x);
        prop_assert!(s.is_some());
        prop_assert_eq!(s.unwrap(), x.get(0, 0));

        let y = random_prop2(m, 5, &mut rng);
        let xy = x.mul(&y);
        prop_assert!(is_lie_automorphism(&xy, &alg));
        prop_assert_eq!(is_prop2_form(&xy).unwrap(), &x.get(0, 0) * &y.get(0, 0));
    }

    #[test]
    fn random_prop3_against_oracle(m in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_prop3(m, &mut rng);
        prop_assert!(is_prop3_form(&x));
        prop_assert!(preserves_bracket(&x));
    }

    #[test]
    fn matrix_json_roundtrip(m in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_prop2(m, 4, &mut rng);
        let back = AutMatrix::from_json(&x.to_json()).unwrap();
        prop_assert!(back.mat.same_entries(&x.mat));
        prop_assert_eq!(back.m, m);
    }
}

#[test]
fn non_automorphism_rejected() {
    // scaling X1 alone breaks [Y1, X1] = 4Z
    let m = 1;
    let b = HeisenbergBasis { m };
    let mut mat = ExactMatrix::identity(b.dim());
    mat.set(b.x(1), b.x(1), GaussRat::real(Rat::new(3, 2)));
    let x = AutMatrix::new(m, mat).unwrap();
    assert!(!preserves_bracket(&x));
    assert!(!is_lie_automorphism(&x, &make_heisenberg_ext(m).unwrap()));
    assert!(is_prop2_form(&x).is_none());
}

#[test]
fn wrong_shapes_rejected() {
    assert!(AutMatrix::from_json(r#"{"m": 1, "rows": [["1", "0"], ["0", "1"]]}"#).is_err());
    assert!(AutMatrix::from_json(r#"{"m": 1, "rows": [["1", "x"]]}"#).is_err());
    assert!(AutMatrix::from_json("[]").is_err());
}

#[test]
fn automorphism_group_dimension() {
    for m in 1..=4 {
        assert_eq!(group_dimensions(m).dim_g, 13 + 18 * m + 8 * m * m);
    }
}
