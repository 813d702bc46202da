use proptest::prelude::*;

use nilquat::coord_calc::group_mul;
use nilquat::exact_linalg::{GaussRat, Rat};
use nilquat::lie_core::{make_heisenberg_ext, AlgVector, HeisenbergBasis, JacobiCheck};

/// `[v, w] = −2ω(v, w) Z` with `ω(X_j, Y_j) = 2`, written out directly.
fn oracle_bracket(m: usize, v: &[i64], w: &[i64]) -> Vec<i64> {
    let b = HeisenbergBasis { m };
    let mut out = vec![0; b.dim()];
    let mut omega = 0;
    for j in 1..=2 * m {
        omega += 2 * (v[b.x(j)] * w[b.y(j)] - v[b.y(j)] * w[b.x(j)]);
    }
    out[b.z()] = -2 * omega;
    out
}

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, n)
}

fn alg(v: &[i64]) -> AlgVector {
    AlgVector(v.iter().map(|&x| GaussRat::from_int(x)).collect())
}

proptest! {
    #[test]
    fn bracket_matches_symplectic_form(m in 1usize..=3, v in vec_strategy(16), w in vec_strategy(16)) {
        let n = 4 * m + 4;
        let (v, w) = (&v[..n], &w[..n]);
        let a = make_heisenberg_ext(m).unwrap();
        prop_assert_eq!(a.bracket(&alg(v), &alg(w)).unwrap(), alg(&oracle_bracket(m, v, w)));
    }

    #[test]
    fn group_law_is_associative(
        p in prop::collection::vec((-9i64..=9, 1i64..=4), 8),
        q in prop::collection::vec((-9i64..=9, 1i64..=4), 8),
        r in prop::collection::vec((-9i64..=9, 1i64..=4), 8),
    ) {
        let conv = |x: &[(i64, i64)]| -> Vec<Rat> { x.iter().map(|&(a, b)| Rat::new(a, b)).collect() };
        let (p, q, r) = (conv(&p), conv(&q), conv(&r));
        let left = group_mul(1, &group_mul(1, &p, &q).unwrap(), &r).unwrap();
        let right = group_mul(1, &p, &group_mul(1, &q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let e = vec![Rat::zero(); 8];
        prop_assert_eq!(group_mul(1, &p, &e).unwrap(), p.clone());
    }
}

#[test]
fn y_x_table() {
    for m in 1..=4 {
        let b = HeisenbergBasis { m };
        let a = make_heisenberg_ext(m).unwrap();
        for j in 1..=2 * m {
            for k in 1..=2 * m {
                let r = a
                    .bracket(&AlgVector::basis(b.dim(), b.y(j)), &AlgVector::basis(b.dim(), b.x(k)))
                    .unwrap();
                let want = if j == k { 4 } else { 0 };
                let mut e = vec![0; b.dim()];
                e[b.z()] = want;
                assert_eq!(r, alg(&e), "m={m} [Y{j}, X{k}]");
            }
        }
    }
}

#[test]
fn center_and_derived_dimensions() {
    for m in 1..=4 {
        let a = make_heisenberg_ext(m).unwrap();
        assert_eq!(a.center_subspace().len(), 4);
        assert_eq!(a.derived_ideal().len(), 1);
        assert_eq!(a.check_jacobi(), JacobiCheck::Pass);
    }
}
