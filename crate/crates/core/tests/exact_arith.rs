use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use nilquat::exact_linalg::{kernel_basis, rank, ExactMatrix, GaussRat, Rat};

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat() -> impl Strategy<Value = (i64, i64)> {
    (any::<i64>(), 1i64..=i64::MAX)
}

fn small_gauss() -> impl Strategy<Value = GaussRat> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, b, c, d)| GaussRat::new(Rat::new(a, b), Rat::new(c, d)))
}

proptest! {
    // arithmetic agrees with arbitrary-precision rationals, including past i64 overflow
    #[test]
    fn rat_matches_bigrational((a, b) in rat(), (c, d) in rat()) {
        let (x, y) = (Rat::new(a, b), Rat::new(c, d));
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert_eq!((&x + &y).to_big(), &bx + &by);
        prop_assert_eq!((&x - &y).to_big(), &bx - &by);
        prop_assert_eq!((&x * &y).to_big(), &bx * &by);
        if c != 0 {
            prop_assert_eq!((&x / &y).to_big(), &bx / &by);
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
    }

    #[test]
    fn rat_string_roundtrip((a, b) in rat()) {
        let x = Rat::new(a, b);
        let back: Rat = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn gauss_field_laws(x in small_gauss(), y in small_gauss(), z in small_gauss()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv()).is_one());
        }
    }

    #[test]
    fn gauss_serde_roundtrip(x in small_gauss()) {
        let s = serde_json::to_string(&x).unwrap();
        let back: GaussRat = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, x);
    }

    // rank–nullity, and kernel vectors really are annihilated
    #[test]
    fn kernel_and_rank(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..6)) {
        let m = ExactMatrix::from_dense(
            rows.iter().map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect()).collect(),
        );
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), 6);
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(GaussRat::is_zero));
        }
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }
}

#[test]
fn gauss_json_shape() {
    let x = GaussRat::new(Rat::new(1, 2), Rat::new(-3, 4));
    assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"re":"1/2","im":"-3/4"}"#);
}

#[test]
fn rank_of_known_matrix() {
    // rows 3 = rows 1 + rows 2
    let m = ExactMatrix::from_dense(
        [[1, 2, 3], [0, 1, 1], [1, 3, 4]]
            .iter()
            .map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect())
            .collect(),
    );
    assert_eq!(rank(&m), 2);
    assert_eq!(kernel_basis(&m).len(), 1);
}
