//! Dimension counts recomputed from first principles in the test.

use nilquat::cohomology::{assemble_h1_w_d, quaternionic_sequence, torus_dims};
use nilquat::twistor::e_basis;

#[test]
fn h1_assembly_counts() {
    for m in 1..=4 {
        let a = assemble_h1_w_d(m);
        // three λ-monomials × 2m vectors × 2(m+1) forms
        assert_eq!(a.delta1_domain, 12 * m * (m + 1), "m={m}");
        assert_eq!(a.delta0_rank, 4 * m);
        assert_eq!(a.coker_double_prime, 12);
        assert_eq!(a.coker_prime, 8 * m);
        assert_eq!(a.ker_delta1, 3 * m * (2 * m + 1));
        assert!(a.ker_matches_display && a.image_avoids_top_forms);
        assert_eq!(a.total, a.h1_v - a.delta0_rank + a.ker_delta1);
        assert_eq!(a.total, 6 * m * m + 11 * m + 12);
    }
}

#[test]
fn quaternionic_counts() {
    for m in 1..=4 {
        let q = quaternionic_sequence(m);
        assert_eq!(q.delta0_rank, 3);
        assert!(q.delta0_injective);
        assert_eq!(q.h1_w_theta, q.h1_w_d - 3);
        assert_eq!(q.h1_w_theta, 6 * m * m + 11 * m + 9);
    }
}

#[test]
fn torus_counts() {
    for m in 1..=4 {
        let t = torus_dims(m);
        assert_eq!(t.h0_z_d, 4 * m);
        assert_eq!((t.h1_z_d, t.quaternionic), (12 * m * m, 12 * m * m - 3));
    }
}

#[test]
fn e_basis_size() {
    // H¹(W, V) part: 3 λ-monomials × (2 vectors at α = m+1) × 2(m+1) forms,
    // plus ker δ₁ of dimension 3m(2m+1)
    for m in 1..=3 {
        assert_eq!(e_basis(m).len(), 3 * 2 * 2 * (m + 1) + 3 * m * (2 * m + 1), "m={m}");
    }
}
